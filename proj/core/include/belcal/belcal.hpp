#pragma once

// Exact zeta/Mobius transforms on focal points and the Dempster-Shafer
// stack built on them, with dense (FMT) and naive engines as oracles.

#include "belcal/ablation.hpp"
#include "belcal/bench.hpp"
#include "belcal/errors.hpp"
#include "belcal/evidence_io.hpp"
#include "belcal/fmt.hpp"
#include "belcal/focal_points.hpp"
#include "belcal/focal_transforms.hpp"
#include "belcal/frame.hpp"
#include "belcal/fusion.hpp"
#include "belcal/image_partition.hpp"
#include "belcal/mask.hpp"
#include "belcal/naive.hpp"
#include "belcal/order.hpp"
#include "belcal/random_mass.hpp"
#include "belcal/representations.hpp"
#include "belcal/set_function.hpp"
