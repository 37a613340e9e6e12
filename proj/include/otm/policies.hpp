#pragma once
#include "otm/core.hpp"

namespace otm {

// Plain LPT: no locking at all.
PolicyParams lpt();

// The two-machine policy: alpha = (3 - sqrt(5)) / 2, static locking.
PolicyParams sleepy_two();

// Recommended parameters for m machines. dynamic selects the rescaled locking
// variant; m = 1 degenerates to LPT and m = 2 to sleepy_two().
PolicyParams gsleepy(int m, bool dynamic);

// Target competitive ratio minus one for the recommended policy at m machines.
double target_gamma(int m);

}  // namespace otm
