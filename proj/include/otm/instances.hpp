#pragma once
#include <cstdint>

#include "otm/core.hpp"

namespace otm {

// Seeded random instances. Releases are uniform in [0, release_span]. Sizes:
//   uniform:        p in [lo, hi]
//   geometric-like: p_i = ratio^(i-1), only releases are random
//   two-class:      p = large with probability fraction, else small
// Reproducible across platforms: mt19937_64 raw draws scaled to 53-bit
// doubles, no library distribution objects involved.
struct RandomSpec {
    std::uint64_t seed = 0;
    int n = 1;
    int m = 1;
    double release_span = 0;
    enum class Dist { Uniform, GeometricLike, TwoClass };
    Dist dist = Dist::Uniform;
    double lo = 0.1, hi = 1.0;  // uniform
    double ratio = 0.8;         // geometric-like
    double small = 0.1, large = 1.0, fraction = 0.5;  // two-class
};

// Two unit jobs at time 0 and m-1 jobs of size 2 released at eps. LPT runs a
// size-2 job after a unit job on the same machine; the optimum pairs the two
// unit jobs instead.
Instance gen_one_one_two(int m, double eps);

// m unit jobs at time 0. Static locking staircases them alpha apart.
Instance gen_case1(int m);

// Six jobs of geometrically shrinking size at time 0, then m-3 equal jobs
// released just after the static policy has committed to the six. Jobs are
// labeled 1..6 and 7..m+3.
Instance gen_case2(int m, double alpha, double eps);

// Limit ratio of the static policy on the family above as eps -> 0.
double f_case2(double alpha);

Instance gen_random(const RandomSpec& spec);

}  // namespace otm
