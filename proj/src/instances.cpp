#include "otm/instances.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace otm {

Instance gen_one_one_two(int m, double eps) {
    if (m < 2) throw std::invalid_argument("gen_one_one_two: m must be >= 2");
    if (!(eps > 0)) throw std::invalid_argument("gen_one_one_two: eps must be > 0");
    Instance inst;
    inst.m = m;
    inst.jobs.push_back({1, 0.0, 1.0});
    inst.jobs.push_back({2, 0.0, 1.0});
    for (int i = 0; i < m - 1; ++i) inst.jobs.push_back({3 + i, eps, 2.0});
    return inst;
}

Instance gen_case1(int m) {
    if (m < 2) throw std::invalid_argument("gen_case1: m must be >= 2");
    Instance inst;
    inst.m = m;
    for (int i = 1; i <= m; ++i) inst.jobs.push_back({i, 0.0, 1.0});
    return inst;
}

Instance gen_case2(int m, double alpha, double eps) {
    if (m < 6) throw std::invalid_argument("gen_case2: m must be >= 6");
    // The closed upper end is fine: nothing in the construction degenerates at
    // alpha = 1/(2(m-1)), and that point is the canonical m = 6 example.
    if (!(alpha > 0) || !(alpha <= 1.0 / (2.0 * (m - 1))))
        throw std::invalid_argument("gen_case2: alpha must lie in (0, 1/(2(m-1))]");
    if (!(eps > 0)) throw std::invalid_argument("gen_case2: eps must be > 0");
    Instance inst;
    inst.m = m;
    double q5 = std::pow(1.0 - alpha, 5);
    double p1 = 1.0 / (1.0 + q5);
    for (int i = 1; i <= 6; ++i)
        inst.jobs.push_back({i, 0.0, std::pow(1.0 - alpha, i - 1) * p1});
    double r_late = (1.0 - q5) * p1 + eps;
    double p_late = 1.0 - (1.0 - q5) * p1;
    for (int i = 7; i <= m + 3; ++i) inst.jobs.push_back({i, r_late, p_late});
    return inst;
}

double f_case2(double alpha) {
    double q5 = std::pow(1.0 - alpha, 5);
    return 1.0 / (1.0 + q5) + (1.0 + 2.0 * alpha) * (1.0 - (1.0 - q5) / (1.0 + q5));
}

Instance gen_random(const RandomSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
    if (spec.m < 1) throw std::invalid_argument("gen_random: m must be >= 1");
    if (spec.release_span < 0) throw std::invalid_argument("gen_random: negative release span");
    switch (spec.dist) {
        case RandomSpec::Dist::Uniform:
            if (!(spec.lo > 0) || spec.hi < spec.lo)
                throw std::invalid_argument("gen_random: need 0 < lo <= hi");
            break;
        case RandomSpec::Dist::GeometricLike:
            if (!(spec.ratio > 0) || spec.ratio > 1)
                throw std::invalid_argument("gen_random: ratio must lie in (0, 1]");
            break;
        case RandomSpec::Dist::TwoClass:
            if (!(spec.small > 0) || !(spec.large > 0) || spec.fraction < 0 || spec.fraction > 1)
                throw std::invalid_argument("gen_random: bad two-class parameters");
            break;
    }

    std::mt19937_64 gen(spec.seed);
    // 53-bit uniform in [0, 1); the raw-draw scaling is identical on every
    // platform, unlike the standard distribution adapters.
    auto u = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    Instance inst;
    inst.m = spec.m;
    for (int i = 1; i <= spec.n; ++i) {
        Job j;
        j.id = i;
        j.release = u() * spec.release_span;
        switch (spec.dist) {
            case RandomSpec::Dist::Uniform:
                j.proc = spec.lo + u() * (spec.hi - spec.lo);
                break;
            case RandomSpec::Dist::GeometricLike:
                j.proc = std::pow(spec.ratio, i - 1);
                break;
            case RandomSpec::Dist::TwoClass:
                j.proc = u() < spec.fraction ? spec.large : spec.small;
                break;
        }
        inst.jobs.push_back(j);
    }
    return inst;
}

}  // namespace otm
