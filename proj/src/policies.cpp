#include "otm/policies.hpp"

#include <cmath>
#include <stdexcept>

namespace otm {

PolicyParams lpt() { return {0.0, 1.0}; }

PolicyParams sleepy_two() { return {(3.0 - std::sqrt(5.0)) / 2.0, 1.0}; }

PolicyParams gsleepy(int m, bool dynamic) {
    if (m < 1) throw std::invalid_argument("gsleepy: m must be >= 1");
    if (m == 1) return lpt();  // one machine never benefits from locking
    if (m == 2) return sleepy_two();
    // The three-machine bound is proved for a specific static point, so the
    // static variant uses it; the dynamic variant keeps the general formula.
    if (m == 3 && !dynamic) return {0.07066, 1.0};
    double alpha = 1.0 / (4.0 * m * m);
    double lambda = dynamic ? std::pow(4.0, 25.0 / 6.0) : 1.0;
    return {alpha, lambda};
}

double target_gamma(int m) {
    if (m < 1) throw std::invalid_argument("target_gamma: m must be >= 1");
    if (m == 1) return 0.0;
    if (m == 2) return (3.0 - std::sqrt(5.0)) / 2.0;
    if (m == 3) return 0.482;
    return 0.5 - std::pow(4.0, -20.0) / (static_cast<double>(m) * m);
}

}  // namespace otm
