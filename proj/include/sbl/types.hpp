#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace sbl {

using cplx = std::complex<double>;

/// Caller-supplied data violated a precondition (bad dimensions,
/// out-of-domain values, malformed input).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation could not meet its accuracy contract (non-convergence,
/// singular-to-tolerance, unresolvable structure). Carries the best
/// residual achieved where that is meaningful.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what, double res = 0.0)
        : std::runtime_error(what), residual(res) {}
    double residual;
};

inline bool is_finite(cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw input_error(msg);
}

}  // namespace sbl
