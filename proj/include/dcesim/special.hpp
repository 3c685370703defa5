#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

// Small numerical helpers used across the computation modules.

namespace dcesim {

/// Compensated (Kahan) accumulator; keeps summation error at O(eps)
/// independently of the number of terms.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// sinh^2(x), stable against overflow for 20 < |x| <= 350.
/// Arguments beyond 350 describe astronomically large pair numbers and are
/// rejected rather than silently overflowed.
inline double sinh_sq(double x) {
    const double ax = std::abs(x);
    if (!(ax <= 350.0))
        throw std::range_error("sinh_sq: |argument| > 350");
    if (ax > 20.0) {
        // sinh(x) = 0.5 e^{|x|} (1 - e^{-2|x|})
        const double s = 0.5 * std::exp(ax) * (-std::expm1(-2.0 * ax));
        return s * s;
    }
    const double s = std::sinh(x);
    return s * s;
}

/// Bessel function of the first kind for integer order of either sign.
/// J_{-l}(x) = (-1)^l J_l(x) and J_l(-x) = (-1)^l J_l(x).
inline double bessel_j(int order, double x) {
    const int l = std::abs(order);
    double v = std::cyl_bessel_j(static_cast<double>(l), std::abs(x));
    const bool flip_order = order < 0 && (l & 1);
    const bool flip_arg = x < 0.0 && (l & 1);
    if (flip_order != flip_arg) v = -v;
    return v;
}

/// Phase-accumulation integral E(theta, t) = int_0^t e^{i theta t'} dt'
///                                         = (e^{i theta t} - 1)/(i theta),
/// with the removable theta -> 0 singularity handled by a series branch to
/// avoid catastrophic cancellation.
inline std::complex<double> phase_integral(double theta, double t) {
    const double x = theta * t;
    if (std::abs(x) < 1e-6) {
        // t * (1 + ix/2 - x^2/6 - ix^3/24), relative error O(x^4)
        const double x2 = x * x;
        return t * std::complex<double>(1.0 - x2 / 6.0, 0.5 * x - x2 * x / 24.0);
    }
    const std::complex<double> num = std::polar(1.0, x) - 1.0;
    return num / std::complex<double>(0.0, theta);
}

} // namespace dcesim
