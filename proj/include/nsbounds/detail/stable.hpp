#pragma once

#include <cmath>

// Small-argument-safe building blocks shared by the mean evaluators and the
// hyperbolic kernels.  Everything is templated on the floating type so the
// verifier can re-run a borderline margin in long double.

namespace nsbounds::detail {

// Horner evaluation of a fixed even-series coefficient table at u = x^2.
template <typename Real, unsigned long N>
inline Real poly_even(const double (&c)[N], Real u) {
    Real s = Real(c[N - 1]);
    for (int i = static_cast<int>(N) - 2; i >= 0; --i) s = s * u + Real(c[i]);
    return s;
}

// asinh(x) = log1p(x + x^2/(1 + sqrt(1 + x^2))), odd in x.
// Avoids the cancellation of log(x + sqrt(1+x^2)) for small |x|.
template <typename Real>
inline Real asinh_stable(Real x) {
    const Real ax = std::fabs(x);
    const Real r = std::log1p(ax + ax * ax / (1 + std::sqrt(1 + ax * ax)));
    return std::copysign(r, x);
}

// cosh(t) - 1 = 2 sinh^2(t/2), exact-positive form.
template <typename Real>
inline Real cosh_m1(Real t) {
    const Real s = std::sinh(t / 2);
    return 2 * s * s;
}

// cosh(u) - 1 - u^2/2.  Series for |u| < 2 where the direct form cancels.
template <typename Real>
inline Real cosh_rem2(Real u) {
    const Real u2 = u * u;
    if (std::fabs(u) < Real(2)) {
        Real term = u2 * u2 / 24;
        Real sum = term;
        for (int k = 3; k < 40; ++k) {
            term *= u2 / Real((2 * k - 1) * (2 * k));
            sum += term;
            if (term < sum * Real(1e-20)) break;
        }
        return sum;
    }
    return std::cosh(u) - 1 - u2 / 2;
}

// sinh(u) - u - u^3/6.  Series for |u| < 2.
template <typename Real>
inline Real sinh_rem3(Real u) {
    const Real u2 = u * u;
    if (std::fabs(u) < Real(2)) {
        Real term = u2 * u2 * u / 120;
        Real sum = term;
        for (int k = 3; k < 40; ++k) {
            term *= u2 / Real((2 * k) * (2 * k + 1));
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * Real(1e-20)) break;
        }
        return sum;
    }
    return std::sinh(u) - u - u2 * u / 6;
}

// sinh(t)/t - 1.  Series for |t| < 1.
template <typename Real>
inline Real sinh_over_t_m1(Real t) {
    const Real t2 = t * t;
    if (std::fabs(t) < Real(1)) {
        Real term = t2 / 6;
        Real sum = term;
        for (int k = 2; k < 30; ++k) {
            term *= t2 / Real((2 * k) * (2 * k + 1));
            sum += term;
            if (term < sum * Real(1e-20)) break;
        }
        return sum;
    }
    return std::sinh(t) / t - 1;
}

}  // namespace nsbounds::detail
