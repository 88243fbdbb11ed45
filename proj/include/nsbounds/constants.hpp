#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsbounds/detail/stable.hpp"
#include "nsbounds/means.hpp"

// Closed forms of the named bound constants, the exponent profiles theta1
// and theta2, and the root p0.  With t* = log(1+sqrt(2)):
//
//   beta_thm11   = -log(t*)/log 2                    (multiplicative, sharp)
//   lambda_thm12 = [-log(t*) - (log 2)/6] / [log(7/6) - (log 2)/6]
//   alpha_ineq11 = (1 - t*)/t*                       (convex-combination, sharp)
//   mu_ineq12    = log((sqrt(2)+2)/3)/log 2          (sufficient, not sharp)
//
// theta1(x) = log(M/A)/log(C/A) is the exponent that makes C^q A^(1-q) hit
// M exactly at x; theta2 is the analogue for the mixed bound pair
// E = C/6 + 5A/6 against C^(1/6) A^(5/6).  theta1 increases from 1/6 to
// beta_thm11, theta2 decreases from 8/25 to lambda_thm12.

namespace nsbounds {

struct ConstantsTable {
    double alpha_thm11 = 0.0;   // 1/6, sharp lower exponent
    double beta_thm11 = 0.0;    // sharp upper exponent
    double lambda_thm12 = 0.0;  // sharp lower weight
    double mu_thm12 = 0.0;      // 8/25, sharp upper weight
    double alpha_ineq11 = 0.0;  // sharp lower weight of the convex bound
    double beta_ineq11 = 0.0;   // 1/6, sharp upper weight
    double mu_ineq12 = 0.0;     // sufficient upper exponent
    double lambda_ineq12 = 0.0; // 1/6, sufficient lower exponent
    double t_star = 0.0;        // log(1+sqrt(2))
    double p0 = 0.0;            // (p+1)^(1/p) = 2 log(1+sqrt(2))
};

// Root of (p+1)^(1/p) - 2 log(1+sqrt(2)) on [1.5, 2.5], bisected to 1e-13.
inline double solve_p0() {
    const double target = 2 * std::log1p(std::sqrt(2.0));
    const auto fn = [target](double p) {
        return std::exp(std::log1p(p) / p) - target;
    };
    double lo = 1.5, hi = 2.5;
    double flo = fn(lo);
    if (!(flo > 0.0 && fn(hi) < 0.0))
        throw std::logic_error("solve_p0: bracket does not straddle the root");
    while (hi - lo > 1e-13) {
        const double mid = (lo + hi) / 2;
        if (fn(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

inline const ConstantsTable& constants() {
    static const ConstantsTable table = [] {
        ConstantsTable c;
        c.t_star = std::log1p(std::sqrt(2.0));
        const double log2 = std::log(2.0);
        c.alpha_thm11 = 1.0 / 6;
        c.beta_thm11 = -std::log(c.t_star) / log2;
        c.lambda_thm12 =
            (-std::log(c.t_star) - log2 / 6) / (std::log(7.0 / 6) - log2 / 6);
        c.mu_thm12 = 8.0 / 25;
        c.alpha_ineq11 = (1 - c.t_star) / c.t_star;
        c.beta_ineq11 = 1.0 / 6;
        c.mu_ineq12 = std::log((std::sqrt(2.0) + 2) / 3) / log2;
        c.lambda_ineq12 = 1.0 / 6;
        c.p0 = solve_p0();
        return c;
    }();
    return table;
}

namespace detail {

// Coefficients of the numerator/denominator of theta2 divided by x^4, as
// series in x^2; full precision for |x| <= 0.01.
inline constexpr double kTheta2NumPoly[5] = {
    1.0 / 45, -62.0 / 2835, 557.0 / 28350, -8194.0 / 467775, 30102617.0 / 1915538625,
};
inline constexpr double kTheta2DenPoly[5] = {
    5.0 / 72, -35.0 / 648, 215.0 / 5184, -259.0 / 7776, 7775.0 / 279936,
};

template <typename Real>
inline Real theta1_impl(Real x) {
    return std::log1p(ns_ratio_m1(x)) / std::log1p(x * x);
}

template <typename Real>
inline Real theta2_impl(Real x) {
    const Real u = x * x;
    if (std::fabs(x) < Real(0.01))
        return poly_even(kTheta2NumPoly, u) / poly_even(kTheta2DenPoly, u);
    const Real lc6 = std::log1p(u) / 6;
    const Real num = std::log1p(ns_ratio_m1(x)) - lc6;
    const Real den = std::log1p(u / 6) - lc6;
    return num / den;
}

// log(E/A) - (1/6) log(C/A), the denominator scale of the theta2 profile.
template <typename Real>
inline Real theta2_denom(Real x) {
    const Real u = x * x;
    if (std::fabs(x) < Real(0.01)) return u * u * poly_even(kTheta2DenPoly, u);
    return std::log1p(u / 6) - std::log1p(u) / 6;
}

inline void check_theta_domain(double x, const char* who) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error(std::string(who) + ": x must lie in (0, 1), got " +
                                std::to_string(x));
}

}  // namespace detail

inline double theta1(double x) {
    detail::check_theta_domain(x, "theta1");
    return detail::theta1_impl(x);
}

inline double theta2(double x) {
    detail::check_theta_domain(x, "theta2");
    return detail::theta2_impl(x);
}

// Endpoint limits, exposed explicitly since the quotients degenerate there.
inline double theta1_limit_zero() { return 1.0 / 6; }
inline double theta1_limit_one() { return constants().beta_thm11; }
inline double theta2_limit_zero() { return 8.0 / 25; }
inline double theta2_limit_one() { return constants().lambda_thm12; }

}  // namespace nsbounds
