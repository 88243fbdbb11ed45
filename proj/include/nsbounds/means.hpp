#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsbounds/detail/stable.hpp"
#include "nsbounds/pair.hpp"

// The eight bivariate means, all evaluated through mean/A - 1 so that values
// stay fully accurate down to a = b.  With x = (a-b)/(a+b) and A = (a+b)/2:
//
//   G = A sqrt(1-x^2)          C = A (1+x^2)
//   L = A x/atanh(x)           P = A x/asin(x)       T = A x/atan(x)
//   M = A x/asinh(x)           L_p = A [(1+S)^(1/p)] with S given below
//
// Each ratio-minus-one switches from a Maclaurin polynomial in x^2 to the
// rearranged closed form at |x| = 0.125; both branches carry full relative
// precision there.

namespace nsbounds {

namespace detail {

// Coefficients of x/phi(x) - 1 = sum_k c_k x^(2k), exact rationals rounded
// once to binary64.  asinh/asin share magnitudes, as do atan/atanh.
inline constexpr double kAsinhRatioCoef[10] = {
    1.0 / 6,
    -17.0 / 360,
    367.0 / 15120,
    -27859.0 / 1814400,
    1295803.0 / 119750400,
    -5329242827.0 / 653837184000,
    25198857127.0 / 3923023104000,
    -11959712166949.0 / 2286562037760000,
    11153239773419941.0 / 2554547108585472000,
    -31326450596954510807.0 / 8430005458332057600000.0,
};

inline constexpr double kAsinRatioCoef[10] = {
    -1.0 / 6,
    -17.0 / 360,
    -367.0 / 15120,
    -27859.0 / 1814400,
    -1295803.0 / 119750400,
    -5329242827.0 / 653837184000,
    -25198857127.0 / 3923023104000,
    -11959712166949.0 / 2286562037760000,
    -11153239773419941.0 / 2554547108585472000,
    -31326450596954510807.0 / 8430005458332057600000.0,
};

inline constexpr double kAtanRatioCoef[10] = {
    1.0 / 3,
    -4.0 / 45,
    44.0 / 945,
    -428.0 / 14175,
    10196.0 / 467775,
    -10719068.0 / 638512875,
    25865068.0 / 1915538625,
    -5472607916.0 / 488462349375,
    74185965772.0 / 7795859096025,
    -264698472181028.0 / 32157918771103125,
};

inline constexpr double kAtanhRatioCoef[10] = {
    -1.0 / 3,
    -4.0 / 45,
    -44.0 / 945,
    -428.0 / 14175,
    -10196.0 / 467775,
    -10719068.0 / 638512875,
    -25865068.0 / 1915538625,
    -5472607916.0 / 488462349375,
    -74185965772.0 / 7795859096025,
    -264698472181028.0 / 32157918771103125,
};

inline constexpr double kRatioSeriesCut = 0.125;

// M/A - 1 = x/asinh(x) - 1
template <typename Real>
inline Real ns_ratio_m1(Real x) {
    if (std::fabs(x) < Real(kRatioSeriesCut))
        return x * x * poly_even(kAsinhRatioCoef, x * x);
    const Real s = asinh_stable(x);
    return (x - s) / s;
}

// ns_ratio_m1(x) - x^2/6, i.e. the series tail from x^4 on; negative.
// Only valid below kRatioSeriesCut.
template <typename Real>
inline Real ns_ratio_m1_tail(Real x) {
    const Real u = x * x;
    Real s = Real(kAsinhRatioCoef[9]);
    for (int i = 8; i >= 1; --i) s = s * u + Real(kAsinhRatioCoef[i]);
    return u * u * s;
}

// P/A - 1 = x/asin(x) - 1
template <typename Real>
inline Real seiffert1_ratio_m1(Real x) {
    if (std::fabs(x) < Real(kRatioSeriesCut))
        return x * x * poly_even(kAsinRatioCoef, x * x);
    const Real s = std::asin(x);
    return (x - s) / s;
}

// T/A - 1 = x/atan(x) - 1
template <typename Real>
inline Real seiffert2_ratio_m1(Real x) {
    if (std::fabs(x) < Real(kRatioSeriesCut))
        return x * x * poly_even(kAtanRatioCoef, x * x);
    const Real s = std::atan(x);
    return (x - s) / s;
}

// L/A - 1 = x/atanh(x) - 1
template <typename Real>
inline Real log_ratio_m1(Real x) {
    if (std::fabs(x) < Real(kRatioSeriesCut))
        return x * x * poly_even(kAtanhRatioCoef, x * x);
    const Real s = std::atanh(x);
    return (x - s) / s;
}

// G/A - 1 = sqrt(1-x^2) - 1
template <typename Real>
inline Real geometric_ratio_m1(Real x) {
    return std::expm1(std::log1p(-x * x) / 2);
}

// log(I/A) = -sum_{k>=1} x^(2k) / (2k(2k+1)); I is the identric mean L_0.
template <typename Real>
inline Real identric_exponent(Real x) {
    const Real u = x * x;
    if (std::fabs(x) < Real(0.5)) {
        Real term = u / 6;
        Real sum = term;
        for (int k = 2; k < 80; ++k) {
            term *= u * Real((2 * k - 2) * (2 * k - 1)) / Real((2 * k) * (2 * k + 1));
            sum += term;
            if (term < sum * Real(1e-20)) break;
        }
        return -sum;
    }
    const Real num = (1 + x) * std::log1p(x) - (1 - x) * std::log1p(-x);
    return num / (2 * x) - 1;
}

template <typename Real>
inline Real identric_ratio_m1(Real x) {
    return std::expm1(identric_exponent(x));
}

// S with 1 + S = ((1+x)^(p+1) - (1-x)^(p+1)) / (2x(p+1)); the series
// coefficient of x^(2k) is p(p-1)...(p-2k+1)/(2k+1)! and terminates for
// integer p >= 1, so L_1 = A and L_2 come out exact on the series branch.
template <typename Real>
inline Real genlog_s(Real p, Real x) {
    if (std::fabs(x) < Real(kRatioSeriesCut)) {
        const Real u = x * x;
        Real term = p * (p - 1) / 6 * u;
        Real sum = term;
        for (int k = 1; k < 40; ++k) {
            term *= u * (p - 2 * k) * (p - 2 * k - 1) / Real((2 * k + 2) * (2 * k + 3));
            sum += term;
            if (term == Real(0) || std::fabs(term) <= std::fabs(sum) * Real(1e-20)) break;
        }
        return sum;
    }
    const Real v =
        (std::pow(1 + x, p + 1) - std::pow(1 - x, p + 1)) / (2 * x * (p + 1));
    return v - 1;
}

// L_p/A - 1 for p not in {-1, 0}
template <typename Real>
inline Real genlog_ratio_m1(Real p, Real x) {
    return std::expm1(std::log1p(genlog_s(p, x)) / p);
}

}  // namespace detail

inline double eval_elementary_mean(MeanKind kind, const PositivePair& pr) {
    const double amean = (pr.a + pr.b) / 2;
    switch (kind) {
        case MeanKind::Arithmetic:
            return amean;
        case MeanKind::Geometric:
            return std::sqrt(pr.a) * std::sqrt(pr.b);
        case MeanKind::ContraHarmonic:
            return amean * (1 + pr.x * pr.x);
        default:
            throw std::domain_error(
                "eval_elementary_mean: kind must be Arithmetic, Geometric or "
                "ContraHarmonic");
    }
}

inline double eval_difference_mean(MeanKind kind, const PositivePair& pr) {
    const double amean = (pr.a + pr.b) / 2;
    if (pr.x == 0.0) return amean;  // continuous limit at a = b
    switch (kind) {
        case MeanKind::Logarithmic:
            return amean * (1 + detail::log_ratio_m1(pr.x));
        case MeanKind::SeiffertFirst:
            return amean * (1 + detail::seiffert1_ratio_m1(pr.x));
        case MeanKind::SeiffertSecond:
            return amean * (1 + detail::seiffert2_ratio_m1(pr.x));
        default:
            throw std::domain_error(
                "eval_difference_mean: kind must be Logarithmic, SeiffertFirst or "
                "SeiffertSecond");
    }
}

inline double neuman_sandor(const PositivePair& pr) {
    const double amean = (pr.a + pr.b) / 2;
    if (pr.x == 0.0) return amean;
    return amean * (1 + detail::ns_ratio_m1(pr.x));
}

// p-th generalized logarithmic mean; p = -1 is the logarithmic mean and
// p = 0 the identric mean.
inline double generalized_log_mean(double p, const PositivePair& pr) {
    if (!std::isfinite(p))
        throw std::domain_error("generalized_log_mean: p must be finite");
    const double amean = (pr.a + pr.b) / 2;
    if (pr.x == 0.0) return amean;
    if (p == -1.0) return amean * (1 + detail::log_ratio_m1(pr.x));
    if (p == 0.0) return amean * (1 + detail::identric_ratio_m1(pr.x));
    return amean * (1 + detail::genlog_ratio_m1(p, pr.x));
}

// Dispatcher used by the command line front end.  p is consulted only for
// MeanKind::GeneralizedLog.
inline double eval_mean(MeanKind kind, const PositivePair& pr, double p = 0.0) {
    switch (kind) {
        case MeanKind::Arithmetic:
        case MeanKind::Geometric:
        case MeanKind::ContraHarmonic:
            return eval_elementary_mean(kind, pr);
        case MeanKind::Logarithmic:
        case MeanKind::SeiffertFirst:
        case MeanKind::SeiffertSecond:
            return eval_difference_mean(kind, pr);
        case MeanKind::NeumanSandor:
            return neuman_sandor(pr);
        case MeanKind::GeneralizedLog:
            return generalized_log_mean(p, pr);
    }
    throw std::domain_error("eval_mean: unknown kind");
}

}  // namespace nsbounds
