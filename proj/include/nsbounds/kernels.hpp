#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nsbounds/coefficients.hpp"
#include "nsbounds/detail/stable.hpp"

// The three hyperbolic kernels driving the sharp-bound proofs:
//
//   h(t) = h1(t)/h2(t) with
//     h1 = 52 t cosh 2t - 66 sinh 2t + 2 t cosh 4t - 3 sinh 4t + 90 t
//     h2 = -20 t cosh 2t + 5 t cosh 4t + 15 t
//   f(t) = log(sinh t / t) / log(cosh t)
//   g(t) = [log(sinh t / t) - (1/3) log cosh t] /
//          [log(1 + sinh^2 t / 6) - (1/3) log cosh t]
//
// The closed forms of h1, h2 are evaluated through cosh/sinh remainders
// (cosh u - 1 - u^2/2 and sinh u - u - u^3/6): the polynomial heads cancel
// identically, which is what makes the quotient stable near t = 0.

namespace nsbounds {

enum class KernelId { F, G, H, HPrime, H1, H2 };

struct EvalMethod {
    enum class Kind { Closed, Series };
    Kind kind = Kind::Closed;
    int terms = 40;

    static EvalMethod closed() { return EvalMethod{Kind::Closed, 0}; }
    static EvalMethod series(int n_terms) {
        if (n_terms < 1)
            throw std::domain_error("EvalMethod::series: need at least one term");
        if (n_terms > 61)
            throw std::domain_error(
                "EvalMethod::series: terms capped at 61 (coefficient index 60)");
        return EvalMethod{Kind::Series, n_terms};
    }
};

struct KernelSample {
    KernelId id = KernelId::H;
    double t = 0.0;
    double value = 0.0;
    EvalMethod method = EvalMethod::closed();
};

namespace detail {

inline const std::array<double, 61>& h_series_a() {
    static const std::array<double, 61> table = [] {
        std::array<double, 61> t{};
        for (long long n = 0; n <= 60; ++n)
            t[static_cast<size_t>(n)] = coeff_h(n).first.convert_to<double>();
        return t;
    }();
    return table;
}

inline const std::array<double, 61>& h_series_b() {
    static const std::array<double, 61> table = [] {
        std::array<double, 61> t{};
        for (long long n = 0; n <= 60; ++n)
            t[static_cast<size_t>(n)] = coeff_h(n).second.convert_to<double>();
        return t;
    }();
    return table;
}

// h1(t) with the degree-3 polynomial head cancelled against the remainders.
template <typename Real>
inline Real h1_closed(Real t) {
    return 52 * t * cosh_rem2(2 * t) - 66 * sinh_rem3(2 * t) +
           2 * t * cosh_rem2(4 * t) - 3 * sinh_rem3(4 * t);
}

template <typename Real>
inline Real h2_closed(Real t) {
    return -20 * t * cosh_rem2(2 * t) + 5 * t * cosh_rem2(4 * t);
}

template <typename Real>
inline Real kernel_f(Real t) {
    return std::log1p(sinh_over_t_m1(t)) / std::log1p(cosh_m1(t));
}

// Numerator/denominator of g divided by t^4, as series in t^2.  Valid with
// full precision for |t| <= 0.01; the closed form takes over above.
inline constexpr double kG1Poly[5] = {
    1.0 / 45, -4.0 / 567, 1.0 / 450, -68.0 / 93555, 42842.0 / 174139875,
};
inline constexpr double kG2Poly[5] = {
    5.0 / 72, -5.0 / 648, 7.0 / 5184, -13.0 / 18144, 887.0 / 3265920,
};

template <typename Real>
inline Real kernel_g(Real t) {
    if (std::fabs(t) < Real(0.01)) {
        const Real u = t * t;
        return poly_even(kG1Poly, u) / poly_even(kG2Poly, u);
    }
    const Real lc3 = std::log1p(cosh_m1(t)) / 3;
    const Real s = std::sinh(t);
    const Real num = std::log1p(sinh_over_t_m1(t)) - lc3;
    const Real den = std::log1p(s * s / 6) - lc3;
    return num / den;
}

// Wronskian coefficients for h': with h = A(u)/B(u), u = t^2, the derivative
// is h'(t) = 2t (A'B - AB')/B^2 and A'B - AB' = sum w_k u^k.  Exact rational
// arithmetic here; the products a_i b_j are individually ~4^k and cancel to
// the much smaller w_k, so forming them in doubles would waste digits.
inline const std::array<double, 41>& h_prime_w() {
    static const std::array<double, 41> table = [] {
        std::array<double, 41> t{};
        for (long long k = 0; k <= 40; ++k) {
            Rational w = 0;
            for (long long i = 1; i <= k + 1; ++i) {
                const auto [ai, bi] = coeff_h(i);
                const auto [aj, bj] = coeff_h(k + 1 - i);
                w += i * (ai * bj - bi * aj);
            }
            t[static_cast<size_t>(k)] = w.convert_to<double>();
        }
        return t;
    }();
    return table;
}

template <typename Real>
inline Real h_prime(Real t) {
    if (std::fabs(t) < Real(0.5)) {
        // Quotient rule on the u = t^2 series; the closed form below loses
        // roughly two digits per halving of t once the t^9 heads of
        // h1'h2 - h1 h2' start cancelling.
        const auto& w = h_prime_w();
        const auto& bs = h_series_b();
        const Real u = t * t;
        Real wv = Real(w[40]), bv = Real(bs[40]);
        for (int k = 39; k >= 0; --k) {
            wv = wv * u + Real(w[static_cast<size_t>(k)]);
            bv = bv * u + Real(bs[static_cast<size_t>(k)]);
        }
        return 2 * t * wv / (bv * bv);
    }
    // The cubic heads of h1, h2 and the quartic heads of their derivatives
    // cancel identically; only the remainders survive.
    const Real u4 = t * t * t * t;
    const Real cr2 = cosh_rem2(2 * t), sr3 = sinh_rem3(2 * t);
    const Real cr4 = cosh_rem2(4 * t), sr4 = sinh_rem3(4 * t);
    const Real h1 = 52 * t * cr2 - 66 * sr3 + 2 * t * cr4 - 3 * sr4;
    const Real h2 = -20 * t * cr2 + 5 * t * cr4;
    const Real h1p = 224 * u4 + 104 * t * sr3 - 80 * cr2 + 8 * t * sr4 - 10 * cr4;
    const Real h2p = 160 * u4 - 40 * t * sr3 - 20 * cr2 + 20 * t * sr4 + 5 * cr4;
    return (h1p * h2 - h1 * h2p) / (h2 * h2);
}

}  // namespace detail

inline double eval_kernel(KernelId id, double t, EvalMethod method) {
    if (!std::isfinite(t) || t <= 0.0)
        throw std::domain_error("eval_kernel: t must be positive and finite, got " +
                                std::to_string(t));
    if (method.kind == EvalMethod::Kind::Series) {
        if (id != KernelId::H && id != KernelId::H1 && id != KernelId::H2)
            throw std::domain_error(
                "eval_kernel: series evaluation exists only for H, H1, H2");
        const auto& a = detail::h_series_a();
        const auto& b = detail::h_series_b();
        const double u = t * t;
        double num = 0.0, den = 0.0;
        for (int n = method.terms - 1; n >= 0; --n) {
            num = num * u + a[static_cast<size_t>(n)];
            den = den * u + b[static_cast<size_t>(n)];
        }
        const double t5 = t * t * t * t * t;
        if (id == KernelId::H1) return t5 * num;
        if (id == KernelId::H2) return t5 * den;
        if (!(den > 0.0))
            throw std::logic_error("eval_kernel: h2 series lost positivity");
        return num / den;
    }
    switch (id) {
        case KernelId::F:
            return detail::kernel_f(t);
        case KernelId::G:
            return detail::kernel_g(t);
        case KernelId::H: {
            const double den = detail::h2_closed(t);
            if (!(den > 0.0))
                throw std::logic_error("eval_kernel: h2 closed form lost positivity");
            return detail::h1_closed(t) / den;
        }
        case KernelId::H1:
            return detail::h1_closed(t);
        case KernelId::H2:
            return detail::h2_closed(t);
        case KernelId::HPrime:
            return detail::h_prime(t);
    }
    throw std::domain_error("eval_kernel: unknown kernel id");
}

inline double eval_h_prime(double t) {
    if (!std::isfinite(t) || t <= 0.0)
        throw std::domain_error("eval_h_prime: t must be positive and finite, got " +
                                std::to_string(t));
    return detail::h_prime(t);
}

inline KernelSample sample_kernel(KernelId id, double t,
                                  EvalMethod method = EvalMethod::closed()) {
    return KernelSample{id, t, eval_kernel(id, t, method), method};
}

}  // namespace nsbounds
