#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

// Exact coefficient sequences behind the series form of the kernel h and the
// derivative ratio driving the kernel f.  Everything is computed in
// arbitrary-precision rationals; callers convert to binary64 only when
// assembling a numeric series.  The monotonicity facts asserted by the test
// suite are about the exact sequences, so no rounding is allowed here.

namespace nsbounds {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline void check_coeff_index(long long n) {
    if (n < 0)
        throw std::domain_error("coefficient index must be non-negative, got " +
                                std::to_string(n));
    if (n > 60)
        throw std::domain_error("coefficient index capped at 60, got " +
                                std::to_string(n));
}

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt pow2(int e) { return BigInt(1) << e; }

}  // namespace detail

// a_n = [16 + 13n + (2n-1) 2^(2n+2)] 2^(2n+7) / (2n+5)!
// b_n = 5 (2^(2n+2) - 1) 2^(2n+6) / (2n+4)!
// These are the numerator/denominator series coefficients of h = h1/h2 after
// the common t^(2n+5) factor is pulled out.
inline std::pair<Rational, Rational> coeff_h(long long n) {
    detail::check_coeff_index(n);
    const int ni = static_cast<int>(n);
    const BigInt a_num =
        (16 + 13 * BigInt(ni) + (2 * BigInt(ni) - 1) * detail::pow2(2 * ni + 2)) *
        detail::pow2(2 * ni + 7);
    const BigInt b_num =
        5 * (detail::pow2(2 * ni + 2) - 1) * detail::pow2(2 * ni + 6);
    return {Rational(a_num, detail::factorial(2 * ni + 5)),
            Rational(b_num, detail::factorial(2 * ni + 4))};
}

// c_n = (30n^2 + 135n + 110 - 4^(n+3)) 4^(n+1) + 11, always an integer.
inline BigInt coeff_c(long long n) {
    detail::check_coeff_index(n);
    const int ni = static_cast<int>(n);
    const BigInt p4 = detail::pow2(2 * ni + 2);  // 4^(n+1)
    return (30 * BigInt(ni) * ni + 135 * BigInt(ni) + 110 - 16 * p4) * p4 + 11;
}

// A_n = 2^(2n+2) (2n+1) / (2n+3)!,  B_n = 2^(2n+2) / (2n+2)!
// Series coefficients of the numerator/denominator of f1'/f2' where
// f1 = log(sinh t / t), f2 = log cosh t; A_n/B_n = 1 - 2/(2n+3).
inline std::pair<Rational, Rational> coeff_f(long long n) {
    detail::check_coeff_index(n);
    const int ni = static_cast<int>(n);
    const BigInt p = detail::pow2(2 * ni + 2);
    return {Rational(p * (2 * ni + 1), detail::factorial(2 * ni + 3)),
            Rational(p, detail::factorial(2 * ni + 2))};
}

// a_(n+1)/b_(n+1) - a_n/b_n in the closed form
//   -6 c_n / [5 (2n+5)(2n+7)(2^(2n+2)-1)(2^(2n+4)-1)].
// Must agree with the direct ratio difference exactly; the sign of the gap
// is the sign of -c_n.
inline Rational ratio_gap(long long n) {
    detail::check_coeff_index(n);
    const int ni = static_cast<int>(n);
    const BigInt den = 5 * BigInt(2 * ni + 5) * (2 * ni + 7) *
                       (detail::pow2(2 * ni + 2) - 1) *
                       (detail::pow2(2 * ni + 4) - 1);
    return Rational(-6 * coeff_c(n), den);
}

// Bundle of the three h-related coefficients at one index.
struct CoeffTriple {
    long long n = 0;
    Rational a;
    Rational b;
    BigInt c;
};

inline CoeffTriple coeff_triple(long long n) {
    auto [a, b] = coeff_h(n);
    return CoeffTriple{n, std::move(a), std::move(b), coeff_c(n)};
}

}  // namespace nsbounds
