#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsbounds {

// Validated pair of positive reals together with the normalized difference
// x = (a-b)/(a+b) used throughout the library.  x lies in (-1, 1).
struct PositivePair {
    double a = 1.0;
    double b = 1.0;
    double x = 0.0;
};

inline PositivePair make_pair(double a, double b) {
    if (!std::isfinite(a) || a <= 0.0)
        throw std::domain_error("make_pair: a must be positive and finite, got " +
                                std::to_string(a));
    if (!std::isfinite(b) || b <= 0.0)
        throw std::domain_error("make_pair: b must be positive and finite, got " +
                                std::to_string(b));
    const double sum = a + b;
    if (!std::isfinite(sum))
        throw std::domain_error("make_pair: a + b overflows");
    return PositivePair{a, b, (a - b) / sum};
}

enum class MeanKind {
    Arithmetic,
    Geometric,
    ContraHarmonic,
    Logarithmic,
    SeiffertFirst,
    SeiffertSecond,
    NeumanSandor,
    GeneralizedLog,
};

}  // namespace nsbounds
