#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <iterator>
#include <limits>
#include <random>

#include "nsbounds/means.hpp"
#include "nsbounds/pair.hpp"
#include "reference_values.hpp"

using namespace nsbounds;

namespace {

double rel_err(double got, double want) {
    if (want == 0.0) return std::fabs(got);
    return std::fabs((got - want) / want);
}

}  // namespace

TEST_CASE("make_pair validates and normalizes", "[pair]") {
    const PositivePair pr = make_pair(1.0, 2.0);
    CHECK(pr.a == 1.0);
    CHECK(pr.b == 2.0);
    CHECK(pr.x == -1.0 / 3.0);

    CHECK(make_pair(2.0, 1.0).x == 1.0 / 3.0);
    CHECK(make_pair(5.0, 5.0).x == 0.0);

    CHECK_THROWS_AS(make_pair(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_pair(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(make_pair(std::nan(""), 1.0), std::domain_error);
    CHECK_THROWS_AS(make_pair(1.0, std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(make_pair(1e308, 1e308), std::domain_error);
}

TEST_CASE("elementary means at simple pairs", "[means]") {
    const PositivePair pr = make_pair(1.0, 2.0);
    CHECK(eval_elementary_mean(MeanKind::Arithmetic, pr) == 1.5);
    CHECK(rel_err(eval_elementary_mean(MeanKind::Geometric, pr), std::sqrt(2.0)) <
          1e-15);
    CHECK(rel_err(eval_elementary_mean(MeanKind::ContraHarmonic, pr), 5.0 / 3.0) <
          1e-15);
    CHECK_THROWS_AS(eval_elementary_mean(MeanKind::Logarithmic, pr),
                    std::domain_error);
    CHECK_THROWS_AS(eval_elementary_mean(MeanKind::NeumanSandor, pr),
                    std::domain_error);
}

TEST_CASE("difference means match the reference evaluations", "[means]") {
    const PositivePair pr = make_pair(1.0, 2.0);
    CHECK(rel_err(eval_difference_mean(MeanKind::Logarithmic, pr),
                  refvals::kLogMean_1_2) < 1e-13);
    CHECK(rel_err(eval_difference_mean(MeanKind::Logarithmic, pr),
                  1.0 / std::log(2.0)) < 1e-14);
    CHECK(rel_err(eval_difference_mean(MeanKind::SeiffertFirst, pr),
                  refvals::kSeiffertFirst_1_2) < 1e-13);
    CHECK(rel_err(eval_difference_mean(MeanKind::SeiffertSecond, pr),
                  refvals::kSeiffertSecond_1_2) < 1e-13);
    CHECK(rel_err(neuman_sandor(pr), refvals::kNeumanSandor_1_2) < 1e-13);

    CHECK(rel_err(neuman_sandor(make_pair(3.0, 7.0)), refvals::kNeumanSandor_3_7) <
          1e-13);
    CHECK(rel_err(eval_difference_mean(MeanKind::SeiffertSecond, make_pair(2.0, 5.0)),
                  refvals::kSeiffertSecond_2_5) < 1e-13);
    CHECK(rel_err(eval_difference_mean(MeanKind::SeiffertFirst, make_pair(1.0, 10.0)),
                  refvals::kSeiffertFirst_1_10) < 1e-13);

    CHECK_THROWS_AS(eval_difference_mean(MeanKind::Arithmetic, pr),
                    std::domain_error);
}

TEST_CASE("ratio evaluators track the reference down to tiny x", "[means]") {
    for (std::size_t i = 0; i < std::size(refvals::kRatioProbeX); ++i) {
        const double x = refvals::kRatioProbeX[i];
        CHECK(rel_err(detail::ns_ratio_m1(x), refvals::kRatioM1NS[i]) < 1e-13);
        CHECK(rel_err(detail::seiffert1_ratio_m1(x),
                      refvals::kRatioM1SeiffertFirst[i]) < 1e-13);
        CHECK(rel_err(detail::seiffert2_ratio_m1(x),
                      refvals::kRatioM1SeiffertSecond[i]) < 1e-13);
        CHECK(rel_err(detail::log_ratio_m1(x), refvals::kRatioM1Log[i]) < 1e-13);
        CHECK(rel_err(detail::identric_ratio_m1(x), refvals::kRatioM1Identric[i]) <
              1e-13);
        CHECK(rel_err(detail::genlog_ratio_m1(refvals::kP0, x),
                      refvals::kRatioM1GenLogP0[i]) < 1e-13);
    }
}

TEST_CASE("series and closed branches agree near the crossover", "[means]") {
    // One ulp of error in the inverse function becomes eps/|m1| ~ 6 eps/x^2
    // relative in the quotient, so the closed form degrades quadratically as
    // x shrinks.  The budget below tracks that with 4x headroom.
    for (const double x : {0.02, 0.05, 0.08, 0.1, 0.124}) {
        const double tol = 5e-13 + 3 * 2.3e-16 / (x * x);
        CHECK(rel_err(detail::ns_ratio_m1(x),
                      (x - std::asinh(x)) / std::asinh(x)) < tol);
        CHECK(rel_err(detail::seiffert1_ratio_m1(x),
                      (x - std::asin(x)) / std::asin(x)) < tol);
        CHECK(rel_err(detail::seiffert2_ratio_m1(x),
                      (x - std::atan(x)) / std::atan(x)) < tol);
        CHECK(rel_err(detail::log_ratio_m1(x),
                      (x - std::atanh(x)) / std::atanh(x)) < tol);
    }
}

TEST_CASE("generalized log mean hits its exact special cases", "[genlog]") {
    const PositivePair pr = make_pair(1.0, 2.0);

    // p = 1 collapses to the arithmetic mean, p = 2 has a closed form.
    CHECK(rel_err(generalized_log_mean(1.0, pr), 1.5) < 1e-15);
    CHECK(rel_err(generalized_log_mean(2.0, pr), std::sqrt(7.0 / 3.0)) < 1e-14);
    CHECK(rel_err(generalized_log_mean(2.0, pr), refvals::kGenLog_2_1_2) < 1e-13);

    // p = -1 is the logarithmic mean, p = 0 the identric limit.
    CHECK(generalized_log_mean(-1.0, pr) ==
          eval_difference_mean(MeanKind::Logarithmic, pr));
    CHECK(rel_err(generalized_log_mean(0.0, pr), refvals::kIdentric_1_2) < 1e-13);
    CHECK(rel_err(generalized_log_mean(0.0, pr), 4.0 / std::exp(1.0)) < 1e-14);

    CHECK(rel_err(generalized_log_mean(0.5, pr), refvals::kGenLog_half_1_2) < 1e-13);
    CHECK(rel_err(generalized_log_mean(refvals::kP0, pr), refvals::kGenLog_p0_1_2) <
          1e-13);
    CHECK(rel_err(generalized_log_mean(-2.0, pr), refvals::kGenLog_neg2_1_2) < 1e-13);

    // Large and negative orders against the direct closed formula.
    CHECK(rel_err(generalized_log_mean(10.0, pr), std::pow(2047.0 / 11.0, 0.1)) <
          1e-14);
    CHECK(rel_err(generalized_log_mean(-3.0, pr), std::pow(0.375, -1.0 / 3.0)) <
          1e-14);

    // Identric closed branch (|x| >= 1/2).
    CHECK(rel_err(generalized_log_mean(0.0, make_pair(1.0, 4.0)),
                  std::pow(256.0, 1.0 / 3.0) / std::exp(1.0)) < 1e-14);

    CHECK_THROWS_AS(generalized_log_mean(std::nan(""), pr), std::domain_error);
    CHECK_THROWS_AS(
        generalized_log_mean(std::numeric_limits<double>::infinity(), pr),
        std::domain_error);
}

TEST_CASE("all means collapse to the common value when a equals b", "[means]") {
    const PositivePair pr = make_pair(3.7, 3.7);
    for (MeanKind k :
         {MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::ContraHarmonic,
          MeanKind::Logarithmic, MeanKind::SeiffertFirst, MeanKind::SeiffertSecond,
          MeanKind::NeumanSandor, MeanKind::GeneralizedLog}) {
        CHECK(eval_mean(k, pr, refvals::kP0) == 3.7);
    }
}

TEST_CASE("means are symmetric and homogeneous", "[means]") {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = std::exp(logu(rng));
        const double b = std::exp(logu(rng));
        if (a == b) continue;
        const PositivePair pr = make_pair(a, b);
        const PositivePair flipped = make_pair(b, a);
        for (MeanKind k :
             {MeanKind::Geometric, MeanKind::ContraHarmonic, MeanKind::Logarithmic,
              MeanKind::SeiffertFirst, MeanKind::SeiffertSecond,
              MeanKind::NeumanSandor, MeanKind::GeneralizedLog}) {
            const double v = eval_mean(k, pr, refvals::kP0);
            CHECK(rel_err(eval_mean(k, flipped, refvals::kP0), v) < 1e-15);
            for (const double lam : {2.5, 1e-3, 1e4}) {
                const PositivePair scaled = make_pair(lam * a, lam * b);
                CHECK(rel_err(eval_mean(k, scaled, refvals::kP0), lam * v) < 1e-14);
            }
        }
    }
}

TEST_CASE("strict ordering of the mean chain on random pairs", "[means]") {
    std::mt19937 rng(911u);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = std::exp(logu(rng));
        double b = std::exp(logu(rng));
        if (a == b) b *= 1.0000001;
        const PositivePair pr = make_pair(a, b);
        const double g = eval_elementary_mean(MeanKind::Geometric, pr);
        const double l = eval_difference_mean(MeanKind::Logarithmic, pr);
        const double p1 = eval_difference_mean(MeanKind::SeiffertFirst, pr);
        const double am = eval_elementary_mean(MeanKind::Arithmetic, pr);
        const double m = neuman_sandor(pr);
        const double t = eval_difference_mean(MeanKind::SeiffertSecond, pr);
        const double c = eval_elementary_mean(MeanKind::ContraHarmonic, pr);
        CHECK(g < l);
        CHECK(l < p1);
        CHECK(p1 < am);
        CHECK(am < m);
        CHECK(m < t);
        CHECK(t < c);
    }
}
