#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nsbounds/constants.hpp"
#include "nsbounds/means.hpp"
#include "nsbounds/pair.hpp"

// Grid certification of the inequality families.  Margins are evaluated in
// a transformed space chosen per family (exponent space for the power
// bounds, ratio-minus-one space for the rest) so that a margin far below
// the spacing of adjacent mean values still comes out with the right sign.
// A margin inside [-1e-13, 0) counts as numerically indeterminate and is
// re-decided by the same formulas in long double.

namespace nsbounds {

enum class Family {
    THM11,      // C^a A^(1-a) < M < C^b A^(1-b)
    THM12,      // E^l G1^(1-l) < M < E^m G1^(1-m), E = C/6+5A/6, G1 = C^(1/6)A^(5/6)
    INEQ11,     // a C + (1-a) A < M < b C + (1-b) A
    INEQ12,     // like THM11 with the older sufficient upper exponent
    CHAIN,      // G < L < P < A < T < C
    NS_AMT,     // A < M < T
    NS_PM_A2,   // P M < A^2
    NS_AT_M2,   // A T < M^2 < (A^2 + T^2)/2
    KYFAN,      // G/G' < L/L' < P/P' < A/A' < M/M' < T/T' on (0,1/2)^2
    LP_BOUNDS,  // L_p0 < M < L_2
};

enum class Verdict { Pass, Violation };

enum class Side { Lower, Upper };

// Optional overrides of the two family constants (exponents, weights, or the
// generalized-log orders for LP_BOUNDS).  Defaults come from constants().
struct FamilyParams {
    std::optional<double> lower_const;
    std::optional<double> upper_const;
};

struct BoundCheck {
    Family family = Family::THM11;
    PositivePair pair{};
    double lower = 0.0;
    double middle = 0.0;
    double upper = 0.0;
    double margin = 0.0;  // min over sides, normalized by the largest compared value
    Verdict verdict = Verdict::Pass;
    bool refined = false;  // margin fell in the indeterminate band, re-checked
};

struct SweepReport {
    Family family = Family::THM11;
    std::string grid_spec;
    long long total = 0;
    long long violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    PositivePair worst_witness{};
    double elapsed_ms = 0.0;  // stays 0 unless timing was requested
};

namespace detail {

inline constexpr double kSlack = 1e-13;
inline constexpr double kSlackRefined = 1e-17;

template <typename Real>
inline Real family_margin(Family fam, Real xa, Real lo_c, Real up_c) {
    switch (fam) {
        case Family::THM11:
        case Family::INEQ12: {
            const Real th = theta1_impl(xa);
            const Real d = std::log1p(xa * xa);
            return std::min(-std::expm1((lo_c - th) * d),
                            std::expm1((up_c - th) * d));
        }
        case Family::THM12: {
            const Real th = theta2_impl(xa);
            const Real d = theta2_denom(xa);
            return std::min(-std::expm1((lo_c - th) * d),
                            std::expm1((up_c - th) * d));
        }
        case Family::INEQ11: {
            const Real m1 = ns_ratio_m1(xa);
            const Real u = xa * xa;
            const Real scale = 1 + m1;
            const Real mlo = (m1 - lo_c * u) / scale;
            Real mup;
            if (up_c == Real(1.0 / 6) && xa < Real(kRatioSeriesCut))
                mup = -ns_ratio_m1_tail(xa) / scale;
            else
                mup = (up_c * u - m1) / scale;
            return std::min(mlo, mup);
        }
        case Family::CHAIN: {
            const Real g = geometric_ratio_m1(xa);
            const Real l = log_ratio_m1(xa);
            const Real p = seiffert1_ratio_m1(xa);
            const Real t = seiffert2_ratio_m1(xa);
            const Real c = xa * xa;
            const Real m = std::min({l - g, p - l, -p, t, c - t});
            return m / (1 + c);
        }
        case Family::NS_AMT: {
            const Real m1 = ns_ratio_m1(xa);
            const Real t = seiffert2_ratio_m1(xa);
            return std::min(m1, t - m1) / (1 + t);
        }
        case Family::NS_PM_A2: {
            const Real p = seiffert1_ratio_m1(xa);
            const Real m = ns_ratio_m1(xa);
            return -(p + m + p * m);  // (A^2 - P M)/A^2, single-sided
        }
        case Family::NS_AT_M2: {
            const Real m = ns_ratio_m1(xa);
            const Real t = seiffert2_ratio_m1(xa);
            const Real lo = (2 * m - t) + m * m;
            const Real up = (t - 2 * m) + (t * t / 2 - m * m);
            return std::min(lo, up) / (1 + t + t * t / 2);
        }
        case Family::LP_BOUNDS: {
            const Real m = ns_ratio_m1(xa);
            const Real lo_r = genlog_ratio_m1(lo_c, xa);
            const Real up_r = genlog_ratio_m1(up_c, xa);
            return std::min(m - lo_r, up_r - m) / (1 + up_r);
        }
        case Family::KYFAN:
            break;  // handled by check_ky_fan
    }
    throw std::logic_error("family_margin: unhandled family");
}

template <typename Real>
inline void ky_fan_ratios(Real a, Real b, Real (&r)[6]) {
    const Real x1 = (a - b) / (a + b);
    const Real x2 = (b - a) / (2 - a - b);
    const Real base = (a + b) / (2 - a - b);  // A/A'
    r[0] = base * (1 + geometric_ratio_m1(x1)) / (1 + geometric_ratio_m1(x2));
    r[1] = base * (1 + log_ratio_m1(x1)) / (1 + log_ratio_m1(x2));
    r[2] = base * (1 + seiffert1_ratio_m1(x1)) / (1 + seiffert1_ratio_m1(x2));
    r[3] = base;
    r[4] = base * (1 + ns_ratio_m1(x1)) / (1 + ns_ratio_m1(x2));
    r[5] = base * (1 + seiffert2_ratio_m1(x1)) / (1 + seiffert2_ratio_m1(x2));
}

template <typename Real>
inline Real ky_fan_margin(Real a, Real b) {
    Real r[6];
    ky_fan_ratios(a, b, r);
    Real m = r[1] - r[0];
    for (int i = 2; i < 6; ++i) m = std::min(m, r[i] - r[i - 1]);
    return m / r[5];
}

struct TripleVals {
    double lower = 0.0, middle = 0.0, upper = 0.0;
};

inline TripleVals family_values(Family fam, const PositivePair& pr, double lo_c,
                                double up_c) {
    const double amean = (pr.a + pr.b) / 2;
    const double xa = std::fabs(pr.x);
    const double u = xa * xa;
    switch (fam) {
        case Family::THM11:
        case Family::INEQ12: {
            const double d = std::log1p(u);
            return {amean * std::exp(lo_c * d), neuman_sandor(pr),
                    amean * std::exp(up_c * d)};
        }
        case Family::THM12: {
            const double le = std::log1p(u / 6);
            const double lg = std::log1p(u) / 6;
            return {amean * std::exp(lo_c * le + (1 - lo_c) * lg), neuman_sandor(pr),
                    amean * std::exp(up_c * le + (1 - up_c) * lg)};
        }
        case Family::INEQ11:
            return {amean * (1 + lo_c * u), neuman_sandor(pr), amean * (1 + up_c * u)};
        case Family::CHAIN:
            return {eval_elementary_mean(MeanKind::Geometric, pr), amean,
                    amean * (1 + u)};
        case Family::NS_AMT:
            return {amean, neuman_sandor(pr),
                    eval_difference_mean(MeanKind::SeiffertSecond, pr)};
        case Family::NS_PM_A2: {
            const double pm = eval_difference_mean(MeanKind::SeiffertFirst, pr) *
                              neuman_sandor(pr);
            return {pm, amean * amean, amean * amean};  // single-sided
        }
        case Family::NS_AT_M2: {
            const double t = eval_difference_mean(MeanKind::SeiffertSecond, pr);
            const double m = neuman_sandor(pr);
            return {amean * t, m * m, (amean * amean + t * t) / 2};
        }
        case Family::LP_BOUNDS:
            return {generalized_log_mean(lo_c, pr), neuman_sandor(pr),
                    generalized_log_mean(up_c, pr)};
        case Family::KYFAN:
            break;
    }
    throw std::logic_error("family_values: unhandled family");
}

inline BoundCheck finish_check(BoundCheck bc, double margin,
                               double (*refine)(const PositivePair&, double, double),
                               double lo_c, double up_c) {
    if (margin < -kSlack) {
        bc.margin = margin;
        bc.verdict = Verdict::Violation;
    } else if (margin < 0.0) {
        const double refined = refine(bc.pair, lo_c, up_c);
        bc.margin = refined;
        bc.refined = true;
        bc.verdict = refined < -kSlackRefined ? Verdict::Violation : Verdict::Pass;
    } else {
        bc.margin = margin;
        bc.verdict = Verdict::Pass;
    }
    return bc;
}

}  // namespace detail

inline BoundCheck check_ky_fan(const PositivePair& pr) {
    if (!(pr.a < 0.5) || !(pr.b < 0.5))
        throw std::domain_error("check_ky_fan: both entries must lie in (0, 1/2)");
    if (pr.a == pr.b) throw std::domain_error("check_ky_fan: requires a != b");
    double r[6];
    detail::ky_fan_ratios(pr.a, pr.b, r);
    double m = r[1] - r[0];
    for (int i = 2; i < 6; ++i) m = std::min(m, r[i] - r[i - 1]);
    const double margin = m / r[5];

    BoundCheck bc;
    bc.family = Family::KYFAN;
    bc.pair = pr;
    bc.lower = r[0];
    bc.middle = r[3];
    bc.upper = r[5];
    return detail::finish_check(
        bc, margin,
        [](const PositivePair& p, double, double) {
            return static_cast<double>(detail::ky_fan_margin<long double>(p.a, p.b));
        },
        0.0, 0.0);
}

inline BoundCheck check_family(Family fam, const PositivePair& pr,
                               const FamilyParams& params = {}) {
    if (pr.a == pr.b) throw std::domain_error("check_family: requires a != b");
    if (fam == Family::KYFAN) return check_ky_fan(pr);

    const ConstantsTable& ct = constants();
    double lo_c = 0.0, up_c = 0.0;
    switch (fam) {
        case Family::THM11:
            lo_c = ct.alpha_thm11;
            up_c = ct.beta_thm11;
            break;
        case Family::THM12:
            lo_c = ct.lambda_thm12;
            up_c = ct.mu_thm12;
            break;
        case Family::INEQ11:
            lo_c = ct.alpha_ineq11;
            up_c = ct.beta_ineq11;
            break;
        case Family::INEQ12:
            lo_c = ct.lambda_ineq12;
            up_c = ct.mu_ineq12;
            break;
        case Family::LP_BOUNDS:
            lo_c = ct.p0;
            up_c = 2.0;
            break;
        default:
            break;
    }
    if (params.lower_const) lo_c = *params.lower_const;
    if (params.upper_const) up_c = *params.upper_const;

    const double xa = std::fabs(pr.x);
    const double margin = detail::family_margin<double>(fam, xa, lo_c, up_c);

    BoundCheck bc;
    bc.family = fam;
    bc.pair = pr;
    const detail::TripleVals vals = detail::family_values(fam, pr, lo_c, up_c);
    bc.lower = vals.lower;
    bc.middle = vals.middle;
    bc.upper = vals.upper;

    if (margin < -detail::kSlack) {
        bc.margin = margin;
        bc.verdict = Verdict::Violation;
    } else if (margin < 0.0) {
        const double refined = static_cast<double>(detail::family_margin<long double>(
            fam, std::fabs(static_cast<long double>(pr.x)),
            static_cast<long double>(lo_c), static_cast<long double>(up_c)));
        bc.margin = refined;
        bc.refined = true;
        bc.verdict =
            refined < -detail::kSlackRefined ? Verdict::Violation : Verdict::Pass;
    } else {
        bc.margin = margin;
        bc.verdict = Verdict::Pass;
    }
    return bc;
}

namespace detail {

inline PositivePair ratio_grid_pair(long long k, long long points) {
    const double lo = std::log1p(1e-6);
    const double hi = std::log(1e6);
    const double lr =
        points > 1 ? lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(points - 1)
                   : lo;
    return make_pair(1.0, std::exp(lr));
}

inline std::string ratio_grid_spec(long long points) {
    return "ratio b/a log-spaced [1+1e-6, 1e6], points=" + std::to_string(points);
}

inline std::string ky_fan_grid_spec(long long per_axis) {
    return "uniform " + std::to_string(per_axis) + "x" + std::to_string(per_axis) +
           " on (0.001,0.499)^2, diagonal excluded";
}

}  // namespace detail

// Runs check_family over the grid and aggregates.  For KYFAN `points` is the
// per-axis count of the square grid; otherwise it is the number of log-spaced
// ratios b/a with a = 1 fixed by homogeneity.  Worst-witness selection is the
// first minimum in grid order regardless of thread count.
inline SweepReport sweep(Family fam, long long points, FamilyParams params = {},
                         int threads = 1, bool record_timing = false) {
    if (points < 1) throw std::domain_error("sweep: need at least one grid point");
    if (fam == Family::KYFAN && points < 2)
        throw std::domain_error("sweep: kyfan grid needs at least two points per axis");
    const auto start = std::chrono::steady_clock::now();

    SweepReport rep;
    rep.family = fam;

    struct Local {
        long long violations = 0;
        double worst = std::numeric_limits<double>::infinity();
        long long worst_idx = -1;
        PositivePair witness{};
    };

    const bool ky = fam == Family::KYFAN;
    long long total;
    std::vector<double> ky_coords;
    if (ky) {
        rep.grid_spec = detail::ky_fan_grid_spec(points);
        total = points * points;
        ky_coords.resize(static_cast<size_t>(points));
        for (long long i = 0; i < points; ++i)
            ky_coords[static_cast<size_t>(i)] =
                0.001 + 0.498 * static_cast<double>(i + 1) /
                            static_cast<double>(points + 1);
    } else {
        rep.grid_spec = detail::ratio_grid_spec(points);
        total = points;
    }

    const auto run_range = [&](long long begin, long long end, Local& loc) {
        for (long long k = begin; k < end; ++k) {
            PositivePair pr;
            if (ky) {
                const long long i = k / points, j = k % points;
                if (i == j) continue;
                pr = make_pair(ky_coords[static_cast<size_t>(i)],
                               ky_coords[static_cast<size_t>(j)]);
            } else {
                pr = detail::ratio_grid_pair(k, points);
            }
            const BoundCheck bc = check_family(fam, pr, params);
            if (bc.verdict == Verdict::Violation) ++loc.violations;
            if (bc.margin < loc.worst) {
                loc.worst = bc.margin;
                loc.worst_idx = k;
                loc.witness = pr;
            }
        }
    };

    const int n_threads = std::max(
        1, std::min(threads, static_cast<int>(std::min<long long>(total, 64))));
    std::vector<Local> locals(static_cast<size_t>(n_threads));
    if (n_threads == 1) {
        run_range(0, total, locals[0]);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex error_mu;
        const long long chunk = (total + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const long long begin = chunk * w;
            const long long end = std::min<long long>(total, begin + chunk);
            pool.emplace_back([&, begin, end, w] {
                try {
                    run_range(begin, end, locals[static_cast<size_t>(w)]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    long long excluded = 0;
    Local best;
    for (const Local& loc : locals) {
        rep.violations += loc.violations;
        if (loc.worst_idx >= 0 && loc.worst < best.worst) best = loc;
    }
    if (ky) excluded = points;  // diagonal pairs skipped
    rep.total = total - excluded;
    rep.worst_margin = best.worst;
    rep.worst_witness = best.witness;

    if (record_timing) {
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
    return rep;
}

// Serial sweep variant that hands every BoundCheck to a sink (CSV export).
template <typename Fn>
inline SweepReport sweep_each(Family fam, long long points, FamilyParams params,
                              Fn&& per_check) {
    if (points < 1) throw std::domain_error("sweep: need at least one grid point");
    if (fam == Family::KYFAN && points < 2)
        throw std::domain_error("sweep: kyfan grid needs at least two points per axis");
    SweepReport rep;
    rep.family = fam;
    const bool ky = fam == Family::KYFAN;
    rep.grid_spec =
        ky ? detail::ky_fan_grid_spec(points) : detail::ratio_grid_spec(points);
    long long idx_best = -1;
    const auto consume = [&](long long k, const PositivePair& pr) {
        const BoundCheck bc = check_family(fam, pr, params);
        if (bc.verdict == Verdict::Violation) ++rep.violations;
        if (bc.margin < rep.worst_margin) {
            rep.worst_margin = bc.margin;
            rep.worst_witness = pr;
            idx_best = k;
        }
        ++rep.total;
        per_check(bc);
    };
    if (ky) {
        for (long long i = 0; i < points; ++i) {
            for (long long j = 0; j < points; ++j) {
                if (i == j) continue;
                const double ci = 0.001 + 0.498 * static_cast<double>(i + 1) /
                                              static_cast<double>(points + 1);
                const double cj = 0.001 + 0.498 * static_cast<double>(j + 1) /
                                              static_cast<double>(points + 1);
                consume(i * points + j, make_pair(ci, cj));
            }
        }
    } else {
        for (long long k = 0; k < points; ++k)
            consume(k, detail::ratio_grid_pair(k, points));
    }
    (void)idx_best;
    return rep;
}

struct ProbeResult {
    PositivePair witness{};
    BoundCheck check{};
    int steps = 0;
};

// Perturbs one sharp exponent of the THM11 or THM12 window into the
// forbidden direction and walks geometrically toward the endpoint where the
// profile meets that constant until the perturbed bound breaks.
inline ProbeResult sharpness_probe(Family fam, Side side, double epsilon) {
    if (fam != Family::THM11 && fam != Family::THM12)
        throw std::domain_error("sharpness_probe: family must be THM11 or THM12");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::domain_error("sharpness_probe: epsilon must be positive");

    const ConstantsTable& ct = constants();
    FamilyParams params;
    bool toward_zero;
    double perturbed;
    if (fam == Family::THM11) {
        if (side == Side::Lower) {
            perturbed = ct.alpha_thm11 + epsilon;
            params.lower_const = perturbed;
            toward_zero = true;  // theta1 -> 1/6 as x -> 0
        } else {
            perturbed = ct.beta_thm11 - epsilon;
            params.upper_const = perturbed;
            toward_zero = false;  // theta1 -> beta as x -> 1
        }
    } else {
        if (side == Side::Lower) {
            perturbed = ct.lambda_thm12 + epsilon;
            params.lower_const = perturbed;
            toward_zero = false;  // theta2 -> lambda as x -> 1
        } else {
            perturbed = ct.mu_thm12 - epsilon;
            params.upper_const = perturbed;
            toward_zero = true;  // theta2 -> 8/25 as x -> 0
        }
    }
    if (!(perturbed > 0.0 && perturbed < 1.0))
        throw std::domain_error("sharpness_probe: epsilon pushes the constant out of (0,1)");

    double pos = toward_zero ? 0.1 : 0.01;
    for (int step = 1; step <= 200; ++step) {
        const double x = toward_zero ? pos : 1 - pos;
        const PositivePair pr = make_pair(1.0, (1 - x) / (1 + x));
        BoundCheck bc = check_family(fam, pr, params);
        if (bc.verdict == Verdict::Violation) return ProbeResult{pr, bc, step};
        pos /= 2;
        if (pos < 1e-9) break;
    }
    throw std::runtime_error(
        "sharpness_probe: no witness found; contradicts the sharpness direction");
}

}  // namespace nsbounds
