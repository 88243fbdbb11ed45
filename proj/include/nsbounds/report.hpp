#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nsbounds/pair.hpp"
#include "nsbounds/verify.hpp"
#include "nsbounds/version.hpp"

// Serialization.  Every double is printed with std::to_chars shortest
// round-trip form so that reports are byte-identical across runs and parse
// back to the exact bit pattern.

namespace nsbounds {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::THM11: return "THM11";
        case Family::THM12: return "THM12";
        case Family::INEQ11: return "INEQ11";
        case Family::INEQ12: return "INEQ12";
        case Family::CHAIN: return "CHAIN";
        case Family::NS_AMT: return "NS_AMT";
        case Family::NS_PM_A2: return "NS_PM_A2";
        case Family::NS_AT_M2: return "NS_AT_M2";
        case Family::KYFAN: return "KYFAN";
        case Family::LP_BOUNDS: return "LP_BOUNDS";
    }
    return "?";
}

// Lowercase token as accepted by the command line.
inline std::string_view family_token(Family f) {
    switch (f) {
        case Family::THM11: return "thm11";
        case Family::THM12: return "thm12";
        case Family::INEQ11: return "ineq11";
        case Family::INEQ12: return "ineq12";
        case Family::CHAIN: return "chain";
        case Family::NS_AMT: return "ns-amt";
        case Family::NS_PM_A2: return "ns-pm-a2";
        case Family::NS_AT_M2: return "ns-at-m2";
        case Family::KYFAN: return "kyfan";
        case Family::LP_BOUNDS: return "lp-bounds";
    }
    return "?";
}

inline constexpr std::array<Family, 10> kAllFamilies = {
    Family::THM11,    Family::THM12,    Family::INEQ11,   Family::INEQ12,
    Family::CHAIN,    Family::NS_AMT,   Family::NS_PM_A2, Family::NS_AT_M2,
    Family::KYFAN,    Family::LP_BOUNDS,
};

// Accepts either the CLI token or the canonical name.
inline std::optional<Family> parse_family(std::string_view s) {
    for (Family f : kAllFamilies)
        if (s == family_token(f) || s == family_name(f)) return f;
    return std::nullopt;
}

inline std::string_view mean_token(MeanKind k) {
    switch (k) {
        case MeanKind::Arithmetic: return "arithmetic";
        case MeanKind::Geometric: return "geometric";
        case MeanKind::ContraHarmonic: return "contra-harmonic";
        case MeanKind::Logarithmic: return "logarithmic";
        case MeanKind::SeiffertFirst: return "seiffert-first";
        case MeanKind::SeiffertSecond: return "seiffert-second";
        case MeanKind::NeumanSandor: return "neuman-sandor";
        case MeanKind::GeneralizedLog: return "gen-log";
    }
    return "?";
}

inline constexpr std::array<MeanKind, 8> kAllMeanKinds = {
    MeanKind::Arithmetic,    MeanKind::Geometric,      MeanKind::ContraHarmonic,
    MeanKind::Logarithmic,   MeanKind::SeiffertFirst,  MeanKind::SeiffertSecond,
    MeanKind::NeumanSandor,  MeanKind::GeneralizedLog,
};

inline std::optional<MeanKind> parse_mean(std::string_view s) {
    for (MeanKind k : kAllMeanKinds)
        if (s == mean_token(k)) return k;
    return std::nullopt;
}

inline std::string_view verdict_name(Verdict v) {
    return v == Verdict::Pass ? "pass" : "violation";
}

inline std::string_view side_name(Side s) {
    return s == Side::Lower ? "lower" : "upper";
}

inline constexpr std::string_view kCsvHeader =
    "family,a,b,x,lower,middle,upper,margin,verdict";

inline std::string csv_row(const BoundCheck& bc) {
    std::string s;
    s += family_name(bc.family);
    s += ',';
    s += format_double(bc.pair.a);
    s += ',';
    s += format_double(bc.pair.b);
    s += ',';
    s += format_double(bc.pair.x);
    s += ',';
    s += format_double(bc.lower);
    s += ',';
    s += format_double(bc.middle);
    s += ',';
    s += format_double(bc.upper);
    s += ',';
    s += format_double(bc.margin);
    s += ',';
    s += verdict_name(bc.verdict);
    return s;
}

inline nlohmann::ordered_json check_to_json(const BoundCheck& bc) {
    nlohmann::ordered_json j;
    j["family"] = family_name(bc.family);
    j["a"] = bc.pair.a;
    j["b"] = bc.pair.b;
    j["x"] = bc.pair.x;
    j["lower"] = bc.lower;
    j["middle"] = bc.middle;
    j["upper"] = bc.upper;
    j["margin"] = bc.margin;
    j["verdict"] = verdict_name(bc.verdict);
    j["refined"] = bc.refined;
    return j;
}

inline nlohmann::ordered_json sweep_report_to_json(const SweepReport& rep) {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["family"] = family_name(rep.family);
    j["grid_spec"] = rep.grid_spec;
    j["total"] = rep.total;
    j["violations"] = rep.violations;
    j["worst_margin"] = rep.worst_margin;
    j["worst_witness"] = nlohmann::ordered_json{{"a", rep.worst_witness.a},
                                                {"b", rep.worst_witness.b},
                                                {"x", rep.worst_witness.x}};
    j["elapsed_ms"] = rep.elapsed_ms;
    return j;
}

inline SweepReport sweep_report_from_json(const nlohmann::json& j) {
    SweepReport rep;
    const auto fam = parse_family(j.at("family").get<std::string>());
    if (!fam) throw std::domain_error("sweep_report_from_json: unknown family");
    rep.family = *fam;
    rep.grid_spec = j.at("grid_spec").get<std::string>();
    rep.total = j.at("total").get<long long>();
    rep.violations = j.at("violations").get<long long>();
    rep.worst_margin = j.at("worst_margin").get<double>();
    rep.worst_witness.a = j.at("worst_witness").at("a").get<double>();
    rep.worst_witness.b = j.at("worst_witness").at("b").get<double>();
    rep.worst_witness.x = j.at("worst_witness").at("x").get<double>();
    rep.elapsed_ms = j.at("elapsed_ms").get<double>();
    return rep;
}

inline std::string render_check_line(const BoundCheck& bc) {
    std::string s;
    s += family_name(bc.family);
    s += ": lower=";
    s += format_double(bc.lower);
    s += " middle=";
    s += format_double(bc.middle);
    s += " upper=";
    s += format_double(bc.upper);
    s += " margin=";
    s += format_double(bc.margin);
    s += " verdict=";
    s += verdict_name(bc.verdict);
    if (bc.refined) s += " (refined)";
    return s;
}

inline std::string render_sweep_line(const SweepReport& rep) {
    std::string s;
    s += family_name(rep.family);
    s += ": total=";
    s += std::to_string(rep.total);
    s += " violations=";
    s += std::to_string(rep.violations);
    s += " worst_margin=";
    s += format_double(rep.worst_margin);
    s += " worst_witness=(a=";
    s += format_double(rep.worst_witness.a);
    s += ", b=";
    s += format_double(rep.worst_witness.b);
    s += ", x=";
    s += format_double(rep.worst_witness.x);
    s += ")  [";
    s += rep.grid_spec;
    s += "]";
    return s;
}

}  // namespace nsbounds
