#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsbounds/constants.hpp"
#include "nsbounds/means.hpp"
#include "nsbounds/report.hpp"
#include "nsbounds/verify.hpp"
#include "nsbounds/version.hpp"

// Command line front end.  run_impl takes the argument vector and explicit
// streams so the whole surface is testable in-process; run wraps it for main.
// Exit codes: 0 all checks pass, 1 violation found or probe found no witness,
// 2 usage or domain errors.

namespace nsbounds {

namespace detail {

inline bool ky_fan_domain_ok(const PositivePair& pr) {
    return pr.a > 0.0 && pr.a < 0.5 && pr.b > 0.0 && pr.b < 0.5 && pr.a != pr.b;
}

struct NamedConstant {
    const char* name;
    double value;
};

inline std::vector<NamedConstant> constants_rows() {
    const ConstantsTable& c = constants();
    return {
        {"alpha_thm11", c.alpha_thm11},   {"beta_thm11", c.beta_thm11},
        {"lambda_thm12", c.lambda_thm12}, {"mu_thm12", c.mu_thm12},
        {"alpha_ineq11", c.alpha_ineq11}, {"beta_ineq11", c.beta_ineq11},
        {"mu_ineq12", c.mu_ineq12},       {"lambda_ineq12", c.lambda_ineq12},
        {"t_star", c.t_star},             {"p0", c.p0},
    };
}

}  // namespace detail

inline int run_impl(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
    CLI::App app{"Certified numeric checks of sharp bounds for the Neuman-Sandor mean",
                 "nsbounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    double a = 0.0, b = 0.0, p = 0.0, epsilon = 1e-3;
    long long points = 0;
    int threads = 1;
    bool timing = false;
    std::string mean_tok, family_tok = "all", side_tok = "lower", out_path;
    std::string fmt_eval = "text", fmt_const = "text", fmt_verify = "text",
                fmt_sweep = "text", fmt_probe = "text";

    CLI::App* eval = app.add_subcommand("eval", "Evaluate one mean at a pair");
    eval->add_option("--mean", mean_tok, "Mean to evaluate")->required();
    eval->add_option("--a", a, "First entry")->required();
    eval->add_option("--b", b, "Second entry")->required();
    CLI::Option* popt = eval->add_option("--p", p, "Order for gen-log");
    eval->add_option("--format", fmt_eval, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    CLI::App* consts =
        app.add_subcommand("constants", "Print the table of proven constants");
    consts->add_option("--format", fmt_const, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    CLI::App* verify =
        app.add_subcommand("verify", "Check the bound families at one pair");
    verify->add_option("--family", family_tok, "Family token or 'all'");
    verify->add_option("--a", a, "First entry")->required();
    verify->add_option("--b", b, "Second entry")->required();
    verify->add_option("--format", fmt_verify, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Check a family over a deterministic grid");
    sweep_cmd->add_option("--family", family_tok, "Family token or 'all'");
    sweep_cmd->add_option("--points", points, "Grid points (per axis for kyfan)")
        ->check(CLI::Range(0LL, 100000000LL));
    sweep_cmd->add_option("--threads", threads, "Worker threads")
        ->check(CLI::Range(1, 256));
    sweep_cmd->add_option("--format", fmt_sweep, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sweep_cmd->add_option("--out", out_path, "Write the report to this file");
    sweep_cmd->add_flag("--timing", timing,
                        "Record wall time (breaks byte-for-byte determinism)");

    CLI::App* probe = app.add_subcommand(
        "probe", "Find a witness that a perturbed constant fails");
    probe->add_option("--family", family_tok, "thm11 or thm12")->required();
    probe->add_option("--side", side_tok, "lower or upper")
        ->required()
        ->check(CLI::IsMember({"lower", "upper"}));
    probe->add_option("--epsilon", epsilon, "Perturbation size");
    probe->add_option("--format", fmt_probe, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            const std::optional<MeanKind> kind = parse_mean(mean_tok);
            if (!kind) {
                err << "error: unknown mean '" << mean_tok << "'\n";
                return 2;
            }
            if (*kind == MeanKind::GeneralizedLog && popt->count() == 0) {
                err << "error: gen-log needs --p\n";
                return 2;
            }
            const PositivePair pr = make_pair(a, b);
            const double value = eval_mean(*kind, pr, p);
            const bool with_p = *kind == MeanKind::GeneralizedLog;
            if (fmt_eval == "text") {
                out << mean_tok;
                if (with_p) out << "[p=" << format_double(p) << "]";
                out << "(" << format_double(a) << ", " << format_double(b)
                    << ") = " << format_double(value) << "\n";
            } else if (fmt_eval == "csv") {
                out << "mean,a,b,p,value\n"
                    << mean_tok << ',' << format_double(a) << ','
                    << format_double(b) << ',' << (with_p ? format_double(p) : "")
                    << ',' << format_double(value) << "\n";
            } else {
                nlohmann::ordered_json j;
                j["mean"] = mean_tok;
                j["a"] = a;
                j["b"] = b;
                if (with_p) j["p"] = p;
                j["value"] = value;
                out << j.dump(2) << "\n";
            }
            return 0;
        }

        if (consts->parsed()) {
            const auto rows = detail::constants_rows();
            if (fmt_const == "text") {
                for (const auto& r : rows) {
                    out << r.name;
                    for (std::size_t i = std::char_traits<char>::length(r.name);
                         i < 14; ++i)
                        out << ' ';
                    out << ' ' << format_double(r.value) << "\n";
                }
            } else if (fmt_const == "csv") {
                out << "name,value\n";
                for (const auto& r : rows)
                    out << r.name << ',' << format_double(r.value) << "\n";
            } else {
                nlohmann::ordered_json j;
                for (const auto& r : rows) j[r.name] = r.value;
                out << j.dump(2) << "\n";
            }
            return 0;
        }

        if (verify->parsed()) {
            const PositivePair pr = make_pair(a, b);
            std::vector<BoundCheck> checks;
            if (family_tok == "all") {
                for (Family f : kAllFamilies) {
                    if (f == Family::KYFAN && !detail::ky_fan_domain_ok(pr))
                        continue;  // only defined on (0, 1/2)^2
                    checks.push_back(check_family(f, pr));
                }
            } else {
                const std::optional<Family> fam = parse_family(family_tok);
                if (!fam) {
                    err << "error: unknown family '" << family_tok << "'\n";
                    return 2;
                }
                checks.push_back(check_family(*fam, pr));
            }
            if (fmt_verify == "text") {
                for (const BoundCheck& bc : checks)
                    out << render_check_line(bc) << "\n";
            } else if (fmt_verify == "csv") {
                out << kCsvHeader << "\n";
                for (const BoundCheck& bc : checks) out << csv_row(bc) << "\n";
            } else {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const BoundCheck& bc : checks) arr.push_back(check_to_json(bc));
                out << arr.dump(2) << "\n";
            }
            for (const BoundCheck& bc : checks)
                if (bc.verdict == Verdict::Violation) return 1;
            return 0;
        }

        if (sweep_cmd->parsed()) {
            std::vector<Family> fams;
            if (family_tok == "all") {
                fams.assign(kAllFamilies.begin(), kAllFamilies.end());
            } else {
                const std::optional<Family> fam = parse_family(family_tok);
                if (!fam) {
                    err << "error: unknown family '" << family_tok << "'\n";
                    return 2;
                }
                fams.push_back(*fam);
            }

            std::ofstream file;
            std::ostream* os = &out;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) {
                    err << "error: cannot open '" << out_path << "'\n";
                    return 2;
                }
                os = &file;
            }

            long long total_violations = 0;
            if (fmt_sweep == "csv") {
                *os << kCsvHeader << "\n";
                for (Family f : fams) {
                    const long long pts =
                        points > 0 ? points : (f == Family::KYFAN ? 300 : 10000);
                    const SweepReport rep = sweep_each(
                        f, pts, FamilyParams{},
                        [&](const BoundCheck& bc) { *os << csv_row(bc) << "\n"; });
                    total_violations += rep.violations;
                }
            } else {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (Family f : fams) {
                    const long long pts =
                        points > 0 ? points : (f == Family::KYFAN ? 300 : 10000);
                    const SweepReport rep =
                        sweep(f, pts, FamilyParams{}, threads, timing);
                    total_violations += rep.violations;
                    if (fmt_sweep == "text")
                        *os << render_sweep_line(rep) << "\n";
                    else
                        arr.push_back(sweep_report_to_json(rep));
                }
                if (fmt_sweep == "json")
                    *os << (fams.size() == 1 ? arr[0].dump(2) : arr.dump(2)) << "\n";
            }
            return total_violations > 0 ? 1 : 0;
        }

        if (probe->parsed()) {
            const std::optional<Family> fam = parse_family(family_tok);
            if (!fam) {
                err << "error: unknown family '" << family_tok << "'\n";
                return 2;
            }
            const Side side = side_tok == "lower" ? Side::Lower : Side::Upper;
            const ProbeResult res = sharpness_probe(*fam, side, epsilon);
            if (fmt_probe == "text") {
                out << "witness after " << res.steps
                    << " steps: a=" << format_double(res.witness.a)
                    << " b=" << format_double(res.witness.b)
                    << " x=" << format_double(res.witness.x)
                    << " margin=" << format_double(res.check.margin) << "\n";
            } else {
                nlohmann::ordered_json j;
                j["family"] = family_name(*fam);
                j["side"] = side_tok;
                j["epsilon"] = epsilon;
                j["steps"] = res.steps;
                j["witness"] = nlohmann::ordered_json{{"a", res.witness.a},
                                                      {"b", res.witness.b},
                                                      {"x", res.witness.x}};
                j["margin"] = res.check.margin;
                out << j.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: require_subcommand guarantees one branch ran
}

inline int run(int argc, char** argv) {
    return run_impl(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                    std::cerr);
}

}  // namespace nsbounds
