#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsbounds/cli.hpp"
#include "nsbounds/nsbounds.hpp"
#include "reference_values.hpp"

using namespace nsbounds;

namespace {

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int rc = run_impl(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (const char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("format_double is shortest round-trip", "[report]") {
    for (const double v :
         {0.1, 1.0 / 3.0, 1e-300, 12345.6789, refvals::kBetaThm11, -2.5e-14}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("family and mean token tables round-trip", "[report]") {
    for (Family f : kAllFamilies) {
        CHECK(parse_family(family_token(f)) == f);
        CHECK(parse_family(family_name(f)) == f);
    }
    CHECK(!parse_family("nope"));
    for (MeanKind k : kAllMeanKinds) CHECK(parse_mean(mean_token(k)) == k);
    CHECK(!parse_mean("median"));
}

TEST_CASE("csv rows follow the fixed schema", "[report]") {
    const BoundCheck bc = check_family(Family::THM11, make_pair(1.0, 2.0));
    const std::string row = csv_row(bc);
    CHECK(row.rfind("THM11,1,2,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 8);
    CHECK(row.find("pass") != std::string::npos);
    CHECK(kCsvHeader == "family,a,b,x,lower,middle,upper,margin,verdict");
}

TEST_CASE("sweep report json keeps key order and parses back", "[report]") {
    const SweepReport rep = sweep(Family::CHAIN, 50);
    const std::string dumped = sweep_report_to_json(rep).dump();
    const char* keys[] = {"tool_version", "family",       "grid_spec",
                          "total",        "violations",   "worst_margin",
                          "worst_witness", "elapsed_ms"};
    std::size_t pos = 0;
    for (const char* k : keys) {
        const std::size_t at = dumped.find(std::string("\"") + k + "\"");
        REQUIRE(at != std::string::npos);
        CHECK((at > pos || pos == 0));
        pos = at;
    }

    const SweepReport back = sweep_report_from_json(nlohmann::json::parse(dumped));
    CHECK(back.family == rep.family);
    CHECK(back.grid_spec == rep.grid_spec);
    CHECK(back.total == rep.total);
    CHECK(back.violations == rep.violations);
    CHECK(back.worst_margin == rep.worst_margin);
    CHECK(back.worst_witness.a == rep.worst_witness.a);
    CHECK(back.worst_witness.b == rep.worst_witness.b);
    CHECK(back.worst_witness.x == rep.worst_witness.x);
    CHECK(back.elapsed_ms == rep.elapsed_ms);
}

TEST_CASE("check json carries the full record", "[report]") {
    const BoundCheck bc = check_family(Family::NS_AMT, make_pair(2.0, 3.0));
    const nlohmann::ordered_json j = check_to_json(bc);
    CHECK(j.at("family") == "NS_AMT");
    CHECK(j.at("a").get<double>() == 2.0);
    CHECK(j.at("middle").get<double>() == bc.middle);
    CHECK(j.at("verdict") == "pass");
    CHECK(j.at("refined").get<bool>() == false);
}

TEST_CASE("cli constants subcommand", "[cli]") {
    std::string out;
    CHECK(cli({"constants"}, &out) == 0);
    CHECK(out.find("t_star") != std::string::npos);
    CHECK(count_lines(out) == 10);

    CHECK(cli({"constants", "--format", "json"}, &out) == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(j.size() == 10);
    CHECK(j.at("alpha_thm11").get<double>() == 1.0 / 6.0);
    CHECK(j.at("mu_thm12").get<double>() == 0.32);

    CHECK(cli({"constants", "--format", "csv"}, &out) == 0);
    CHECK(out.rfind("name,value\n", 0) == 0);
    CHECK(count_lines(out) == 11);
}

TEST_CASE("cli eval subcommand", "[cli]") {
    std::string out, err;
    CHECK(cli({"eval", "--mean", "neuman-sandor", "--a", "1", "--b", "2"}, &out) ==
          0);
    const std::size_t eq = out.find(" = ");
    REQUIRE(eq != std::string::npos);
    CHECK(std::strtod(out.c_str() + eq + 3, nullptr) ==
          neuman_sandor(make_pair(1.0, 2.0)));

    CHECK(cli({"eval", "--mean", "gen-log", "--a", "1", "--b", "2", "--p", "2",
               "--format", "json"},
              &out) == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(j.at("p").get<double>() == 2.0);
    CHECK(j.at("value").get<double>() ==
          generalized_log_mean(2.0, make_pair(1.0, 2.0)));

    CHECK(cli({"eval", "--mean", "gen-log", "--a", "1", "--b", "2"}, &out, &err) ==
          2);
    CHECK(!err.empty());
    CHECK(cli({"eval", "--mean", "median", "--a", "1", "--b", "2"}, &out, &err) ==
          2);
    CHECK(cli({"eval", "--mean", "geometric", "--a", "0", "--b", "2"}, &out,
              &err) == 2);

    CHECK(cli({"eval", "--mean", "logarithmic", "--a", "1", "--b", "2",
               "--format", "csv"},
              &out) == 0);
    CHECK(out.rfind("mean,a,b,p,value\n", 0) == 0);
}

TEST_CASE("cli verify subcommand", "[cli]") {
    std::string out, err;
    CHECK(cli({"verify", "--a", "1", "--b", "2"}, &out) == 0);
    CHECK(count_lines(out) == 9);  // kyfan needs entries inside (0, 1/2)

    CHECK(cli({"verify", "--a", "0.2", "--b", "0.3"}, &out) == 0);
    CHECK(count_lines(out) == 10);

    CHECK(cli({"verify", "--family", "thm11", "--a", "1", "--b", "2", "--format",
               "csv"},
              &out) == 0);
    CHECK(out.rfind(std::string(kCsvHeader) + "\n" + "THM11,", 0) == 0);

    CHECK(cli({"verify", "--family", "chain", "--a", "3", "--b", "7", "--format",
               "json"},
              &out) == 0);
    const auto j = nlohmann::json::parse(out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("family") == "CHAIN");
    CHECK(j[0].at("verdict") == "pass");

    CHECK(cli({"verify", "--family", "bogus", "--a", "1", "--b", "2"}, &out,
              &err) == 2);
    CHECK(cli({"verify", "--a", "1", "--b", "1"}, &out, &err) == 2);
    CHECK(cli({"verify", "--b", "2"}, &out, &err) == 2);
}

TEST_CASE("cli sweep is byte-deterministic", "[cli]") {
    std::string first, second, threaded;
    CHECK(cli({"sweep", "--family", "thm12", "--points", "200", "--format",
               "json"},
              &first) == 0);
    CHECK(cli({"sweep", "--family", "thm12", "--points", "200", "--format",
               "json"},
              &second) == 0);
    CHECK(cli({"sweep", "--family", "thm12", "--points", "200", "--threads", "4",
               "--format", "json"},
              &threaded) == 0);
    CHECK(first == second);
    CHECK(first == threaded);

    const auto j = nlohmann::json::parse(first);
    CHECK(j.at("tool_version") == kToolVersion);
    CHECK(j.at("total").get<long long>() == 200);
    CHECK(j.at("violations").get<long long>() == 0);
    CHECK(j.at("elapsed_ms").get<double>() == 0.0);
}

TEST_CASE("cli sweep csv stream", "[cli]") {
    std::string out;
    CHECK(cli({"sweep", "--family", "ns-amt", "--points", "50", "--format",
               "csv"},
              &out) == 0);
    CHECK(count_lines(out) == 51);
    CHECK(out.rfind(kCsvHeader, 0) == 0);
    std::istringstream lines(out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        CHECK(line.rfind("NS_AMT,", 0) == 0);
        CHECK(line.find(",pass") == line.size() - 5);
    }
}

TEST_CASE("cli sweep kyfan and the all selector", "[cli]") {
    std::string out;
    CHECK(cli({"sweep", "--family", "kyfan", "--points", "20", "--format",
               "json"},
              &out) == 0);
    CHECK(nlohmann::json::parse(out).at("total").get<long long>() == 380);

    CHECK(cli({"sweep", "--family", "all", "--points", "25", "--format", "json"},
              &out) == 0);
    const auto arr = nlohmann::json::parse(out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 10);
    for (const auto& rep : arr) CHECK(rep.at("violations").get<long long>() == 0);
}

TEST_CASE("cli sweep writes to a file when asked", "[cli]") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "nsbounds_sweep_out.json";
    fs::remove(path);
    std::string direct, out;
    CHECK(cli({"sweep", "--family", "chain", "--points", "64", "--format",
               "json"},
              &direct) == 0);
    CHECK(cli({"sweep", "--family", "chain", "--points", "64", "--format", "json",
               "--out", path.string()},
              &out) == 0);
    CHECK(out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream file_text;
    file_text << in.rdbuf();
    CHECK(file_text.str() == direct);
    in.close();
    fs::remove(path);
}

TEST_CASE("cli probe subcommand", "[cli]") {
    std::string out, err;
    CHECK(cli({"probe", "--family", "thm11", "--side", "upper", "--epsilon",
               "1e-3", "--format", "json"},
              &out) == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(j.at("side") == "upper");
    CHECK(j.at("steps").get<int>() >= 1);
    CHECK(j.at("witness").at("x").get<double>() >= 0.99);
    CHECK(j.at("margin").get<double>() < 0.0);

    CHECK(cli({"probe", "--family", "thm12", "--side", "lower"}, &out) == 0);
    CHECK(out.find("witness after") != std::string::npos);

    // Too small to beat the refinement floor anywhere: the search must
    // come back empty-handed, which is reported as failure.
    CHECK(cli({"probe", "--family", "thm11", "--side", "lower", "--epsilon",
               "1e-14"},
              &out, &err) == 1);
    CHECK(!err.empty());

    CHECK(cli({"probe", "--family", "chain", "--side", "lower"}, &out, &err) == 2);
    CHECK(cli({"probe", "--family", "thm11", "--side", "sideways"}, &out, &err) ==
          2);
    CHECK(cli({"probe", "--side", "lower"}, &out, &err) == 2);
}

TEST_CASE("cli top-level behavior", "[cli]") {
    std::string out, err;
    CHECK(cli({}, &out, &err) == 2);
    CHECK(cli({"frobnicate"}, &out, &err) == 2);
    CHECK(cli({"--help"}, &out, &err) == 0);
    CHECK(out.find("sweep") != std::string::npos);
    CHECK(cli({"--version"}, &out, &err) == 0);
    CHECK(out.find(kToolVersion) != std::string::npos);

    // The argv wrapper goes through the same implementation.
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const char* argv[] = {"nsbounds", "constants"};
    const int rc = run(2, const_cast<char**>(argv));
    std::cout.rdbuf(old);
    CHECK(rc == 0);
    CHECK(captured.str().find("t_star") != std::string::npos);
}
