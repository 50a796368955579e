#include "catconv/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace catconv;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("catconv_test_" + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("rational literal grammar") {
    CHECK(cli::parse_rational_literal("3") == Rat(3));
    CHECK(cli::parse_rational_literal("-3") == Rat(-3));
    CHECK(cli::parse_rational_literal("+3") == Rat(3));
    CHECK(cli::parse_rational_literal("7/5") == Rat(7, 5));
    CHECK(cli::parse_rational_literal("-4/9") == Rat(-4, 9));
    CHECK(cli::parse_rational_literal("4/8") == Rat(1, 2));
    CHECK(cli::parse_rational_literal("0") == Rat(0));
    for (const char* bad : {"", "1.5", "1/0", "3/", "/3", "a", "1//2", "4/-9", "1 /2",
                            " 1", "2/ 3", "0x1", "1e3"})
        CHECK_THROWS_AS(cli::parse_rational_literal(bad), std::invalid_argument);
}

TEST_CASE("eval prints exact values") {
    auto r = run_cli({"eval", "--n", "3", "--a", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "252\n");

    CHECK(run_cli({"eval", "--n", "0", "--a", "-9/4"}).out == "1\n");
    CHECK(run_cli({"eval", "--n", "3", "--a", "1/2"}).out == "63/2\n");
    CHECK(run_cli({"eval", "--n", "2", "--a=-1", "--method", "hyper"}).out == "8\n");

    for (const char* m :
         {"direct", "weighted", "recurrence", "hyper", "identity", "narayana", "series"}) {
        auto rr = run_cli({"eval", "--n", "6", "--a", "3/2", "--method", m});
        INFO(m);
        CHECK(rr.code == 0);
        CHECK(rr.out == "327255/16\n");
    }
}

TEST_CASE("eval json envelope") {
    auto r = run_cli({"eval", "--n", "3", "--a", "7/5", "--method", "narayana", "--json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["n"] == 3);
    CHECK(doc["a"] == "7/5");
    CHECK(doc["method"] == "narayana");
    CHECK(doc["value"] == "576/5");
    // Field order is pinned.
    CHECK(r.out.find("\"n\"") < r.out.find("\"a\""));
    CHECK(r.out.find("\"a\"") < r.out.find("\"method\""));
    CHECK(r.out.find("\"method\"") < r.out.find("\"value\""));
}

TEST_CASE("eval rejects bad input with exit 2") {
    CHECK(run_cli({"eval", "--n", "1", "--a", "1.5"}).code == 2);
    CHECK(run_cli({"eval", "--n", "1", "--a", "1/0"}).code == 2);
    CHECK(run_cli({"eval", "--n", "1", "--a", ""}).code == 2);
    CHECK(run_cli({"eval", "--n", "-2", "--a", "1"}).code == 2);
    CHECK(run_cli({"eval", "--n", "x", "--a", "1"}).code == 2);
    CHECK(run_cli({"eval", "--a", "1"}).code == 2);
    CHECK(run_cli({"eval", "--n", "1"}).code == 2);
    CHECK(run_cli({"eval", "--n", "1", "--a", "1", "--method", "newton"}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK_FALSE(run_cli({"eval", "--n", "1", "--a", "1.5"}).err.empty());
}

TEST_CASE("eval narayana route is bounded") {
    CHECK(run_cli({"eval", "--n", "401", "--a", "1", "--method", "narayana"}).code == 2);
    CHECK(run_cli({"eval", "--n", "401", "--a", "1", "--method", "direct"}).code == 0);
}

TEST_CASE("table csv output") {
    auto r = run_cli({"table", "--n-max", "2", "--a", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,value\n0,1\n1,4\n2,16\n");
    CHECK(run_cli({"table", "--n-max", "0", "--a", "5"}).out == "n,value\n0,1\n");
    auto alt = run_cli({"table", "--n-max", "3", "--a=-1"});
    CHECK(alt.out == "n,value\n0,1\n1,0\n2,8\n3,0\n");
}

TEST_CASE("table json output") {
    auto r = run_cli({"table", "--n-max", "3", "--a", "1/2", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 4);
    CHECK(doc[0]["n"] == 0);
    CHECK(doc[0]["value"] == "1");
    CHECK(doc[3]["n"] == 3);
    CHECK(doc[3]["value"] == "63/2");
}

TEST_CASE("table rejects bad input") {
    CHECK(run_cli({"table", "--n-max", "-1", "--a", "1"}).code == 2);
    CHECK(run_cli({"table", "--n-max", "2", "--a", "x"}).code == 2);
    CHECK(run_cli({"table", "--n-max", "2", "--a", "1", "--format", "xml"}).code == 2);
}

TEST_CASE("table agrees with eval row by row") {
    auto table = run_cli({"table", "--n-max", "8", "--a", "7/5"});
    REQUIRE(table.code == 0);
    std::istringstream lines(table.out);
    std::string line;
    std::getline(lines, line);  // header
    for (long n = 0; n <= 8; ++n) {
        REQUIRE(std::getline(lines, line));
        auto comma = line.find(',');
        REQUIRE(line.substr(0, comma) == std::to_string(n));
        auto ev = run_cli({"eval", "--n", std::to_string(n), "--a", "7/5"});
        REQUIRE(ev.out == line.substr(comma + 1) + "\n");
    }
}

TEST_CASE("asym reports model, exact, difference") {
    auto r = run_cli({"asym", "--n", "100", "--a", "1", "--model", "claimed"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string model_line, exact_line, diff_line;
    REQUIRE(std::getline(lines, model_line));
    REQUIRE(std::getline(lines, exact_line));
    REQUIRE(std::getline(lines, diff_line));
    CHECK(model_line.rfind("log_model ", 0) == 0);
    CHECK(exact_line.rfind("log_exact ", 0) == 0);
    CHECK(diff_line.rfind("difference ", 0) == 0);
    double diff = std::stod(diff_line.substr(std::string("difference ").size()));
    // Exact exceeds the claimed model by sqrt(pi n) at a = 1.
    CHECK(std::abs(diff - 0.5 * std::log(100.0 * std::numbers::pi)) < 1e-9);

    auto s = run_cli({"asym", "--n", "100", "--a", "1", "--model", "singularity"});
    REQUIRE(s.code == 0);
    auto pos = s.out.find("difference ");
    double sdiff = std::stod(s.out.substr(pos + std::string("difference ").size()));
    CHECK(std::abs(sdiff) < 1e-9);
}

TEST_CASE("asym rejects bad input") {
    CHECK(run_cli({"asym", "--n", "0", "--a", "1", "--model", "claimed"}).code == 2);
    CHECK(run_cli({"asym", "--n", "5", "--a", "0", "--model", "claimed"}).code == 2);
    CHECK(run_cli({"asym", "--n", "5", "--a=-2", "--model", "claimed"}).code == 2);
    CHECK(run_cli({"asym", "--n", "5", "--a", "1", "--model", "transfer"}).code == 2);
    CHECK(run_cli({"asym", "--n", "5", "--a", "1"}).code == 2);
}

TEST_CASE("simulate output and determinism") {
    std::vector<std::string> args = {"simulate", "--n", "2", "--a", "1",
                                     "--samples", "20000", "--seed", "42"};
    auto r1 = run_cli(args);
    REQUIRE(r1.code == 0);
    auto r2 = run_cli(args);
    CHECK(r1.out == r2.out);

    std::istringstream lines(r1.out);
    std::string est_line, se_line, exact_line, z_line;
    REQUIRE(std::getline(lines, est_line));
    REQUIRE(std::getline(lines, se_line));
    REQUIRE(std::getline(lines, exact_line));
    REQUIRE(std::getline(lines, z_line));
    CHECK(est_line.rfind("estimate ", 0) == 0);
    CHECK(se_line.rfind("std_error ", 0) == 0);
    CHECK(exact_line == "exact 16");
    CHECK(z_line.rfind("z ", 0) == 0);
    double z = std::stod(z_line.substr(2));
    CHECK(std::abs(z) < 5.0);

    // Chunking is invisible in the output bytes.
    std::vector<std::string> chunked = args;
    chunked.push_back("--chunks");
    chunked.push_back("8");
    CHECK(run_cli(chunked).out == r1.out);

    auto rao = run_cli({"simulate", "--n", "2", "--a", "1", "--samples", "20000",
                        "--seed", "42", "--rao"});
    REQUIRE(rao.code == 0);
    CHECK(rao.out != r1.out);

    auto zero = run_cli({"simulate", "--n", "0", "--a", "2", "--samples", "50", "--seed", "7"});
    CHECK(zero.out.find("estimate 1\n") == 0);
    CHECK(zero.out.find("std_error 0\n") != std::string::npos);
    CHECK(zero.out.find("z 0\n") != std::string::npos);
}

TEST_CASE("simulate rejects bad input") {
    CHECK(run_cli({"simulate", "--n", "2", "--a", "0", "--samples", "10"}).code == 2);
    CHECK(run_cli({"simulate", "--n", "2", "--a=-1", "--samples", "10"}).code == 2);
    CHECK(run_cli({"simulate", "--n", "2", "--a", "1", "--samples", "0"}).code == 2);
    CHECK(run_cli({"simulate", "--n", "-2", "--a", "1"}).code == 2);
}

TEST_CASE("audit writes reports and a deterministic summary") {
    fs::path json_path = temp_file("report.json");
    fs::path md_path = temp_file("report.md");
    auto r = run_cli({"audit", "--out", json_path.string(), "--markdown", md_path.string()});
    REQUIRE(r.code == 0);

    std::string expected_summary =
        "C1 refuted\nC2 refuted\nC3 confirmed\nC4 refuted\nC5 confirmed\nC6 refuted\n"
        "C7 confirmed\nC8 confirmed\nC9 refuted\nC10 refuted\nC11 refuted\n"
        "C12 confirmed\nC13 confirmed\n"
        "13 claims: 6 confirmed, 7 refuted, 0 inconclusive\n";
    CHECK(r.out == expected_summary);

    AuditReport report = parse_report_json(slurp(json_path));
    CHECK(report.verdicts.size() == 13);
    CHECK(report.grid.n_max == 24);
    REQUIRE(report.grid.a_values.size() == 7);
    CHECK(report.grid.a_values[0] == Rat(1));
    CHECK(report.grid.a_values[6] == Rat(7, 5));

    std::string md = slurp(md_path);
    CHECK(md.find("| C6 | refuted | 175 | n=2, a=1, lhs=16, rhs=44/3 |") != std::string::npos);

    // stdout must be identical across runs; only the report timestamp moves.
    auto again = run_cli({"audit", "--out", json_path.string()});
    CHECK(again.out == r.out);

    fs::remove(json_path);
    fs::remove(md_path);
}

TEST_CASE("audit honors a reduced grid") {
    fs::path json_path = temp_file("small_report.json");
    auto r = run_cli({"audit", "--n-max", "6", "--a", "1", "--a", "2",
                      "--out", json_path.string()});
    REQUIRE(r.code == 0);
    AuditReport report = parse_report_json(slurp(json_path));
    CHECK(report.grid.n_max == 6);
    REQUIRE(report.grid.a_values.size() == 2);
    CHECK(report.grid.a_values[0] == Rat(1));
    CHECK(report.grid.a_values[1] == Rat(2));
    // 7 cells per a column: C1 spans 14 cells, C2 only the a=1 column.
    for (const Verdict& v : report.verdicts) {
        if (v.id == "C1") CHECK(v.cells == 14);
        if (v.id == "C2") CHECK(v.cells == 7);
        if (v.id == "C3") CHECK(v.status == ClaimStatus::Inconclusive);
        if (v.id == "C7") CHECK(v.status == ClaimStatus::Inconclusive);
    }
    fs::remove(json_path);
}

TEST_CASE("audit expectation checking") {
    fs::path json_path = temp_file("expect_report.json");
    fs::path good = temp_file("expect_good.json");
    fs::path bad = temp_file("expect_bad.json");
    {
        std::ofstream g(good);
        g << R"({"C1":"refuted","C2":"refuted","C3":"confirmed","C4":"refuted",)"
          << R"("C5":"confirmed","C6":"refuted","C7":"confirmed","C8":"confirmed",)"
          << R"("C9":"refuted","C10":"refuted","C11":"refuted","C12":"confirmed",)"
          << R"("C13":"confirmed"})";
        std::ofstream b(bad);
        b << R"({"C6":"confirmed"})";
    }
    auto ok = run_cli({"audit", "--out", json_path.string(), "--expect", good.string()});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("statuses match") != std::string::npos);

    auto mismatch = run_cli({"audit", "--out", json_path.string(), "--expect", bad.string()});
    CHECK(mismatch.code == 3);
    CHECK(mismatch.err.find("C6: expected confirmed, got refuted") != std::string::npos);

    // A full report also works as the expectation file.
    auto self = run_cli({"audit", "--out", json_path.string(), "--expect", json_path.string()});
    CHECK(self.code == 0);

    fs::remove(json_path);
    fs::remove(good);
    fs::remove(bad);
}

TEST_CASE("audit io failures exit 4") {
    CHECK(run_cli({"audit", "--out", "/nonexistent_dir/report.json"}).code == 4);
    fs::path json_path = temp_file("io_report.json");
    CHECK(run_cli({"audit", "--out", json_path.string(),
                   "--expect", "/nonexistent_dir/expect.json"}).code == 4);
    fs::remove(json_path);
}

TEST_CASE("help and version exit 0") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK_FALSE(run_cli({"--help"}).out.empty());
    CHECK(run_cli({"eval", "--help"}).code == 0);
    auto v = run_cli({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(kVersion) != std::string::npos);
}
