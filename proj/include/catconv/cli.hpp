#pragma once

/**
 * @file cli.hpp
 * @brief Command line front end. The whole interface lives in run() so
 *        tests can drive it in-process against string streams.
 *
 * Exit codes: 0 success, 2 usage or domain error, 3 expectation
 * mismatch (audit --expect), 4 I/O failure.
 */

#include "catconv/audit.hpp"
#include "catconv/evaluate.hpp"
#include "catconv/exactnum.hpp"
#include "catconv/walks.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace catconv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitExpectMismatch = 3;
inline constexpr int kExitIo = 4;

/// Largest n the CLI accepts for the quadratic-cost narayana method.
inline constexpr long kNarayanaCliMax = 400;

/// Strict rational literal: optional sign, digits, optionally '/' and a
/// nonzero all-digit denominator. No whitespace, no decimals.
/// @throws std::invalid_argument on anything else.
inline Rat parse_rational_literal(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t num_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_start)
        throw std::invalid_argument("malformed rational \"" + s + "\": expected digits");
    if (i == s.size()) return Rat(Int(s));
    if (s[i] != '/')
        throw std::invalid_argument("malformed rational \"" + s + "\": unexpected '" +
                                    std::string(1, s[i]) + "'");
    std::string num = s.substr(0, i);
    std::string den = s.substr(i + 1);
    if (den.empty() || den.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed rational \"" + s + "\": bad denominator");
    Int d(den);
    if (d.is_zero())
        throw std::invalid_argument("malformed rational \"" + s + "\": zero denominator");
    return Rat(Int(num), d);
}

namespace detail {

struct EvalArgs {
    long n = 0;
    std::string a;
    std::string method = "direct";
    bool json = false;
};

struct TableArgs {
    long n_max = 0;
    std::string a;
    std::string format = "csv";
};

struct AuditArgs {
    long n_max = 24;
    std::vector<std::string> a;
    std::string out = "audit_report.json";
    std::string markdown;
    std::string expect;
};

struct AsymArgs {
    long n = 0;
    std::string a;
    std::string model;
};

struct SimArgs {
    long n = 0;
    std::string a;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 42;
    unsigned chunks = 1;
    bool rao = false;
};

inline int do_eval(const EvalArgs& args, std::ostream& out) {
    if (args.n < 0) throw std::invalid_argument("--n must be nonnegative");
    Method method = method_from_name(args.method);
    if (method == Method::Narayana && args.n > kNarayanaCliMax)
        throw std::invalid_argument("method narayana is limited to n <= " +
                                    std::to_string(kNarayanaCliMax));
    Rat a = parse_rational_literal(args.a);
    EvalResult res = evaluate(EvalRequest{args.n, a, method});
    if (args.json) {
        nlohmann::ordered_json j;
        j["n"] = res.n;
        j["a"] = res.a.to_string();
        j["method"] = method_name(res.method);
        j["value"] = res.value.to_string();
        out << j.dump() << "\n";
    } else {
        out << res.value.to_string() << "\n";
    }
    return kExitOk;
}

inline int do_table(const TableArgs& args, std::ostream& out) {
    if (args.n_max < 0) throw std::invalid_argument("--n-max must be nonnegative");
    if (args.format != "csv" && args.format != "json")
        throw std::invalid_argument("--format must be csv or json");
    Rat a = parse_rational_literal(args.a);
    // One recurrence pass gives the whole prefix.
    std::vector<Rat> values;
    values.reserve(static_cast<std::size_t>(args.n_max) + 1);
    Rat prev(1);
    values.push_back(prev);
    if (args.n_max >= 1) {
        Rat cur = Rat(2) * (Rat(1) + a);
        values.push_back(cur);
        for (long m = 1; m + 1 <= args.n_max; ++m) {
            Rat next = (Rat(2 * (2 * m + 1)) * (Rat(1) + a) * cur - Rat(16 * m) * a * prev) /
                       Rat(m + 1);
            prev = cur;
            cur = next;
            values.push_back(cur);
        }
    }
    if (args.format == "csv") {
        out << "n,value\n";
        for (long n = 0; n <= args.n_max; ++n)
            out << n << "," << values[static_cast<std::size_t>(n)].to_string() << "\n";
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (long n = 0; n <= args.n_max; ++n) {
            nlohmann::ordered_json row;
            row["n"] = n;
            row["value"] = values[static_cast<std::size_t>(n)].to_string();
            arr.push_back(std::move(row));
        }
        out << arr.dump() << "\n";
    }
    return kExitOk;
}

inline int do_audit(const AuditArgs& args, std::ostream& out, std::ostream& err) {
    AuditGrid grid = AuditGrid::default_grid();
    grid.n_max = args.n_max;
    if (!args.a.empty()) {
        grid.a_values.clear();
        for (const std::string& s : args.a) grid.a_values.push_back(parse_rational_literal(s));
    }
    grid.validate();

    AuditReport report = run_all(grid);

    std::ofstream jf(args.out);
    if (!jf) {
        err << "error: cannot open " << args.out << " for writing\n";
        return kExitIo;
    }
    jf << render_report(report, ReportFormat::Json);
    jf.flush();
    if (!jf) {
        err << "error: failed writing " << args.out << "\n";
        return kExitIo;
    }

    if (!args.markdown.empty()) {
        std::ofstream mf(args.markdown);
        if (!mf) {
            err << "error: cannot open " << args.markdown << " for writing\n";
            return kExitIo;
        }
        mf << render_report(report, ReportFormat::Markdown);
        mf.flush();
        if (!mf) {
            err << "error: failed writing " << args.markdown << "\n";
            return kExitIo;
        }
    }

    long confirmed = 0;
    long refuted = 0;
    long inconclusive = 0;
    for (const Verdict& v : report.verdicts) {
        out << v.id << " " << status_name(v.status) << "\n";
        switch (v.status) {
            case ClaimStatus::Confirmed: ++confirmed; break;
            case ClaimStatus::Refuted: ++refuted; break;
            case ClaimStatus::Inconclusive: ++inconclusive; break;
        }
    }
    out << report.verdicts.size() << " claims: " << confirmed << " confirmed, " << refuted
        << " refuted, " << inconclusive << " inconclusive\n";

    if (!args.expect.empty()) {
        std::ifstream ef(args.expect);
        if (!ef) {
            err << "error: cannot read " << args.expect << "\n";
            return kExitIo;
        }
        std::stringstream buf;
        buf << ef.rdbuf();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::exception& e) {
            err << "error: bad expectation file: " << e.what() << "\n";
            return kExitUsage;
        }
        // Either a full report ({"verdicts": [{"id", "status"}, ...]}) or a
        // plain {"C1": "refuted", ...} map.
        std::map<std::string, std::string> expected;
        try {
            if (doc.contains("verdicts"))
                for (const auto& jv : doc.at("verdicts"))
                    expected[jv.at("id").get<std::string>()] =
                        jv.at("status").get<std::string>();
            else
                for (const auto& [id, st] : doc.items())
                    expected[id] = st.get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            err << "error: bad expectation file: " << e.what() << "\n";
            return kExitUsage;
        }
        std::map<std::string, std::string> actual;
        for (const Verdict& v : report.verdicts) actual[v.id] = status_name(v.status);
        bool mismatch = false;
        for (const auto& [id, st] : expected) {
            auto it = actual.find(id);
            if (it == actual.end()) {
                err << id << ": expected " << st << ", claim not audited\n";
                mismatch = true;
            } else if (it->second != st) {
                err << id << ": expected " << st << ", got " << it->second << "\n";
                mismatch = true;
            }
        }
        if (mismatch) return kExitExpectMismatch;
        out << "statuses match " << args.expect << "\n";
    }
    return kExitOk;
}

inline int do_asym(const AsymArgs& args, std::ostream& out) {
    if (args.n < 1) throw std::invalid_argument("--n must be at least 1");
    Rat a = parse_rational_literal(args.a);
    if (a.sign() <= 0) throw std::invalid_argument("--a must be positive");
    AsymptoticKind kind;
    if (args.model == "claimed")
        kind = AsymptoticKind::ClaimedClosedForm;
    else if (args.model == "singularity")
        kind = AsymptoticKind::SingularityCorrected;
    else
        throw std::invalid_argument("--model must be claimed or singularity");
    AsymptoticModel model = AsymptoticModel::make(kind, a.to_double());
    double lm = asym_log_value(model, args.n);
    double lx = log_s_exact(args.n, a);
    out << "log_model " << format_double17(lm) << "\n";
    out << "log_exact " << format_double17(lx) << "\n";
    out << "difference " << format_double17(lx - lm) << "\n";
    return kExitOk;
}

inline int do_simulate(const SimArgs& args, std::ostream& out) {
    Rat a = parse_rational_literal(args.a);
    WalkConfig cfg{args.n, a, args.samples, args.seed, args.chunks};
    McEstimate est = args.rao ? estimate_s_rao(cfg) : estimate_s(cfg);
    Rat exact = s_direct(args.n, a);
    double ex = exact.to_double();
    double z = est.std_error > 0.0 ? (est.mean - ex) / est.std_error : 0.0;
    out << "estimate " << format_double17(est.mean) << "\n";
    out << "std_error " << format_double17(est.std_error) << "\n";
    out << "exact " << exact.to_string() << "\n";
    out << "z " << format_double17(z) << "\n";
    return kExitOk;
}

}  // namespace detail

/// Parses and runs one command line (program name excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and approximate evaluation of the central binomial convolution S_n(a)",
                 "catconv"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    detail::EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate S_n(a) exactly by a chosen route");
    eval->add_option("--n", eval_args.n, "order n (nonnegative)")->required();
    eval->add_option("--a", eval_args.a, "weight a as 'p' or 'p/q'")->required();
    eval->add_option("--method", eval_args.method,
                     "route: direct, weighted, recurrence, hyper, identity, narayana, series")
        ->capture_default_str();
    eval->add_flag("--json", eval_args.json, "emit one JSON object instead of a bare value");

    detail::TableArgs table_args;
    auto* table = app.add_subcommand("table", "print S_0(a)..S_{n_max}(a)");
    table->add_option("--n-max", table_args.n_max, "largest order")->required();
    table->add_option("--a", table_args.a, "weight a as 'p' or 'p/q'")->required();
    table->add_option("--format", table_args.format, "csv or json")->capture_default_str();

    detail::AuditArgs audit_args;
    auto* audit = app.add_subcommand("audit", "check all claims and write a report");
    audit->add_option("--n-max", audit_args.n_max, "grid depth")->capture_default_str();
    audit->add_option("--a", audit_args.a,
                      "grid a values in witness-priority order (default 1 0 -1 2 1/2 -3 7/5)");
    audit->add_option("--out", audit_args.out, "JSON report path")->capture_default_str();
    audit->add_option("--markdown", audit_args.markdown, "also write a Markdown report here");
    audit->add_option("--expect", audit_args.expect,
                      "JSON file of expected statuses; mismatch exits 3");

    detail::AsymArgs asym_args;
    auto* asym = app.add_subcommand("asym", "compare log S_n(a) against a growth model");
    asym->add_option("--n", asym_args.n, "order n (at least 1)")->required();
    asym->add_option("--a", asym_args.a, "positive rational weight")->required();
    asym->add_option("--model", asym_args.model, "claimed or singularity")->required();

    detail::SimArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of S_n(a)");
    sim->add_option("--n", sim_args.n, "order n (nonnegative)")->required();
    sim->add_option("--a", sim_args.a, "positive rational weight")->required();
    sim->add_option("--samples", sim_args.samples, "sample count")->capture_default_str();
    sim->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
    sim->add_option("--chunks", sim_args.chunks, "parallelism hint; never changes the result")
        ->capture_default_str();
    sim->add_flag("--rao", sim_args.rao, "Rao-Blackwellized estimator");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(eval)) return detail::do_eval(eval_args, out);
        if (app.got_subcommand(table)) return detail::do_table(table_args, out);
        if (app.got_subcommand(audit)) return detail::do_audit(audit_args, out, err);
        if (app.got_subcommand(asym)) return detail::do_asym(asym_args, out);
        if (app.got_subcommand(sim)) return detail::do_simulate(sim_args, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "error: no subcommand\n";
    return kExitUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace catconv::cli
