#pragma once

/**
 * @file audit.hpp
 * @brief Claim audit engine: each candidate identity or model is checked
 *        cell by cell against the reference evaluator s_direct and given a
 *        confirmed / refuted / inconclusive verdict with a minimal witness.
 *
 * A claim's cells are visited in a fixed total order (n ascending, then a
 * in grid order), so the first failing cell is the canonical witness and
 * reports are reproducible byte for byte. Witnesses store lhs = the ground
 * truth value and rhs = the claim's prediction.
 */

#include "catconv/analytic.hpp"
#include "catconv/evaluate.hpp"
#include "catconv/exactnum.hpp"
#include "catconv/series.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catconv {

/// Shortest round-trippable decimal rendering of a double.
inline std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

enum class ClaimStatus { Confirmed, Refuted, Inconclusive };

inline const char* status_name(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Confirmed: return "confirmed";
        case ClaimStatus::Refuted: return "refuted";
        case ClaimStatus::Inconclusive: return "inconclusive";
    }
    throw std::invalid_argument("status_name: unknown status");
}

inline ClaimStatus status_from_name(const std::string& s) {
    if (s == "confirmed") return ClaimStatus::Confirmed;
    if (s == "refuted") return ClaimStatus::Refuted;
    if (s == "inconclusive") return ClaimStatus::Inconclusive;
    throw std::invalid_argument("status_from_name: unknown status \"" + s + "\"");
}

struct AuditGrid {
    long n_max = 24;
    std::vector<Rat> a_values;

    /// n <= 24 with a in {1, 0, -1, 2, 1/2, -3, 7/5}. The order is part of
    /// the contract: it fixes which failing cell becomes the witness.
    static AuditGrid default_grid() {
        return AuditGrid{24, {Rat(1), Rat(0), Rat(-1), Rat(2), Rat(1, 2), Rat(-3), Rat(7, 5)}};
    }

    void validate() const {
        if (n_max < 0) throw std::invalid_argument("AuditGrid: negative n_max");
        if (a_values.empty()) throw std::invalid_argument("AuditGrid: no a values");
    }
};

struct Cell {
    long n = 0;
    Rat a;
};

struct CellOutcome {
    enum class Kind { Pass, Fail, Skip };
    Kind kind = Kind::Skip;
    std::string lhs;
    std::string rhs;

    static CellOutcome pass() { return {Kind::Pass, "", ""}; }
    static CellOutcome fail(std::string lhs, std::string rhs) {
        return {Kind::Fail, std::move(lhs), std::move(rhs)};
    }
    static CellOutcome skip() { return {Kind::Skip, "", ""}; }
};

struct Witness {
    long n = 0;
    Rat a;
    std::string lhs;
    std::string rhs;
};

struct Verdict {
    std::string id;
    ClaimStatus status = ClaimStatus::Inconclusive;
    std::optional<Witness> witness;
    long cells = 0;
};

struct Claim {
    std::string id;
    std::string description; ///< the formula or model under test
    std::function<std::vector<Cell>(const AuditGrid&)> cells;
    std::function<CellOutcome(const Cell&)> check;
};

/// Applies one claim to an explicit cell list. Any failing cell refutes;
/// with no failures, at least one pass confirms; otherwise (everything
/// skipped or thrown) the verdict is inconclusive. The witness is the
/// first failure in list order.
inline Verdict run_claim(const Claim& claim, const std::vector<Cell>& cells) {
    if (cells.empty()) throw std::invalid_argument("run_claim: empty cell list");
    Verdict v;
    v.id = claim.id;
    v.cells = static_cast<long>(cells.size());
    long passes = 0;
    for (const Cell& cell : cells) {
        CellOutcome out;
        try {
            out = claim.check(cell);
        } catch (const std::exception&) {
            out = CellOutcome::skip();
        }
        if (out.kind == CellOutcome::Kind::Fail) {
            v.status = ClaimStatus::Refuted;
            v.witness = Witness{cell.n, cell.a, out.lhs, out.rhs};
            return v;
        }
        if (out.kind == CellOutcome::Kind::Pass) ++passes;
    }
    v.status = passes > 0 ? ClaimStatus::Confirmed : ClaimStatus::Inconclusive;
    return v;
}

namespace detail {

inline std::vector<Cell> cells_full(const AuditGrid& g) {
    std::vector<Cell> out;
    for (long n = 0; n <= g.n_max; ++n)
        for (const Rat& a : g.a_values) out.push_back({n, a});
    return out;
}

inline std::vector<Cell> cells_where(const AuditGrid& g, const std::function<bool(const Rat&)>& keep) {
    std::vector<Cell> out;
    for (long n = 0; n <= g.n_max; ++n)
        for (const Rat& a : g.a_values)
            if (keep(a)) out.push_back({n, a});
    return out;
}

inline bool close_rel(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

/// Exact-comparison outcome with stringified witness values.
inline CellOutcome compare_exact(const Rat& truth, const Rat& claimed) {
    if (truth == claimed) return CellOutcome::pass();
    return CellOutcome::fail(truth.to_string(), claimed.to_string());
}

}  // namespace detail

/// The thirteen audited claims, in report order.
inline std::vector<Claim> claim_registry() {
    std::vector<Claim> reg;

    reg.push_back(Claim{
        "C1", "closed form S_n(a) = 4^n ((1/2)_n / n!) 2F1(-n, 1/2; 1; 1-a)",
        detail::cells_full,
        [](const Cell& c) {
            Rat claimed = Rat(Int(4).pow(static_cast<unsigned long>(c.n))) *
                          pochhammer_half(c.n) / Rat(factorial(c.n)) *
                          hyp2f1_terminating(c.n, Rat(1, 2), Rat(1), Rat(1) - c.a);
            return detail::compare_exact(s_direct(c.n, c.a), claimed);
        }});

    reg.push_back(Claim{
        "C2", "special value S_n(1) = C(2n, n)",
        [](const AuditGrid& g) { return detail::cells_where(g, [](const Rat& a) { return a == Rat(1); }); },
        [](const Cell& c) {
            return detail::compare_exact(s_direct(c.n, c.a), Rat(binomial(2 * c.n, c.n)));
        }});

    reg.push_back(Claim{
        "C3", "alternating value S_{2m}(-1) = 4^m C(2m, m) and S_{2m+1}(-1) = 0",
        [](const AuditGrid& g) { return detail::cells_where(g, [](const Rat& a) { return a == Rat(-1); }); },
        [](const Cell& c) {
            Rat claimed = (c.n % 2 == 0)
                              ? Rat(Int(4).pow(static_cast<unsigned long>(c.n / 2)) *
                                    binomial(c.n, c.n / 2))
                              : Rat(0);
            return detail::compare_exact(s_direct(c.n, c.a), claimed);
        }});

    reg.push_back(Claim{
        "C4", "restructured sum S_n(a) = sum_m C(2m,m) C(2(n-2m),n-2m) (a+1)^{n-2m} (-4a)^m",
        detail::cells_full,
        [](const Cell& c) {
            Rat ap1 = c.a + Rat(1);
            Rat m4a = Rat(-4) * c.a;
            Rat acc(0);
            Rat m4a_pow(1);
            for (long m = 0; 2 * m <= c.n; ++m) {
                acc += Rat(binomial(2 * m, m) * binomial(2 * (c.n - 2 * m), c.n - 2 * m)) *
                       ap1.pow(c.n - 2 * m) * m4a_pow;
                m4a_pow *= m4a;
            }
            return detail::compare_exact(s_direct(c.n, c.a), acc);
        }});

    reg.push_back(Claim{
        "C5", "restructured sum S_n(a) = sum_m C(2(n-m),n-m) C(n-m,m) (a+1)^{n-2m} (-4a)^m",
        detail::cells_full,
        [](const Cell& c) {
            return detail::compare_exact(s_direct(c.n, c.a), s_identity_proof_form(c.n, c.a));
        }});

    reg.push_back(Claim{
        "C6", "recurrence (n+2) S_{n+1} = 2(2n+1)(1+a) S_n - 4 n a S_{n-1}, S_0 = 1, S_1 = 2(1+a)",
        detail::cells_full,
        [](const Cell& c) {
            if (c.n == 0) return detail::compare_exact(s_direct(0, c.a), Rat(1));
            if (c.n == 1)
                return detail::compare_exact(s_direct(1, c.a), Rat(2) * (Rat(1) + c.a));
            // Predict S_n from the true S_{n-1}, S_{n-2} via the printed
            // coefficients (substitute n -> n-1 in the displayed relation).
            long m = c.n - 1;
            Rat predicted = (Rat(2 * (2 * m + 1)) * (Rat(1) + c.a) * s_direct(m, c.a) -
                             Rat(4 * m) * c.a * s_direct(m - 1, c.a)) /
                            Rat(m + 2);
            return detail::compare_exact(s_direct(c.n, c.a), predicted);
        }});

    reg.push_back(Claim{
        "C7", "special value S_n(0) = C(2n, n)",
        [](const AuditGrid& g) { return detail::cells_where(g, [](const Rat& a) { return a.is_zero(); }); },
        [](const Cell& c) {
            return detail::compare_exact(s_direct(c.n, c.a), Rat(binomial(2 * c.n, c.n)));
        }});

    reg.push_back(Claim{
        "C8", "reflection S_n(a) = a^n S_n(1/a) for a != 0",
        [](const AuditGrid& g) { return detail::cells_where(g, [](const Rat& a) { return !a.is_zero(); }); },
        [](const Cell& c) {
            auto [lhs, rhs] = reciprocity_check(c.n, c.a);
            return detail::compare_exact(lhs, rhs);
        }});

    reg.push_back(Claim{
        "C9", "integral form S_n(a) = (1/pi) integral_0^pi (1 + a + 2 sqrt(a) cos t)^n dt for a > 0",
        [](const AuditGrid& g) { return detail::cells_where(g, [](const Rat& a) { return a.sign() > 0; }); },
        [](const Cell& c) {
            double t = t_integral(c.n, c.a.to_double());
            double b = binomial_square_sum(c.n, c.a).to_double();
            // The integral provably equals sum_k C(n,k)^2 a^k; if the
            // quadrature disagrees even with that, the cell is unusable.
            if (!detail::close_rel(t, b, 1e-6)) return CellOutcome::skip();
            double s = s_direct(c.n, c.a).to_double();
            if (detail::close_rel(t, s, 1e-4)) return CellOutcome::pass();
            return CellOutcome::fail(format_double17(s), format_double17(t));
        }});

    reg.push_back(Claim{
        "C10", "asymptotic S_n(a) ~ (1 + sqrt(a))^{2n} / (sqrt(pi n) a^{1/4}) for a > 0",
        [](const AuditGrid& g) {
            std::vector<Cell> out;
            for (long n : {100L, 400L, 1600L})
                for (const Rat& a : g.a_values)
                    if (a.sign() > 0) out.push_back({n, a});
            return out;
        },
        [](const Cell& c) {
            double lx = log_s_exact(c.n, c.a);
            auto model = AsymptoticModel::make(AsymptoticKind::ClaimedClosedForm, c.a.to_double());
            double lm = asym_log_value(model, c.n);
            double ratio = std::exp(lx - lm);
            if (std::abs(ratio - 1.0) <= 0.25) return CellOutcome::pass();
            return CellOutcome::fail(format_double17(lx), format_double17(lm));
        }});

    reg.push_back(Claim{
        "C11", "saddle point of -log x - (1/2)log(1-4x) - (1/2)log(1-4ax) at x = 1/(1+sqrt(a))^2",
        [](const AuditGrid& g) {
            std::vector<Cell> out;
            for (const Rat& a : g.a_values)
                if (a.sign() > 0) out.push_back({0, a});
            return out;
        },
        [](const Cell& c) {
            double a = c.a.to_double();
            double root = saddle_solve(a, 1e-12);
            double s = 1.0 + std::sqrt(a);
            double claimed = 1.0 / (s * s);
            if (std::abs(root - claimed) <= 1e-6) return CellOutcome::pass();
            return CellOutcome::fail(format_double17(root), format_double17(claimed));
        }});

    reg.push_back(Claim{
        "C12", "peak refinement: S_n(a) from Narayana sums, C(2k,k) = (k+1) sum_i N(k,i)",
        detail::cells_full,
        [](const Cell& c) {
            return detail::compare_exact(s_direct(c.n, c.a), s_narayana(c.n, c.a));
        }});

    reg.push_back(Claim{
        "C13", "generating function: S_n(a) is the x^n coefficient of G(x) G(ax), G(x) = sum_k C(2k,k) x^k",
        detail::cells_full,
        [](const Cell& c) {
            return detail::compare_exact(s_direct(c.n, c.a), s_series(c.n, c.a));
        }});

    return reg;
}

struct AuditReport {
    std::string version;
    AuditGrid grid;
    std::string timestamp; ///< ISO 8601 UTC, file output only
    std::vector<Verdict> verdicts;
};

namespace detail {

inline std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace detail

/// Runs every claim on its slice of the grid, in registry order.
inline AuditReport run_all(const std::vector<Claim>& claims, const AuditGrid& grid) {
    if (claims.empty()) throw std::invalid_argument("run_all: empty claim registry");
    grid.validate();
    AuditReport report;
    report.version = kVersion;
    report.grid = grid;
    report.timestamp = detail::utc_timestamp_now();
    for (const Claim& claim : claims) {
        std::vector<Cell> cells = claim.cells(grid);
        if (cells.empty()) {
            // Nothing in this grid touches the claim's domain; the claim
            // stays untested rather than failing the whole audit.
            Verdict v;
            v.id = claim.id;
            v.status = ClaimStatus::Inconclusive;
            v.cells = 0;
            report.verdicts.push_back(std::move(v));
        } else {
            report.verdicts.push_back(run_claim(claim, cells));
        }
    }
    return report;
}

inline AuditReport run_all(const AuditGrid& grid) { return run_all(claim_registry(), grid); }

enum class ReportFormat { Json, Markdown };

inline std::string render_report(const AuditReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json doc;
        doc["version"] = report.version;
        doc["grid"]["n_max"] = report.grid.n_max;
        auto& avals = doc["grid"]["a"] = nlohmann::ordered_json::array();
        for (const Rat& a : report.grid.a_values) avals.push_back(a.to_string());
        doc["timestamp"] = report.timestamp;
        auto& verdicts = doc["verdicts"] = nlohmann::ordered_json::array();
        for (const Verdict& v : report.verdicts) {
            nlohmann::ordered_json jv;
            jv["id"] = v.id;
            jv["status"] = status_name(v.status);
            if (v.witness) {
                jv["witness"]["n"] = v.witness->n;
                jv["witness"]["a"] = v.witness->a.to_string();
                jv["witness"]["lhs"] = v.witness->lhs;
                jv["witness"]["rhs"] = v.witness->rhs;
            } else {
                jv["witness"] = nullptr;
            }
            jv["cells"] = v.cells;
            verdicts.push_back(std::move(jv));
        }
        return doc.dump(2) + "\n";
    }

    std::string md;
    md += "# Audit report\n\n";
    md += "- version: " + report.version + "\n";
    md += "- grid: n <= " + std::to_string(report.grid.n_max) + ", a in {";
    for (std::size_t i = 0; i < report.grid.a_values.size(); ++i) {
        if (i) md += ", ";
        md += report.grid.a_values[i].to_string();
    }
    md += "}\n";
    md += "- timestamp: " + report.timestamp + "\n\n";
    md += "| id | status | cells | witness |\n";
    md += "|----|--------|-------|---------|\n";
    for (const Verdict& v : report.verdicts) {
        std::string w = "-";
        if (v.witness)
            w = "n=" + std::to_string(v.witness->n) + ", a=" + v.witness->a.to_string() +
                ", lhs=" + v.witness->lhs + ", rhs=" + v.witness->rhs;
        md += "| " + v.id + " | " + status_name(v.status) + " | " + std::to_string(v.cells) +
              " | " + w + " |\n";
    }
    return md;
}

/// Inverse of render_report(..., Json).
/// @throws std::invalid_argument on malformed or schema-violating input.
inline AuditReport parse_report_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("parse_report_json: ") + e.what());
    }
    try {
        AuditReport report;
        report.version = doc.at("version").get<std::string>();
        report.grid.n_max = doc.at("grid").at("n_max").get<long>();
        for (const auto& a : doc.at("grid").at("a"))
            report.grid.a_values.push_back(rat_from_string(a.get<std::string>()));
        report.timestamp = doc.at("timestamp").get<std::string>();
        for (const auto& jv : doc.at("verdicts")) {
            Verdict v;
            v.id = jv.at("id").get<std::string>();
            v.status = status_from_name(jv.at("status").get<std::string>());
            if (!jv.at("witness").is_null()) {
                const auto& jw = jv.at("witness");
                v.witness = Witness{jw.at("n").get<long>(),
                                    rat_from_string(jw.at("a").get<std::string>()),
                                    jw.at("lhs").get<std::string>(),
                                    jw.at("rhs").get<std::string>()};
            }
            v.cells = jv.at("cells").get<long>();
            report.verdicts.push_back(std::move(v));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("parse_report_json: schema: ") + e.what());
    }
}

}  // namespace catconv
