#pragma once

/**
 * @file analytic.hpp
 * @brief Floating-point companions to the exact evaluators: an integral
 *        representation, a Legendre bridge, asymptotic growth models,
 *        and the saddle-point equation of the generating function.
 *
 * Comparisons against exact values are made in relative terms because
 * the quantities grow like (1+sqrt(a))^{2n}; absolute tolerances are
 * meaningless at that scale.
 */

#include "catconv/evaluate.hpp"
#include "catconv/exactnum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catconv {

struct QuadratureConfig {
    double abs_tol = 1e-10;       ///< scale-aware stopping tolerance
    int max_panel_doublings = 20; ///< refinement rounds before giving up
};

namespace detail {

inline void validate(const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0))
        throw std::invalid_argument("QuadratureConfig: abs_tol must be positive");
    if (cfg.max_panel_doublings < 1 || cfg.max_panel_doublings > 24)
        throw std::invalid_argument("QuadratureConfig: max_panel_doublings out of [1, 24]");
}

/// Composite Simpson rule with a fixed panel count, summed left to right.
template <class F>
double simpson_fixed(F&& f, double lo, double hi, int panels) {
    double h = (hi - lo) / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        double x0 = lo + i * h;
        double x1 = x0 + h;
        acc += (h / 6.0) * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    return acc;
}

/// Doubles the panel count until two successive estimates agree to
/// cfg.abs_tol relative to max(1, |estimate|).
/// @throws std::runtime_error when the budget runs out first.
template <class F>
double simpson_converge(F&& f, double lo, double hi, const QuadratureConfig& cfg) {
    validate(cfg);
    int panels = 8;
    double prev = simpson_fixed(f, lo, hi, panels);
    for (int round = 0; round < cfg.max_panel_doublings; ++round) {
        panels *= 2;
        double cur = simpson_fixed(f, lo, hi, panels);
        if (std::abs(cur - prev) <= cfg.abs_tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("quadrature failed to converge within panel budget");
}

/// Integer power by repeated squaring; deterministic unlike std::pow.
inline double ipow(double base, long e) {
    double acc = 1.0;
    double b = base;
    for (long m = e; m > 0; m >>= 1) {
        if (m & 1) acc *= b;
        b *= b;
    }
    return acc;
}

/// log|v| without overflow: GMP splits v into mantissa and exponent.
inline double log_int_abs(const Int& v) {
    if (v.is_zero()) throw std::domain_error("log_int_abs: zero");
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, v.raw().get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp2) * std::numbers::ln2;
}

}  // namespace detail

/// (1/pi) integral_0^pi (1 + a + 2 sqrt(a) cos t)^n dt for a >= 0.
inline double t_integral(long n, double a, const QuadratureConfig& cfg = {}) {
    if (n < 0) throw std::domain_error("t_integral: negative n");
    if (!(a >= 0.0)) throw std::domain_error("t_integral: a must be nonnegative");
    double c = 1.0 + a;
    double s = 2.0 * std::sqrt(a);
    auto f = [&](double t) { return detail::ipow(c + s * std::cos(t), n); };
    return detail::simpson_converge(f, 0.0, std::numbers::pi, cfg) / std::numbers::pi;
}

/// Exact sum_{k=0}^{n} C(n,k)^2 a^k, the quantity t_integral actually matches.
inline Rat binomial_square_sum(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("binomial_square_sum: negative n");
    Rat acc(0);
    Rat apow(1);
    Int b(1);
    for (long k = 0; k <= n; ++k) {
        acc += Rat(b * b) * apow;
        apow *= a;
        if (k < n) b = exact_div(b * Int(n - k), Int(k + 1));
    }
    return acc;
}

/// Legendre polynomial P_n(x) by the Bonnet recurrence.
inline double legendre_pn(long n, double x) {
    if (n < 0) throw std::domain_error("legendre_pn: negative n");
    if (n == 0) return 1.0;
    double pm = 1.0;
    double pc = x;
    for (long m = 1; m < n; ++m) {
        double pn = ((2.0 * m + 1.0) * x * pc - m * pm) / (m + 1.0);
        pm = pc;
        pc = pn;
    }
    return pc;
}

/// (1/pi) integral_0^pi (2 cos t)^{2k} dt, which equals C(2k, k).
/// k is capped at 30 so the integrand stays well inside double range.
inline double central_binom_quadrature(long k, const QuadratureConfig& cfg = {}) {
    if (k < 0) throw std::domain_error("central_binom_quadrature: negative k");
    if (k > 30) throw std::domain_error("central_binom_quadrature: k exceeds 30");
    auto f = [&](double t) { return detail::ipow(2.0 * std::cos(t), 2 * k); };
    return detail::simpson_converge(f, 0.0, std::numbers::pi, cfg) / std::numbers::pi;
}

enum class AsymptoticKind {
    ClaimedClosedForm,    ///< (1+sqrt(a))^{2n} / (sqrt(pi n) a^{1/4})
    SingularityCorrected, ///< transfer analysis at the dominant singularity
};

struct AsymptoticModel {
    AsymptoticKind kind;
    double a;
    double growth_base; ///< exponential growth rate per step
    double rho;         ///< dominant singularity radius

    /// @throws std::domain_error unless a > 0.
    static AsymptoticModel make(AsymptoticKind kind, double a) {
        if (!(a > 0.0)) throw std::domain_error("AsymptoticModel: a must be positive");
        double rho;
        if (kind == AsymptoticKind::ClaimedClosedForm) {
            double r = 1.0 + std::sqrt(a);
            rho = 1.0 / (r * r);
        } else {
            rho = a <= 1.0 ? 0.25 : 0.25 / a;
        }
        return AsymptoticModel{kind, a, 1.0 / rho, rho};
    }
};

/// log of the model's prediction for S_n(a); exact models would overflow
/// double for large n, so everything stays in log space.
inline double asym_log_value(const AsymptoticModel& model, long n) {
    if (n < 1) throw std::domain_error("asym_log_value: n must be at least 1");
    double nn = static_cast<double>(n);
    if (model.kind == AsymptoticKind::ClaimedClosedForm) {
        return 2.0 * nn * std::log1p(std::sqrt(model.a)) -
               0.5 * std::log(std::numbers::pi * nn) - 0.25 * std::log(model.a);
    }
    double a = model.a;
    if (a < 1.0)
        return nn * std::log(4.0) - 0.5 * std::log(std::numbers::pi * nn * (1.0 - a));
    if (a > 1.0)
        return nn * std::log(4.0 * a) - 0.5 * std::log(std::numbers::pi * nn) +
               0.5 * std::log(a / (a - 1.0));
    // Confluent case a = 1: the two square-root factors merge into a simple
    // pole at 1/4 and S_n(1) = 4^n exactly.
    return nn * std::log(4.0);
}

/// log S_n(a) from the exact rational value, safe for values far past
/// double overflow.
inline double log_s_exact(long n, const Rat& a) {
    if (n < 1) throw std::domain_error("log_s_exact: n must be at least 1");
    if (a.sign() <= 0) throw std::domain_error("log_s_exact: a must be positive");
    Rat v = s_recurrence(n, a);
    return detail::log_int_abs(v.num()) - detail::log_int_abs(v.den());
}

/// Saddle-point potential phi(x) = -log x - (1/2) log(1-4x) - (1/2) log(1-4ax)
/// on 0 < x < min(1/4, 1/(4a)), a > 0.
inline double phi(double x, double a) {
    if (!(a > 0.0)) throw std::domain_error("phi: a must be positive");
    double hi = std::min(0.25, 0.25 / a);
    if (!(x > 0.0 && x < hi)) throw std::domain_error("phi: x outside (0, min(1/4, 1/(4a)))");
    return -std::log(x) - 0.5 * std::log(1.0 - 4.0 * x) - 0.5 * std::log(1.0 - 4.0 * a * x);
}

inline double phi_prime(double x, double a) {
    if (!(a > 0.0)) throw std::domain_error("phi_prime: a must be positive");
    double hi = std::min(0.25, 0.25 / a);
    if (!(x > 0.0 && x < hi)) throw std::domain_error("phi_prime: x outside (0, min(1/4, 1/(4a)))");
    return -1.0 / x + 2.0 / (1.0 - 4.0 * x) + 2.0 * a / (1.0 - 4.0 * a * x);
}

/// Unique root of phi_prime(., a) inside (0, min(1/4, 1/(4a))) by bisection.
/// The interval is narrowed below tol/64, so |phi_prime(root, a)| lands well
/// within 10*tol even where phi'' is a few hundred.
/// @throws std::runtime_error when no sign change brackets a root.
inline double saddle_solve(double a, double tol = 1e-12) {
    if (!(a > 0.0)) throw std::domain_error("saddle_solve: a must be positive");
    if (!(tol > 0.0)) throw std::domain_error("saddle_solve: tol must be positive");
    double edge = std::min(0.25, 0.25 / a);
    double lo = edge * 1e-9;
    double hi = edge * (1.0 - 1e-9);
    if (!(phi_prime(lo, a) < 0.0 && phi_prime(hi, a) > 0.0))
        throw std::runtime_error("saddle_solve: root not bracketed");
    for (int i = 0; i < 300 && (hi - lo) > tol / 64.0; ++i) {
        double mid = 0.5 * (lo + hi);
        (phi_prime(mid, a) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace catconv
