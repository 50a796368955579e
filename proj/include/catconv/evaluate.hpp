#pragma once

/**
 * @file evaluate.hpp
 * @brief Exact evaluation of S_n(a) = sum_{k=0}^{n} C(2k,k) C(2(n-k),n-k) a^k
 *        by several independent routes, plus small combinatorial utilities.
 *
 * Every route returns the exact rational value; nothing in this header
 * rounds. s_direct is the reference implementation the others are
 * tested against.
 */

#include "catconv/exactnum.hpp"
#include "catconv/series.hpp"

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catconv {

enum class Method {
    Direct,
    WeightedCatalan,
    Recurrence,
    Hypergeometric,
    IdentityProofForm,
    Narayana,
    Series,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Direct: return "direct";
        case Method::WeightedCatalan: return "weighted";
        case Method::Recurrence: return "recurrence";
        case Method::Hypergeometric: return "hyper";
        case Method::IdentityProofForm: return "identity";
        case Method::Narayana: return "narayana";
        case Method::Series: return "series";
    }
    throw std::invalid_argument("method_name: unknown method");
}

/// @throws std::invalid_argument for an unrecognized name.
inline Method method_from_name(std::string_view name) {
    for (Method m : {Method::Direct, Method::WeightedCatalan, Method::Recurrence,
                     Method::Hypergeometric, Method::IdentityProofForm, Method::Narayana,
                     Method::Series})
        if (name == method_name(m)) return m;
    throw std::invalid_argument("unknown method \"" + std::string(name) + "\"");
}

/// Reference route: the defining convolution, term by term.
inline Rat s_direct(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_direct: negative n");
    auto row = central_binomial_row(n);
    Rat acc(0);
    Rat apow(1);
    for (long k = 0; k <= n; ++k) {
        acc += Rat(row[k] * row[n - k]) * apow;
        apow *= a;
    }
    return acc;
}

/// Same convolution written through Catalan numbers,
/// C(2k,k) = (k+1) Cat_k.
inline Rat s_weighted_catalan(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_weighted_catalan: negative n");
    auto row = central_binomial_row(n);
    std::vector<Int> cat(row.size());
    for (long k = 0; k <= n; ++k) cat[k] = exact_div(row[k], Int(k + 1));
    Rat acc(0);
    Rat apow(1);
    for (long k = 0; k <= n; ++k) {
        acc += Rat(Int((k + 1) * (n - k + 1)) * cat[k] * cat[n - k]) * apow;
        apow *= a;
    }
    return acc;
}

/// Three-term recurrence route:
/// (m+1) S_{m+1} = 2(2m+1)(1+a) S_m - 16 m a S_{m-1}, S_0 = 1, S_1 = 2(1+a).
inline Rat s_recurrence(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_recurrence: negative n");
    if (n == 0) return Rat(1);
    Rat prev(1);
    Rat cur = Rat(2) * (Rat(1) + a);
    Rat two_one_plus_a = Rat(2) * (Rat(1) + a);
    Rat sixteen_a = Rat(16) * a;
    for (long m = 1; m < n; ++m) {
        Rat next = (two_one_plus_a * Rat(2 * m + 1) * cur - sixteen_a * Rat(m) * prev) / Rat(m + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Terminating Gauss hypergeometric sum
/// 2F1(-n, b; c; z) = sum_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) z^k.
/// @throws std::domain_error when c hits a pole (c = 0, -1, ..., -(n-1)).
inline Rat hyp2f1_terminating(long n, const Rat& b, const Rat& c, const Rat& z) {
    if (n < 0) throw std::domain_error("hyp2f1_terminating: negative n");
    if (c.is_integer() && c.sign() <= 0 && -c.num() <= Int(n - 1))
        throw std::domain_error("hyp2f1_terminating: pole in lower parameter");
    Rat acc(1);
    Rat term(1);
    for (long k = 0; k < n; ++k) {
        term *= Rat(-n + k) * (b + Rat(k)) * z / ((c + Rat(k)) * Rat(k + 1));
        acc += term;
    }
    return acc;
}

/// Closed form 4^n 2F1(-n, 1/2; 1; 1-a).
inline Rat s_hypergeometric(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_hypergeometric: negative n");
    return Rat(Int(4).pow(static_cast<unsigned long>(n))) *
           hyp2f1_terminating(n, Rat(1, 2), Rat(1), Rat(1) - a);
}

/// Restructured single sum
/// sum_{m=0}^{floor(n/2)} C(2(n-m), n-m) C(n-m, m) (a+1)^{n-2m} (-4a)^m.
inline Rat s_identity_proof_form(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_identity_proof_form: negative n");
    Rat ap1 = a + Rat(1);
    Rat m4a = Rat(-4) * a;
    std::vector<Rat> ap1_pow(static_cast<std::size_t>(n) + 1);
    ap1_pow[0] = Rat(1);
    for (long i = 1; i <= n; ++i) ap1_pow[i] = ap1_pow[i - 1] * ap1;
    Rat acc(0);
    Rat m4a_pow(1);
    for (long m = 0; 2 * m <= n; ++m) {
        acc += Rat(binomial(2 * (n - m), n - m) * binomial(n - m, m)) * ap1_pow[n - 2 * m] * m4a_pow;
        m4a_pow *= m4a;
    }
    return acc;
}

/// Peak-refined route: C(2k,k) = (k+1) sum_i N(k, i), so each convolution
/// term expands into Narayana numbers; an index of 0 contributes the
/// empty-path factor 1.
inline Rat s_narayana(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_narayana: negative n");
    std::vector<Int> peak_sum(static_cast<std::size_t>(n) + 1, Int(1));
    for (long k = 1; k <= n; ++k) {
        Int acc(0);
        for (long i = 1; i <= k; ++i) acc += narayana(k, i);
        peak_sum[k] = acc;
    }
    Rat total(0);
    Rat apow(1);
    for (long k = 0; k <= n; ++k) {
        total += Rat(Int((k + 1) * (n - k + 1)) * peak_sum[k] * peak_sum[n - k]) * apow;
        apow *= a;
    }
    return total;
}

/// Series route: S_n(a) is the x^n coefficient of G(x) G(ax) where
/// G(x) = sum_k C(2k,k) x^k, computed with exact series arithmetic.
inline Rat s_series(long n, const Rat& a) {
    if (n < 0) throw std::domain_error("s_series: negative n");
    std::size_t ord = static_cast<std::size_t>(n) + 1;
    PowerSeries g = ps_central_binomial(ord);
    PowerSeries prod = ps_mul(g, ps_scale_arg(g, a));
    return ps_coeff(prod, static_cast<std::size_t>(n));
}

struct EvalRequest {
    long n = 0;
    Rat a;
    Method method = Method::Direct;
};

struct EvalResult {
    Rat value;
    Method method;
    long n;
    Rat a;
    std::chrono::nanoseconds elapsed;
};

/// Runs the requested route and reports the exact value plus wall time.
inline EvalResult evaluate(const EvalRequest& req) {
    auto t0 = std::chrono::steady_clock::now();
    Rat value;
    switch (req.method) {
        case Method::Direct: value = s_direct(req.n, req.a); break;
        case Method::WeightedCatalan: value = s_weighted_catalan(req.n, req.a); break;
        case Method::Recurrence: value = s_recurrence(req.n, req.a); break;
        case Method::Hypergeometric: value = s_hypergeometric(req.n, req.a); break;
        case Method::IdentityProofForm: value = s_identity_proof_form(req.n, req.a); break;
        case Method::Narayana: value = s_narayana(req.n, req.a); break;
        case Method::Series: value = s_series(req.n, req.a); break;
        default: throw std::invalid_argument("evaluate: unknown method");
    }
    auto t1 = std::chrono::steady_clock::now();
    return EvalResult{std::move(value), req.method, req.n, req.a,
                      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)};
}

/// One balanced path of 2k steps, 'U' up and 'D' down, with its peak count.
struct DyckPath {
    std::string steps;
    int peaks = 0;
};

inline constexpr int kDyckEnumerateMax = 12;

/// All Dyck paths of semilength k in lexicographic order ('D' < 'U').
/// Exhaustive enumeration, so k is capped at kDyckEnumerateMax.
/// @throws std::domain_error for k < 0 or k > kDyckEnumerateMax.
inline std::vector<DyckPath> dyck_enumerate(int k) {
    if (k < 0 || k > kDyckEnumerateMax)
        throw std::domain_error("dyck_enumerate: semilength out of range");
    std::vector<DyckPath> out;
    std::string cur(static_cast<std::size_t>(2 * k), ' ');
    auto rec = [&](auto&& self, int pos, int height) -> void {
        if (pos == 2 * k) {
            int peaks = 0;
            for (int i = 0; i + 1 < 2 * k; ++i)
                if (cur[i] == 'U' && cur[i + 1] == 'D') ++peaks;
            out.push_back(DyckPath{cur, peaks});
            return;
        }
        int remaining = 2 * k - pos;
        if (height > 0) {  // 'D' first keeps lexicographic order
            cur[pos] = 'D';
            self(self, pos + 1, height - 1);
        }
        if (height + 2 <= remaining) {  // must be able to return to zero
            cur[pos] = 'U';
            self(self, pos + 1, height + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// Evaluates both sides of the reflection law S_n(a) = a^n S_n(1/a).
/// @throws std::domain_error when a is zero.
inline std::pair<Rat, Rat> reciprocity_check(long n, const Rat& a) {
    if (a.is_zero()) throw std::domain_error("reciprocity_check: a must be nonzero");
    return {s_direct(n, a), a.pow(n) * s_direct(n, a.reciprocal())};
}

}  // namespace catconv
