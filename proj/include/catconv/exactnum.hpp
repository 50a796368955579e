#pragma once

/**
 * @file exactnum.hpp
 * @brief Exact integer and rational arithmetic plus the elementary
 *        combinatorial quantities used throughout the library.
 *
 * Int and Rat are value types wrapping GMP's mpz/mpq. A Rat is kept
 * canonical at all times: lowest terms, positive denominator, and zero
 * stored as 0/1. Every arithmetic result re-establishes the invariant,
 * so client code never sees an unreduced fraction.
 *
 * Domain violations throw std::domain_error; malformed text input
 * throws std::invalid_argument.
 */

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catconv {

inline constexpr const char* kVersion = "0.1.0";

/// Arbitrary-precision signed integer.
class Int {
public:
    Int() : v_(0) {}
    Int(long v) : v_(v) {}
    explicit Int(mpz_class v) : v_(std::move(v)) {}

    /// Parses a base-10 integer with optional leading sign.
    /// @throws std::invalid_argument on any other text.
    explicit Int(const std::string& s) {
        std::size_t digits_from = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
        if (digits_from >= s.size() ||
            s.find_first_not_of("0123456789", digits_from) != std::string::npos)
            throw std::invalid_argument("Int: malformed integer literal: \"" + s + "\"");
        mpz_set_str(v_.get_mpz_t(), s.c_str() + (s[0] == '+' ? 1 : 0), 10);
    }

    const mpz_class& raw() const { return v_; }

    Int operator-() const { return Int(mpz_class(-v_)); }
    Int& operator+=(const Int& o) { v_ += o.v_; return *this; }
    Int& operator-=(const Int& o) { v_ -= o.v_; return *this; }
    Int& operator*=(const Int& o) { v_ *= o.v_; return *this; }

    friend Int operator+(Int x, const Int& y) { x += y; return x; }
    friend Int operator-(Int x, const Int& y) { x -= y; return x; }
    friend Int operator*(Int x, const Int& y) { x *= y; return x; }

    friend bool operator==(const Int& x, const Int& y) { return mpz_cmp(x.v_.get_mpz_t(), y.v_.get_mpz_t()) == 0; }
    friend bool operator!=(const Int& x, const Int& y) { return !(x == y); }
    friend bool operator<(const Int& x, const Int& y) { return mpz_cmp(x.v_.get_mpz_t(), y.v_.get_mpz_t()) < 0; }
    friend bool operator>(const Int& x, const Int& y) { return y < x; }
    friend bool operator<=(const Int& x, const Int& y) { return !(y < x); }
    friend bool operator>=(const Int& x, const Int& y) { return !(x < y); }

    /// Nonnegative integer power.
    Int pow(unsigned long e) const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), e);
        return Int(r);
    }

    int sign() const { return mpz_sgn(v_.get_mpz_t()); }
    bool is_zero() const { return sign() == 0; }
    bool is_even() const { return mpz_even_p(v_.get_mpz_t()) != 0; }

    double to_double() const { return v_.get_d(); }
    std::string to_string() const { return v_.get_str(); }

private:
    mpz_class v_;
};

/// Quotient of integers known to divide exactly.
/// @throws std::domain_error when the division leaves a remainder or d is zero.
inline Int exact_div(const Int& n, const Int& d) {
    if (d.is_zero()) throw std::domain_error("exact_div: division by zero");
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.raw().get_mpz_t(), d.raw().get_mpz_t());
    if (mpz_sgn(r.get_mpz_t()) != 0)
        throw std::domain_error("exact_div: " + n.to_string() + " is not divisible by " + d.to_string());
    return Int(q);
}

/// Arbitrary-precision rational in canonical form.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long v) : v_(v) {}
    Rat(const Int& v) : v_(v.raw()) {}

    /// @throws std::domain_error when den is zero.
    Rat(const Int& num, const Int& den) {
        if (den.is_zero()) throw std::domain_error("Rat: zero denominator");
        v_ = mpq_class(num.raw(), den.raw());
        v_.canonicalize();
    }

    Rat(long num, long den) : Rat(Int(num), Int(den)) {}

    Int num() const { return Int(mpz_class(v_.get_num())); }
    Int den() const { return Int(mpz_class(v_.get_den())); }

    Rat operator-() const { Rat r; r.v_ = -v_; return r; }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat x, const Rat& y) { x += y; return x; }
    friend Rat operator-(Rat x, const Rat& y) { x -= y; return x; }
    friend Rat operator*(Rat x, const Rat& y) { x *= y; return x; }
    friend Rat operator/(Rat x, const Rat& y) { x /= y; return x; }

    friend bool operator==(const Rat& x, const Rat& y) { return mpq_equal(x.v_.get_mpq_t(), y.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }
    friend bool operator<(const Rat& x, const Rat& y) { return mpq_cmp(x.v_.get_mpq_t(), y.v_.get_mpq_t()) < 0; }
    friend bool operator>(const Rat& x, const Rat& y) { return y < x; }
    friend bool operator<=(const Rat& x, const Rat& y) { return !(y < x); }
    friend bool operator>=(const Rat& x, const Rat& y) { return !(x < y); }

    /// Integer power; negative exponents invert first.
    /// @throws std::domain_error for 0 raised to a negative power.
    Rat pow(long e) const {
        if (e < 0) return reciprocal().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        Rat r;
        r.v_ = mpq_class(n, d);
        return r;
    }

    /// @throws std::domain_error on zero.
    Rat reciprocal() const {
        if (is_zero()) throw std::domain_error("Rat: reciprocal of zero");
        Rat r;
        mpq_inv(r.v_.get_mpq_t(), v_.get_mpq_t());
        return r;
    }

    int sign() const { return mpq_sgn(v_.get_mpq_t()); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return mpz_cmp_ui(v_.get_den().get_mpz_t(), 1) == 0; }

    double to_double() const { return mpq_get_d(v_.get_mpq_t()); }

    /// "p/q", or just "p" when the value is integral.
    std::string to_string() const {
        std::string s = v_.get_num().get_str();
        if (!is_integer()) s += "/" + v_.get_den().get_str();
        return s;
    }

private:
    mpq_class v_;
};

/// Parses "p" or "p/q" (base 10, optional leading sign on p, q positive digits).
/// @throws std::invalid_argument on malformed text or a zero denominator.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    std::string ns = s.substr(0, slash);
    std::string ds = s.substr(slash + 1);
    if (ds.empty() || ds.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("Rat: malformed denominator in \"" + s + "\"");
    Int num(ns), den(ds);
    if (den.is_zero()) throw std::invalid_argument("Rat: zero denominator in \"" + s + "\"");
    return Rat(num, den);
}

/// Binomial coefficient C(n, k). Out-of-range k gives 0.
/// @throws std::domain_error for negative n.
inline Int binomial(long n, long k) {
    if (n < 0) throw std::domain_error("binomial: negative n");
    if (k < 0 || k > n) return Int(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Int(r);
}

/// @throws std::domain_error for negative n.
inline Int factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: negative n");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Int(r);
}

/// Catalan number C(2n, n) / (n + 1).
inline Int catalan(long n) {
    if (n < 0) throw std::domain_error("catalan: negative n");
    return exact_div(binomial(2 * n, n), Int(n + 1));
}

/// Narayana number N(k, i) = C(k, i) C(k, i - 1) / k for 1 <= i <= k,
/// zero for i outside that range.
/// @throws std::domain_error for k < 1.
inline Int narayana(long k, long i) {
    if (k < 1) throw std::domain_error("narayana: k must be positive");
    if (i < 1 || i > k) return Int(0);
    return exact_div(binomial(k, i) * binomial(k, i - 1), Int(k));
}

/// Rising factorial (1/2)_n = (1/2)(3/2)...( (2n-1)/2 ).
inline Rat pochhammer_half(long n) {
    if (n < 0) throw std::domain_error("pochhammer_half: negative n");
    Int num(1);
    for (long j = 0; j < n; ++j) num *= Int(2 * j + 1);
    return Rat(num, Int(2).pow(static_cast<unsigned long>(n)));
}

/// Central binomial prefix C(0,0), C(2,1), ..., C(2n,n), built by the
/// running product C(2k+2, k+1) = C(2k, k) * 2(2k+1) / (k+1).
inline std::vector<Int> central_binomial_row(long n) {
    if (n < 0) throw std::domain_error("central_binomial_row: negative n");
    std::vector<Int> row;
    row.reserve(static_cast<std::size_t>(n) + 1);
    row.emplace_back(1);
    for (long k = 0; k < n; ++k)
        row.push_back(exact_div(row.back() * Int(2 * (2 * k + 1)), Int(k + 1)));
    return row;
}

}  // namespace catconv
