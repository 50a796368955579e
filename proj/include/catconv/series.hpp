#pragma once

/**
 * @file series.hpp
 * @brief Truncated formal power series over exact rationals.
 *
 * A PowerSeries holds its first order() coefficients; the truncation
 * order is explicit state, never inferred. Binary operations truncate
 * to the shorter operand.
 */

#include "catconv/exactnum.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace catconv {

class PowerSeries {
public:
    PowerSeries() = default;

    /// Zero series retaining `order` coefficients.
    explicit PowerSeries(std::size_t order) : coeffs_(order) {}

    explicit PowerSeries(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {}

    std::size_t order() const { return coeffs_.size(); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat& operator[](std::size_t i) { return coeffs_.at(i); }
    const Rat& operator[](std::size_t i) const { return coeffs_.at(i); }

    friend bool operator==(const PowerSeries& p, const PowerSeries& q) {
        return p.coeffs_ == q.coeffs_;
    }

private:
    std::vector<Rat> coeffs_;
};

/// Coefficient of x^n.
/// @throws std::out_of_range when n >= p.order().
inline Rat ps_coeff(const PowerSeries& p, std::size_t n) {
    if (n >= p.order()) throw std::out_of_range("ps_coeff: index past truncation order");
    return p[n];
}

/// Central binomial series: coefficients C(2k, k) for k < order.
inline PowerSeries ps_central_binomial(std::size_t order) {
    std::vector<Rat> c;
    c.reserve(order);
    if (order > 0) {
        auto row = central_binomial_row(static_cast<long>(order) - 1);
        for (auto& v : row) c.emplace_back(v);
    }
    return PowerSeries(std::move(c));
}

/// Argument scaling x -> a x: coefficient k is multiplied by a^k.
inline PowerSeries ps_scale_arg(const PowerSeries& s, const Rat& a) {
    std::vector<Rat> c(s.order());
    Rat apow(1);
    for (std::size_t k = 0; k < s.order(); ++k) {
        c[k] = s[k] * apow;
        apow *= a;
    }
    return PowerSeries(std::move(c));
}

/// Cauchy product truncated to min(p.order(), q.order()).
inline PowerSeries ps_mul(const PowerSeries& p, const PowerSeries& q) {
    std::size_t ord = std::min(p.order(), q.order());
    std::vector<Rat> c(ord);
    for (std::size_t n = 0; n < ord; ++n) {
        Rat acc(0);
        for (std::size_t i = 0; i <= n; ++i) acc += p[i] * q[n - i];
        c[n] = acc;
    }
    return PowerSeries(std::move(c));
}

/// Multiplicative inverse of a series with constant term 1.
/// @throws std::domain_error when order is 0 or p[0] != 1.
inline PowerSeries ps_inverse(const PowerSeries& p) {
    if (p.order() == 0 || p[0] != Rat(1))
        throw std::domain_error("ps_inverse: constant term must be 1");
    std::vector<Rat> q(p.order());
    q[0] = Rat(1);
    for (std::size_t n = 1; n < p.order(); ++n) {
        Rat acc(0);
        for (std::size_t i = 1; i <= n; ++i) acc += p[i] * q[n - i];
        q[n] = -acc;
    }
    return PowerSeries(std::move(q));
}

/// p^{-1/2} by the coefficient recurrence: with q = p^{-1},
/// s_0 = 1 and s_n = (q_n - sum_{i=1}^{n-1} s_i s_{n-i}) / 2.
/// @throws std::domain_error when order is 0 or p[0] != 1.
inline PowerSeries ps_inv_sqrt(const PowerSeries& p) {
    PowerSeries q = ps_inverse(p);
    std::vector<Rat> s(p.order());
    s[0] = Rat(1);
    Rat half(1, 2);
    for (std::size_t n = 1; n < p.order(); ++n) {
        Rat acc(0);
        for (std::size_t i = 1; i < n; ++i) acc += s[i] * s[n - i];
        s[n] = (q[n] - acc) * half;
    }
    return PowerSeries(std::move(s));
}

/// p^{-1/2} by Newton iteration y <- y (3 - p y^2) / 2, used as an
/// independent cross-check of ps_inv_sqrt.
/// @throws std::domain_error when order is 0 or p[0] != 1.
inline PowerSeries ps_inv_sqrt_newton(const PowerSeries& p) {
    if (p.order() == 0 || p[0] != Rat(1))
        throw std::domain_error("ps_inv_sqrt_newton: constant term must be 1");
    std::size_t ord = p.order();
    std::vector<Rat> y(ord);
    y[0] = Rat(1);
    PowerSeries cur(std::move(y));
    Rat half(1, 2);
    // Each step doubles the number of correct coefficients.
    for (std::size_t correct = 1; correct < ord; correct *= 2) {
        PowerSeries py2 = ps_mul(p, ps_mul(cur, cur));
        std::vector<Rat> three_minus(ord);
        for (std::size_t k = 0; k < ord; ++k)
            three_minus[k] = Rat(k == 0 ? 3 : 0) - py2[k];
        PowerSeries stepped = ps_mul(cur, PowerSeries(std::move(three_minus)));
        std::vector<Rat> next(ord);
        for (std::size_t k = 0; k < ord; ++k) next[k] = stepped[k] * half;
        cur = PowerSeries(std::move(next));
    }
    return cur;
}

}  // namespace catconv
