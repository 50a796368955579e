#pragma once

/**
 * @file walks.hpp
 * @brief Monte Carlo estimation of S_n(a) through random-walk returns.
 *
 * S_n(a) has a probabilistic reading: with Z = sum_{k<=n} a^k and K drawn
 * with P(K=k) = a^k / Z, the estimator 4^n Z E[1{X returns} 1{Y returns}]
 * is unbiased for S_n(a), where X and Y are independent simple walks of
 * 2K and 2(n-K) steps. The Rao-Blackwellized variant replaces the
 * indicator pair by its conditional expectation given K.
 *
 * Determinism contract: results depend only on (n, a, samples, seed).
 * Samples are processed in fixed-size blocks, each with an RNG stream
 * derived from (seed, block index); partial sums reduce in block order.
 * The chunk count is a parallelism hint and never changes the output.
 */

#include "catconv/exactnum.hpp"

#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <vector>

namespace catconv {

/// Counter-derived SplitMix64 stream; (seed, stream) fully determines
/// the sequence and distinct streams are independent for all purposes
/// of this module.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed + kGamma * (stream + 1))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Exact probability C(2k,k) / 4^k that a simple walk sits at the origin
/// after 2k steps.
inline Rat return_prob_exact(long k) {
    if (k < 0) throw std::domain_error("return_prob_exact: negative k");
    return Rat(binomial(2 * k, k), Int(4).pow(static_cast<unsigned long>(k)));
}

/// Simulates 2k fair +-1 steps and reports whether the walk ends at 0.
/// Step signs come from raw RNG bits, 64 per draw.
inline bool simulate_return(long k, RngStream& rng) {
    if (k < 0) throw std::domain_error("simulate_return: negative k");
    long steps = 2 * k;
    long ups = 0;
    while (steps >= 64) {
        ups += __builtin_popcountll(rng.next_u64());
        steps -= 64;
    }
    if (steps > 0) {
        std::uint64_t word = rng.next_u64() & ((std::uint64_t{1} << steps) - 1);
        ups += __builtin_popcountll(word);
    }
    return ups == k;
}

/// Samples K in {0..n} with P(K=k) proportional to a^k. The cumulative
/// table is exact rationals converted once to doubles.
class KSampler {
public:
    /// @throws std::domain_error unless n >= 0 and a > 0.
    KSampler(long n, const Rat& a) {
        if (n < 0) throw std::domain_error("KSampler: negative n");
        if (a.sign() <= 0) throw std::domain_error("KSampler: a must be positive");
        Rat z(0);
        Rat apow(1);
        std::vector<Rat> cum;
        cum.reserve(static_cast<std::size_t>(n) + 1);
        for (long k = 0; k <= n; ++k) {
            z += apow;
            cum.push_back(z);
            apow *= a;
        }
        thresholds_.resize(cum.size());
        for (std::size_t k = 0; k < cum.size(); ++k)
            thresholds_[k] = (cum[k] / z).to_double();
        thresholds_.back() = 1.0;
    }

    long draw(RngStream& rng) const {
        double u = rng.next_double();
        std::size_t k = 0;
        while (u >= thresholds_[k]) ++k;
        return static_cast<long>(k);
    }

private:
    std::vector<double> thresholds_;
};

/// One draw of K; convenience wrapper when no sampler is kept around.
inline long sample_k(long n, const Rat& a, RngStream& rng) {
    return KSampler(n, a).draw(rng);
}

struct WalkConfig {
    long n = 0;
    Rat a = Rat(1);
    std::uint64_t samples = 100000;
    std::uint64_t seed = 42;
    unsigned chunks = 1; ///< parallelism hint; no effect on the estimate

    void validate() const {
        if (n < 0) throw std::invalid_argument("WalkConfig: negative n");
        if (a.sign() <= 0) throw std::invalid_argument("WalkConfig: a must be positive");
        if (samples == 0) throw std::invalid_argument("WalkConfig: samples must be positive");
        if (chunks == 0) throw std::invalid_argument("WalkConfig: chunks must be positive");
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline constexpr std::uint64_t kBlockSamples = 8192;

/// Runs fn(block_index) over [0, blocks) split across `chunks` workers.
/// Each block writes only its own slot, so no synchronization is needed
/// and the reduction order is fixed by block index.
template <class Fn>
void for_each_block(std::uint64_t blocks, unsigned chunks, Fn fn) {
    if (chunks <= 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::uint64_t per = (blocks + chunks - 1) / chunks;
    std::vector<std::future<void>> work;
    for (unsigned c = 0; c < chunks; ++c) {
        std::uint64_t lo = static_cast<std::uint64_t>(c) * per;
        std::uint64_t hi = std::min(blocks, lo + per);
        if (lo >= hi) break;
        work.push_back(std::async(std::launch::async, [fn, lo, hi] {
            for (std::uint64_t b = lo; b < hi; ++b) fn(b);
        }));
    }
    for (auto& w : work) w.get();
}

inline std::uint64_t block_count(std::uint64_t samples) {
    return (samples + kBlockSamples - 1) / kBlockSamples;
}

inline std::uint64_t block_size(std::uint64_t block, std::uint64_t samples) {
    std::uint64_t lo = block * kBlockSamples;
    return std::min(kBlockSamples, samples - lo);
}

}  // namespace detail

/// Plain estimator: scaled indicator of both walks returning.
inline McEstimate estimate_s(const WalkConfig& cfg) {
    cfg.validate();
    KSampler sampler(cfg.n, cfg.a);
    Rat z(0);
    Rat apow(1);
    for (long k = 0; k <= cfg.n; ++k) {
        z += apow;
        apow *= cfg.a;
    }
    double scale = (Rat(Int(4).pow(static_cast<unsigned long>(cfg.n))) * z).to_double();

    std::uint64_t blocks = detail::block_count(cfg.samples);
    std::vector<std::uint64_t> hits(blocks, 0);
    detail::for_each_block(blocks, cfg.chunks, [&](std::uint64_t b) {
        RngStream rng(cfg.seed, b);
        std::uint64_t m = detail::block_size(b, cfg.samples);
        std::uint64_t h = 0;
        for (std::uint64_t i = 0; i < m; ++i) {
            long k = sampler.draw(rng);
            bool x = simulate_return(k, rng);
            bool y = simulate_return(cfg.n - k, rng);
            h += (x && y) ? 1 : 0;
        }
        hits[b] = h;
    });

    std::uint64_t total = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) total += hits[b];

    double nf = static_cast<double>(cfg.samples);
    double hf = static_cast<double>(total);
    double mean = scale * (hf / nf);
    double se = 0.0;
    if (cfg.samples > 1) {
        double var = scale * scale * hf * (1.0 - hf / nf) / (nf - 1.0);
        se = std::sqrt(std::max(0.0, var) / nf);
    }
    return McEstimate{mean, se, cfg.samples, cfg.seed};
}

/// Rao-Blackwellized estimator: the walk indicators are integrated out,
/// leaving the exact conditional return probabilities given K. Same
/// sampling scheme and determinism contract as estimate_s; the variance
/// never exceeds the plain estimator's.
inline McEstimate estimate_s_rao(const WalkConfig& cfg) {
    cfg.validate();
    KSampler sampler(cfg.n, cfg.a);
    Rat z(0);
    Rat apow(1);
    for (long k = 0; k <= cfg.n; ++k) {
        z += apow;
        apow *= cfg.a;
    }
    double scale = (Rat(Int(4).pow(static_cast<unsigned long>(cfg.n))) * z).to_double();

    std::vector<double> pk(static_cast<std::size_t>(cfg.n) + 1);
    for (long k = 0; k <= cfg.n; ++k)
        pk[k] = (return_prob_exact(k) * return_prob_exact(cfg.n - k)).to_double();

    std::uint64_t blocks = detail::block_count(cfg.samples);
    std::vector<double> sum1(blocks, 0.0);
    std::vector<double> sum2(blocks, 0.0);
    detail::for_each_block(blocks, cfg.chunks, [&](std::uint64_t b) {
        RngStream rng(cfg.seed, b);
        std::uint64_t m = detail::block_size(b, cfg.samples);
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::uint64_t i = 0; i < m; ++i) {
            double p = pk[static_cast<std::size_t>(sampler.draw(rng))];
            s1 += p;
            s2 += p * p;
        }
        sum1[b] = s1;
        sum2[b] = s2;
    });

    double s1 = 0.0;
    double s2 = 0.0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        s1 += sum1[b];
        s2 += sum2[b];
    }

    double nf = static_cast<double>(cfg.samples);
    double mean = scale * (s1 / nf);
    double se = 0.0;
    if (cfg.samples > 1) {
        double var = scale * scale * (s2 - s1 * s1 / nf) / (nf - 1.0);
        se = std::sqrt(std::max(0.0, var) / nf);
    }
    return McEstimate{mean, se, cfg.samples, cfg.seed};
}

}  // namespace catconv
