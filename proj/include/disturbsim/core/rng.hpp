#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace disturbsim {

__extension__ using Uint128 = unsigned __int128;

/// A probability expressed as num/den, compared against integer draws so that runs
/// replay bit-identically on every platform.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Anything that can draw a uniform integer in [0, bound).
template <typename T>
concept UniformSource = requires(T& t, std::uint64_t bound) {
    { t.uniform(bound) } -> std::convertible_to<std::uint64_t>;
};

/// Deterministic pseudo-random source. mt19937_64 underneath; bounded draws use the
/// multiply-high reduction so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be > 0.
    std::uint64_t uniform(std::uint64_t bound) {
        const Uint128 wide = static_cast<Uint128>(engine_()) * bound;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    /// True with probability p.num / p.den.
    bool bernoulli(const Rational& p) {
        if (p.num >= p.den) return true;
        if (p.num == 0) return false;
        return uniform(p.den) < p.num;
    }

private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace disturbsim
