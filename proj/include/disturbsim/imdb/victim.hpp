#pragma once

#include <compare>
#include <cstdint>
#include <memory>

#include "disturbsim/core/error.hpp"
#include "disturbsim/core/rng.hpp"
#include "disturbsim/imdb/tables.hpp"

namespace disturbsim::imdb {

/// Eviction order: smallest maximal ZeroFlipCntr, then smallest RewriteCntr, then lowest
/// slot.
struct VictimKey {
    std::uint32_t max_zfc = 0;
    std::uint32_t rewrite_cntr = 0;
    std::size_t slot = 0;

    friend auto operator<=>(const VictimKey&, const VictimKey&) = default;
};

inline VictimKey victim_key(const MainTable& mt, std::size_t slot) {
    const auto& e = mt[slot];
    return {e.max_zfc(), e.rewrite_cntr, slot};
}

/// ceil(log2(inputs)): depth of a binary comparator tree over `inputs` candidates.
std::uint32_t comparator_latency_cycles(std::uint32_t inputs);

/// Throws PreconditionError unless every slot is valid.
void require_full(const MainTable& mt);

/// Minimum VictimKey over the whole table.
std::size_t select_victim_exact(const MainTable& mt);

/// AppLE: the table is split into n_groups contiguous groups; one uniformly drawn slot
/// per group is read, and the minimum VictimKey among those samples is evicted.
/// Draws exactly n_groups values from `rng`.
template <UniformSource Source>
std::size_t select_victim_apple(const MainTable& mt, std::uint32_t n_groups, Source& rng) {
    require_full(mt);
    if (n_groups == 0 || mt.capacity() % n_groups != 0)
        throw PreconditionError("n_groups must divide the main table size");
    const std::size_t group = mt.capacity() / n_groups;
    std::size_t best = 0;
    for (std::uint32_t g = 0; g < n_groups; ++g) {
        const std::size_t slot = g * group + static_cast<std::size_t>(rng.uniform(group));
        if (g == 0 || victim_key(mt, slot) < victim_key(mt, best)) best = slot;
    }
    return best;
}

/// Replacement policy seam for the main table. The engine calls touch() on every
/// hit and insertion so recency-based policies can be plugged in.
class VictimPolicy {
public:
    virtual ~VictimPolicy() = default;
    virtual std::size_t select(const MainTable& mt, Rng& rng) = 0;
    /// Controller cycles spent by the comparator.
    virtual std::uint32_t latency_cycles() const = 0;
    virtual void touch(std::size_t /*slot*/) {}
};

class ExactPolicy final : public VictimPolicy {
public:
    explicit ExactPolicy(std::uint32_t n_mt) : n_mt_(n_mt) {}
    std::size_t select(const MainTable& mt, Rng&) override { return select_victim_exact(mt); }
    std::uint32_t latency_cycles() const override { return comparator_latency_cycles(n_mt_); }

private:
    std::uint32_t n_mt_;
};

class ApplePolicy final : public VictimPolicy {
public:
    explicit ApplePolicy(std::uint32_t n_groups) : n_groups_(n_groups) {}
    std::size_t select(const MainTable& mt, Rng& rng) override {
        return select_victim_apple(mt, n_groups_, rng);
    }
    std::uint32_t latency_cycles() const override { return comparator_latency_cycles(n_groups_); }

private:
    std::uint32_t n_groups_;
};

}  // namespace disturbsim::imdb
