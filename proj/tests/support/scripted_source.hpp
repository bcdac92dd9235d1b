#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace disturbsim::testing {

/// Replays fixed uniform draws; each value must lie below the requested bound.
class ScriptedSource {
public:
    explicit ScriptedSource(std::vector<std::uint64_t> draws) : draws_(std::move(draws)) {}

    std::uint64_t uniform(std::uint64_t bound) {
        if (pos_ >= draws_.size()) throw std::logic_error("script exhausted");
        const std::uint64_t v = draws_[pos_++];
        if (v >= bound) throw std::logic_error("scripted draw out of range");
        return v;
    }
    std::size_t consumed() const { return pos_; }

private:
    std::vector<std::uint64_t> draws_;
    std::size_t pos_ = 0;
};

}  // namespace disturbsim::testing
