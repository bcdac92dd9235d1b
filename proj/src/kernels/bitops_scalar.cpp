#include <bit>

#include "disturbsim/kernels/bitops.hpp"

namespace disturbsim::kernels {
namespace {

WordCounts one_to_zero(const DataLine& old, const DataLine& next) {
    WordCounts c{};
    for (std::size_t i = 0; i < kWordsPerLine; ++i)
        c[i] = static_cast<std::uint32_t>(std::popcount(old.words[i] & ~next.words[i]));
    return c;
}

WordCounts zeros(const DataLine& d) {
    WordCounts c{};
    for (std::size_t i = 0; i < kWordsPerLine; ++i)
        c[i] = static_cast<std::uint32_t>(kBitsPerWord - std::popcount(d.words[i]));
    return c;
}

void add_pulses(PulseCounters& counters, const DataLine& mask, std::uint16_t cap) {
    for (std::size_t w = 0; w < kWordsPerLine; ++w) {
        std::uint64_t bits = mask.words[w];
        while (bits != 0) {
            const auto k = w * kBitsPerWord + static_cast<std::size_t>(std::countr_zero(bits));
            if (counters[k] < cap) ++counters[k];
            bits &= bits - 1;
        }
    }
}

void clear_counters(PulseCounters& counters, const DataLine& mask) {
    for (std::size_t w = 0; w < kWordsPerLine; ++w) {
        std::uint64_t bits = mask.words[w];
        while (bits != 0) {
            counters[w * kBitsPerWord + static_cast<std::size_t>(std::countr_zero(bits))] = 0;
            bits &= bits - 1;
        }
    }
}

DataLine disturbed_cells(const PulseCounters& counters, const DataLine& physical,
                         std::uint16_t limit) {
    DataLine out;
    for (std::size_t w = 0; w < kWordsPerLine; ++w) {
        std::uint64_t hot = 0;
        for (std::size_t b = 0; b < kBitsPerWord; ++b)
            if (counters[w * kBitsPerWord + b] >= limit) hot |= std::uint64_t{1} << b;
        out.words[w] = hot & ~physical.words[w];
    }
    return out;
}

}  // namespace

const BitKernels& scalar_kernels() {
    static const BitKernels k{"scalar", one_to_zero, zeros, add_pulses, clear_counters,
                              disturbed_cells};
    return k;
}

}  // namespace disturbsim::kernels
