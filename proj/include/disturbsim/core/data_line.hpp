#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace disturbsim {

inline constexpr std::size_t kWordsPerLine = 8;
inline constexpr std::size_t kBitsPerWord = 64;
inline constexpr std::size_t kLineBits = kWordsPerLine * kBitsPerWord;
inline constexpr std::size_t kLineBytes = kLineBits / 8;

/// Per-word counts, one entry per 64-bit word of a line.
using WordCounts = std::array<std::uint32_t, kWordsPerLine>;

/// A 512-bit cache-line payload. Word i covers bit positions [64i, 64i+63].
struct DataLine {
    std::array<std::uint64_t, kWordsPerLine> words{};

    static constexpr DataLine filled(std::uint64_t word) {
        DataLine d;
        d.words.fill(word);
        return d;
    }
    static constexpr DataLine zeros() { return filled(0); }
    static constexpr DataLine ones() { return filled(~std::uint64_t{0}); }

    constexpr bool bit(std::size_t k) const {
        return (words[k / kBitsPerWord] >> (k % kBitsPerWord)) & 1u;
    }
    constexpr void set_bit(std::size_t k, bool value) {
        const std::uint64_t m = std::uint64_t{1} << (k % kBitsPerWord);
        auto& w = words[k / kBitsPerWord];
        w = value ? (w | m) : (w & ~m);
    }

    constexpr std::size_t popcount() const {
        std::size_t n = 0;
        for (auto w : words) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    constexpr bool none() const {
        for (auto w : words)
            if (w != 0) return false;
        return true;
    }

    friend constexpr bool operator==(const DataLine&, const DataLine&) = default;

    friend constexpr DataLine operator^(const DataLine& a, const DataLine& b) {
        DataLine r;
        for (std::size_t i = 0; i < kWordsPerLine; ++i) r.words[i] = a.words[i] ^ b.words[i];
        return r;
    }
    friend constexpr DataLine operator&(const DataLine& a, const DataLine& b) {
        DataLine r;
        for (std::size_t i = 0; i < kWordsPerLine; ++i) r.words[i] = a.words[i] & b.words[i];
        return r;
    }
    friend constexpr DataLine operator|(const DataLine& a, const DataLine& b) {
        DataLine r;
        for (std::size_t i = 0; i < kWordsPerLine; ++i) r.words[i] = a.words[i] | b.words[i];
        return r;
    }
    friend constexpr DataLine operator~(const DataLine& a) {
        DataLine r;
        for (std::size_t i = 0; i < kWordsPerLine; ++i) r.words[i] = ~a.words[i];
        return r;
    }
};

}  // namespace disturbsim
