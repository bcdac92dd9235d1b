#include <immintrin.h>

#include "disturbsim/kernels/bitops.hpp"

namespace disturbsim::kernels {
namespace {

// Per-byte popcount through a nibble lookup, then horizontal byte sums per 64-bit lane.
inline __m256i popcount_epi64(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    const __m256i bytes =
        _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline __m256i load_half(const DataLine& d, int half) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d.words.data() + 4 * half));
}

inline void store_counts(WordCounts& out, int half, __m256i sums) {
    alignas(32) std::uint64_t tmp[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), sums);
    for (int i = 0; i < 4; ++i) out[4 * half + i] = static_cast<std::uint32_t>(tmp[i]);
}

WordCounts one_to_zero(const DataLine& old, const DataLine& next) {
    WordCounts c{};
    for (int h = 0; h < 2; ++h) {
        const __m256i falls = _mm256_andnot_si256(load_half(next, h), load_half(old, h));
        store_counts(c, h, popcount_epi64(falls));
    }
    return c;
}

WordCounts zeros(const DataLine& d) {
    WordCounts c{};
    const __m256i width = _mm256_set1_epi64x(64);
    for (int h = 0; h < 2; ++h)
        store_counts(c, h, _mm256_sub_epi64(width, popcount_epi64(load_half(d, h))));
    return c;
}

// Expands 16 mask bits to 16 all-ones/all-zeros 16-bit lanes.
inline __m256i expand_mask16(std::uint16_t bits) {
    const __m256i lane_bits =
        _mm256_setr_epi16(0x0001, 0x0002, 0x0004, 0x0008, 0x0010, 0x0020, 0x0040, 0x0080,  //
                          0x0100, 0x0200, 0x0400, 0x0800, 0x1000, 0x2000, 0x4000,
                          static_cast<short>(0x8000));
    const __m256i v = _mm256_set1_epi16(static_cast<short>(bits));
    return _mm256_cmpeq_epi16(_mm256_and_si256(v, lane_bits), lane_bits);
}

inline std::uint16_t mask_chunk(const DataLine& mask, std::size_t chunk) {
    return static_cast<std::uint16_t>(mask.words[chunk / 4] >> ((chunk % 4) * 16));
}

inline __m256i* counter_ptr(PulseCounters& c, std::size_t chunk) {
    return reinterpret_cast<__m256i*>(c.data() + chunk * 16);
}
inline const __m256i* counter_ptr(const PulseCounters& c, std::size_t chunk) {
    return reinterpret_cast<const __m256i*>(c.data() + chunk * 16);
}

// Lanes where c >= bound (unsigned).
inline __m256i ge_epu16(__m256i c, __m256i bound) {
    return _mm256_cmpeq_epi16(_mm256_max_epu16(c, bound), c);
}

void add_pulses(PulseCounters& counters, const DataLine& mask, std::uint16_t cap) {
    const __m256i capv = _mm256_set1_epi16(static_cast<short>(cap));
    const __m256i one = _mm256_set1_epi16(1);
    for (std::size_t chunk = 0; chunk < kLineBits / 16; ++chunk) {
        const std::uint16_t bits = mask_chunk(mask, chunk);
        if (bits == 0) continue;
        __m256i* p = counter_ptr(counters, chunk);
        const __m256i c = _mm256_loadu_si256(p);
        const __m256i sel = _mm256_andnot_si256(ge_epu16(c, capv), expand_mask16(bits));
        _mm256_storeu_si256(p, _mm256_add_epi16(c, _mm256_and_si256(sel, one)));
    }
}

void clear_counters(PulseCounters& counters, const DataLine& mask) {
    for (std::size_t chunk = 0; chunk < kLineBits / 16; ++chunk) {
        const std::uint16_t bits = mask_chunk(mask, chunk);
        if (bits == 0) continue;
        __m256i* p = counter_ptr(counters, chunk);
        _mm256_storeu_si256(p, _mm256_andnot_si256(expand_mask16(bits), _mm256_loadu_si256(p)));
    }
}

DataLine disturbed_cells(const PulseCounters& counters, const DataLine& physical,
                         std::uint16_t limit) {
    const __m256i lim = _mm256_set1_epi16(static_cast<short>(limit));
    DataLine out;
    for (std::size_t w = 0; w < kWordsPerLine; ++w) {
        std::uint64_t hot = 0;
        for (std::size_t half = 0; half < 2; ++half) {
            const std::size_t chunk = w * 4 + half * 2;
            const __m256i a = ge_epu16(_mm256_loadu_si256(counter_ptr(counters, chunk)), lim);
            const __m256i b = ge_epu16(_mm256_loadu_si256(counter_ptr(counters, chunk + 1)), lim);
            // packs interleaves 128-bit lanes; the permute restores counter order.
            const __m256i packed =
                _mm256_permute4x64_epi64(_mm256_packs_epi16(a, b), _MM_SHUFFLE(3, 1, 2, 0));
            const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(packed));
            hot |= std::uint64_t{bits} << (half * 32);
        }
        out.words[w] = hot & ~physical.words[w];
    }
    return out;
}

}  // namespace

const BitKernels& avx2_kernels_impl() {
    static const BitKernels k{"avx2", one_to_zero, zeros, add_pulses, clear_counters,
                              disturbed_cells};
    return k;
}

}  // namespace disturbsim::kernels
