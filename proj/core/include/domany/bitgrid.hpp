#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace domany {

// One sublattice plane stored as lv rows of lu bits (bit = 1 <=> spin +1).
// Bit u of row v lives in word u/64 at bit position u%64 (LSB-first), so
// "u+1" is one position towards the MSB.  Invariant: padding bits at
// positions >= lu of the last word of every row are zero; every mutator
// below maintains it and the kernels rely on it.
class BitPlane {
  public:
    BitPlane(std::int32_t lu, std::int32_t lv)
        : lu_(lu), lv_(lv), words_(std::size_t(lv) * words_per_row(lu), 0) {}

    static std::int32_t words_per_row(std::int32_t lu) { return (lu + 63) / 64; }

    std::int32_t lu() const { return lu_; }
    std::int32_t lv() const { return lv_; }
    std::int32_t words_per_row() const { return words_per_row(lu_); }

    std::uint64_t* row(std::int32_t v) { return words_.data() + std::size_t(v) * words_per_row(); }
    const std::uint64_t* row(std::int32_t v) const {
        return words_.data() + std::size_t(v) * words_per_row();
    }

    bool get(std::int32_t u, std::int32_t v) const {
        return (row(v)[u >> 6] >> (u & 63)) & 1u;
    }
    void set(std::int32_t u, std::int32_t v, bool value) {
        std::uint64_t mask = std::uint64_t(1) << (u & 63);
        std::uint64_t& w = row(v)[u >> 6];
        w = value ? (w | mask) : (w & ~mask);
    }

    // Mask of the valid bits in the final word of a row.
    std::uint64_t last_word_mask() const {
        int tail = lu_ & 63;
        return tail == 0 ? ~std::uint64_t(0) : (std::uint64_t(1) << tail) - 1;
    }

    void fill(bool value) {
        if (!value) {
            std::fill(words_.begin(), words_.end(), 0);
            return;
        }
        std::fill(words_.begin(), words_.end(), ~std::uint64_t(0));
        const std::int32_t W = words_per_row();
        for (std::int32_t v = 0; v < lv_; ++v) row(v)[W - 1] &= last_word_mask();
    }

    std::int64_t count_ones() const {
        std::int64_t n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    friend bool operator==(const BitPlane&, const BitPlane&) = default;

  private:
    std::int32_t lu_;
    std::int32_t lv_;
    std::vector<std::uint64_t> words_;
};

inline std::uint64_t majority3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return (a & b) | (a & c) | (b & c);
}

// dst bit u := src bit (u+1) mod lu.  dst and src must not alias.
inline void row_shift_plus(std::uint64_t* dst, const std::uint64_t* src, std::int32_t lu,
                           std::int32_t words) {
    assert(dst != src);
    for (std::int32_t i = 0; i + 1 < words; ++i)
        dst[i] = (src[i] >> 1) | (src[i + 1] << 63);
    dst[words - 1] = src[words - 1] >> 1;
    std::int32_t top = lu - 1;
    dst[top >> 6] |= (src[0] & 1u) << (top & 63);
}

// dst bit u := src bit (u-1) mod lu.  dst and src must not alias.
inline void row_shift_minus(std::uint64_t* dst, const std::uint64_t* src, std::int32_t lu,
                            std::int32_t words) {
    assert(dst != src);
    for (std::int32_t i = words - 1; i > 0; --i)
        dst[i] = (src[i] << 1) | (src[i - 1] >> 63);
    dst[0] = src[0] << 1;
    std::int32_t top = lu - 1;
    dst[0] |= (src[top >> 6] >> (top & 63)) & 1u;
    int tail = lu & 63;
    if (tail != 0) dst[words - 1] &= (std::uint64_t(1) << tail) - 1;
}

} // namespace domany
