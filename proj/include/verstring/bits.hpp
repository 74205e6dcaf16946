#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "verstring/error.hpp"

namespace verstring {

// ceil(log2 x) for x >= 1; 0 for x <= 1.
inline uint32_t ceil_log2(uint64_t x) {
    if (x <= 1) return 0;
    return 64 - std::countl_zero(x - 1);
}

// Number of bits needed to store values in [0, x].
inline uint32_t bits_for(uint64_t x) {
    return x == 0 ? 1 : (64 - std::countl_zero(x));
}

// Fixed-width unsigned integer array packed into 64-bit words.
// Width 0 is allowed and stores nothing (every entry reads as 0).
class PackedArray {
public:
    PackedArray() = default;

    PackedArray(uint64_t size, uint32_t width)
        : size_(size), width_(width),
          words_(width == 0 ? 0 : (size * width + 63) / 64, 0) {
        assert(width <= 64);
    }

    uint64_t get(uint64_t i) const {
        assert(i < size_);
        if (width_ == 0) return 0;
        uint64_t bit = i * width_;
        uint64_t word = bit >> 6;
        uint32_t off = bit & 63;
        uint64_t lo = words_[word] >> off;
        if (off + width_ > 64) lo |= words_[word + 1] << (64 - off);
        return lo & mask();
    }

    void set(uint64_t i, uint64_t v) {
        assert(i < size_);
        assert(width_ == 64 || v <= mask());
        if (width_ == 0) return;
        uint64_t bit = i * width_;
        uint64_t word = bit >> 6;
        uint32_t off = bit & 63;
        words_[word] = (words_[word] & ~(mask() << off)) | (v << off);
        if (off + width_ > 64) {
            uint32_t hi = off + width_ - 64;
            words_[word + 1] = (words_[word + 1] >> hi << hi) | (v >> (64 - off));
        }
    }

    uint64_t size() const { return size_; }
    uint32_t width() const { return width_; }
    uint64_t size_in_bits() const { return words_.size() * 64; }

    const std::vector<uint64_t>& words() const { return words_; }

    bool operator==(const PackedArray&) const = default;

    // Serialization hooks used by the index writer (see FORMAT.md).
    void restore(uint64_t size, uint32_t width, std::vector<uint64_t> words) {
        uint64_t need = width == 0 ? 0 : (size * width + 63) / 64;
        if (words.size() != need)
            throw_error(ErrorCode::format, "packed array payload has wrong length");
        size_ = size;
        width_ = width;
        words_ = std::move(words);
    }

private:
    uint64_t mask() const {
        return width_ == 64 ? ~0ULL : (1ULL << width_) - 1;
    }

    uint64_t size_ = 0;
    uint32_t width_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace verstring
