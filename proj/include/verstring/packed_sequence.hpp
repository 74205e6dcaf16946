#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "verstring/bits.hpp"

namespace verstring {

// Small-alphabet sequence with access/rank/select. Symbols are packed at
// ceil(log2 sigma) bits; a directory samples cumulative per-symbol counts
// every `sample_rate` positions, so rank costs one lookup plus a short
// packed scan and select a binary search over the samples plus a scan.
class PackedSequence {
public:
    static constexpr uint32_t kDefaultSampleRate = 64;

    PackedSequence() = default;
    PackedSequence(std::span<const uint32_t> symbols, uint32_t sigma,
                   uint32_t sample_rate = kDefaultSampleRate);

    uint64_t size() const { return n_; }
    uint32_t sigma() const { return sigma_; }
    uint32_t sample_rate() const { return sample_; }

    // i-th symbol, 1-based.
    uint32_t access(uint64_t i) const;

    // Occurrences of c in the first i symbols; rank(0, c) = 0.
    uint64_t rank(uint64_t i, uint32_t c) const;

    // Position of the i-th occurrence of c (1-based); errors if i exceeds
    // the total count of c.
    uint64_t select(uint64_t i, uint32_t c) const;

    uint64_t size_in_bits() const {
        return payload_.size_in_bits() + directory_.size_in_bits() + 64;
    }

    bool operator==(const PackedSequence&) const = default;

    // Serialization hooks (FORMAT.md).
    const PackedArray& payload() const { return payload_; }
    const PackedArray& directory() const { return directory_; }
    void restore(uint64_t n, uint32_t sigma, uint32_t sample_rate, PackedArray payload,
                 PackedArray directory);

private:
    void check_symbol(uint32_t c) const;
    uint64_t sample(uint64_t block, uint32_t c) const {
        return block == 0 ? 0 : directory_.get((block - 1) * sigma_ + c);
    }

    uint64_t n_ = 0;
    uint32_t sigma_ = 1;
    uint32_t sample_ = kDefaultSampleRate;
    PackedArray payload_;   // n_ entries, width ceil_log2(sigma)
    PackedArray directory_; // floor(n/sample) * sigma entries, width bits_for(n)
};

} // namespace verstring
