#include "verstring/packed_sequence.hpp"

#include <string>

namespace verstring {

PackedSequence::PackedSequence(std::span<const uint32_t> symbols, uint32_t sigma,
                               uint32_t sample_rate)
    : n_(symbols.size()), sigma_(sigma), sample_(sample_rate) {
    if (sigma == 0) throw_error(ErrorCode::bad_symbol, "alphabet size must be positive");
    if (sample_ == 0) sample_ = kDefaultSampleRate;

    payload_ = PackedArray(n_, ceil_log2(sigma_));
    for (uint64_t i = 0; i < n_; ++i) {
        if (symbols[i] >= sigma_)
            throw_error(ErrorCode::bad_symbol,
                        "symbol " + std::to_string(symbols[i]) + " outside alphabet of size " +
                            std::to_string(sigma_));
        payload_.set(i, symbols[i]);
    }

    uint64_t blocks = n_ / sample_; // full blocks only; block 0 is implicit
    directory_ = PackedArray(blocks * sigma_, bits_for(n_));
    std::vector<uint64_t> counts(sigma_, 0);
    for (uint64_t b = 1; b <= blocks; ++b) {
        for (uint64_t i = (b - 1) * sample_; i < b * sample_; ++i) ++counts[payload_.get(i)];
        for (uint32_t c = 0; c < sigma_; ++c) directory_.set((b - 1) * sigma_ + c, counts[c]);
    }
}

void PackedSequence::check_symbol(uint32_t c) const {
    if (c >= sigma_)
        throw_error(ErrorCode::bad_symbol, "symbol " + std::to_string(c) +
                                               " outside alphabet of size " +
                                               std::to_string(sigma_));
}

uint32_t PackedSequence::access(uint64_t i) const {
    if (i < 1 || i > n_)
        throw_error(ErrorCode::out_of_range,
                    "access position " + std::to_string(i) + " outside 1.." +
                        std::to_string(n_));
    return static_cast<uint32_t>(payload_.get(i - 1));
}

uint64_t PackedSequence::rank(uint64_t i, uint32_t c) const {
    check_symbol(c);
    if (i > n_)
        throw_error(ErrorCode::out_of_range,
                    "rank position " + std::to_string(i) + " outside 0.." + std::to_string(n_));
    uint64_t block = i / sample_;
    uint64_t count = sample(block, c);
    for (uint64_t p = block * sample_; p < i; ++p) count += payload_.get(p) == c;
    return count;
}

uint64_t PackedSequence::select(uint64_t i, uint32_t c) const {
    check_symbol(c);
    if (i == 0 || i > rank(n_, c))
        throw_error(ErrorCode::out_of_range,
                    "select rank " + std::to_string(i) + " exceeds occurrences of symbol " +
                        std::to_string(c));
    // Last sample with count < i, then scan forward.
    uint64_t lo = 0, hi = n_ / sample_;
    while (lo < hi) {
        uint64_t mid = (lo + hi + 1) / 2;
        if (sample(mid, c) < i)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t count = sample(lo, c);
    for (uint64_t p = lo * sample_; p < n_; ++p) {
        if (payload_.get(p) == c && ++count == i) return p + 1;
    }
    throw_error(ErrorCode::internal, "select scan overran the sequence");
}

void PackedSequence::restore(uint64_t n, uint32_t sigma, uint32_t sample_rate,
                             PackedArray payload, PackedArray directory) {
    if (sigma == 0 || sample_rate == 0)
        throw_error(ErrorCode::format, "packed sequence header is malformed");
    n_ = n;
    sigma_ = sigma;
    sample_ = sample_rate;
    payload_ = std::move(payload);
    directory_ = std::move(directory);
    if (payload_.size() != n_ || payload_.width() != ceil_log2(sigma_) ||
        directory_.size() != (n_ / sample_) * sigma_ || directory_.width() != bits_for(n_))
        throw_error(ErrorCode::format, "packed sequence payload is malformed");
}

} // namespace verstring
