#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "verstring/segment_index.hpp"
#include "verstring/version_tree.hpp"

namespace verstring {

// User-facing index over a version tree: normalize replaces away, reduce
// to segments, index the segments. Lengths and start times are kept
// explicitly so bounds errors never touch the geometric index.
class PersistentStringIndex {
public:
    PersistentStringIndex() = default;

    static PersistentStringIndex build(const VersionTree& tree,
                                       const SegmentIndexConfig& config = {});

    uint32_t version_count() const { return static_cast<uint32_t>(length_.size()); }

    uint64_t length(VersionId v) const;

    // S(v)[j], 1-based.
    char32_t access(VersionId v, uint64_t j) const;

    // S(v)[j..j+len-1]; len = 0 gives the empty string.
    std::u32string substring(VersionId v, uint64_t j, uint64_t len) const;

    const SegmentIndex& segments() const { return index_; }

    // Euler first-visit time of (the normalized image of) version v; the
    // version's string is the labels crossing x = 2 * start_time(v).
    uint32_t start_time(VersionId v) const;

    friend struct PersistentIndexIO;

private:
    SegmentIndex index_;
    std::vector<uint32_t> start_;    // per normalized node
    std::vector<uint64_t> length_;   // per original node
    std::vector<VersionId> remap_;   // original id -> normalized id
};

// The prefix-selection harness: index of the j-th smallest value in
// A[1..i], answered by one random access on a path-shaped version tree
// whose characters encode array indices.
class PrefixSelectIndex {
public:
    PrefixSelectIndex() = default;

    static PrefixSelectIndex build(std::span<const int64_t> values,
                                   const SegmentIndexConfig& config = {});

    uint64_t array_length() const { return n_; }
    const PersistentStringIndex& index() const { return index_; }

    // 1-based index into A of the j-th smallest value among A[1..i].
    uint64_t select(uint64_t i, uint64_t j) const;

    friend struct PersistentIndexIO;

private:
    PersistentStringIndex index_;
    uint64_t n_ = 0;
};

// The path-shaped version tree of the prefix-selection reduction; exposed
// so the CLI can emit it as a tree file.
VersionTree prefix_selection_tree(std::span<const int64_t> values);

} // namespace verstring
