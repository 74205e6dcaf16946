#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "verstring/version_tree.hpp"

namespace verstring {

// Horizontal segment produced by the reduction. x endpoints live in
// {1..4n}: a time interval [i,j] maps to the x-range [2i-1, 2j], so left
// endpoints are odd, right endpoints even, and no two segments share an
// endpoint. y is the final position of the source character; segments of
// the same insertion edge share it.
struct Segment {
    uint32_t x1 = 0;
    uint32_t x2 = 0;
    uint32_t y = 0;
    char32_t label = 0;

    bool crosses(uint64_t x) const { return x1 <= x && x <= x2; }
    bool operator==(const Segment&) const = default;
};

struct SegmentSet {
    std::vector<Segment> segments;

    size_t size() const { return segments.size(); }
};

// Euler first-visit time per node; start(root) = 0. The string of node v
// is read off the segments crossing x = 2*start(v).
using StartTable = std::vector<uint32_t>;

struct EulerReduction {
    SegmentSet segments;
    StartTable start;
};

// Reduce a valid, replace-free version tree to its labeled-segment
// instance (children visited in increasing id order).
EulerReduction reduce(const VersionTree& tree);

// Time intervals where the character of insertion edge e (identified by
// its child node id) is unmarked, in increasing order. Diagnostic surface;
// reduce() emits exactly these intervals through the 2i-1/2j mapping.
std::vector<std::pair<uint32_t, uint32_t>> unmarked_intervals(const VersionTree& tree,
                                                              VersionId e);

// Diagnostic dump, one segment per line `x1 x2 y <codepoint>`, sorted by
// y then x1.
std::string dump_segments(const SegmentSet& segs);

} // namespace verstring
