#include "verstring/persistent_index.hpp"

#include <algorithm>

namespace verstring {

PersistentStringIndex PersistentStringIndex::build(const VersionTree& tree,
                                                   const SegmentIndexConfig& config) {
    PersistentStringIndex out;
    out.length_ = tree.lengths(); // validates
    NormalizedTree norm = normalize_replaces(tree);
    out.remap_ = std::move(norm.remap);
    EulerReduction red = reduce(norm.tree);
    out.start_ = std::move(red.start);
    out.index_ = build_segment_index(red.segments, config);
    return out;
}

uint64_t PersistentStringIndex::length(VersionId v) const {
    if (v >= length_.size())
        throw_error(ErrorCode::out_of_range,
                    "version id " + std::to_string(v) + " out of range (version count " +
                        std::to_string(length_.size()) + ")");
    return length_[v];
}

uint32_t PersistentStringIndex::start_time(VersionId v) const {
    length(v); // bounds check
    return start_[remap_[v]];
}

char32_t PersistentStringIndex::access(VersionId v, uint64_t j) const {
    uint64_t len = length(v);
    if (j < 1 || j > len)
        throw_error(ErrorCode::out_of_range,
                    "position " + std::to_string(j) + " outside 1.." + std::to_string(len) +
                        " for version " + std::to_string(v));
    return index_.segment_select(2 * uint64_t{start_[remap_[v]]}, j).label;
}

std::u32string PersistentStringIndex::substring(VersionId v, uint64_t j, uint64_t len) const {
    uint64_t vlen = length(v);
    if (len == 0) {
        if (j < 1 || j > vlen + 1)
            throw_error(ErrorCode::out_of_range, "substring start " + std::to_string(j) +
                                                     " outside 1.." + std::to_string(vlen + 1));
        return {};
    }
    if (j < 1 || j + len - 1 > vlen)
        throw_error(ErrorCode::out_of_range,
                    "substring range " + std::to_string(j) + ".." + std::to_string(j + len - 1) +
                        " outside 1.." + std::to_string(vlen) + " for version " +
                        std::to_string(v));
    std::vector<Segment> segs =
        index_.report_range(2 * uint64_t{start_[remap_[v]]}, j, len);
    std::u32string s;
    s.reserve(len);
    for (const Segment& seg : segs) s.push_back(seg.label);
    return s;
}

VersionTree prefix_selection_tree(std::span<const int64_t> values) {
    uint64_t n = values.size();
    // Rank of each value among the distinct values.
    std::vector<uint32_t> order(n);
    for (uint64_t i = 0; i < n; ++i) order[i] = static_cast<uint32_t>(i);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return values[a] < values[b]; });
    std::vector<uint32_t> value_rank(n);
    for (uint64_t r = 0; r < n; ++r) {
        if (r > 0 && values[order[r]] == values[order[r - 1]])
            throw_error(ErrorCode::invalid_tree, "prefix-selection input has duplicate values");
        value_rank[order[r]] = static_cast<uint32_t>(r) + 1;
    }

    // r_i = number of earlier entries smaller than A[i], by Fenwick counts
    // over value ranks.
    std::vector<uint32_t> fenwick(n + 1, 0);
    auto add = [&](uint32_t p) {
        for (; p <= n; p += p & (0 - p)) ++fenwick[p];
    };
    auto count_le = [&](uint32_t p) {
        uint32_t c = 0;
        for (; p > 0; p -= p & (0 - p)) c += fenwick[p];
        return c;
    };

    std::vector<VersionId> parent(n + 1, 0);
    std::vector<EditOp> edge(n + 1);
    for (uint64_t i = 1; i <= n; ++i) {
        uint32_t smaller = count_le(value_rank[i - 1] - 1);
        parent[i] = static_cast<VersionId>(i - 1);
        edge[i] = EditOp::ins(smaller, static_cast<char32_t>(i));
        add(value_rank[i - 1]);
    }
    return VersionTree(std::move(parent), std::move(edge));
}

PrefixSelectIndex PrefixSelectIndex::build(std::span<const int64_t> values,
                                           const SegmentIndexConfig& config) {
    PrefixSelectIndex out;
    out.n_ = values.size();
    out.index_ = PersistentStringIndex::build(prefix_selection_tree(values), config);
    return out;
}

uint64_t PrefixSelectIndex::select(uint64_t i, uint64_t j) const {
    if (i < 1 || i > n_ || j < 1 || j > i)
        throw_error(ErrorCode::out_of_range,
                    "prefix selection needs 1 <= j <= i <= " + std::to_string(n_) + ", got i=" +
                        std::to_string(i) + " j=" + std::to_string(j));
    return static_cast<uint64_t>(
        index_.access(static_cast<VersionId>(i), j));
}

} // namespace verstring
