#include "verstring/segment_index.hpp"

#include <algorithm>
#include <cmath>

namespace verstring {

uint32_t default_delta(uint64_t m) {
    uint32_t lg = std::max<uint32_t>(1, ceil_log2(m));
    auto d = static_cast<uint32_t>(std::ceil(std::sqrt(static_cast<double>(lg))));
    return std::clamp<uint32_t>(d, 2, SlabIndex::kMaxDelta);
}

SegmentIndex build_segment_index(const SegmentSet& segs, const SegmentIndexConfig& config) {
    SegmentIndex idx;
    idx.config_ = config;
    uint64_t m = segs.size();
    if (idx.config_.delta == 0) idx.config_.delta = default_delta(m);
    if (idx.config_.delta < 2 || idx.config_.delta > SlabIndex::kMaxDelta)
        throw_error(ErrorCode::out_of_range,
                    "tree degree must be in 2.." + std::to_string(SlabIndex::kMaxDelta));
    if (idx.config_.sample_rate == 0)
        throw_error(ErrorCode::out_of_range, "sample rate must be positive");
    if (idx.config_.backend == SlabBackend::memoized) idx.cache_ = std::make_shared<CellCache>();

    // y-order with ties broken by left endpoint; ranks are then distinct.
    std::vector<Segment> sorted = segs.segments;
    std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
        return a.y != b.y ? a.y < b.y : a.x1 < b.x1;
    });
    idx.x1_.reserve(m);
    idx.x2_.reserve(m);
    idx.y_.reserve(m);
    idx.label_.reserve(m);
    for (const Segment& s : sorted) {
        if (s.x1 >= s.x2)
            throw_error(ErrorCode::invalid_tree, "segment with x1 >= x2");
        idx.x1_.push_back(s.x1);
        idx.x2_.push_back(s.x2);
        idx.y_.push_back(s.y);
        idx.label_.push_back(s.label);
    }

    idx.root_xs_.reserve(2 * m);
    for (uint64_t r = 0; r < m; ++r) {
        idx.root_xs_.push_back(idx.x1_[r]);
        idx.root_xs_.push_back(idx.x2_[r]);
    }
    std::sort(idx.root_xs_.begin(), idx.root_xs_.end());
    for (size_t i = 1; i < idx.root_xs_.size(); ++i)
        if (idx.root_xs_[i] == idx.root_xs_[i - 1])
            throw_error(ErrorCode::invalid_tree, "duplicate endpoint x-coordinate " +
                                                     std::to_string(idx.root_xs_[i]));

    if (m >= 2) {
        std::vector<SegmentIndex::EndpointRef> eps;
        eps.reserve(2 * m);
        for (uint64_t r = 0; r < m; ++r) {
            eps.push_back({idx.x1_[r], static_cast<uint32_t>(r)});
            eps.push_back({idx.x2_[r], static_cast<uint32_t>(r)});
        }
        std::sort(eps.begin(), eps.end(),
                  [](const auto& a, const auto& b) { return a.x < b.x; });
        idx.nodes_.emplace_back();
        idx.nodes_[0].lo = 0;
        idx.nodes_[0].hi = m;
        idx.build_node(0, std::move(eps));
    }
    return idx;
}

// eps: the node's endpoints sorted by original x; seg fields are indices
// into [lo, hi).
void SegmentIndex::build_node(uint32_t idx, std::vector<EndpointRef> eps) {
    uint64_t lo = nodes_[idx].lo, hi = nodes_[idx].hi;
    uint64_t n_v = hi - lo;
    SlabPartition part(n_v, config_.delta);
    uint32_t chunk = part.chunk;
    uint32_t dchild = part.delta_eff;
    nodes_[idx].chunk = chunk;

    // E_v: endpoint slabs at odd positions, 0 between them, and the
    // rank-reduced segments feeding the slab index.
    std::vector<uint32_t> sym(4 * n_v, 0);
    RankSpaceSegments rs;
    rs.segs.resize(n_v);
    for (uint64_t t = 0; t < eps.size(); ++t) {
        uint32_t s = eps[t].seg;
        uint32_t local_y = static_cast<uint32_t>(s - lo) + 1;
        sym[2 * t] = part.slab_of_y(local_y); // position 2t+1, 1-based
        auto& seg = rs.segs[s - lo];
        seg.y = local_y;
        uint32_t col = static_cast<uint32_t>(2 * t + 1);
        if (eps[t].x == x1_[s])
            seg.x1 = col;
        else
            seg.x2 = col;
    }
    nodes_[idx].ev = PackedSequence(sym, dchild + 1, config_.sample_rate);
    nodes_[idx].slab = build_slab_index(rs, config_.delta, config_.backend, cache_);

    if (chunk == 1) return; // children are the segments themselves

    std::vector<std::vector<EndpointRef>> child_eps(dchild);
    for (uint32_t k = 0; k < dchild; ++k)
        child_eps[k].reserve(2 * std::min<uint64_t>(chunk, n_v - uint64_t{k} * chunk));
    for (const EndpointRef& e : eps) {
        uint32_t local_y = static_cast<uint32_t>(e.seg - lo) + 1;
        child_eps[part.slab_of_y(local_y) - 1].push_back(e);
    }
    eps.clear();
    eps.shrink_to_fit();

    uint32_t child_base = static_cast<uint32_t>(nodes_.size());
    nodes_[idx].child_base = child_base;
    uint32_t internal_children = 0;
    for (uint32_t k = 0; k < dchild; ++k) {
        uint64_t clo = lo + uint64_t{k} * chunk;
        uint64_t chi = std::min<uint64_t>(clo + chunk, hi);
        if (chi - clo < 2) break; // only the last child can be a bare leaf
        nodes_.emplace_back();
        nodes_.back().lo = clo;
        nodes_.back().hi = chi;
        ++internal_children;
    }
    for (uint32_t k = 0; k < internal_children; ++k)
        build_node(child_base + k, std::move(child_eps[k]));
}

SegmentIndex::NodeInfo SegmentIndex::node_info(size_t idx) const {
    const Node& n = nodes_[idx];
    return {n.lo, n.hi, n.chunk, n.child_base};
}

uint64_t SegmentIndex::map_time_to_root(uint64_t x) const {
    auto it = std::upper_bound(root_xs_.begin(), root_xs_.end(), x);
    uint64_t r = static_cast<uint64_t>(it - root_xs_.begin());
    bool is_endpoint = r > 0 && root_xs_[r - 1] == x;
    return is_endpoint ? 2 * r - 1 : 2 * r;
}

uint64_t SegmentIndex::count_crossing(uint64_t i) const {
    uint64_t m = segment_count();
    if (m == 0) return 0;
    if (m == 1) return x1_[0] <= i && i <= x2_[0] ? 1 : 0;
    const Node& root = nodes_[0];
    return root.slab.slab_sum(map_time_to_root(i), root.slab.delta_eff());
}

Segment SegmentIndex::segment_select(uint64_t i, uint64_t j) const {
    return segment_select_traced(i, j, nullptr);
}

Segment SegmentIndex::segment_select_traced(uint64_t i, uint64_t j,
                                            std::vector<DescentStep>* trace) const {
    uint64_t m = segment_count();
    if (j == 0 || j > count_crossing(i))
        throw_error(ErrorCode::rank_out_of_range,
                    "selection rank " + std::to_string(j) +
                        " exceeds the crossing count at time " + std::to_string(i));
    if (m == 1) return leaf(1);

    uint32_t node = 0;
    uint64_t i_v = map_time_to_root(i);
    uint64_t j_v = j;
    for (;;) {
        const Node& nd = nodes_[node];
        uint32_t k = nd.slab.slab_select(i_v, j_v);
        if (trace) trace->push_back({node, i_v, j_v, k});
        uint64_t j_child = j_v - nd.slab.slab_sum(i_v, k - 1);
        uint64_t r_k = nd.ev.rank(i_v, k);
        uint64_t i_child = (i_v >= 1 && nd.ev.access(i_v) == k) ? 2 * r_k - 1 : 2 * r_k;

        uint64_t clo = nd.lo + uint64_t{k - 1} * nd.chunk;
        uint64_t chi = std::min<uint64_t>(clo + nd.chunk, nd.hi);
        if (nd.chunk == 1 || chi - clo == 1) {
            if (j_child != 1)
                throw_error(ErrorCode::internal, "descent reached a leaf with rank != 1");
            return leaf(clo + 1);
        }
        node = nd.child_base + (k - 1);
        i_v = i_child;
        j_v = j_child;
    }
}

std::vector<Segment> SegmentIndex::report_range(uint64_t i, uint64_t j, uint64_t len) const {
    if (j == 0 || j + len - 1 > count_crossing(i))
        throw_error(ErrorCode::rank_out_of_range,
                    "crossing ranks " + std::to_string(j) + ".." + std::to_string(j + len - 1) +
                        " exceed the crossing count at time " + std::to_string(i));
    std::vector<Segment> out;
    out.reserve(len);
    for (uint64_t r = 0; r < len; ++r) out.push_back(segment_select(i, j + r));
    return out;
}

SegmentIndexSizes SegmentIndex::sizes() const {
    SegmentIndexSizes s;
    for (const Node& n : nodes_) {
        s.ev_bits += n.ev.size_in_bits();
        s.slab_bits += n.slab.size_in_bits();
        s.cell_map_bits += n.slab.cache_size_in_bits();
    }
    s.leaf_bits = (x1_.size() + x2_.size() + y_.size() + label_.size()) * 32;
    s.endpoint_bits = root_xs_.size() * 32;
    if (cache_) s.cell_cache_bits = cache_->size_in_bits();
    return s;
}

} // namespace verstring
