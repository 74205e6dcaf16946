#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "verstring/euler_reduction.hpp"
#include "verstring/packed_sequence.hpp"
#include "verstring/slab_index.hpp"

namespace verstring {

struct SegmentIndexConfig {
    uint32_t delta = 0; // 0 = pick from the segment count
    uint32_t sample_rate = PackedSequence::kDefaultSampleRate;
    SlabBackend backend = SlabBackend::memoized;

    bool operator==(const SegmentIndexConfig&) const = default;
};

uint32_t default_delta(uint64_t m);

struct SegmentIndexSizes {
    uint64_t ev_bits = 0;
    uint64_t slab_bits = 0;
    uint64_t leaf_bits = 0;
    uint64_t endpoint_bits = 0;
    uint64_t cell_map_bits = 0;
    uint64_t cell_cache_bits = 0;

    uint64_t core_bits() const {
        return ev_bits + slab_bits + leaf_bits + endpoint_bits;
    }
    uint64_t total_bits() const { return core_bits() + cell_map_bits + cell_cache_bits; }
};

// Balanced Delta-ary selection tree over segments sorted by y. Internal
// nodes carry the endpoint-slab sequence E_v (rank/select) and a slab
// index over the node's rank-reduced segments; leaves are the segments
// themselves. The root additionally keeps the sorted original endpoint
// x-coordinates so queries arrive in original time coordinates.
class SegmentIndex {
public:
    SegmentIndex() = default;

    uint64_t segment_count() const { return x1_.size(); }
    uint32_t delta() const { return config_.delta; }
    const SegmentIndexConfig& config() const { return config_; }

    // Original time coordinate -> root rank-space column (0 = before all
    // endpoints; nothing crosses there).
    uint64_t map_time_to_root(uint64_t x) const;

    // Number of segments crossing original time i.
    uint64_t count_crossing(uint64_t i) const;

    // The segment with the j-th smallest y among those crossing time i.
    Segment segment_select(uint64_t i, uint64_t j) const;

    // Segments of crossing ranks j..j+len-1 at time i, in y-order, by
    // independent descents.
    std::vector<Segment> report_range(uint64_t i, uint64_t j, uint64_t len) const;

    // Label of the segment with global y-rank r (1-based).
    char32_t label_of_rank(uint64_t r) const { return label_[r - 1]; }

    SegmentIndexSizes sizes() const;

    // --- introspection for tests, diagnostics, and serialization ---
    struct NodeInfo {
        uint64_t lo = 0;     // leaf span [lo, hi) in y-sorted order
        uint64_t hi = 0;
        uint32_t chunk = 1;  // child span size; 1 = children are leaves
        uint32_t child_base = 0;
    };
    struct DescentStep {
        uint32_t node = 0;
        uint64_t i_v = 0;
        uint64_t j_v = 0;
        uint32_t slab = 0; // chosen child k
    };

    size_t node_count() const { return nodes_.size(); }
    NodeInfo node_info(size_t idx) const;
    const PackedSequence& node_sequence(size_t idx) const { return nodes_[idx].ev; }
    const SlabIndex& node_slab(size_t idx) const { return nodes_[idx].slab; }
    Segment leaf(uint64_t rank) const { // 1-based y-rank
        return {x1_[rank - 1], x2_[rank - 1], y_[rank - 1], label_[rank - 1]};
    }
    const std::vector<uint32_t>& root_endpoints() const { return root_xs_; }
    const std::shared_ptr<CellCache>& cell_cache() const { return cache_; }

    Segment segment_select_traced(uint64_t i, uint64_t j,
                                  std::vector<DescentStep>* trace) const;

    friend SegmentIndex build_segment_index(const SegmentSet& segs,
                                            const SegmentIndexConfig& config);
    friend struct SegmentIndexIO;

private:
    struct Node {
        uint64_t lo = 0;
        uint64_t hi = 0;
        uint32_t chunk = 1;
        uint32_t child_base = 0;
        PackedSequence ev;
        SlabIndex slab;
    };

    struct EndpointRef {
        uint32_t x;
        uint32_t seg; // index into the node's local segment span
    };

    void build_node(uint32_t idx, std::vector<EndpointRef> eps);

    SegmentIndexConfig config_;
    // Leaf table, y-sorted (rank r at position r-1).
    std::vector<uint32_t> x1_, x2_, y_;
    std::vector<char32_t> label_;
    std::vector<uint32_t> root_xs_; // all endpoint x-coordinates, sorted
    std::vector<Node> nodes_;       // nodes_[0] is the root (segment_count >= 2)
    std::shared_ptr<CellCache> cache_;
};

SegmentIndex build_segment_index(const SegmentSet& segs,
                                 const SegmentIndexConfig& config = {});

} // namespace verstring
