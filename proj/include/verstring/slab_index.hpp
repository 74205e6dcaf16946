#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "verstring/bits.hpp"

namespace verstring {

// Segments in rank space: endpoint x-coordinates are distinct integers in
// {1..4m} with at most one endpoint per column, y-coordinates are a
// permutation of {1..m}. Slabs are contiguous y-chunks of ceil(m/delta)
// segments (the last one may be smaller).
struct RankSpaceSegments {
    struct Seg {
        uint32_t x1 = 0;
        uint32_t x2 = 0;
        uint32_t y = 0;
    };
    std::vector<Seg> segs;

    uint64_t m() const { return segs.size(); }
    uint64_t columns() const { return 4 * m(); }
    void validate() const;
};

// Slab partition arithmetic shared by the index, its oracle, and the
// segment-selection tree.
struct SlabPartition {
    uint64_t m = 0;
    uint32_t chunk = 1;     // segments per slab
    uint32_t delta_eff = 0; // number of nonempty slabs

    SlabPartition() = default;
    SlabPartition(uint64_t m_, uint32_t delta) : m(m_) {
        if (m == 0) return;
        chunk = static_cast<uint32_t>((m + delta - 1) / delta);
        delta_eff = static_cast<uint32_t>((m + chunk - 1) / chunk);
    }

    uint32_t slab_of_y(uint32_t y) const { return (y - 1) / chunk + 1; }
};

enum class SlabBackend : uint8_t { direct = 0, memoized = 1 };

// Normalized-cell code: extents, the cell's leftmost column (bottom value
// relative to the representative, then per-row deltas), and the column
// updates of its column group with slab indices clamped to the cell's
// rows. Cells with equal codes answer queries identically, which is what
// the memoization cache keys on.
struct CellKey {
    std::vector<uint32_t> w;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    size_t operator()(const CellKey& k) const {
        uint64_t h = 1469598103934665603ULL;
        for (uint32_t v : k.w) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h);
    }
};

struct MaterializedCell {
    uint32_t height = 0;
    uint32_t width = 0;
    std::vector<int32_t> vals; // column-major: vals[c * height + r]

    int32_t at(uint32_t c, uint32_t r) const { return vals[c * height + r]; }
};

// Decoded-cell store shared by every slab index of a segment-selection
// tree; populated during construction, read-only afterwards.
class CellCache {
public:
    uint32_t intern(const CellKey& key);
    const MaterializedCell& cell(uint32_t id) const { return cells_[id]; }
    size_t count() const { return cells_.size(); }
    uint64_t size_in_bits() const;

private:
    std::unordered_map<CellKey, uint32_t, CellKeyHash> ids_;
    std::vector<MaterializedCell> cells_;
};

struct GridPropertyResult {
    bool ok = true;
    std::string counterexample; // empty when ok
};

struct GridPropertiesReport {
    GridPropertyResult row_adjacency;        // (i)
    GridPropertyResult group_column_spread;  // (ii)
    GridPropertyResult group_separation;     // (iii)
    GridPropertyResult representative_order; // (iv)

    bool all_ok() const {
        return row_adjacency.ok && group_column_spread.ok && group_separation.ok &&
               representative_order.ok;
    }
};

// Compact encoding of the prefix-sum grid P(column, slab): per block, row
// groups with representatives, per-cell leftmost columns, and per-column
// updates. Answers slab-sum and slab-select without storing P.
class SlabIndex {
public:
    static constexpr uint32_t kMaxDelta = 64;

    SlabIndex() = default;

    uint64_t m() const { return m_; }
    uint32_t delta() const { return delta_req_; }
    uint32_t delta_eff() const { return part_.delta_eff; }
    uint64_t columns() const { return 4 * m_; }
    SlabBackend backend() const { return backend_; }
    const SlabPartition& partition() const { return part_; }

    // P(i, j): segments in slabs 1..j crossing column i. j = 0 and i = 0
    // return 0.
    uint64_t slab_sum(uint64_t i, uint32_t j) const;

    // Smallest k with slab_sum(i, k) >= j; throws rank_out_of_range when j
    // exceeds the total crossing count at i.
    uint32_t slab_select(uint64_t i, uint64_t j) const;

    // Cell addressing for tests and diagnostics.
    struct CellRef {
        uint64_t block = 0;
        uint32_t column_group = 0;
        uint32_t row_group = 0;
    };
    uint64_t block_of_column(uint64_t i) const { return (i - 1) / b_; }
    uint32_t column_group_of(uint64_t i) const {
        return static_cast<uint32_t>(((i - 1) % b_) / part_.delta_eff);
    }
    uint32_t row_group_of(uint64_t block, uint32_t row0) const; // 0-based row
    uint32_t row_group_count(uint64_t block) const;
    uint32_t group_bottom_row(uint64_t block, uint32_t group) const; // 0-based
    uint32_t group_top_row(uint64_t block, uint32_t group) const;    // 0-based
    uint64_t representative(uint64_t block, uint32_t group) const;
    uint32_t block_width() const { return b_; }

    // Normalized-cell value at local (column, row), both 0-based within the
    // cell; equals P(col, row) - representative.
    int64_t cell_access(const CellRef& c, uint32_t local_col, uint32_t local_row) const;

    // Smallest 0-based local row whose normalized value at local_col is
    // >= target; internal error if no row qualifies (callers check first).
    uint32_t cell_predecessor(const CellRef& c, uint32_t local_col, int64_t target) const;

    uint64_t size_in_bits() const;       // core payload
    uint64_t cache_size_in_bits() const; // memoized extras (cell map + shared cache share)

    const std::shared_ptr<CellCache>& cache() const { return cache_; }

    friend SlabIndex build_slab_index(const RankSpaceSegments& segs, uint32_t delta,
                                      SlabBackend backend, std::shared_ptr<CellCache> cache);
    friend struct SlabIndexIO;

private:
    struct CellGeom; // build/query helper

    CellKey make_cell_key(uint64_t block, uint32_t cg, uint32_t group) const;
    int64_t replay_access(uint64_t block, uint32_t cg, uint32_t group, uint32_t local_col,
                          uint32_t local_row) const;
    uint32_t replay_predecessor(uint64_t block, uint32_t cg, uint32_t group,
                                uint32_t local_col, int64_t target) const;
    uint64_t cell_slot(uint64_t block, uint32_t cg, uint32_t group) const;
    void build_cell_map();
    void check_column(uint64_t i) const;

    uint64_t m_ = 0;
    uint32_t delta_req_ = 2;
    SlabPartition part_;
    uint32_t b_ = 1;      // columns per block
    uint32_t cgpb_ = 1;   // column groups per block
    uint64_t nblocks_ = 0;
    uint32_t loff_ = 0;   // offset added to stored leftcol entries

    // Column updates: 0 = none, 1..D = segment start in that slab,
    // D+1..2D = segment end in slab u-D (effective from the next column).
    PackedArray updates_;
    PackedArray reps_;         // nblocks * D, representative per row group
    PackedArray rep_count_;    // nblocks
    PackedArray row2group_;    // nblocks * D
    PackedArray group_bottom_; // nblocks * D, 0-based bottom row per group
    PackedArray leftcol_;      // nblocks * cgpb * D, offset-shifted entries

    SlabBackend backend_ = SlabBackend::direct;
    std::shared_ptr<CellCache> cache_;
    PackedArray cell_map_; // nblocks * cgpb * D -> cache id (memoized only)
};

SlabIndex build_slab_index(const RankSpaceSegments& segs, uint32_t delta,
                           SlabBackend backend = SlabBackend::direct,
                           std::shared_ptr<CellCache> cache = nullptr);

// Sweep the conceptual grid and check Lemma-style properties (i)-(iv) of
// the block decomposition; first counterexample reported per property.
GridPropertiesReport verify_grid_properties(const RankSpaceSegments& segs, uint32_t delta);

} // namespace verstring
