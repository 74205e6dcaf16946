#include "verstring/slab_index.hpp"

#include <algorithm>
#include <span>

namespace verstring {

void RankSpaceSegments::validate() const {
    uint64_t mm = m();
    std::vector<uint8_t> xs(4 * mm + 1, 0), ys(mm + 1, 0);
    for (const Seg& s : segs) {
        if (s.x1 >= s.x2)
            throw_error(ErrorCode::invalid_tree, "rank-space segment with x1 >= x2");
        if (s.x1 < 1 || s.x2 > 4 * mm)
            throw_error(ErrorCode::invalid_tree, "rank-space endpoint outside 1..4m");
        if (s.y < 1 || s.y > mm)
            throw_error(ErrorCode::invalid_tree, "rank-space y outside 1..m");
        if (xs[s.x1]++ || xs[s.x2]++)
            throw_error(ErrorCode::invalid_tree, "rank-space endpoints collide at a column");
        if (ys[s.y]++)
            throw_error(ErrorCode::invalid_tree, "rank-space y values collide");
    }
}

uint32_t CellCache::intern(const CellKey& key) {
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;

    // Materialize the cell by replaying the code.
    uint32_t h = key.w[0];
    uint32_t wd = key.w[1];
    int32_t base = static_cast<int32_t>((key.w[2] >> 1) ^ -(key.w[2] & 1));
    const uint32_t* deltas = key.w.data() + 3;
    const uint32_t* upds = key.w.data() + 3 + (h - 1);

    MaterializedCell cell;
    cell.height = h;
    cell.width = wd;
    cell.vals.resize(static_cast<size_t>(h) * wd);
    int32_t acc = base;
    for (uint32_t r = 0; r < h; ++r) {
        if (r > 0) acc += static_cast<int32_t>(deltas[r - 1]);
        cell.vals[r] = acc;
    }
    for (uint32_t c = 1; c < wd; ++c) {
        int32_t* cur = cell.vals.data() + static_cast<size_t>(c) * h;
        const int32_t* prev = cur - h;
        std::copy(prev, prev + h, cur);
        uint32_t u = upds[c]; // start at column c counts from c on
        if (u >= 1 && u <= h)
            for (uint32_t r = u - 1; r < h; ++r) ++cur[r];
        uint32_t e = upds[c - 1]; // end at column c-1 counts from c on
        if (e > h)
            for (uint32_t r = e - h - 1; r < h; ++r) --cur[r];
    }

    uint32_t id = static_cast<uint32_t>(cells_.size());
    cells_.push_back(std::move(cell));
    ids_.emplace(key, id);
    return id;
}

uint64_t CellCache::size_in_bits() const {
    uint64_t bits = 0;
    for (const MaterializedCell& c : cells_) bits += 64 + c.vals.size() * 32;
    // Key table: count the key words it holds.
    for (const auto& [k, id] : ids_) bits += 64 + k.w.size() * 32;
    return bits;
}

namespace {

// Row grouping at a block's first column: adjacent rows join the same
// group iff their values differ by at most b.
struct RowGroups {
    std::vector<uint32_t> group_of; // per row, 0-based
    std::vector<uint32_t> bottom;   // per group, 0-based bottom row
    std::vector<uint64_t> rep;      // per group, value at (first column, bottom row)
};

RowGroups group_rows(std::span<const uint64_t> vals, uint32_t b) {
    RowGroups g;
    g.group_of.resize(vals.size());
    for (uint32_t r = 0; r < vals.size(); ++r) {
        if (r == 0 || vals[r] - vals[r - 1] > b) {
            g.bottom.push_back(r);
            g.rep.push_back(vals[r]);
        }
        g.group_of[r] = static_cast<uint32_t>(g.bottom.size() - 1);
    }
    return g;
}

} // namespace

SlabIndex build_slab_index(const RankSpaceSegments& segs, uint32_t delta,
                           SlabBackend backend, std::shared_ptr<CellCache> cache) {
    if (delta < 2 || delta > SlabIndex::kMaxDelta)
        throw_error(ErrorCode::out_of_range,
                    "slab count must be in 2.." + std::to_string(SlabIndex::kMaxDelta));
    segs.validate();

    SlabIndex idx;
    idx.m_ = segs.m();
    idx.delta_req_ = delta;
    idx.part_ = SlabPartition(idx.m_, delta);
    idx.backend_ = backend;
    if (backend == SlabBackend::memoized)
        idx.cache_ = cache ? std::move(cache) : std::make_shared<CellCache>();
    if (idx.m_ == 0) return idx;

    uint32_t D = idx.part_.delta_eff;
    uint32_t lg = std::max<uint32_t>(1, ceil_log2(idx.m_));
    idx.b_ = D * lg;
    idx.cgpb_ = lg;
    uint64_t cols = 4 * idx.m_;
    idx.nblocks_ = (cols + idx.b_ - 1) / idx.b_;
    uint64_t padded = idx.nblocks_ * idx.b_;

    std::vector<uint32_t> start_slab(padded + 2, 0), end_slab(padded + 2, 0);
    for (const auto& s : segs.segs) {
        uint32_t slab = idx.part_.slab_of_y(s.y);
        start_slab[s.x1] = slab;
        end_slab[s.x2] = slab;
    }

    idx.updates_ = PackedArray(padded, bits_for(2 * D));
    for (uint64_t c = 1; c <= padded; ++c) {
        if (start_slab[c])
            idx.updates_.set(c - 1, start_slab[c]);
        else if (end_slab[c])
            idx.updates_.set(c - 1, D + end_slab[c]);
    }

    // Sweep the conceptual grid column by column, snapshotting prefix sums
    // at block starts (row grouping) and column-group starts (leftcols).
    std::vector<uint64_t> cnt(D + 1, 0), prefix(D + 1, 0);
    std::vector<int64_t> leftraw(idx.nblocks_ * idx.cgpb_ * D, 0);
    std::vector<uint32_t> r2g(idx.nblocks_ * D, 0), gbot(idx.nblocks_ * D, 0);
    std::vector<uint32_t> gcnt(idx.nblocks_, 0);
    std::vector<uint64_t> repv(idx.nblocks_ * D, 0);
    RowGroups groups;
    uint64_t block = 0;
    for (uint64_t c = 1; c <= padded; ++c) {
        if (start_slab[c]) ++cnt[start_slab[c]];
        uint64_t off = (c - 1) % idx.b_;
        if (off % D == 0) {
            for (uint32_t s = 1; s <= D; ++s) prefix[s] = prefix[s - 1] + cnt[s];
            if (off == 0) {
                block = (c - 1) / idx.b_;
                groups = group_rows(std::span(prefix).subspan(1, D), idx.b_);
                gcnt[block] = static_cast<uint32_t>(groups.bottom.size());
                for (uint32_t r = 0; r < D; ++r) r2g[block * D + r] = groups.group_of[r];
                for (uint32_t g = 0; g < groups.bottom.size(); ++g) {
                    gbot[block * D + g] = groups.bottom[g];
                    repv[block * D + g] = groups.rep[g];
                }
            }
            uint64_t cg = off / D;
            uint64_t base = (block * idx.cgpb_ + cg) * D;
            for (uint32_t r = 0; r < D; ++r) {
                uint64_t v = prefix[r + 1];
                if (r == groups.bottom[groups.group_of[r]])
                    leftraw[base + r] =
                        static_cast<int64_t>(v) - static_cast<int64_t>(groups.rep[groups.group_of[r]]);
                else
                    leftraw[base + r] = static_cast<int64_t>(v) - static_cast<int64_t>(prefix[r]);
            }
        }
        if (end_slab[c]) --cnt[end_slab[c]];
    }

    int64_t lo = 0, hi = 0;
    for (int64_t v : leftraw) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    idx.loff_ = static_cast<uint32_t>(-lo);
    idx.leftcol_ = PackedArray(leftraw.size(), bits_for(static_cast<uint64_t>(hi - lo)));
    for (size_t i = 0; i < leftraw.size(); ++i)
        idx.leftcol_.set(i, static_cast<uint64_t>(leftraw[i] - lo));

    idx.reps_ = PackedArray(repv.size(), bits_for(idx.m_));
    for (size_t i = 0; i < repv.size(); ++i) idx.reps_.set(i, repv[i]);
    idx.rep_count_ = PackedArray(idx.nblocks_, bits_for(D));
    for (size_t i = 0; i < gcnt.size(); ++i) idx.rep_count_.set(i, gcnt[i]);
    uint32_t gw = bits_for(D > 1 ? D - 1 : 1);
    idx.row2group_ = PackedArray(r2g.size(), gw);
    for (size_t i = 0; i < r2g.size(); ++i) idx.row2group_.set(i, r2g[i]);
    idx.group_bottom_ = PackedArray(gbot.size(), gw);
    for (size_t i = 0; i < gbot.size(); ++i) idx.group_bottom_.set(i, gbot[i]);

    if (idx.backend_ == SlabBackend::memoized) idx.build_cell_map();
    return idx;
}

uint32_t SlabIndex::row_group_of(uint64_t block, uint32_t row0) const {
    return static_cast<uint32_t>(row2group_.get(block * part_.delta_eff + row0));
}

uint32_t SlabIndex::row_group_count(uint64_t block) const {
    return static_cast<uint32_t>(rep_count_.get(block));
}

uint32_t SlabIndex::group_bottom_row(uint64_t block, uint32_t group) const {
    return static_cast<uint32_t>(group_bottom_.get(block * part_.delta_eff + group));
}

uint32_t SlabIndex::group_top_row(uint64_t block, uint32_t group) const {
    uint32_t g = row_group_count(block);
    return group + 1 < g ? group_bottom_row(block, group + 1) - 1 : part_.delta_eff - 1;
}

uint64_t SlabIndex::representative(uint64_t block, uint32_t group) const {
    return reps_.get(block * part_.delta_eff + group);
}

uint64_t SlabIndex::cell_slot(uint64_t block, uint32_t cg, uint32_t group) const {
    return (block * cgpb_ + cg) * part_.delta_eff + group;
}

CellKey SlabIndex::make_cell_key(uint64_t block, uint32_t cg, uint32_t group) const {
    uint32_t D = part_.delta_eff;
    uint32_t bottom = group_bottom_row(block, group);
    uint32_t h = group_top_row(block, group) - bottom + 1;
    uint64_t base_slot = (block * cgpb_ + cg) * D;

    CellKey key;
    key.w.reserve(3 + (h - 1) + D);
    key.w.push_back(h);
    key.w.push_back(D);
    int32_t base = static_cast<int32_t>(leftcol_.get(base_slot + bottom)) -
                   static_cast<int32_t>(loff_);
    key.w.push_back((static_cast<uint32_t>(base) << 1) ^ static_cast<uint32_t>(base >> 31));
    for (uint32_t r = 1; r < h; ++r)
        key.w.push_back(static_cast<uint32_t>(leftcol_.get(base_slot + bottom + r)) - loff_);
    uint64_t c0 = block * b_ + static_cast<uint64_t>(cg) * D; // 0-based index of first column
    for (uint32_t t = 0; t < D; ++t) {
        uint32_t u = static_cast<uint32_t>(updates_.get(c0 + t));
        uint32_t enc = 0;
        if (u != 0) {
            bool is_end = u > D;
            uint32_t slab = is_end ? u - D : u;
            // First local row the update touches; clamp below, drop above.
            int32_t thr = static_cast<int32_t>(slab) - 1 - static_cast<int32_t>(bottom);
            if (thr < 0) thr = 0;
            if (thr < static_cast<int32_t>(h)) enc = (is_end ? 1 + h : 1) + thr;
        }
        key.w.push_back(enc);
    }
    return key;
}

void SlabIndex::build_cell_map() {
    std::vector<uint32_t> ids(nblocks_ * cgpb_ * part_.delta_eff, 0);
    uint32_t max_id = 0;
    for (uint64_t blk = 0; blk < nblocks_; ++blk) {
        uint32_t g = row_group_count(blk);
        for (uint32_t cg = 0; cg < cgpb_; ++cg)
            for (uint32_t grp = 0; grp < g; ++grp) {
                uint32_t id = cache_->intern(make_cell_key(blk, cg, grp));
                ids[cell_slot(blk, cg, grp)] = id;
                max_id = std::max(max_id, id);
            }
    }
    cell_map_ = PackedArray(ids.size(), bits_for(max_id));
    for (size_t i = 0; i < ids.size(); ++i) cell_map_.set(i, ids[i]);
}

int64_t SlabIndex::replay_access(uint64_t block, uint32_t cg, uint32_t group,
                                 uint32_t local_col, uint32_t local_row) const {
    uint32_t D = part_.delta_eff;
    uint32_t bottom = group_bottom_row(block, group);
    uint64_t base_slot = (block * cgpb_ + cg) * D;
    int64_t acc = 0;
    for (uint32_t r = 0; r <= local_row; ++r)
        acc += static_cast<int64_t>(leftcol_.get(base_slot + bottom + r)) - loff_;
    uint32_t row1 = bottom + local_row + 1; // 1-based absolute row
    uint64_t c0 = block * b_ + static_cast<uint64_t>(cg) * D;
    for (uint32_t t = 0; t <= local_col; ++t) {
        uint32_t u = static_cast<uint32_t>(updates_.get(c0 + t));
        if (u == 0) continue;
        if (u <= D) {
            if (t >= 1 && u <= row1) ++acc;
        } else {
            if (t < local_col && u - D <= row1) --acc;
        }
    }
    return acc;
}

uint32_t SlabIndex::replay_predecessor(uint64_t block, uint32_t cg, uint32_t group,
                                       uint32_t local_col, int64_t target) const {
    uint32_t D = part_.delta_eff;
    uint32_t bottom = group_bottom_row(block, group);
    uint32_t h = group_top_row(block, group) - bottom + 1;
    uint64_t base_slot = (block * cgpb_ + cg) * D;
    uint64_t c0 = block * b_ + static_cast<uint64_t>(cg) * D;

    int32_t diff[kMaxDelta] = {0};
    for (uint32_t t = 0; t <= local_col; ++t) {
        uint32_t u = static_cast<uint32_t>(updates_.get(c0 + t));
        if (u == 0) continue;
        bool is_end = u > D;
        if (is_end ? t >= local_col : t < 1) continue;
        uint32_t slab = is_end ? u - D : u;
        int32_t thr = static_cast<int32_t>(slab) - 1 - static_cast<int32_t>(bottom);
        if (thr < 0) thr = 0;
        if (thr < static_cast<int32_t>(h)) diff[thr] += is_end ? -1 : 1;
    }
    int64_t acc = 0, adj = 0;
    for (uint32_t r = 0; r < h; ++r) {
        acc += static_cast<int64_t>(leftcol_.get(base_slot + bottom + r)) - loff_;
        adj += diff[r];
        if (acc + adj >= target) return r;
    }
    throw_error(ErrorCode::internal, "no cell row reaches the selection target");
}

int64_t SlabIndex::cell_access(const CellRef& c, uint32_t local_col,
                               uint32_t local_row) const {
    uint32_t h = group_top_row(c.block, c.row_group) - group_bottom_row(c.block, c.row_group) + 1;
    if (local_col >= part_.delta_eff || local_row >= h)
        throw_error(ErrorCode::out_of_range, "cell access outside the cell extent");
    if (backend_ == SlabBackend::memoized) {
        const MaterializedCell& cell =
            cache_->cell(static_cast<uint32_t>(cell_map_.get(cell_slot(c.block, c.column_group, c.row_group))));
        return cell.at(local_col, local_row);
    }
    return replay_access(c.block, c.column_group, c.row_group, local_col, local_row);
}

uint32_t SlabIndex::cell_predecessor(const CellRef& c, uint32_t local_col,
                                     int64_t target) const {
    if (local_col >= part_.delta_eff)
        throw_error(ErrorCode::out_of_range, "cell column outside the cell extent");
    if (backend_ == SlabBackend::memoized) {
        const MaterializedCell& cell =
            cache_->cell(static_cast<uint32_t>(cell_map_.get(cell_slot(c.block, c.column_group, c.row_group))));
        const int32_t* col = cell.vals.data() + static_cast<size_t>(local_col) * cell.height;
        const int32_t* end = col + cell.height;
        const int32_t* it = std::lower_bound(col, end, target);
        if (it == end)
            throw_error(ErrorCode::internal, "no cell row reaches the selection target");
        return static_cast<uint32_t>(it - col);
    }
    return replay_predecessor(c.block, c.column_group, c.row_group, local_col, target);
}

void SlabIndex::check_column(uint64_t i) const {
    if (i > 4 * m_)
        throw_error(ErrorCode::out_of_range,
                    "column " + std::to_string(i) + " outside 0.." + std::to_string(4 * m_));
}

uint64_t SlabIndex::slab_sum(uint64_t i, uint32_t j) const {
    if (m_ == 0) return 0;
    check_column(i);
    if (j > part_.delta_eff)
        throw_error(ErrorCode::out_of_range, "slab index " + std::to_string(j) + " outside 0.." +
                                                 std::to_string(part_.delta_eff));
    if (i == 0 || j == 0) return 0;
    uint64_t block = block_of_column(i);
    uint32_t cg = column_group_of(i);
    uint32_t row0 = j - 1;
    uint32_t g = row_group_of(block, row0);
    uint64_t c0 = block * b_ + static_cast<uint64_t>(cg) * part_.delta_eff + 1;
    int64_t v = cell_access({block, cg, g}, static_cast<uint32_t>(i - c0),
                            row0 - group_bottom_row(block, g)) +
                static_cast<int64_t>(representative(block, g));
    return static_cast<uint64_t>(v);
}

uint32_t SlabIndex::slab_select(uint64_t i, uint64_t j) const {
    uint32_t D = part_.delta_eff;
    if (m_ == 0 || i == 0 || j == 0 || j > slab_sum(i, D))
        throw_error(ErrorCode::rank_out_of_range,
                    "selection rank " + std::to_string(j) + " exceeds the crossing count");
    uint64_t block = block_of_column(i);
    uint32_t cg = column_group_of(i);
    uint32_t g_count = row_group_count(block);

    // Predecessor of j among the representatives.
    uint32_t lo = 0, hi = g_count; // first group with rep > j
    while (lo < hi) {
        uint32_t mid = (lo + hi) / 2;
        if (representative(block, mid) <= j)
            lo = mid + 1;
        else
            hi = mid;
    }
    uint32_t pred = lo > 0 ? lo - 1 : 0;
    uint32_t first = pred > 0 ? pred - 1 : 0;

    // Lowest group from the candidate window whose top row reaches j. The
    // window {pred-1, pred, pred+1} covers all inputs that satisfy the grid
    // properties; scanning on keeps adversarial instances correct.
    for (uint32_t g = first; g < g_count; ++g) {
        if (slab_sum(i, group_top_row(block, g) + 1) < j) continue;
        uint32_t bottom = group_bottom_row(block, g);
        uint64_t c0 = block * b_ + static_cast<uint64_t>(cg) * D + 1;
        int64_t target = static_cast<int64_t>(j) - static_cast<int64_t>(representative(block, g));
        uint32_t lr = cell_predecessor({block, cg, g}, static_cast<uint32_t>(i - c0), target);
        return bottom + lr + 1;
    }
    throw_error(ErrorCode::internal, "slab selection found no qualifying row group");
}

uint64_t SlabIndex::size_in_bits() const {
    return updates_.size_in_bits() + reps_.size_in_bits() + rep_count_.size_in_bits() +
           row2group_.size_in_bits() + group_bottom_.size_in_bits() +
           leftcol_.size_in_bits() + 256;
}

uint64_t SlabIndex::cache_size_in_bits() const { return cell_map_.size_in_bits(); }

GridPropertiesReport verify_grid_properties(const RankSpaceSegments& segs, uint32_t delta) {
    GridPropertiesReport rep;
    uint64_t m = segs.m();
    if (m == 0) return rep;
    SlabPartition part(m, delta);
    uint32_t D = part.delta_eff;
    uint32_t lg = std::max<uint32_t>(1, ceil_log2(m));
    uint32_t b = D * lg;
    uint64_t cols = 4 * m;
    uint64_t nblocks = (cols + b - 1) / b;

    std::vector<std::vector<uint32_t>> starts(cols + 2), ends(cols + 2);
    for (const auto& s : segs.segs) {
        starts[s.x1].push_back(part.slab_of_y(s.y));
        ends[s.x2].push_back(part.slab_of_y(s.y));
    }

    auto fail = [](GridPropertyResult& r, std::string msg) {
        if (r.ok) {
            r.ok = false;
            r.counterexample = std::move(msg);
        }
    };

    std::vector<int64_t> cnt(D + 1, 0);
    std::vector<int64_t> prev_col; // last column of the previous block
    std::vector<int64_t> grid;     // block buffer, column-major: grid[c * D + r]
    for (uint64_t blk = 0; blk < nblocks; ++blk) {
        uint64_t c_lo = blk * b + 1;
        uint64_t width = std::min<uint64_t>(b, cols >= c_lo ? cols - c_lo + 1 : 0);
        if (width == 0) break;
        grid.assign(width * D, 0);
        for (uint64_t t = 0; t < width; ++t) {
            uint64_t c = c_lo + t;
            for (uint32_t s : starts[c]) ++cnt[s];
            int64_t p = 0;
            for (uint32_t r = 0; r < D; ++r) {
                p += cnt[r + 1];
                grid[t * D + r] = p;
            }
            for (uint32_t s : ends[c]) --cnt[s];
        }

        // (i) adjacent entries in a row differ by at most 1 (also across the
        // block boundary via prev_col).
        for (uint32_t r = 0; r < D && rep.row_adjacency.ok; ++r) {
            if (!prev_col.empty() && std::abs(grid[r] - prev_col[r]) > 1)
                fail(rep.row_adjacency, "row " + std::to_string(r + 1) + " jumps at column " +
                                            std::to_string(c_lo));
            for (uint64_t t = 0; t + 1 < width; ++t)
                if (std::abs(grid[(t + 1) * D + r] - grid[t * D + r]) > 1) {
                    fail(rep.row_adjacency, "row " + std::to_string(r + 1) + " jumps at column " +
                                                std::to_string(c_lo + t + 1));
                    break;
                }
        }
        prev_col.assign(grid.end() - D, grid.end());

        std::vector<uint64_t> first_col(D);
        for (uint32_t r = 0; r < D; ++r) first_col[r] = static_cast<uint64_t>(grid[r]);
        RowGroups groups = group_rows(first_col, b);
        size_t g_count = groups.bottom.size();
        auto top_of = [&](uint32_t g) {
            return g + 1 < g_count ? groups.bottom[g + 1] - 1 : D - 1;
        };

        // (ii) adjacent rows of one row group differ by at most 2b everywhere.
        for (uint32_t r = 0; r + 1 < D && rep.group_column_spread.ok; ++r) {
            if (groups.group_of[r] != groups.group_of[r + 1]) continue;
            for (uint64_t t = 0; t < width; ++t)
                if (grid[t * D + r + 1] - grid[t * D + r] > 2 * static_cast<int64_t>(b)) {
                    fail(rep.group_column_spread,
                         "rows " + std::to_string(r + 1) + "," + std::to_string(r + 2) +
                             " of one group spread past 2b at column " + std::to_string(c_lo + t));
                    break;
                }
        }

        // (iii) entries of non-adjacent row groups differ by more than b.
        for (uint32_t g = 0; g + 2 < g_count && rep.group_separation.ok; ++g) {
            int64_t max_low = std::numeric_limits<int64_t>::min();
            int64_t min_high = std::numeric_limits<int64_t>::max();
            uint32_t top_low = top_of(g);
            for (uint64_t t = 0; t < width; ++t) {
                for (uint32_t r = groups.bottom[g]; r <= top_low; ++r)
                    max_low = std::max(max_low, grid[t * D + r]);
                for (uint32_t r = groups.bottom[g + 2]; r <= top_of(g + 2); ++r)
                    min_high = std::min(min_high, grid[t * D + r]);
            }
            if (min_high - max_low <= static_cast<int64_t>(b))
                fail(rep.group_separation, "groups " + std::to_string(g) + " and " +
                                               std::to_string(g + 2) + " come within b in block " +
                                               std::to_string(blk));
        }

        // (iv) representatives separate: rows up to the bottom row of group
        // g-1 stay below rep(g); rows of groups above g stay above rep(g).
        for (uint32_t g = 0; g < g_count && rep.representative_order.ok; ++g) {
            int64_t r_g = static_cast<int64_t>(groups.rep[g]);
            for (uint64_t t = 0; t < width && rep.representative_order.ok; ++t) {
                if (g >= 1)
                    for (uint32_t r = 0; r <= groups.bottom[g - 1]; ++r)
                        if (grid[t * D + r] >= r_g) {
                            fail(rep.representative_order,
                                 "row " + std::to_string(r + 1) + " reaches rep of group " +
                                     std::to_string(g) + " at column " + std::to_string(c_lo + t));
                            break;
                        }
                if (g + 1 < g_count)
                    for (uint32_t r = groups.bottom[g + 1]; r < D; ++r)
                        if (grid[t * D + r] <= r_g) {
                            fail(rep.representative_order,
                                 "row " + std::to_string(r + 1) + " falls to rep of group " +
                                     std::to_string(g) + " at column " + std::to_string(c_lo + t));
                            break;
                        }
            }
        }
    }
    return rep;
}

} // namespace verstring
