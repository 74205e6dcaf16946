#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "verstring/error.hpp"

namespace verstring {

using VersionId = uint32_t;

enum class EditKind : uint8_t { insert, remove, replace };

// A single edit operation labeling a version-tree edge.
//   insert:  put `ch` immediately after position `pos` (0 <= pos <= |parent|; 0 = front)
//   remove:  delete the character at 1-based position `pos`
//   replace: overwrite the character at 1-based position `pos` with `ch`
struct EditOp {
    EditKind kind = EditKind::insert;
    uint32_t pos = 0;
    char32_t ch = 0;

    static EditOp ins(uint32_t pos, char32_t ch) { return {EditKind::insert, pos, ch}; }
    static EditOp del(uint32_t pos) { return {EditKind::remove, pos, 0}; }
    static EditOp rep(uint32_t pos, char32_t ch) { return {EditKind::replace, pos, ch}; }

    bool operator==(const EditOp&) const = default;
};

// Rooted tree of edit operations. Node ids are dense 0..n-1 with the root
// at id 0; every non-root node stores its parent and the edge op that
// produces its string from the parent's.
class VersionTree {
public:
    // Single-root tree (the empty string).
    VersionTree() : parent_(1, 0), edge_(1) {}

    VersionTree(std::vector<VersionId> parent, std::vector<EditOp> edge)
        : parent_(std::move(parent)), edge_(std::move(edge)) {}

    uint32_t node_count() const { return static_cast<uint32_t>(parent_.size()); }

    VersionId parent(VersionId v) const { return parent_[v]; }
    const EditOp& edge(VersionId v) const { return edge_[v]; }

    bool is_valid_id(VersionId v) const { return v < node_count(); }

    void check_id(VersionId v) const {
        if (!is_valid_id(v))
            throw_error(ErrorCode::out_of_range,
                        "version id " + std::to_string(v) + " out of range (node count " +
                            std::to_string(node_count()) + ")");
    }

    // Children of every node, in increasing id order. Used for traversals.
    std::vector<std::vector<VersionId>> children() const;

    // Structural + length validation in one top-down pass; throws
    // ErrorCode::invalid_tree naming the first offending edge.
    void validate() const;

    // String length per node, via the length recurrence (no materialization).
    std::vector<uint64_t> lengths() const;

    bool has_replace_edges() const;

    bool operator==(const VersionTree&) const = default;

private:
    std::vector<VersionId> parent_; // parent_[0] unused (= 0)
    std::vector<EditOp> edge_;      // edge_[0] unused
};

struct NormalizedTree {
    VersionTree tree;                // replace-free
    std::vector<VersionId> remap;    // original id -> id in `tree`
};

// Expand every replace(k, ch) edge u->v into u->w: delete(k), w->v: insert(k-1, ch).
// Trees without replace edges come back unchanged with the identity remapping.
NormalizedTree normalize_replaces(const VersionTree& tree);

// Reference oracle: apply the root-to-v edit sequence to the empty string.
std::u32string materialize_naive(const VersionTree& tree, VersionId v);

// Line-oriented text format (see README): first line n, then one line per
// non-root node in id order: `<id> <parent> <op>`.
VersionTree parse_version_tree(std::istream& in);
VersionTree parse_version_tree(const std::string& text);
std::string serialize_version_tree(const VersionTree& tree);

} // namespace verstring
