#include "verstring/euler_reduction.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace verstring {

namespace {

// Order-statistics treap over the marked string. Nodes are addressed by
// stable pointers so a deletion edge can unmark exactly the character it
// marked. Subtrees carry total and unmarked counts.
class MarkedSequence {
public:
    struct Node {
        Node* left = nullptr;
        Node* right = nullptr;
        Node* parent = nullptr;
        uint64_t prio = 0;
        uint32_t cnt = 1;
        uint32_t unmarked = 1;
        char32_t ch = 0;
        uint32_t edge = 0; // insertion edge (child node id) that created this char
        bool marked = false;
    };

    explicit MarkedSequence(size_t capacity_hint) { (void)capacity_hint; }

    uint32_t unmarked_count() const { return root_ ? root_->unmarked : 0; }
    uint32_t size() const { return root_ ? root_->cnt : 0; }

    // Insert a fresh unmarked character immediately after the i-th unmarked
    // element (i = 0 inserts at the front of the whole sequence).
    Node* insert_after_unmarked(uint32_t i, char32_t ch, uint32_t edge) {
        uint64_t p = 0;
        if (i > 0) p = position_of(unmarked_kth(i)) + 1;
        return insert_at(p, ch, edge);
    }

    // Mark the i-th unmarked element and return it.
    Node* mark_kth_unmarked(uint32_t i) {
        Node* n = unmarked_kth(i);
        set_marked(n, true);
        return n;
    }

    void set_marked(Node* n, bool m) {
        if (n->marked == m) {
            throw_error(ErrorCode::internal, "marked-string flag toggled twice");
        }
        n->marked = m;
        int delta = m ? -1 : 1;
        for (Node* x = n; x; x = x->parent) x->unmarked += delta;
    }

    // Final positions in sequence order.
    std::vector<Node*> in_order() const {
        std::vector<Node*> out;
        out.reserve(size());
        std::vector<Node*> stack;
        Node* x = root_;
        while (x || !stack.empty()) {
            while (x) {
                stack.push_back(x);
                x = x->left;
            }
            x = stack.back();
            stack.pop_back();
            out.push_back(x);
            x = x->right;
        }
        return out;
    }

private:
    static uint32_t cnt(const Node* x) { return x ? x->cnt : 0; }
    static uint32_t unm(const Node* x) { return x ? x->unmarked : 0; }

    static void pull(Node* x) {
        x->cnt = 1 + cnt(x->left) + cnt(x->right);
        x->unmarked = (x->marked ? 0 : 1) + unm(x->left) + unm(x->right);
    }

    Node* unmarked_kth(uint32_t i) const {
        Node* x = root_;
        while (x) {
            uint32_t lu = unm(x->left);
            if (i <= lu) {
                x = x->left;
                continue;
            }
            i -= lu;
            if (!x->marked) {
                if (i == 1) return x;
                --i;
            }
            x = x->right;
        }
        throw_error(ErrorCode::internal, "unmarked rank out of range in marked string");
    }

    // 0-based index of n in the full sequence.
    uint64_t position_of(const Node* n) const {
        uint64_t pos = cnt(n->left);
        for (const Node* x = n; x->parent; x = x->parent)
            if (x->parent->right == x) pos += cnt(x->parent->left) + 1;
        return pos;
    }

    Node* insert_at(uint64_t p, char32_t ch, uint32_t edge) {
        pool_.emplace_back();
        Node* n = &pool_.back();
        n->prio = rng_();
        n->ch = ch;
        n->edge = edge;

        Node* par = nullptr;
        Node* cur = root_;
        bool as_left = false;
        while (cur) {
            par = cur;
            uint32_t ls = cnt(cur->left);
            if (p <= ls) {
                cur = cur->left;
                as_left = true;
            } else {
                p -= ls + 1;
                cur = cur->right;
                as_left = false;
            }
        }
        n->parent = par;
        if (!par)
            root_ = n;
        else if (as_left)
            par->left = n;
        else
            par->right = n;
        for (Node* x = par; x; x = x->parent) {
            ++x->cnt;
            ++x->unmarked;
        }
        while (n->parent && n->prio > n->parent->prio) rotate_up(n);
        return n;
    }

    void rotate_up(Node* x) {
        Node* p = x->parent;
        Node* g = p->parent;
        if (p->left == x) {
            p->left = x->right;
            if (x->right) x->right->parent = p;
            x->right = p;
        } else {
            p->right = x->left;
            if (x->left) x->left->parent = p;
            x->left = p;
        }
        p->parent = x;
        x->parent = g;
        if (g) {
            (g->left == p ? g->left : g->right) = x;
        } else {
            root_ = x;
        }
        pull(p);
        pull(x);
    }

    std::deque<Node> pool_;
    Node* root_ = nullptr;
    std::mt19937_64 rng_{0x5eed5eed5eedULL};
};

struct TourResult {
    // Per insertion edge (child node id): the time intervals where its
    // character is unmarked, and the character's final position.
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> intervals;
    std::vector<uint32_t> pos;
    StartTable start;
};

TourResult run_tour(const VersionTree& tree) {
    uint32_t n = tree.node_count();
    auto kids = tree.children();

    TourResult res;
    res.intervals.resize(n);
    res.pos.assign(n, 0);
    res.start.assign(n, 0);

    MarkedSequence seq(n);
    std::vector<MarkedSequence::Node*> char_of(n, nullptr);   // insertion edge -> char
    std::vector<MarkedSequence::Node*> marked_by(n, nullptr); // deletion edge -> char
    std::vector<uint32_t> open_since(n, 0);                   // insertion edge -> interval start

    uint32_t time = 0;
    std::vector<std::pair<VersionId, uint32_t>> stack;
    stack.push_back({0, 0});
    while (!stack.empty()) {
        auto [v, ci] = stack.back();
        if (ci < kids[v].size()) {
            ++stack.back().second;
            VersionId c = kids[v][ci];
            ++time;
            res.start[c] = time;
            const EditOp& op = tree.edge(c);
            if (op.kind == EditKind::insert) {
                char_of[c] = seq.insert_after_unmarked(op.pos, op.ch, c);
                open_since[c] = time;
            } else { // downward delete: mark, closing the char's open interval
                MarkedSequence::Node* t = seq.mark_kth_unmarked(op.pos);
                marked_by[c] = t;
                res.intervals[t->edge].push_back({open_since[t->edge], time - 1});
            }
            stack.push_back({c, 0});
        } else {
            stack.pop_back();
            if (v != 0) {
                ++time;
                const EditOp& op = tree.edge(v);
                if (op.kind == EditKind::insert) {
                    seq.set_marked(char_of[v], true);
                    res.intervals[v].push_back({open_since[v], time - 1});
                } else {
                    MarkedSequence::Node* t = marked_by[v];
                    seq.set_marked(t, false);
                    open_since[t->edge] = time;
                }
            }
        }
    }

    uint32_t p = 0;
    for (MarkedSequence::Node* node : seq.in_order()) res.pos[node->edge] = ++p;
    return res;
}

void require_replace_free(const VersionTree& tree) {
    if (tree.has_replace_edges())
        throw_error(ErrorCode::invalid_tree,
                    "reduction requires a replace-free tree (run normalize_replaces)");
}

} // namespace

EulerReduction reduce(const VersionTree& tree) {
    tree.validate();
    require_replace_free(tree);
    TourResult tour = run_tour(tree);

    EulerReduction out;
    out.start = std::move(tour.start);
    uint32_t n = tree.node_count();
    out.segments.segments.reserve(n == 0 ? 0 : n - 1);
    for (VersionId e = 1; e < n; ++e) {
        if (tree.edge(e).kind != EditKind::insert) continue;
        for (auto [a, b] : tour.intervals[e])
            out.segments.segments.push_back(
                {2 * a - 1, 2 * b, tour.pos[e], tree.edge(e).ch});
    }
    return out;
}

std::vector<std::pair<uint32_t, uint32_t>> unmarked_intervals(const VersionTree& tree,
                                                              VersionId e) {
    tree.check_id(e);
    if (e == 0 || tree.edge(e).kind != EditKind::insert)
        throw_error(ErrorCode::out_of_range,
                    "edge " + std::to_string(e) + " is not an insertion edge");
    tree.validate();
    require_replace_free(tree);
    return run_tour(tree).intervals[e];
}

std::string dump_segments(const SegmentSet& segs) {
    std::vector<Segment> sorted = segs.segments;
    std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
        return a.y != b.y ? a.y < b.y : a.x1 < b.x1;
    });
    std::string out;
    for (const Segment& s : sorted) {
        out += std::to_string(s.x1);
        out.push_back(' ');
        out += std::to_string(s.x2);
        out.push_back(' ');
        out += std::to_string(s.y);
        out.push_back(' ');
        out += std::to_string(static_cast<uint32_t>(s.label));
        out.push_back('\n');
    }
    return out;
}

} // namespace verstring
