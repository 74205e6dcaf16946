#include "verstring/version_tree.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <string_view>

#include "verstring/utf8.hpp"

namespace verstring {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::parse: return "parse";
        case ErrorCode::invalid_tree: return "invalid_tree";
        case ErrorCode::out_of_range: return "out_of_range";
        case ErrorCode::rank_out_of_range: return "rank_out_of_range";
        case ErrorCode::bad_symbol: return "bad_symbol";
        case ErrorCode::io: return "io";
        case ErrorCode::format: return "format";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

std::vector<std::vector<VersionId>> VersionTree::children() const {
    std::vector<std::vector<VersionId>> kids(node_count());
    for (VersionId v = 1; v < node_count(); ++v) kids[parent_[v]].push_back(v);
    return kids;
}

namespace {

const char* op_name(EditKind k) {
    switch (k) {
        case EditKind::insert: return "insert";
        case EditKind::remove: return "delete";
        case EditKind::replace: return "replace";
    }
    return "?";
}

[[noreturn]] void bad_edge(VersionId v, const EditOp& op, uint64_t parent_len,
                           const char* why) {
    throw_error(ErrorCode::invalid_tree,
                "edge into node " + std::to_string(v) + " (" + op_name(op.kind) + " " +
                    std::to_string(op.pos) + "): " + why + " (parent length " +
                    std::to_string(parent_len) + ")");
}

// BFS order from the root; throws if the parent pointers do not form a tree.
std::vector<VersionId> top_down_order(const VersionTree& tree) {
    auto kids = tree.children();
    std::vector<VersionId> order;
    order.reserve(tree.node_count());
    order.push_back(0);
    for (size_t i = 0; i < order.size(); ++i)
        for (VersionId c : kids[order[i]]) order.push_back(c);
    if (order.size() != tree.node_count())
        throw_error(ErrorCode::invalid_tree,
                    "parent pointers contain a cycle or unreachable nodes");
    return order;
}

} // namespace

void VersionTree::validate() const { lengths(); }

std::vector<uint64_t> VersionTree::lengths() const {
    for (VersionId v = 1; v < node_count(); ++v)
        if (parent_[v] >= node_count())
            throw_error(ErrorCode::invalid_tree,
                        "node " + std::to_string(v) + " has out-of-range parent " +
                            std::to_string(parent_[v]));
    std::vector<uint64_t> len(node_count(), 0);
    for (VersionId v : top_down_order(*this)) {
        if (v == 0) continue;
        uint64_t plen = len[parent_[v]];
        const EditOp& op = edge_[v];
        switch (op.kind) {
            case EditKind::insert:
                if (op.pos > plen) bad_edge(v, op, plen, "insert position out of range");
                len[v] = plen + 1;
                break;
            case EditKind::remove:
                if (op.pos < 1 || op.pos > plen)
                    bad_edge(v, op, plen, "delete position out of range");
                len[v] = plen - 1;
                break;
            case EditKind::replace:
                if (op.pos < 1 || op.pos > plen)
                    bad_edge(v, op, plen, "replace position out of range");
                len[v] = plen;
                break;
        }
    }
    return len;
}

bool VersionTree::has_replace_edges() const {
    for (VersionId v = 1; v < node_count(); ++v)
        if (edge_[v].kind == EditKind::replace) return true;
    return false;
}

NormalizedTree normalize_replaces(const VersionTree& tree) {
    tree.validate();
    uint32_t n = tree.node_count();
    std::vector<VersionId> remap(n);
    if (!tree.has_replace_edges()) {
        for (VersionId v = 0; v < n; ++v) remap[v] = v;
        return {tree, std::move(remap)};
    }
    // Assign new ids in one pass: a replace target gets an extra slot for the
    // intermediate node directly before it.
    uint32_t next = 0;
    std::vector<VersionId> mid(n, 0);
    for (VersionId v = 0; v < n; ++v) {
        if (v != 0 && tree.edge(v).kind == EditKind::replace) mid[v] = next++;
        remap[v] = next++;
    }
    std::vector<VersionId> parent(next, 0);
    std::vector<EditOp> edge(next);
    for (VersionId v = 1; v < n; ++v) {
        const EditOp& op = tree.edge(v);
        VersionId p = remap[tree.parent(v)];
        if (op.kind == EditKind::replace) {
            parent[mid[v]] = p;
            edge[mid[v]] = EditOp::del(op.pos);
            parent[remap[v]] = mid[v];
            edge[remap[v]] = EditOp::ins(op.pos - 1, op.ch);
        } else {
            parent[remap[v]] = p;
            edge[remap[v]] = op;
        }
    }
    return {VersionTree(std::move(parent), std::move(edge)), std::move(remap)};
}

std::u32string materialize_naive(const VersionTree& tree, VersionId v) {
    tree.check_id(v);
    std::vector<VersionId> path;
    for (VersionId u = v; u != 0; u = tree.parent(u)) path.push_back(u);
    std::u32string s;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const EditOp& op = tree.edge(*it);
        switch (op.kind) {
            case EditKind::insert: s.insert(s.begin() + op.pos, op.ch); break;
            case EditKind::remove: s.erase(s.begin() + (op.pos - 1)); break;
            case EditKind::replace: s[op.pos - 1] = op.ch; break;
        }
    }
    return s;
}

namespace {

[[noreturn]] void parse_fail(size_t line_no, const std::string& why) {
    throw_error(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + why);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

uint64_t parse_uint(std::string_view tok, size_t line_no, const char* what) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        parse_fail(line_no, std::string("expected unsigned integer for ") + what +
                                ", got '" + std::string(tok) + "'");
    return v;
}

// A character token is either a decimal code point or a single quoted
// character, e.g. 'a'.
char32_t parse_char_token(std::string_view tok, size_t line_no) {
    if (tok.size() >= 3 && tok.front() == '\'' && tok.back() == '\'') {
        auto [cp, used] = decode_utf8(tok.substr(1, tok.size() - 2));
        if (used != tok.size() - 2)
            parse_fail(line_no, "quoted character token '" + std::string(tok) +
                                    "' is not a single character");
        return cp;
    }
    return static_cast<char32_t>(parse_uint(tok, line_no, "character code point"));
}

} // namespace

VersionTree parse_version_tree(std::istream& in) {
    std::string line;
    size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (split_fields(line).empty()) continue; // skip blank lines
            return true;
        }
        return false;
    };

    if (!next_line()) throw_error(ErrorCode::parse, "empty input: missing node count");
    auto head = split_fields(line);
    if (head.size() != 1) parse_fail(line_no, "expected a lone node count");
    uint64_t n = parse_uint(head[0], line_no, "node count");
    if (n == 0) n = 1; // degenerate header: the tree of just the empty root

    std::vector<VersionId> parent(n, 0);
    std::vector<EditOp> edge(n);
    for (uint64_t id = 1; id < n; ++id) {
        if (!next_line()) parse_fail(line_no + 1, "unexpected end of input; expected node " +
                                                      std::to_string(id));
        auto f = split_fields(line);
        if (f.size() < 3) parse_fail(line_no, "expected `<id> <parent> <op> ...`");
        uint64_t got_id = parse_uint(f[0], line_no, "node id");
        if (got_id != id)
            parse_fail(line_no, "node ids must be dense and in order; expected " +
                                    std::to_string(id) + ", got " + std::to_string(got_id));
        uint64_t p = parse_uint(f[1], line_no, "parent id");
        if (p >= n) parse_fail(line_no, "parent id " + std::to_string(p) + " out of range");
        parent[id] = static_cast<VersionId>(p);
        std::string_view op = f[2];
        if (op == "insert") {
            if (f.size() != 5) parse_fail(line_no, "insert takes a position and a character");
            edge[id] = EditOp::ins(
                static_cast<uint32_t>(parse_uint(f[3], line_no, "insert position")),
                parse_char_token(f[4], line_no));
        } else if (op == "delete") {
            if (f.size() != 4) parse_fail(line_no, "delete takes a position");
            edge[id] = EditOp::del(
                static_cast<uint32_t>(parse_uint(f[3], line_no, "delete position")));
        } else if (op == "replace") {
            if (f.size() != 5) parse_fail(line_no, "replace takes a position and a character");
            edge[id] = EditOp::rep(
                static_cast<uint32_t>(parse_uint(f[3], line_no, "replace position")),
                parse_char_token(f[4], line_no));
        } else {
            parse_fail(line_no, "unknown op '" + std::string(op) + "'");
        }
    }
    VersionTree tree(std::move(parent), std::move(edge));
    tree.validate();
    return tree;
}

VersionTree parse_version_tree(const std::string& text) {
    std::istringstream in(text);
    return parse_version_tree(in);
}

std::string serialize_version_tree(const VersionTree& tree) {
    std::string out = std::to_string(tree.node_count());
    out.push_back('\n');
    auto put_char = [&](char32_t cp) {
        if (cp > 32 && cp < 127) {
            out.push_back('\'');
            out.push_back(static_cast<char>(cp));
            out.push_back('\'');
        } else {
            out += std::to_string(static_cast<uint32_t>(cp));
        }
    };
    for (VersionId v = 1; v < tree.node_count(); ++v) {
        const EditOp& op = tree.edge(v);
        out += std::to_string(v);
        out.push_back(' ');
        out += std::to_string(tree.parent(v));
        out.push_back(' ');
        out += op_name(op.kind);
        out.push_back(' ');
        out += std::to_string(op.pos);
        if (op.kind != EditKind::remove) {
            out.push_back(' ');
            put_char(op.ch);
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace verstring
