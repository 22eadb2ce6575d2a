#include "lutldpc/lut.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lutldpc/errors.hpp"

namespace lutldpc {

std::size_t LutTable::index_of(std::span<const std::uint16_t> digits) const {
    if (digits.size() != input_arities.size())
        throw validation_error("lut lookup arity mismatch");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < digits.size(); ++j) {
        if (digits[j] >= input_arities[j])
            throw validation_error("lut input label out of range");
        idx = idx * static_cast<std::size_t>(input_arities[j]) + digits[j];
    }
    return idx;
}

void LutTable::validate() const {
    if (output_size < 2) throw validation_error("lut output size must be >= 2");
    if (table.size() != flat_size()) throw validation_error("lut table length mismatch");
    for (auto v : table)
        if (v >= output_size) throw validation_error("lut entry out of range");
    if (!is_mirror_symmetric(*this))
        throw validation_error("lut table violates mirror symmetry");
}

bool is_mirror_symmetric(const LutTable& t) {
    std::size_t n = t.table.size();
    for (std::size_t idx = 0; idx < n; ++idx)
        if (t.table[n - 1 - idx] != t.output_size - 1 - t.table[idx]) return false;
    return true;
}

bool is_contiguous(const LutTable& t, const ConditionalPmf& joint, bool ascending) {
    if (static_cast<int>(t.table.size()) != joint.size()) return false;
    std::vector<int> order;
    order.reserve(joint.size());
    for (int k = 0; k < joint.size(); ++k)
        if (!joint.is_void(k)) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return joint.alphabet.llr_values[a] < joint.alphabet.llr_values[b];
    });
    for (std::size_t s = 0; s + 1 < order.size(); ++s) {
        int a = t.table[order[s]];
        int b = t.table[order[s + 1]];
        if (ascending ? (b < a) : (b > a)) return false;
    }
    return true;
}

std::string lut_table_to_text(const LutTable& t) {
    std::ostringstream os;
    os << "# lut arities";
    for (int a : t.input_arities) os << ' ' << a;
    os << " out " << t.output_size << "\n";
    for (auto v : t.table) os << v << "\n";
    return os.str();
}

LutTable lut_table_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long line_no = 0;
    LutTable t;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream h(line);
            std::string hash, word;
            h >> hash >> word;
            if (word != "lut") throw parse_error("not a lut dump", line_no);
            h >> word;
            if (word != "arities") throw parse_error("missing arities", line_no);
            std::vector<std::string> toks;
            while (h >> word) toks.push_back(word);
            if (toks.size() < 3 || toks[toks.size() - 2] != "out")
                throw parse_error("malformed lut header", line_no);
            for (std::size_t i = 0; i + 2 < toks.size(); ++i)
                t.input_arities.push_back(std::stoi(toks[i]));
            t.output_size = std::stoi(toks.back());
            header_seen = true;
            continue;
        }
        if (!header_seen) throw parse_error("lut entries before header", line_no);
        t.table.push_back(static_cast<std::uint16_t>(std::stoi(line)));
    }
    if (t.table.size() != t.flat_size())
        throw parse_error("lut entry count differs from arities", line_no);
    return t;
}

// --- TreeShape -------------------------------------------------------------

namespace {

struct ShapeParser {
    const std::string& text;
    std::size_t pos = 0;
    TreeShape shape;

    explicit ShapeParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw validation_error("tree shape: " + what + " at offset " + std::to_string(pos) +
                               " in \"" + text + "\"");
    }

    // returns a child encoding (node index or leaf code)
    int parse_node() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end");
        char c = text[pos];
        if (c == 'c') {
            ++pos;
            return TreeShape::cn_child(shape.cn_leaves++);
        }
        if (c == 'L') {
            ++pos;
            if (shape.has_channel_leaf) fail("duplicate channel leaf");
            shape.has_channel_leaf = true;
            return TreeShape::kChannelLeaf;
        }
        if (c != '(') fail("expected 'c', 'L' or '('");
        ++pos;
        TreeShape::Node node;
        while (true) {
            skip_ws();
            if (pos >= text.size()) fail("missing ')'");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            node.children.push_back(parse_node());
        }
        if (node.children.size() < 2 || node.children.size() > 3)
            fail("nodes take two or three inputs");
        shape.nodes.push_back(std::move(node));
        return static_cast<int>(shape.nodes.size()) - 1;
    }
};

void append_child_str(const TreeShape& s, int child, std::string& out);

void append_node_str(const TreeShape& s, const TreeShape::Node& n, std::string& out) {
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ' ';
        append_child_str(s, n.children[i], out);
    }
    out += ')';
}

void append_child_str(const TreeShape& s, int child, std::string& out) {
    if (child == TreeShape::kChannelLeaf)
        out += 'L';
    else if (child < 0)
        out += 'c';
    else
        append_node_str(s, s.nodes[child], out);
}

} // namespace

TreeShape TreeShape::parse(const std::string& text) {
    ShapeParser p(text);
    int root = p.parse_node();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    if (root < 0) p.fail("shape must have at least one table node");
    p.shape.validate();
    return std::move(p.shape);
}

std::string TreeShape::str() const {
    std::string out;
    append_node_str(*this, nodes.back(), out);
    return out;
}

void TreeShape::validate() const {
    if (nodes.empty()) throw validation_error("tree shape has no nodes");
    std::vector<int> uses(nodes.size(), 0);
    std::vector<int> cn_seen(cn_leaves, 0);
    int channel_seen = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.children.size() < 2 || n.children.size() > 3)
            throw validation_error("tree nodes take two or three inputs");
        for (int c : n.children) {
            if (c == kChannelLeaf)
                ++channel_seen;
            else if (c < 0)
                ++cn_seen[cn_slot_of(c)];
            else if (c >= static_cast<int>(i))
                throw validation_error("tree shape not in topological order");
            else
                ++uses[c];
        }
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (uses[i] != 1) throw validation_error("internal tree node must feed exactly one parent");
    for (int s = 0; s < cn_leaves; ++s)
        if (cn_seen[s] != 1) throw validation_error("every CN leaf must be used exactly once");
    if (has_channel_leaf != (channel_seen == 1))
        throw validation_error("channel leaf bookkeeping broken");
}

TreeShape TreeShape::default_vn(int d_v) {
    if (d_v < 2) throw validation_error("default VN shape needs d_v >= 2");
    TreeShape s;
    int cn = d_v - 1;
    std::vector<int> frontier;
    for (int i = 0; i < cn; ++i) frontier.push_back(cn_child(s.cn_leaves++));
    // pair up CN-derived inputs until one remains
    while (frontier.size() > 1) {
        std::vector<int> next;
        std::size_t i = 0;
        for (; i + 1 < frontier.size(); i += 2) {
            s.nodes.push_back({{frontier[i], frontier[i + 1]}});
            next.push_back(static_cast<int>(s.nodes.size()) - 1);
        }
        if (i < frontier.size()) next.push_back(frontier[i]);
        frontier = std::move(next);
    }
    s.has_channel_leaf = true;
    s.nodes.push_back({{frontier[0], kChannelLeaf}});
    s.validate();
    return s;
}

TreeShape TreeShape::default_decision(int d_v) {
    if (d_v < 2) throw validation_error("default decision shape needs d_v >= 2");
    TreeShape s;
    std::vector<int> groups;
    int remaining = d_v;
    while (remaining > 0) {
        int take = std::min(3, remaining);
        if (take == 1) {
            // a singleton CN leaf feeds the root directly
            groups.push_back(cn_child(s.cn_leaves++));
            remaining = 0;
            break;
        }
        TreeShape::Node n;
        for (int i = 0; i < take; ++i) n.children.push_back(cn_child(s.cn_leaves++));
        s.nodes.push_back(std::move(n));
        groups.push_back(static_cast<int>(s.nodes.size()) - 1);
        remaining -= take;
    }
    s.has_channel_leaf = true;
    TreeShape::Node root;
    for (int g : groups) root.children.push_back(g);
    root.children.push_back(kChannelLeaf);
    while (root.children.size() > 3) {
        // merge the first two inputs to respect the three-input limit
        TreeShape::Node merge{{root.children[0], root.children[1]}};
        s.nodes.push_back(std::move(merge));
        root.children.erase(root.children.begin(), root.children.begin() + 2);
        root.children.insert(root.children.begin(), static_cast<int>(s.nodes.size()) - 1);
    }
    s.nodes.push_back(std::move(root));
    s.validate();
    return s;
}

// --- LutTree ---------------------------------------------------------------

std::uint16_t LutTree::eval(std::uint16_t channel_label,
                            std::span<const std::uint16_t> cn_labels) const {
    std::uint16_t values[32];
    std::uint16_t digits[3];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        for (std::size_t j = 0; j < n.children.size(); ++j) {
            int c = n.children[j];
            if (c == TreeShape::kChannelLeaf)
                digits[j] = channel_label;
            else if (c < 0)
                digits[j] = cn_labels[TreeShape::cn_slot_of(c)];
            else
                digits[j] = values[c];
        }
        values[i] = n.table.lookup({digits, n.children.size()});
    }
    return values[nodes.size() - 1];
}

void LutTree::validate() const {
    if (nodes.empty()) throw validation_error("lut tree has no nodes");
    if (nodes.size() > 32) throw validation_error("lut tree too deep");
    for (const auto& n : nodes) {
        n.table.validate();
        if (n.table.input_arities.size() != n.children.size())
            throw validation_error("lut tree node arity mismatch");
    }
}

// --- sharing ---------------------------------------------------------------

namespace {

std::string node_key(const LutTree& tree, int node, const std::vector<int>& cn_edges,
                     std::vector<std::string>& memo) {
    if (!memo[node].empty()) return memo[node];
    const auto& n = tree.nodes[node];
    std::ostringstream os;
    os << "t:" << n.table.output_size << ':';
    for (auto v : n.table.table) os << v << ',';
    os << "|";
    for (int c : n.children) {
        if (c == TreeShape::kChannelLeaf)
            os << "L;";
        else if (c < 0)
            os << "c" << cn_edges[TreeShape::cn_slot_of(c)] << ";";
        else
            os << "[" << node_key(tree, c, cn_edges, memo) << "];";
    }
    memo[node] = os.str();
    return memo[node];
}

} // namespace

SharedTreeSet share_tables(std::span<const LutTree> trees,
                           std::span<const std::vector<int>> cn_edge_ids) {
    if (trees.size() != cn_edge_ids.size())
        throw validation_error("share_tables: one edge map per tree required");
    SharedTreeSet out;
    std::map<std::string, int> pool;
    for (std::size_t t = 0; t < trees.size(); ++t) {
        std::vector<std::string> memo(trees[t].nodes.size());
        for (std::size_t i = 0; i < trees[t].nodes.size(); ++i) {
            ++out.instance_count;
            auto key = node_key(trees[t], static_cast<int>(i), cn_edge_ids[t], memo);
            auto [it, inserted] = pool.emplace(key, static_cast<int>(pool.size()));
            if (i + 1 == trees[t].nodes.size()) out.tree_roots.push_back(it->second);
        }
    }
    out.unique_count = pool.size();
    return out;
}

std::vector<std::vector<int>> leave_one_out_edges(int d_v) {
    std::vector<std::vector<int>> out(d_v);
    for (int j = 0; j < d_v; ++j)
        for (int e = 0; e < d_v; ++e)
            if (e != j) out[j].push_back(e);
    return out;
}

} // namespace lutldpc
