#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lutldpc/prob.hpp"

namespace lutldpc {

/// A designed deterministic mapping from a tuple of input labels to an output
/// label, stored flat in mixed-radix order (first input most significant).
struct LutTable {
    std::vector<int> input_arities;
    int output_size = 0;
    std::vector<std::uint16_t> table;

    // design diagnostics
    double achieved_mi = 0.0;          // MI of the quantizer output, bits
    double input_mi = 0.0;             // MI of the joint it was designed from
    double uniform_baseline_mi = 0.0;  // uniform-width LLR quantizer, same size
    std::vector<std::uint8_t> void_levels; // output levels with no probability mass

    std::size_t flat_size() const {
        std::size_t n = 1;
        for (int a : input_arities) n *= static_cast<std::size_t>(a);
        return n;
    }

    std::size_t index_of(std::span<const std::uint16_t> digits) const;
    std::uint16_t lookup(std::span<const std::uint16_t> digits) const {
        return table[index_of(digits)];
    }

    /// Structural checks: size, range, mirror symmetry
    /// table[total-1-idx] == output_size-1-table[idx].
    void validate() const;
};

/// True iff mapping every input to its mirrored flat index yields the
/// mirrored output label. Exact integer check.
bool is_mirror_symmetric(const LutTable& t);

/// True iff along the LLR-sorted order of the non-void atoms of `joint` the
/// output labels are monotone (non-decreasing when ascending, non-increasing
/// otherwise) -- the contiguity property of an optimal quantizer.
bool is_contiguous(const LutTable& t, const ConditionalPmf& joint, bool ascending = true);

/// Text dump: header with arities and output size, then the mixed-radix
/// ordered output labels, one integer per line.
std::string lut_table_to_text(const LutTable& t);
LutTable lut_table_from_text(const std::string& text);

/// Tree topology over leaves, without table contents. Leaves are CN-message
/// slots ('c') and at most one channel slot ('L'). Internal nodes take two or
/// three inputs.
///
/// Textual grammar (whitespace separated):
///   shape := node
///   node  := 'c' | 'L' | '(' node node [node] ')'
/// Example for a degree-6 variable node, pairing CN messages first and
/// merging the channel value at the root:  ((((c c) (c c)) c) L)
struct TreeShape {
    // child >= 0: index of an earlier node; child == kChannelLeaf: channel
    // slot; child <= kCnLeafBase: CN slot -(child - kCnLeafBase).
    static constexpr int kChannelLeaf = -1;
    static constexpr int kCnLeafBase = -2;

    struct Node {
        std::vector<int> children;
    };

    std::vector<Node> nodes; // topological order, root last
    int cn_leaves = 0;
    bool has_channel_leaf = false;

    static int cn_slot_of(int child) { return kCnLeafBase - child; }
    static int cn_child(int slot) { return kCnLeafBase - slot; }

    static TreeShape parse(const std::string& text);
    std::string str() const;

    /// Pair CN leaves two at a time, then merge pairs, then the channel at
    /// the root. For d_v = 6 this reproduces the ((((c c)(c c)) c) L) shape.
    static TreeShape default_vn(int d_v);
    /// Group the d_v CN leaves in threes, then merge group outputs and the
    /// channel at the root: ((c c c) (c c c) L) for d_v = 6.
    static TreeShape default_decision(int d_v);

    void validate() const;
};

/// A designed LUT hierarchy: the shape plus one table per internal node.
/// Evaluation composes table lookups only; there is no arithmetic on labels.
struct LutTree {
    struct Node {
        LutTable table;
        std::vector<int> children; // same encoding as TreeShape
    };

    std::vector<Node> nodes; // topological order, root last
    int cn_slots = 0;
    bool uses_channel = false;
    bool root_is_decision = false; // root emits decoded bits (label 1 = bit 1)

    const LutTable& root_table() const { return nodes.back().table; }
    int output_size() const { return nodes.back().table.output_size; }

    std::uint16_t eval(std::uint16_t channel_label,
                       std::span<const std::uint16_t> cn_labels) const;

    void validate() const;
};

/// Deduplicated pool of structurally identical nodes across several tree
/// instances. Two nodes are shared when their tables match and their children
/// resolve to the same shared nodes or the same concrete leaves.
struct SharedTreeSet {
    std::size_t unique_count = 0;
    std::size_t instance_count = 0;
    std::vector<int> tree_roots; // shared-pool id of each tree's root
};

/// `cn_edge_ids[t][s]` gives the concrete CN input feeding slot s of tree t;
/// the channel leaf is common to all trees.
SharedTreeSet share_tables(std::span<const LutTree> trees,
                           std::span<const std::vector<int>> cn_edge_ids);

/// CN slot assignments for the d_v leave-one-out instances of one designed
/// tree: instance j consumes edges {0..d_v-1} \ {j} in ascending order.
std::vector<std::vector<int>> leave_one_out_edges(int d_v);

} // namespace lutldpc
