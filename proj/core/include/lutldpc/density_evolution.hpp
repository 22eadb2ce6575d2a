#pragma once

#include "lutldpc/artifact.hpp"
#include "lutldpc/channel.hpp"
#include "lutldpc/ldpc.hpp"
#include "lutldpc/lut.hpp"
#include "lutldpc/prob.hpp"

namespace lutldpc {

/// Distribution of one outgoing min-sum CN message over d_c - 1 i.i.d.
/// inputs whose bit values XOR to the conditioning bit. Requires a symmetric
/// input (sign-from-label); computed as a (d_c-2)-fold associative pairwise
/// combination over the (sign parity, magnitude survival) decomposition,
/// which factorizes and costs O(|M|) per pairwise step. Output labels live
/// on the input alphabet; LLRs are recomputed.
ConditionalPmf cn_evolve(const ConditionalPmf& in_dist, int d_c);

/// Generic two-input min-sum combination under the XOR mixture, O(|M|^2).
/// Same operator as one pairwise step of cn_evolve; kept as an independent
/// route for cross-checks and for asymmetric inputs.
ConditionalPmf cn_pairwise(const ConditionalPmf& a, const ConditionalPmf& b);

/// Pushes the product distribution of the tree's leaves (all conditioned on
/// the same bit) through a designed tree stage by stage; returns the root
/// output distribution, i.e. the VN-output message distribution of the next
/// iteration.
ConditionalPmf vn_joint_push(const ConditionalPmf& channel_dist, const ConditionalPmf& cn_dist,
                             const LutTree& tree);

/// Designs a VN LUT tree bottom-up: each internal node's input joint is
/// restricted to its children and quantized to out_size levels.
LutTree design_vn_tree(const ConditionalPmf& channel_dist, const ConditionalPmf& cn_dist,
                       const TreeShape& shape, int out_size);

/// Same construction with a binary root; root entries are decoded bits
/// (label 1 = decoded bit 1, the negative-LLR side).
LutTree design_decision_tree(const ConditionalPmf& channel_dist,
                             const ConditionalPmf& cn_dist_final, const TreeShape& shape);

struct DesignSchedule {
    int iterations = 5;
    int msg_levels = 8;                  // |M|
    std::vector<TreeShape> vn_shapes;    // one per iteration >= 2; one entry = reuse
    TreeShape decision_shape;
};

/// Alternates cn_evolve and tree design/push for i = 1..I, then designs the
/// decision tree. Iteration 1 consumes only the channel leaf through an
/// MI-optimal |L| -> |M| table. Deterministic given inputs. The returned
/// artifact carries the trees and diagnostics; the caller fills in the
/// channel quantizer and operating point.
DesignArtifact run_de(const ConditionalPmf& channel_dist, const CodeProfile& profile,
                      const DesignSchedule& schedule);

/// Convenience wrapper for the full offline flow: channel quantizer design at
/// the operating point followed by run_de, producing a complete artifact.
DesignArtifact design_full(const CodeProfile& profile, double snr_db, int q_ch_bits,
                           int q_msg_bits, int iterations,
                           const std::vector<TreeShape>& vn_shapes,
                           const TreeShape& decision_shape, int fine_bins = 2000);

} // namespace lutldpc
