#pragma once

#include "lutldpc/lut.hpp"
#include "lutldpc/prob.hpp"

namespace lutldpc {

/// Result of one MI-maximizing quantizer design: the deterministic map over
/// the flattened input atoms and the pushed-forward output distribution.
struct DesignedQuantizer {
    LutTable table;        // input_arities = {n}; callers reshape as needed
    ConditionalPmf output;
    bool reduced = false;  // fewer usable atoms than requested output levels
};

/// Designs the deterministic map Q maximizing I(Q(input); x) over all
/// deterministic maps to out_size labels.
///
/// The input is symmetrized first. Atoms are sorted by LLR (ties by original
/// label), the optimum is restricted to contiguous partitions of that order
/// (optimal for binary-input MI quantization), and a dynamic program places
/// the boundaries; cost O(n^2 * out_size) for n input atoms. For even
/// out_size the partition is constrained to be sign-symmetric (a mirrored
/// boundary set with a cut at LLR 0), which keeps every emitted table exactly
/// mirror symmetric; for symmetric inputs this loses no mutual information.
///
/// Void atoms (total mass below kVoidMass) are merged into the nearest
/// non-void atom toward LLR 0. If fewer non-void atoms than output levels
/// exist, the effective level count is reduced and `reduced` is set; the
/// table stays total and unused levels are flagged in void_levels.
DesignedQuantizer design_quantizer(const ConditionalPmf& joint, int out_size);

/// MI of the uniform-width LLR quantizer with the same number of levels,
/// used as a dominance baseline for designed tables.
double uniform_baseline_mi(const ConditionalPmf& joint, int out_size);

/// Partial MI contribution of a fused symbol with conditional masses
/// (q0, q1): sum over x of (1/2) q_x log2(q_x / ((q0+q1)/2)).
double partial_mi(double q0, double q1);

} // namespace lutldpc
