#pragma once

#include <string>
#include <vector>

#include "lutldpc/channel.hpp"
#include "lutldpc/ldpc.hpp"
#include "lutldpc/lut.hpp"

namespace lutldpc {

/// Complete output of the offline design flow: channel quantizer, one VN LUT
/// tree per iteration (iteration 1 is the channel-only table), the decision
/// tree, and density-evolution diagnostics. Serialized as a versioned JSON
/// container; round-trip stable.
struct DesignArtifact {
    static constexpr int kFormatVersion = 1;

    CodeProfile profile;
    double design_snr_db = 0.0;
    int q_ch_bits = 0;  // |L| = 2^q_ch_bits
    int q_msg_bits = 0; // |M| = 2^q_msg_bits

    ChannelQuantizer channel_quantizer;
    std::vector<LutTree> vn_trees; // size = iterations; [0] consumes the channel only
    LutTree decision_tree;

    std::vector<double> mi_trace;             // MI after each VN stage, bits
    std::vector<std::vector<double>> msg_llrs; // per-iteration VN-output LLR labels

    int iterations() const { return static_cast<int>(vn_trees.size()); }
    int msg_levels() const { return 1 << q_msg_bits; }
    int chan_levels() const { return 1 << q_ch_bits; }

    void validate() const;
};

std::string artifact_to_json(const DesignArtifact& a);
DesignArtifact artifact_from_json(const std::string& text);

void save_artifact(const DesignArtifact& a, const std::string& path);
DesignArtifact load_artifact(const std::string& path);

} // namespace lutldpc
