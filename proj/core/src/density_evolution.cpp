#include "lutldpc/density_evolution.hpp"

#include <algorithm>
#include <cmath>

#include "lutldpc/errors.hpp"
#include "lutldpc/quantizer.hpp"

namespace lutldpc {

ConditionalPmf cn_evolve(const ConditionalPmf& in_dist, int d_c) {
    if (d_c < 2) throw validation_error("cn_evolve needs d_c >= 2");
    if (in_dist.size() % 2 != 0 || !check_symmetry(in_dist, 1e-9))
        throw validation_error("cn_evolve requires a symmetric input distribution");
    const int n = in_dist.size();
    const int half = n / 2;

    // Survival quantities conditioned on x = 0, from magnitude level t up:
    //   F[t] = P(|mu| >= t),  G[t] = E[sign(mu) 1(|mu| >= t)].
    // For k i.i.d. inputs, P(min >= t, parity s) = (F^k + s G^k) / 2; the
    // XOR mixture of a symmetric pmf equals the all-zero conditioning.
    std::vector<double> f(half + 1, 0.0), g(half + 1, 0.0);
    for (int t = half - 1; t >= 0; --t) {
        double pos = in_dist.p0[half + t];
        double neg = in_dist.p0[half - 1 - t];
        f[t] = f[t + 1] + pos + neg;
        g[t] = g[t + 1] + pos - neg;
    }
    const int k = d_c - 1;
    std::vector<double> fk = f, gk = g;
    for (int step = 0; step < k - 1; ++step) // (d_c - 2)-fold pairwise combination
        for (int t = 0; t <= half; ++t) {
            fk[t] *= f[t];
            gk[t] *= g[t];
        }

    std::vector<double> out0(n, 0.0);
    for (int t = 0; t < half; ++t) {
        double pos = 0.5 * ((fk[t] + gk[t]) - (fk[t + 1] + gk[t + 1]));
        double neg = 0.5 * ((fk[t] - gk[t]) - (fk[t + 1] - gk[t + 1]));
        out0[half + t] = std::max(0.0, pos);
        out0[half - 1 - t] = std::max(0.0, neg);
    }
    std::vector<double> out1(n);
    for (int i = 0; i < n; ++i) out1[i] = out0[n - 1 - i];
    return ConditionalPmf::make(std::move(out0), std::move(out1));
}

ConditionalPmf cn_pairwise(const ConditionalPmf& a, const ConditionalPmf& b) {
    if (a.size() != b.size() || a.size() % 2 != 0)
        throw validation_error("cn_pairwise requires equal even-sized alphabets");
    const int n = a.size();
    const int half = n / 2;
    auto ms_label = [half](int i, int j) {
        bool neg = (i < half) != (j < half);
        int mi = i < half ? half - 1 - i : i - half;
        int mj = j < half ? half - 1 - j : j - half;
        int mag = std::min(mi, mj);
        return neg ? half - 1 - mag : half + mag;
    };
    std::vector<double> out0(n, 0.0), out1(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int lab = ms_label(i, j);
            // XOR mixture: x = x_a ^ x_b with (x_a, x_b) uniform given x
            out0[lab] += 0.5 * (a.p0[i] * b.p0[j] + a.p1[i] * b.p1[j]);
            out1[lab] += 0.5 * (a.p0[i] * b.p1[j] + a.p1[i] * b.p0[j]);
        }
    return ConditionalPmf::make(std::move(out0), std::move(out1));
}

namespace {

// Shared bottom-up walk for tree design and distribution push. When
// `design` is set, each node table is produced by design_quantizer; otherwise
// existing tables are applied. Intermediate nodes quantize to `mid_size`
// (the uniform message width), the root to `root_size`. Returns the root
// output distribution.
ConditionalPmf tree_walk(const ConditionalPmf& channel_dist, const ConditionalPmf& cn_dist,
                         const TreeShape& shape, LutTree* designed, const LutTree* fixed,
                         int mid_size, int root_size) {
    std::vector<ConditionalPmf> node_out(shape.nodes.size());
    for (std::size_t i = 0; i < shape.nodes.size(); ++i) {
        const auto& node = shape.nodes[i];
        std::vector<ConditionalPmf> children;
        children.reserve(node.children.size());
        for (int c : node.children) {
            if (c == TreeShape::kChannelLeaf)
                children.push_back(channel_dist);
            else if (c < 0)
                children.push_back(cn_dist);
            else
                children.push_back(node_out[c]);
        }
        ConditionalPmf joint = joint_same_bit(children);
        if (designed) {
            bool is_root = i + 1 == shape.nodes.size();
            DesignedQuantizer q = design_quantizer(joint, is_root ? root_size : mid_size);
            std::vector<int> arities;
            for (const auto& ch : children) arities.push_back(ch.size());
            q.table.input_arities = std::move(arities);
            node_out[i] = std::move(q.output);
            designed->nodes.push_back({std::move(q.table), node.children});
        } else {
            const auto& table = fixed->nodes[i].table;
            node_out[i] = push_forward(joint, table.table, table.output_size);
        }
    }
    return node_out.back();
}

} // namespace

ConditionalPmf vn_joint_push(const ConditionalPmf& channel_dist, const ConditionalPmf& cn_dist,
                             const LutTree& tree) {
    TreeShape shape;
    shape.cn_leaves = tree.cn_slots;
    shape.has_channel_leaf = tree.uses_channel;
    for (const auto& n : tree.nodes) shape.nodes.push_back({n.children});
    return tree_walk(channel_dist, cn_dist, shape, nullptr, &tree, 0, 0);
}

LutTree design_vn_tree(const ConditionalPmf& channel_dist, const ConditionalPmf& cn_dist,
                       const TreeShape& shape, int out_size) {
    shape.validate();
    if (!shape.has_channel_leaf)
        throw validation_error("VN tree shape must include the channel leaf");
    LutTree tree;
    tree.cn_slots = shape.cn_leaves;
    tree.uses_channel = true;
    tree_walk(channel_dist, cn_dist, shape, &tree, nullptr, out_size, out_size);
    return tree;
}

LutTree design_decision_tree(const ConditionalPmf& channel_dist,
                             const ConditionalPmf& cn_dist_final, const TreeShape& shape) {
    shape.validate();
    if (!shape.has_channel_leaf)
        throw validation_error("decision tree shape must include the channel leaf");
    LutTree tree;
    tree.cn_slots = shape.cn_leaves;
    tree.uses_channel = true;
    // intermediate nodes keep the uniform message width; only the root is binary
    tree_walk(channel_dist, cn_dist_final, shape, &tree, nullptr, cn_dist_final.size(), 2);
    // Root labels become decoded bits: the negative-LLR group (DP label 0)
    // decodes to 1, so label 1 means decoded bit 1.
    auto& root = tree.nodes.back().table;
    for (auto& v : root.table) v = static_cast<std::uint16_t>(1 - v);
    tree.root_is_decision = true;
    return tree;
}

DesignArtifact run_de(const ConditionalPmf& channel_dist, const CodeProfile& profile,
                      const DesignSchedule& schedule) {
    if (schedule.iterations < 1) throw validation_error("schedule needs at least one iteration");
    if (profile.d_v < 2 || profile.d_c < 2)
        throw validation_error("run_de needs a regular profile with d_v >= 2, d_c >= 2");
    if (schedule.msg_levels < 4 || schedule.msg_levels % 2 != 0)
        throw validation_error("message alphabet size must be even and >= 4");
    if (schedule.iterations > 1 && schedule.vn_shapes.size() != 1 &&
        static_cast<int>(schedule.vn_shapes.size()) != schedule.iterations - 1)
        throw validation_error("schedule needs one VN shape, or one per iteration after the first");

    auto shape_for = [&](int iter) -> const TreeShape& {
        if (schedule.vn_shapes.empty())
            throw validation_error("schedule is missing VN tree shapes");
        if (schedule.vn_shapes.size() == 1) return schedule.vn_shapes[0];
        return schedule.vn_shapes[iter - 2];
    };

    DesignArtifact art;
    art.profile = profile;

    ConditionalPmf chan = symmetrize(channel_dist);

    // iteration 1: the VN stage consumes only the channel leaf
    DesignedQuantizer q0 = design_quantizer(chan, schedule.msg_levels);
    {
        LutTree t;
        t.cn_slots = 0;
        t.uses_channel = true;
        t.nodes.push_back({std::move(q0.table), {TreeShape::kChannelLeaf}});
        art.vn_trees.push_back(std::move(t));
    }
    ConditionalPmf vn_out = std::move(q0.output);
    art.mi_trace.push_back(mutual_information(vn_out));
    art.msg_llrs.push_back(vn_out.alphabet.llr_values);
    if (art.mi_trace.back() <= 0.0)
        throw validation_error("channel below design threshold: zero mutual information");

    ConditionalPmf cn_out;
    for (int iter = 2; iter <= schedule.iterations; ++iter) {
        cn_out = cn_evolve(vn_out, profile.d_c);
        const TreeShape& shape = shape_for(iter);
        if (shape.cn_leaves != profile.d_v - 1)
            throw validation_error("VN tree shape must have d_v - 1 CN leaves");
        LutTree tree = design_vn_tree(chan, cn_out, shape, schedule.msg_levels);
        vn_out = vn_joint_push(chan, cn_out, tree);
        art.vn_trees.push_back(std::move(tree));
        art.mi_trace.push_back(mutual_information(vn_out));
        art.msg_llrs.push_back(vn_out.alphabet.llr_values);
        if (art.mi_trace.back() <= 0.0)
            throw validation_error("channel below design threshold: zero mutual information");
    }

    cn_out = cn_evolve(vn_out, profile.d_c);
    if (schedule.decision_shape.cn_leaves != profile.d_v)
        throw validation_error("decision tree shape must have d_v CN leaves");
    art.decision_tree = design_decision_tree(chan, cn_out, schedule.decision_shape);
    return art;
}

DesignArtifact design_full(const CodeProfile& profile, double snr_db, int q_ch_bits,
                           int q_msg_bits, int iterations,
                           const std::vector<TreeShape>& vn_shapes,
                           const TreeShape& decision_shape, int fine_bins) {
    if (q_msg_bits < 2) throw validation_error("q_msg must be >= 2 bits");
    if (q_ch_bits < 2) throw validation_error("q_ch must be >= 2 bits");

    ChannelQuantizer cq =
        design_channel_quantizer(snr_db, profile.rate(), 1 << q_ch_bits, fine_bins);

    DesignSchedule schedule;
    schedule.iterations = iterations;
    schedule.msg_levels = 1 << q_msg_bits;
    schedule.vn_shapes = vn_shapes.empty()
                             ? std::vector<TreeShape>{TreeShape::default_vn(profile.d_v)}
                             : vn_shapes;
    schedule.decision_shape = decision_shape.nodes.empty()
                                  ? TreeShape::default_decision(profile.d_v)
                                  : decision_shape;

    DesignArtifact art = run_de(cq.quantized_dist, profile, schedule);
    art.design_snr_db = snr_db;
    art.q_ch_bits = q_ch_bits;
    art.q_msg_bits = q_msg_bits;
    art.channel_quantizer = std::move(cq);
    return art;
}

} // namespace lutldpc
