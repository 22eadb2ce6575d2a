#include "lutldpc/artifact.hpp"

#include <fstream>

#include <json.hpp>

#include "lutldpc/errors.hpp"

namespace lutldpc {

using nlohmann::json;

void DesignArtifact::validate() const {
    if (vn_trees.empty()) throw validation_error("artifact has no VN trees");
    if (q_ch_bits < 2 || q_msg_bits < 2) throw validation_error("artifact bit-widths invalid");
    if (channel_quantizer.levels() != chan_levels())
        throw validation_error("channel quantizer level count mismatch");
    for (const auto& t : vn_trees) {
        t.validate();
        if (t.output_size() != msg_levels())
            throw validation_error("VN tree output size differs from |M|");
    }
    for (std::size_t i = 1; i < vn_trees.size(); ++i)
        if (vn_trees[i].cn_slots != profile.d_v - 1)
            throw validation_error("VN tree CN slot count differs from d_v - 1");
    decision_tree.validate();
    if (decision_tree.output_size() != 2 || decision_tree.cn_slots != profile.d_v)
        throw validation_error("decision tree shape mismatch");
    if (mi_trace.size() != vn_trees.size())
        throw validation_error("mi_trace length differs from iteration count");
}

namespace {

json table_to_json(const LutTable& t) {
    return json{{"input_arities", t.input_arities},
                {"output_size", t.output_size},
                {"entries", t.table},
                {"achieved_mi", t.achieved_mi},
                {"input_mi", t.input_mi},
                {"uniform_baseline_mi", t.uniform_baseline_mi},
                {"void_levels", t.void_levels}};
}

LutTable table_from_json(const json& j) {
    LutTable t;
    t.input_arities = j.at("input_arities").get<std::vector<int>>();
    t.output_size = j.at("output_size").get<int>();
    t.table = j.at("entries").get<std::vector<std::uint16_t>>();
    t.achieved_mi = j.at("achieved_mi").get<double>();
    t.input_mi = j.at("input_mi").get<double>();
    t.uniform_baseline_mi = j.at("uniform_baseline_mi").get<double>();
    t.void_levels = j.at("void_levels").get<std::vector<std::uint8_t>>();
    return t;
}

json tree_to_json(const LutTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes)
        nodes.push_back(json{{"table", table_to_json(n.table)}, {"children", n.children}});
    return json{{"nodes", nodes},
                {"cn_slots", t.cn_slots},
                {"uses_channel", t.uses_channel},
                {"root_is_decision", t.root_is_decision}};
}

LutTree tree_from_json(const json& j) {
    LutTree t;
    for (const auto& n : j.at("nodes")) {
        LutTree::Node node;
        node.table = table_from_json(n.at("table"));
        node.children = n.at("children").get<std::vector<int>>();
        t.nodes.push_back(std::move(node));
    }
    t.cn_slots = j.at("cn_slots").get<int>();
    t.uses_channel = j.at("uses_channel").get<bool>();
    t.root_is_decision = j.at("root_is_decision").get<bool>();
    return t;
}

json pmf_to_json(const ConditionalPmf& d) {
    return json{{"llr", d.alphabet.llr_values}, {"p0", d.p0}, {"p1", d.p1}};
}

ConditionalPmf pmf_from_json(const json& j) {
    ConditionalPmf d;
    d.p0 = j.at("p0").get<std::vector<double>>();
    d.p1 = j.at("p1").get<std::vector<double>>();
    d.alphabet.size = d.size();
    d.alphabet.llr_values = j.at("llr").get<std::vector<double>>();
    return d;
}

} // namespace

std::string artifact_to_json(const DesignArtifact& a) {
    json j;
    j["format"] = "lutldpc-design-artifact";
    j["version"] = DesignArtifact::kFormatVersion;
    j["profile"] = {{"d_v", a.profile.d_v},
                    {"d_c", a.profile.d_c},
                    {"rate_num", a.profile.rate_num},
                    {"rate_den", a.profile.rate_den}};
    j["design_snr_db"] = a.design_snr_db;
    j["q_ch_bits"] = a.q_ch_bits;
    j["q_msg_bits"] = a.q_msg_bits;
    j["channel_quantizer"] = {{"thresholds", a.channel_quantizer.thresholds},
                              {"quantized_dist", pmf_to_json(a.channel_quantizer.quantized_dist)},
                              {"fine_mi", a.channel_quantizer.fine_mi}};
    json trees = json::array();
    for (const auto& t : a.vn_trees) trees.push_back(tree_to_json(t));
    j["vn_trees"] = std::move(trees);
    j["decision_tree"] = tree_to_json(a.decision_tree);
    j["mi_trace"] = a.mi_trace;
    j["msg_llrs"] = a.msg_llrs;
    return j.dump(2) + "\n";
}

DesignArtifact artifact_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("artifact is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "lutldpc-design-artifact")
            throw validation_error("not a design artifact file");
        if (j.at("version").get<int>() != DesignArtifact::kFormatVersion)
            throw validation_error("unsupported artifact version");
        DesignArtifact a;
        const auto& p = j.at("profile");
        a.profile.d_v = p.at("d_v").get<int>();
        a.profile.d_c = p.at("d_c").get<int>();
        a.profile.rate_num = p.at("rate_num").get<long>();
        a.profile.rate_den = p.at("rate_den").get<long>();
        a.design_snr_db = j.at("design_snr_db").get<double>();
        a.q_ch_bits = j.at("q_ch_bits").get<int>();
        a.q_msg_bits = j.at("q_msg_bits").get<int>();
        const auto& cq = j.at("channel_quantizer");
        a.channel_quantizer.thresholds = cq.at("thresholds").get<std::vector<double>>();
        a.channel_quantizer.quantized_dist = pmf_from_json(cq.at("quantized_dist"));
        a.channel_quantizer.fine_mi = cq.at("fine_mi").get<double>();
        for (const auto& t : j.at("vn_trees")) a.vn_trees.push_back(tree_from_json(t));
        a.decision_tree = tree_from_json(j.at("decision_tree"));
        a.mi_trace = j.at("mi_trace").get<std::vector<double>>();
        a.msg_llrs = j.at("msg_llrs").get<std::vector<std::vector<double>>>();
        a.validate();
        return a;
    } catch (const json::exception& e) {
        throw validation_error(std::string("malformed design artifact: ") + e.what());
    }
}

void save_artifact(const DesignArtifact& a, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw validation_error("cannot open for writing: " + path);
    os << artifact_to_json(a);
    if (!os) throw validation_error("write failed: " + path);
}

DesignArtifact load_artifact(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw validation_error("cannot open artifact: " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return artifact_from_json(text);
}

} // namespace lutldpc
