#include "lutldpc/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "lutldpc/errors.hpp"

namespace lutldpc {

void DecoderConfig::validate() const {
    if (iterations < 1) throw validation_error("decoder needs at least one iteration");
    switch (variant) {
    case DecoderVariant::float_ms:
        break;
    case DecoderVariant::fixed_ms:
        if (fixed.q_msg < 2) throw validation_error("q_msg must be >= 2");
        if (fixed.q_ch < 2) throw validation_error("q_ch must be >= 2");
        if (!(fixed.scale > 0.0)) throw validation_error("fixed_scale must be positive");
        break;
    case DecoderVariant::lut:
        if (!artifact) throw validation_error("lut decoder needs a design artifact");
        artifact->validate();
        if (artifact->iterations() != iterations)
            throw validation_error("artifact was designed for a different iteration count");
        break;
    }
}

void cn_update_minsum(std::span<const double> in, std::span<double> out) {
    const std::size_t dc = in.size();
    if (dc < 2 || out.size() != dc) throw validation_error("cn_update_minsum degree mismatch");
    double m1 = std::numeric_limits<double>::infinity(), m2 = m1;
    std::size_t i1 = 0;
    bool parity = false; // true = negative sign product
    for (std::size_t j = 0; j < dc; ++j) {
        double mag = std::abs(in[j]);
        bool neg = in[j] < 0.0;
        parity ^= neg;
        if (mag < m1) {
            m2 = m1;
            m1 = mag;
            i1 = j;
        } else if (mag < m2) {
            m2 = mag;
        }
    }
    for (std::size_t j = 0; j < dc; ++j) {
        double mag = (j == i1) ? m2 : m1;
        bool neg = parity ^ (in[j] < 0.0);
        out[j] = neg ? -mag : mag;
    }
}

double vn_update_ms(double channel, std::span<const double> inputs) {
    double s = channel;
    for (double v : inputs) s += v;
    return s;
}

int vn_update_ms_fixed(int channel_units, std::span<const int> input_units,
                       const FixedPointFormat& fmt, long* saturations) {
    long s = channel_units;
    for (int v : input_units) s += v;
    long v = s;
    if ((v & 1) == 0) {
        if (v == 0)
            v = channel_units > 0 ? 1 : -1; // exact tie: keep the channel sign
        else
            v += v > 0 ? -1 : 1; // round toward zero onto the odd grid
    }
    const int max_units = fmt.max_message_units();
    if (v > max_units) {
        v = max_units;
        if (saturations) ++*saturations;
    } else if (v < -max_units) {
        v = -max_units;
        if (saturations) ++*saturations;
    }
    return static_cast<int>(v);
}

std::uint16_t vn_update_lut(std::uint16_t channel_label,
                            std::span<const std::uint16_t> cn_labels, const LutTree& tree) {
    return tree.eval(channel_label, cn_labels);
}

int decide_ms(double channel, std::span<const double> inputs) {
    double s = channel;
    for (double v : inputs) s += v;
    return s < 0.0 ? 1 : 0; // exact zero decodes to 0
}

namespace {

// two-minimum selection shared by all CN stages
template <typename Mag>
struct TwoMin {
    Mag m1, m2;
    int i1 = -1;

    explicit TwoMin(Mag init) : m1(init), m2(init) {}

    void feed(int j, Mag mag) {
        if (mag < m1) {
            m2 = m1;
            m1 = mag;
            i1 = j;
        } else if (mag < m2) {
            m2 = mag;
        }
    }
    Mag excluding(int j) const { return j == i1 ? m2 : m1; }
};

template <typename T>
const std::vector<T>& expect_frame(const ChannelFrame& frame, const char* what) {
    const auto* v = std::get_if<std::vector<T>>(&frame);
    if (!v) throw validation_error(std::string("channel frame type mismatch for ") + what);
    return *v;
}

} // namespace

DecodeResult decode_float(const TannerGraph& graph, const ParityCheckMatrix& h,
                          std::span<const double> llrs, int iterations) {
    if (static_cast<int>(llrs.size()) != graph.n_vns)
        throw validation_error("channel value count differs from N");
    DecodeResult res;
    std::vector<double> vn_to_cn(graph.edge_count), cn_to_vn(graph.edge_count);
    long arith = 0;

    for (int iter = 1; iter <= iterations; ++iter) {
        // VN stage
        for (int n = 0; n < graph.n_vns; ++n) {
            const auto& edges = graph.vn_edges[n];
            if (iter == 1) {
                for (const auto& e : edges) vn_to_cn[e.id] = llrs[n];
            } else {
                for (std::size_t j = 0; j < edges.size(); ++j) {
                    double s = llrs[n];
                    for (std::size_t k = 0; k < edges.size(); ++k) {
                        if (k == j) continue;
                        s += cn_to_vn[edges[k].id];
                        ++arith;
                    }
                    vn_to_cn[edges[j].id] = s;
                }
            }
        }
        // CN stage
        for (int m = 0; m < graph.n_cns; ++m) {
            const auto& edges = graph.cn_edges[m];
            TwoMin<double> tm(std::numeric_limits<double>::infinity());
            bool parity = false;
            for (std::size_t j = 0; j < edges.size(); ++j) {
                double v = vn_to_cn[edges[j].id];
                parity ^= v < 0.0;
                tm.feed(static_cast<int>(j), std::abs(v));
            }
            for (std::size_t j = 0; j < edges.size(); ++j) {
                double mag = tm.excluding(static_cast<int>(j));
                bool neg = parity ^ (vn_to_cn[edges[j].id] < 0.0);
                cn_to_vn[edges[j].id] = neg ? -mag : mag;
            }
        }
    }

    res.bits.resize(graph.n_vns);
    for (int n = 0; n < graph.n_vns; ++n) {
        double s = llrs[n];
        for (const auto& e : graph.vn_edges[n]) {
            s += cn_to_vn[e.id];
            ++arith;
        }
        res.bits[n] = s < 0.0 ? 1 : 0;
    }
    res.diagnostics.label_arith_ops = arith;
    res.diagnostics.syndrome_ok = check_syndrome(h, res.bits);
    return res;
}

DecodeResult decode_fixed(const TannerGraph& graph, const ParityCheckMatrix& h,
                          std::span<const int> channel_units, int iterations,
                          const FixedPointFormat& fmt) {
    if (static_cast<int>(channel_units.size()) != graph.n_vns)
        throw validation_error("channel value count differs from N");
    const int max_ch = fmt.max_channel_units();
    for (int v : channel_units)
        if (v == 0 || (v & 1) == 0 || v > max_ch || v < -max_ch)
            throw validation_error("fixed channel value outside the representable odd grid");

    DecodeResult res;
    std::vector<int> vn_to_cn(graph.edge_count), cn_to_vn(graph.edge_count);
    long arith = 0, sat = 0;

    for (int iter = 1; iter <= iterations; ++iter) {
        for (int n = 0; n < graph.n_vns; ++n) {
            const auto& edges = graph.vn_edges[n];
            if (iter == 1) {
                // channel values enter the first CN stage re-quantized to the
                // message grid, as the narrower message registers require
                long dummy = 0;
                int v = vn_update_ms_fixed(channel_units[n], {}, fmt, &dummy);
                sat += dummy;
                for (const auto& e : edges) vn_to_cn[e.id] = v;
            } else {
                for (std::size_t j = 0; j < edges.size(); ++j) {
                    long s = channel_units[n];
                    for (std::size_t k = 0; k < edges.size(); ++k) {
                        if (k == j) continue;
                        s += cn_to_vn[edges[k].id];
                        ++arith;
                    }
                    long v = s;
                    if ((v & 1) == 0) {
                        if (v == 0)
                            v = channel_units[n] > 0 ? 1 : -1;
                        else
                            v += v > 0 ? -1 : 1;
                    }
                    const int max_units = fmt.max_message_units();
                    if (v > max_units) {
                        v = max_units;
                        ++sat;
                    } else if (v < -max_units) {
                        v = -max_units;
                        ++sat;
                    }
                    vn_to_cn[edges[j].id] = static_cast<int>(v);
                }
            }
        }
        for (int m = 0; m < graph.n_cns; ++m) {
            const auto& edges = graph.cn_edges[m];
            TwoMin<int> tm(std::numeric_limits<int>::max());
            bool parity = false;
            for (std::size_t j = 0; j < edges.size(); ++j) {
                int v = vn_to_cn[edges[j].id];
                parity ^= v < 0;
                tm.feed(static_cast<int>(j), std::abs(v));
            }
            for (std::size_t j = 0; j < edges.size(); ++j) {
                int mag = tm.excluding(static_cast<int>(j));
                bool neg = parity ^ (vn_to_cn[edges[j].id] < 0);
                cn_to_vn[edges[j].id] = neg ? -mag : mag;
            }
        }
    }

    res.bits.resize(graph.n_vns);
    for (int n = 0; n < graph.n_vns; ++n) {
        long s = channel_units[n];
        for (const auto& e : graph.vn_edges[n]) {
            s += cn_to_vn[e.id];
            ++arith;
        }
        res.bits[n] = s < 0 ? 1 : 0;
    }
    res.diagnostics.label_arith_ops = arith;
    res.diagnostics.saturation_count = sat;
    res.diagnostics.syndrome_ok = check_syndrome(h, res.bits);
    return res;
}

DecodeResult decode_lut(const TannerGraph& graph, const ParityCheckMatrix& h,
                        std::span<const std::uint16_t> labels, const DesignArtifact& artifact) {
    if (static_cast<int>(labels.size()) != graph.n_vns)
        throw validation_error("channel value count differs from N");
    const int chan_levels = artifact.chan_levels();
    for (auto l : labels)
        if (static_cast<int>(l) >= chan_levels)
            throw validation_error("channel label out of range");
    for (const auto& edges : graph.vn_edges)
        if (static_cast<int>(edges.size()) != artifact.profile.d_v)
            throw validation_error("graph degree differs from the artifact's d_v");
    const int msg_levels = artifact.msg_levels();
    const int half = msg_levels / 2;

    DecodeResult res;
    std::vector<std::uint16_t> vn_to_cn(graph.edge_count), cn_to_vn(graph.edge_count);
    std::uint16_t gathered[64];

    const int iterations = artifact.iterations();
    for (int iter = 1; iter <= iterations; ++iter) {
        const LutTree& tree = artifact.vn_trees[iter - 1];
        for (int n = 0; n < graph.n_vns; ++n) {
            const auto& edges = graph.vn_edges[n];
            if (iter == 1) {
                std::uint16_t v = tree.eval(labels[n], {});
                for (const auto& e : edges) vn_to_cn[e.id] = v;
            } else {
                for (std::size_t j = 0; j < edges.size(); ++j) {
                    std::size_t g = 0;
                    for (std::size_t k = 0; k < edges.size(); ++k)
                        if (k != j) gathered[g++] = cn_to_vn[edges[k].id];
                    vn_to_cn[edges[j].id] = tree.eval(labels[n], {gathered, g});
                }
            }
        }
        for (int m = 0; m < graph.n_cns; ++m) {
            const auto& edges = graph.cn_edges[m];
            // sign follows from the label, the minimum is an order statistic
            // on magnitude levels: no arithmetic on message values
            TwoMin<int> tm(std::numeric_limits<int>::max());
            bool parity = false;
            for (std::size_t j = 0; j < edges.size(); ++j) {
                int lab = vn_to_cn[edges[j].id];
                bool neg = lab < half;
                parity ^= neg;
                tm.feed(static_cast<int>(j), neg ? half - 1 - lab : lab - half);
            }
            for (std::size_t j = 0; j < edges.size(); ++j) {
                int lab = vn_to_cn[edges[j].id];
                bool neg = parity ^ (lab < half);
                int mag = tm.excluding(static_cast<int>(j));
                cn_to_vn[edges[j].id] = static_cast<std::uint16_t>(neg ? half - 1 - mag : half + mag);
            }
        }
    }

    res.bits.resize(graph.n_vns);
    for (int n = 0; n < graph.n_vns; ++n) {
        const auto& edges = graph.vn_edges[n];
        std::size_t g = 0;
        for (const auto& e : edges) gathered[g++] = cn_to_vn[e.id];
        res.bits[n] =
            static_cast<std::uint8_t>(artifact.decision_tree.eval(labels[n], {gathered, g}));
    }
    res.diagnostics.label_arith_ops = 0; // lookups and order statistics only
    res.diagnostics.syndrome_ok = check_syndrome(h, res.bits);
    return res;
}

DecodeResult decode(const DecoderConfig& cfg, const TannerGraph& graph,
                    const ParityCheckMatrix& h, const ChannelFrame& channel_values) {
    switch (cfg.variant) {
    case DecoderVariant::float_ms:
        return decode_float(graph, h, expect_frame<double>(channel_values, "float_ms"),
                            cfg.iterations);
    case DecoderVariant::fixed_ms:
        return decode_fixed(graph, h, expect_frame<int>(channel_values, "fixed_ms"),
                            cfg.iterations, cfg.fixed);
    case DecoderVariant::lut:
        if (!cfg.artifact) throw validation_error("lut decoder needs a design artifact");
        return decode_lut(graph, h, expect_frame<std::uint16_t>(channel_values, "lut"),
                          *cfg.artifact);
    }
    throw validation_error("unknown decoder variant");
}

} // namespace lutldpc
