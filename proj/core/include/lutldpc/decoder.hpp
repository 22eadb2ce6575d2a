#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "lutldpc/artifact.hpp"
#include "lutldpc/channel.hpp"
#include "lutldpc/ldpc.hpp"

namespace lutldpc {

enum class DecoderVariant { float_ms, fixed_ms, lut };

/// Runtime decoder configuration. All three variants run a flooding schedule
/// with exactly `iterations` full VN+CN passes and no early termination,
/// matching an unrolled pipeline; iteration 1's VN stage consumes only the
/// channel value.
struct DecoderConfig {
    DecoderVariant variant = DecoderVariant::float_ms;
    int iterations = 5;
    FixedPointFormat fixed;               // fixed_ms only
    const DesignArtifact* artifact = nullptr; // lut only

    void validate() const;
};

struct DecodeDiagnostics {
    bool syndrome_ok = false;   // diagnostic only, never stops decoding
    long saturation_count = 0;  // fixed_ms re-quantization clips
    long label_arith_ops = 0;   // arithmetic ops on message values (0 for lut)
};

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    DecodeDiagnostics diagnostics;
};

/// Channel observations in the decoder's native representation: raw LLRs for
/// float_ms, signed half-scale units for fixed_ms, quantizer labels for lut.
using ChannelFrame =
    std::variant<std::vector<double>, std::vector<int>, std::vector<std::uint16_t>>;

DecodeResult decode(const DecoderConfig& cfg, const TannerGraph& graph,
                    const ParityCheckMatrix& h, const ChannelFrame& channel_values);

// Variant entry points (decode() dispatches to these).
DecodeResult decode_float(const TannerGraph& graph, const ParityCheckMatrix& h,
                          std::span<const double> llrs, int iterations);
DecodeResult decode_fixed(const TannerGraph& graph, const ParityCheckMatrix& h,
                          std::span<const int> channel_units, int iterations,
                          const FixedPointFormat& fmt);
DecodeResult decode_lut(const TannerGraph& graph, const ParityCheckMatrix& h,
                        std::span<const std::uint16_t> labels, const DesignArtifact& artifact);

/// Two-minimum min-sum CN update on plain values: output j carries the sign
/// product of all inputs but j and the minimum magnitude over all inputs but
/// j. Exactly equal to the naive leave-one-out computation.
void cn_update_minsum(std::span<const double> in, std::span<double> out);

/// Min-sum VN update, float variant: channel plus the sum of all inputs.
double vn_update_ms(double channel, std::span<const double> inputs);

/// Fixed-point VN update: widened integer sum of channel and inputs (all odd,
/// half-scale units), then saturating re-quantization to the message format.
/// Even sums round toward zero; an exact zero sum takes the channel sign.
int vn_update_ms_fixed(int channel_units, std::span<const int> input_units,
                       const FixedPointFormat& fmt, long* saturations);

/// LUT VN update: evaluates the tree by table indexing only.
std::uint16_t vn_update_lut(std::uint16_t channel_label,
                            std::span<const std::uint16_t> cn_labels, const LutTree& tree);

/// MS decision: sign of channel + sum of all inputs; exact zero decodes to 0.
int decide_ms(double channel, std::span<const double> inputs);

} // namespace lutldpc
