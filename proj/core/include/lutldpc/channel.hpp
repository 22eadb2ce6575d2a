#pragma once

#include <vector>

#include "lutldpc/lut.hpp"
#include "lutldpc/prob.hpp"

namespace lutldpc {

/// BI-AWGN channel with BPSK mapping s = 1 - 2*bit and noise variance
/// sigma^2 = 1 / (2 R 10^{EbN0_dB/10}). LLRs use the convention that
/// positive favors bit 0: L = 2 y / sigma^2, so L | x=0 ~ N(2/s2, 4/s2).
struct BiAwgnChannel {
    double sigma2 = 1.0;

    static BiAwgnChannel from_ebn0(double ebn0_db, double rate);

    double llr_of(double y) const { return 2.0 * y / sigma2; }
    double llr_mean() const { return 2.0 / sigma2; }
    double llr_var() const { return 4.0 / sigma2; }

    /// One channel use: y = (1 - 2 bit) + sigma * noise, returned as LLR.
    double llr_sample(int bit, double unit_gaussian) const;

    /// P(L in (a, b] | x), via the Gaussian CDF; a may be -inf, b +inf.
    double llr_interval_prob(int bit, double a, double b) const;
};

/// Discretizes the BI-AWGN LLR density into `fine_bins` micro-bins of equal
/// probability under the (1/2, 1/2) mixture of both hypotheses. Returns the
/// fine ConditionalPmf plus the bin edges (size fine_bins + 1, ends infinite).
struct FineDiscretization {
    ConditionalPmf pmf;
    std::vector<double> edges;
};
FineDiscretization discretize_awgn_llr(double ebn0_db, double rate, int fine_bins);

/// Max-MI channel-output quantizer: |L|-1 strictly increasing LLR thresholds,
/// exactly symmetric about zero, plus the quantized distribution at the
/// design point.
struct ChannelQuantizer {
    std::vector<double> thresholds;
    ConditionalPmf quantized_dist;
    double fine_mi = 0.0; // MI of the fine discretization it was designed from

    int levels() const { return static_cast<int>(thresholds.size()) + 1; }
    int label_of(double llr) const;
};

/// Designs the max-MI quantizer for the BI-AWGN LLR at the given operating
/// point. fine_bins defaults to 2000 equal-mixture-probability micro-bins.
ChannelQuantizer design_channel_quantizer(double snr_db, double rate, int levels,
                                          int fine_bins = 2000);

/// Uniform mid-rise fixed-point channel map: thresholds at integer multiples
/// of `scale`, clipping at +/- 2^{q_ch-1} * scale, representable values
/// +/-(k + 1/2) * scale. Values are stored as signed odd integers in
/// half-scale units, so no zero exists and the sign is always defined.
struct FixedPointFormat {
    int q_ch = 4;
    int q_msg = 3;
    double scale = 1.0; // LLR units per LSB

    int max_channel_units() const { return (1 << q_ch) - 1; }  // odd, half-scale units
    int max_message_units() const { return (1 << q_msg) - 1; } // odd, half-scale units

    /// Quantizes an LLR to a channel value in half-scale units.
    int channel_value(double llr) const;
    double to_llr(int units) const { return 0.5 * scale * units; }

    /// Conditional pmf of the quantized channel output at an operating point,
    /// over the 2^q_ch levels in ascending value order.
    ConditionalPmf channel_dist(double ebn0_db, double rate) const;
};

/// MI-best scale for the uniform channel quantizer at the design point,
/// searched on a deterministic 1-D grid.
double best_fixed_scale(double snr_db, double rate, int q_ch);

} // namespace lutldpc
