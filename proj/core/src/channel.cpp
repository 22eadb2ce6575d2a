#include "lutldpc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lutldpc/errors.hpp"
#include "lutldpc/quantizer.hpp"

namespace lutldpc {

namespace {

double gaussian_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

BiAwgnChannel BiAwgnChannel::from_ebn0(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate < 1.0)) throw validation_error("code rate must be in (0,1)");
    BiAwgnChannel ch;
    ch.sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
    return ch;
}

double BiAwgnChannel::llr_sample(int bit, double unit_gaussian) const {
    double s = 1.0 - 2.0 * bit;
    double y = s + std::sqrt(sigma2) * unit_gaussian;
    return llr_of(y);
}

double BiAwgnChannel::llr_interval_prob(int bit, double a, double b) const {
    // L | x ~ N(s * 2/sigma2, 4/sigma2) with s = 1 - 2 bit
    double mean = (1.0 - 2.0 * bit) * llr_mean();
    double sd = std::sqrt(llr_var());
    double hi = std::isinf(b) && b > 0 ? 1.0 : gaussian_cdf((b - mean) / sd);
    double lo = std::isinf(a) && a < 0 ? 0.0 : gaussian_cdf((a - mean) / sd);
    return std::max(0.0, hi - lo);
}

FineDiscretization discretize_awgn_llr(double ebn0_db, double rate, int fine_bins) {
    if (fine_bins < 2 || fine_bins % 2 != 0)
        throw validation_error("fine_bins must be even and >= 2");
    BiAwgnChannel ch = BiAwgnChannel::from_ebn0(ebn0_db, rate);
    double mean = ch.llr_mean();
    double sd = std::sqrt(ch.llr_var());

    auto mixture_cdf = [&](double t) {
        return 0.5 * gaussian_cdf((t - mean) / sd) + 0.5 * gaussian_cdf((t + mean) / sd);
    };

    FineDiscretization out;
    out.edges.assign(fine_bins + 1, 0.0);
    out.edges.front() = -std::numeric_limits<double>::infinity();
    out.edges.back() = std::numeric_limits<double>::infinity();
    double span = mean + 12.0 * sd;
    for (int j = 1; j < fine_bins; ++j) {
        double target = static_cast<double>(j) / fine_bins;
        double lo = -span, hi = span;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (mixture_cdf(mid) < target ? lo : hi) = mid;
        }
        out.edges[j] = 0.5 * (lo + hi);
    }
    // make the edge grid exactly symmetric about zero
    for (int j = 1; j < fine_bins; ++j) {
        int jm = fine_bins - j;
        if (j < jm) {
            double v = 0.5 * (out.edges[j] - out.edges[jm]);
            out.edges[j] = v;
            out.edges[jm] = -v;
        } else if (j == jm) {
            out.edges[j] = 0.0;
        }
    }

    std::vector<double> p0(fine_bins), p1(fine_bins);
    for (int j = 0; j < fine_bins; ++j) {
        p0[j] = ch.llr_interval_prob(0, out.edges[j], out.edges[j + 1]);
        p1[j] = ch.llr_interval_prob(1, out.edges[j], out.edges[j + 1]);
    }
    ConditionalPmf d = ConditionalPmf::make(std::move(p0), std::move(p1));
    out.pmf = symmetrize(d);
    return out;
}

int ChannelQuantizer::label_of(double llr) const {
    return static_cast<int>(std::upper_bound(thresholds.begin(), thresholds.end(), llr) -
                            thresholds.begin());
}

ChannelQuantizer design_channel_quantizer(double snr_db, double rate, int levels,
                                          int fine_bins) {
    if (levels < 2 || levels % 2 != 0)
        throw validation_error("channel quantizer level count must be even and >= 2");
    if (fine_bins < 100 * levels) fine_bins = 100 * levels;
    if (fine_bins % 2 != 0) ++fine_bins;

    FineDiscretization fine = discretize_awgn_llr(snr_db, rate, fine_bins);
    DesignedQuantizer q = design_quantizer(fine.pmf, levels);

    ChannelQuantizer cq;
    cq.fine_mi = mutual_information(fine.pmf);
    cq.quantized_dist = symmetrize(q.output);

    // boundaries of the contiguous level groups, expressed as LLR cut points
    // at the corresponding micro-bin edges
    cq.thresholds.reserve(levels - 1);
    for (int j = 1; j < fine_bins; ++j)
        if (q.table.table[j] != q.table.table[j - 1]) cq.thresholds.push_back(fine.edges[j]);
    if (static_cast<int>(cq.thresholds.size()) != levels - 1)
        throw validation_error("channel quantizer produced empty levels at this SNR");
    // mirror-average so thresholds are exactly symmetric about zero
    int t = static_cast<int>(cq.thresholds.size());
    for (int j = 0; j < t / 2; ++j) {
        double v = 0.5 * (cq.thresholds[j] - cq.thresholds[t - 1 - j]);
        cq.thresholds[j] = v;
        cq.thresholds[t - 1 - j] = -v;
    }
    if (t % 2 == 1) cq.thresholds[t / 2] = 0.0;
    return cq;
}

int FixedPointFormat::channel_value(double llr) const {
    // mid-rise: value = sign(L) * (floor(|L|/scale) + 1/2) * scale, clipped
    double mag = std::abs(llr) / scale;
    int k = static_cast<int>(std::floor(mag));
    int units = 2 * k + 1;
    units = std::min(units, max_channel_units());
    return llr < 0.0 ? -units : units;
}

ConditionalPmf FixedPointFormat::channel_dist(double ebn0_db, double rate) const {
    BiAwgnChannel ch = BiAwgnChannel::from_ebn0(ebn0_db, rate);
    int half = 1 << (q_ch - 1);
    int n = 2 * half;
    std::vector<double> p0(n), p1(n);
    const double inf = std::numeric_limits<double>::infinity();
    for (int lvl = 0; lvl < n; ++lvl) {
        // level -> value (2(lvl-half)+1) half-units; thresholds at k*scale
        int units = 2 * (lvl - half) + 1;
        double lo = units == -(max_channel_units()) ? -inf : 0.5 * scale * (units - 1);
        double hi = units == max_channel_units() ? inf : 0.5 * scale * (units + 1);
        p0[lvl] = ch.llr_interval_prob(0, lo, hi);
        p1[lvl] = ch.llr_interval_prob(1, lo, hi);
    }
    return ConditionalPmf::make(std::move(p0), std::move(p1));
}

double best_fixed_scale(double snr_db, double rate, int q_ch) {
    double best_scale = 0.1, best_mi = -1.0;
    for (int step = 1; step <= 300; ++step) {
        FixedPointFormat fmt;
        fmt.q_ch = q_ch;
        fmt.scale = 0.02 * step;
        double mi = mutual_information(fmt.channel_dist(snr_db, rate));
        if (mi > best_mi) {
            best_mi = mi;
            best_scale = fmt.scale;
        }
    }
    return best_scale;
}

} // namespace lutldpc
