#include "lutldpc/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "lutldpc/errors.hpp"
#include "lutldpc/prob.hpp"

namespace lutldpc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& x, std::uint32_t k0, std::uint32_t k1) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t key,
                                               const std::array<std::uint32_t, 4>& counter) {
    std::array<std::uint32_t, 4> x = counter;
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        philox_round(x, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return x;
}

FrameRng::FrameRng(std::uint64_t seed, std::uint32_t snr_index, std::uint64_t frame_index)
    : key_(seed) {
    counter_ = {snr_index, static_cast<std::uint32_t>(frame_index),
                static_cast<std::uint32_t>(frame_index >> 32), 0};
}

void FrameRng::refill() {
    words_ = Philox4x32::block(key_, counter_);
    ++counter_[3];
    words_avail_ = 4;
}

double FrameRng::uniform() {
    if (words_avail_ == 0) refill();
    std::uint32_t w = words_[4 - words_avail_];
    --words_avail_;
    return w * 0x1p-32;
}

double FrameRng::gaussian() {
    if (gauss_avail_ == 0) {
        if (words_avail_ < 2) refill();
        std::uint32_t a = words_[4 - words_avail_];
        std::uint32_t b = words_[4 - words_avail_ + 1];
        words_avail_ -= 2;
        // u1 in (0, 1], u2 in [0, 1)
        double u1 = (static_cast<double>(a) + 1.0) * 0x1p-32;
        double u2 = static_cast<double>(b) * 0x1p-32;
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        gauss_[0] = r * std::cos(theta);
        gauss_[1] = r * std::sin(theta);
        gauss_avail_ = 2;
    }
    return gauss_[2 - gauss_avail_--];
}

double llr_channel(double snr_db, double rate, int bit, double unit_gaussian) {
    return BiAwgnChannel::from_ebn0(snr_db, rate).llr_sample(bit, unit_gaussian);
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054; // 95%
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct FrameOutcome {
    std::uint8_t error = 0;
    std::uint32_t bit_errors = 0;
};

// builds the decoder's native channel frame for the all-zero codeword
ChannelFrame make_frame(const SimConfig& cfg, const TannerGraph& graph,
                        const BiAwgnChannel& ch, FrameRng& rng) {
    const int n = graph.n_vns;
    const DecoderConfig& dec = cfg.decoder;
    switch (dec.variant) {
    case DecoderVariant::float_ms: {
        std::vector<double> llrs(n);
        for (int i = 0; i < n; ++i) llrs[i] = ch.llr_sample(0, rng.gaussian());
        return llrs;
    }
    case DecoderVariant::fixed_ms: {
        std::vector<int> units(n);
        for (int i = 0; i < n; ++i)
            units[i] = dec.fixed.channel_value(ch.llr_sample(0, rng.gaussian()));
        return units;
    }
    case DecoderVariant::lut: {
        std::vector<std::uint16_t> labels(n);
        for (int i = 0; i < n; ++i)
            labels[i] = static_cast<std::uint16_t>(
                dec.artifact->channel_quantizer.label_of(ch.llr_sample(0, rng.gaussian())));
        return labels;
    }
    }
    throw validation_error("unknown decoder variant");
}

double decoder_rate(const SimConfig& cfg, const TannerGraph& graph,
                    const ParityCheckMatrix& h) {
    if (cfg.decoder.variant == DecoderVariant::lut && cfg.decoder.artifact)
        return cfg.decoder.artifact->profile.rate();
    (void)graph;
    return 1.0 - static_cast<double>(h.n_rows) / h.n_cols;
}

} // namespace

SimResult run_fer(const SimConfig& cfg, const TannerGraph& graph, const ParityCheckMatrix& h) {
    if (cfg.target_frame_errors < 1)
        throw validation_error("target_frame_errors must be at least 1");
    cfg.decoder.validate();
    const double rate = decoder_rate(cfg, graph, h);
    const int workers = std::max(1, cfg.workers);
    // fixed scheduling block, independent of the worker count
    const std::uint64_t kChunk = 256;

    SimResult result;
    for (std::size_t s = 0; s < cfg.snr_points_db.size(); ++s) {
        const double snr_db = cfg.snr_points_db[s];
        const BiAwgnChannel ch = BiAwgnChannel::from_ebn0(snr_db, rate);
        auto t0 = std::chrono::steady_clock::now();

        SimPoint point;
        point.ebn0_db = snr_db;
        std::uint64_t frames = 0, errors = 0, bit_errors = 0;
        bool stop = false;

        std::vector<FrameOutcome> outcomes(kChunk);
        while (!stop && frames < cfg.max_frames && errors < cfg.target_frame_errors) {
            std::uint64_t chunk = std::min(kChunk, cfg.max_frames - frames);
            auto worker_fn = [&](int w) {
                for (std::uint64_t f = w; f < chunk; f += workers) {
                    std::uint64_t frame_index = frames + f;
                    FrameRng rng(cfg.seed, static_cast<std::uint32_t>(s), frame_index);
                    ChannelFrame frame = make_frame(cfg, graph, ch, rng);
                    DecodeResult dec = decode(cfg.decoder, graph, h, frame);
                    std::uint32_t be = 0;
                    for (auto b : dec.bits) be += b;
                    outcomes[f] = {static_cast<std::uint8_t>(be != 0), be};
                }
            };
            if (workers == 1) {
                worker_fn(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn, w);
                for (auto& t : pool) t.join();
            }
            // aggregate in frame order so the stopping point is deterministic
            for (std::uint64_t f = 0; f < chunk; ++f) {
                ++frames;
                errors += outcomes[f].error;
                bit_errors += outcomes[f].bit_errors;
                if (errors >= cfg.target_frame_errors) {
                    stop = true;
                    break;
                }
            }
        }

        point.frames = frames;
        point.frame_errors = errors;
        point.bit_errors = bit_errors;
        point.fer = frames ? static_cast<double>(errors) / frames : 0.0;
        point.ber = frames ? static_cast<double>(bit_errors) / (frames * graph.n_vns) : 0.0;
        auto [lo, hi] = wilson_interval(errors, frames);
        point.wilson_lo = lo;
        point.wilson_hi = hi;
        point.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.points.push_back(point);
    }
    return result;
}

std::string sim_result_to_csv(const SimResult& r, bool extended) {
    std::ostringstream os;
    if (extended) {
        os << "ebn0_db,fer,ber,frames,frame_errors,bit_errors,wilson_lo,wilson_hi\n";
        for (const auto& p : r.points)
            os << format_double(p.ebn0_db) << ',' << format_double(p.fer) << ','
               << format_double(p.ber) << ',' << p.frames << ',' << p.frame_errors << ','
               << p.bit_errors << ',' << format_double(p.wilson_lo) << ','
               << format_double(p.wilson_hi) << "\n";
    } else {
        os << "ebn0_db,fer\n";
        for (const auto& p : r.points)
            os << format_double(p.ebn0_db) << ',' << format_double(p.fer) << "\n";
    }
    return os.str();
}

void write_csv(const SimResult& r, const std::string& path, bool extended) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw validation_error("cannot open for writing: " + path);
    os << sim_result_to_csv(r, extended);
    if (!os) throw validation_error("write failed: " + path);
}

std::vector<std::pair<double, double>> parse_fer_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long line_no = 0;
    std::vector<std::pair<double, double>> out;
    bool header = true;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (header) {
            if (line.rfind("ebn0_db,fer", 0) != 0)
                throw parse_error("unexpected CSV header", line_no);
            header = false;
            continue;
        }
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
            throw parse_error("malformed CSV row", line_no);
        out.emplace_back(std::stod(a), std::stod(b));
    }
    return out;
}

} // namespace lutldpc
