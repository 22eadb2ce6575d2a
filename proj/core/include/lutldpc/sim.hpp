#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lutldpc/decoder.hpp"

namespace lutldpc {

/// Philox4x32-10 counter-based generator. A (key, counter) pair maps to four
/// 32-bit words with no sequential state, so per-frame substreams keyed by
/// (seed, snr_index, frame_index) are identical for any worker count.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              const std::array<std::uint32_t, 4>& counter);
};

/// Deterministic per-frame noise stream: standard Gaussians via Box-Muller
/// over Philox outputs.
class FrameRng {
  public:
    FrameRng(std::uint64_t seed, std::uint32_t snr_index, std::uint64_t frame_index);

    double gaussian();
    double uniform(); // in [0, 1)

  private:
    void refill();

    std::uint64_t key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<double, 4> gauss_{};
    int gauss_avail_ = 0;
    std::array<std::uint32_t, 4> words_{};
    int words_avail_ = 0;
};

/// One BI-AWGN channel use for a transmitted bit: draws y = s + sigma * noise
/// and returns the LLR 2 y / sigma^2 (positive favors bit 0).
double llr_channel(double snr_db, double rate, int bit, double unit_gaussian);

struct SimConfig {
    std::vector<double> snr_points_db;
    std::uint64_t max_frames = 1000000;
    std::uint64_t target_frame_errors = 100;
    std::uint64_t seed = 1;
    int workers = 1;
    DecoderConfig decoder;
};

struct SimPoint {
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
    double fer = 0.0;
    double ber = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double wall_seconds = 0.0; // informational, excluded from CSV output
};

struct SimResult {
    std::vector<SimPoint> points;
};

/// Wilson 95% score interval for e errors out of n trials.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials);

/// Monte Carlo FER/BER estimation over the BI-AWGN channel with all-zero
/// codeword transmission (justified by the decoders' mirror symmetry). Each
/// SNR point stops once target_frame_errors is reached or max_frames have
/// been simulated; the stopping frame is determined by scanning frames in
/// index order, so the result is a pure function of the config regardless of
/// the worker count.
SimResult run_fer(const SimConfig& cfg, const TannerGraph& graph, const ParityCheckMatrix& h);

/// CSV serialization: "ebn0_db,fer" rows, or the extended column set when
/// requested. Shortest round-trip decimal formatting; deterministic bytes.
std::string sim_result_to_csv(const SimResult& r, bool extended = false);
void write_csv(const SimResult& r, const std::string& path, bool extended = false);

/// Parses the two shared columns back (header required).
std::vector<std::pair<double, double>> parse_fer_csv(const std::string& text);

} // namespace lutldpc
