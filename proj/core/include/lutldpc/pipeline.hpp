#pragma once

#include <string>

namespace lutldpc {

/// Analytical model of the fully unrolled pipeline. The decoder is a systolic
/// array of I CN stages, I-1 VN stages (iteration 1's VN stage is absorbed
/// into the channel input) and one DN stage: 2I register sets, latency 2I
/// cycles, one decoded codeword per cycle.
struct PipelineReport {
    long n = 0;
    int d_v = 0;
    int iterations = 0;
    int q_msg = 0;
    int q_ch = 0;
    double f_ghz = 0.0;

    long total_register_bits = 0; // (2I-1) N (d_v q_msg + q_ch) + N
    long cn_stage_message_bits = 0;
    long vn_stage_message_bits = 0;
    long channel_forwarding_bits = 0;
    long dn_stage_bits = 0;

    int latency_cycles = 0; // 2I
    double latency_ns = 0.0;
    double throughput_gbps = 0.0;

    long wire_bits_per_boundary = 0;          // N d_v q_msg + N q_ch
    long message_wire_bits_per_boundary = 0;  // N d_v q_msg
};

/// Total register bits (2I-1) N (d_v q_msg + q_ch) + N; the per-stage
/// breakdown in the report sums to exactly this value.
long register_budget(long n, int d_v, int iterations, int q_msg, int q_ch);

/// latency = 2I / f ns, throughput = N f Gbps.
std::pair<double, double> timing(long n, int iterations, double f_ghz);

/// Inter-stage wire bits, with and without channel forwarding.
std::pair<long, long> wire_budget(long n, int d_v, int q_msg, int q_ch);

PipelineReport pipeline_report(long n, int d_v, int iterations, int q_msg, int q_ch,
                               double f_ghz);

/// Human-readable side-by-side table of two configurations (typically the
/// LUT-based decoder and an adder-based reference).
std::string pipeline_table(const PipelineReport& a, const std::string& name_a,
                           const PipelineReport& b, const std::string& name_b);
std::string pipeline_table(const PipelineReport& r, const std::string& name);

std::string pipeline_report_to_json(const PipelineReport& r);

} // namespace lutldpc
