#include "lutldpc/pipeline.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "lutldpc/errors.hpp"
#include "lutldpc/prob.hpp"

namespace lutldpc {

long register_budget(long n, int d_v, int iterations, int q_msg, int q_ch) {
    if (n <= 0 || d_v <= 0 || iterations <= 0 || q_msg <= 0 || q_ch <= 0)
        throw validation_error("register_budget parameters must be positive");
    return (2L * iterations - 1) * n * (static_cast<long>(d_v) * q_msg + q_ch) + n;
}

std::pair<double, double> timing(long n, int iterations, double f_ghz) {
    if (!(f_ghz > 0.0)) throw validation_error("frequency must be positive");
    if (n <= 0 || iterations <= 0) throw validation_error("timing parameters must be positive");
    double latency_ns = 2.0 * iterations / f_ghz;
    double throughput_gbps = static_cast<double>(n) * f_ghz;
    return {latency_ns, throughput_gbps};
}

std::pair<long, long> wire_budget(long n, int d_v, int q_msg, int q_ch) {
    if (n <= 0 || d_v <= 0 || q_msg <= 0 || q_ch <= 0)
        throw validation_error("wire_budget parameters must be positive");
    long message = n * static_cast<long>(d_v) * q_msg;
    return {message + n * static_cast<long>(q_ch), message};
}

PipelineReport pipeline_report(long n, int d_v, int iterations, int q_msg, int q_ch,
                               double f_ghz) {
    PipelineReport r;
    r.n = n;
    r.d_v = d_v;
    r.iterations = iterations;
    r.q_msg = q_msg;
    r.q_ch = q_ch;
    r.f_ghz = f_ghz;

    r.total_register_bits = register_budget(n, d_v, iterations, q_msg, q_ch);
    long msg_per_stage = n * static_cast<long>(d_v) * q_msg;
    r.cn_stage_message_bits = static_cast<long>(iterations) * msg_per_stage;
    r.vn_stage_message_bits = static_cast<long>(iterations - 1) * msg_per_stage;
    r.channel_forwarding_bits = (2L * iterations - 1) * n * q_ch;
    r.dn_stage_bits = n;

    r.latency_cycles = 2 * iterations;
    auto [lat, thr] = timing(n, iterations, f_ghz);
    r.latency_ns = lat;
    r.throughput_gbps = thr;

    auto [wires, msg_wires] = wire_budget(n, d_v, q_msg, q_ch);
    r.wire_bits_per_boundary = wires;
    r.message_wire_bits_per_boundary = msg_wires;
    return r;
}

namespace {

std::string fixed2(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

} // namespace

std::string pipeline_table(const PipelineReport& a, const std::string& name_a,
                           const PipelineReport& b, const std::string& name_b) {
    std::ostringstream os;
    auto row = [&](const std::string& label, const std::string& va, const std::string& vb) {
        os << std::left << std::setw(28) << label << std::right << std::setw(16) << va
           << std::setw(16) << vb << "\n";
    };
    row("", name_a, name_b);
    row("N", std::to_string(a.n), std::to_string(b.n));
    row("iterations", std::to_string(a.iterations), std::to_string(b.iterations));
    row("(q_msg, q_ch)", std::to_string(a.q_msg) + "/" + std::to_string(a.q_ch),
        std::to_string(b.q_msg) + "/" + std::to_string(b.q_ch));
    row("register bits", std::to_string(a.total_register_bits),
        std::to_string(b.total_register_bits));
    row("latency [cycles]", std::to_string(a.latency_cycles), std::to_string(b.latency_cycles));
    row("latency [ns]", fixed2(a.latency_ns), fixed2(b.latency_ns));
    row("throughput [Gbps]", fixed2(a.throughput_gbps), fixed2(b.throughput_gbps));
    row("wires/boundary", std::to_string(a.wire_bits_per_boundary),
        std::to_string(b.wire_bits_per_boundary));
    row("message wires/boundary", std::to_string(a.message_wire_bits_per_boundary),
        std::to_string(b.message_wire_bits_per_boundary));
    double with_ch = static_cast<double>(a.wire_bits_per_boundary) / b.wire_bits_per_boundary;
    double msg_only = static_cast<double>(a.message_wire_bits_per_boundary) /
                      b.message_wire_bits_per_boundary;
    os << "\nwire ratio " << name_a << "/" << name_b << ": " << fixed2(with_ch)
       << " incl. channel forwarding, " << fixed2(msg_only) << " message wires only\n";
    return os.str();
}

std::string pipeline_table(const PipelineReport& r, const std::string& name) {
    std::ostringstream os;
    os << name << "\n";
    os << "  N                      " << r.n << "\n";
    os << "  iterations             " << r.iterations << "\n";
    os << "  (q_msg, q_ch)          " << r.q_msg << "/" << r.q_ch << "\n";
    os << "  register bits          " << r.total_register_bits << "\n";
    os << "    CN stage messages    " << r.cn_stage_message_bits << "\n";
    os << "    VN stage messages    " << r.vn_stage_message_bits << "\n";
    os << "    channel forwarding   " << r.channel_forwarding_bits << "\n";
    os << "    DN stage             " << r.dn_stage_bits << "\n";
    os << "  latency                " << r.latency_cycles << " cycles, " << fixed2(r.latency_ns)
       << " ns at " << format_double(r.f_ghz) << " GHz\n";
    os << "  throughput             " << fixed2(r.throughput_gbps) << " Gbps\n";
    os << "  wires per boundary     " << r.wire_bits_per_boundary << " ("
       << r.message_wire_bits_per_boundary << " message bits)\n";
    return os.str();
}

std::string pipeline_report_to_json(const PipelineReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["d_v"] = r.d_v;
    j["iterations"] = r.iterations;
    j["q_msg"] = r.q_msg;
    j["q_ch"] = r.q_ch;
    j["f_ghz"] = r.f_ghz;
    j["total_register_bits"] = r.total_register_bits;
    j["cn_stage_message_bits"] = r.cn_stage_message_bits;
    j["vn_stage_message_bits"] = r.vn_stage_message_bits;
    j["channel_forwarding_bits"] = r.channel_forwarding_bits;
    j["dn_stage_bits"] = r.dn_stage_bits;
    j["latency_cycles"] = r.latency_cycles;
    j["latency_ns"] = r.latency_ns;
    j["throughput_gbps"] = r.throughput_gbps;
    j["wire_bits_per_boundary"] = r.wire_bits_per_boundary;
    j["message_wire_bits_per_boundary"] = r.message_wire_bits_per_boundary;
    return j.dump(2) + "\n";
}

} // namespace lutldpc
