#include "lutldpc/prob.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lutldpc/errors.hpp"

namespace lutldpc {

void MessageAlphabet::validate(double tol) const {
    if (size < 2 || size % 2 != 0)
        throw validation_error("alphabet size must be even and >= 2, got " +
                               std::to_string(size));
    if (static_cast<int>(llr_values.size()) != size)
        throw validation_error("alphabet llr vector size mismatch");
    for (int k = 0; k + 1 < size; ++k)
        if (!(llr_values[k] < llr_values[k + 1]))
            throw validation_error("alphabet LLRs not strictly increasing at label " +
                                   std::to_string(k));
    for (int k = 0; k < size / 2; ++k) {
        double a = llr_values[k];
        double b = llr_values[size - 1 - k];
        if (std::isinf(a) && std::isinf(b) && a < 0.0 && b > 0.0) continue;
        if (std::abs(a + b) > tol)
            throw validation_error("alphabet LLRs not sign-symmetric at label " +
                                   std::to_string(k));
    }
}

ConditionalPmf ConditionalPmf::make(std::vector<double> p0, std::vector<double> p1) {
    ConditionalPmf d;
    d.p0 = std::move(p0);
    d.p1 = std::move(p1);
    d.alphabet.size = d.size();
    d.alphabet.llr_values = llr_labels(d);
    return d;
}

void ConditionalPmf::validate(double tol) const {
    if (p0.size() != p1.size() || p0.empty())
        throw validation_error("conditional pmf vector sizes mismatch");
    if (alphabet.size != size())
        throw validation_error("conditional pmf alphabet size mismatch");
    double s0 = 0.0, s1 = 0.0;
    for (int k = 0; k < size(); ++k) {
        if (p0[k] < 0.0 || p1[k] < 0.0)
            throw validation_error("negative probability at label " + std::to_string(k));
        s0 += p0[k];
        s1 += p1[k];
    }
    if (std::abs(s0 - 1.0) > tol || std::abs(s1 - 1.0) > tol)
        throw validation_error("conditional pmf does not sum to 1");
}

double mutual_information(const ConditionalPmf& d) {
    double mi = 0.0;
    for (int k = 0; k < d.size(); ++k) {
        double m = 0.5 * (d.p0[k] + d.p1[k]);
        if (m <= 0.0) continue;
        if (d.p0[k] > 0.0) mi += 0.5 * d.p0[k] * std::log2(d.p0[k] / m);
        if (d.p1[k] > 0.0) mi += 0.5 * d.p1[k] * std::log2(d.p1[k] / m);
    }
    return mi;
}

std::vector<double> llr_labels(const ConditionalPmf& d) {
    std::vector<double> llr(d.size(), 0.0);
    for (int k = 0; k < d.size(); ++k) {
        if (d.is_void(k)) continue; // void symbol, no usable LLR
        // log(p0) - log(p1) rather than log(p0/p1): IEEE subtraction makes
        // mirrored symbols of a symmetric pmf exactly negate each other.
        llr[k] = std::log(d.p0[k]) - std::log(d.p1[k]);
    }
    return llr;
}

bool check_symmetry(const ConditionalPmf& d, double tol) {
    int n = d.size();
    if (n % 2 != 0) return false;
    for (int k = 0; k < n; ++k)
        if (std::abs(d.p0[k] - d.p1[n - 1 - k]) > tol) return false;
    return true;
}

ConditionalPmf symmetrize(const ConditionalPmf& d) {
    int n = d.size();
    std::vector<double> q0(n), q1(n);
    for (int k = 0; k < n; ++k) {
        q0[k] = 0.5 * (d.p0[k] + d.p1[n - 1 - k]);
        q1[k] = 0.5 * (d.p1[k] + d.p0[n - 1 - k]);
    }
    return ConditionalPmf::make(std::move(q0), std::move(q1));
}

ConditionalPmf push_forward(const ConditionalPmf& d, std::span<const std::uint16_t> map,
                            int out_size) {
    if (static_cast<int>(map.size()) != d.size())
        throw validation_error("push_forward map size mismatch");
    std::vector<double> q0(out_size, 0.0), q1(out_size, 0.0);
    for (int k = 0; k < d.size(); ++k) {
        if (map[k] >= out_size)
            throw validation_error("push_forward label out of range");
        q0[map[k]] += d.p0[k];
        q1[map[k]] += d.p1[k];
    }
    return ConditionalPmf::make(std::move(q0), std::move(q1));
}

ConditionalPmf joint_same_bit(std::span<const ConditionalPmf> factors) {
    if (factors.empty()) throw validation_error("joint_same_bit: no factors");
    std::size_t total = 1;
    for (const auto& f : factors) total *= static_cast<std::size_t>(f.size());
    std::vector<double> q0(total), q1(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        double a = 1.0, b = 1.0;
        std::size_t rem = idx;
        // first factor most significant
        for (std::size_t j = factors.size(); j-- > 0;) {
            int digit = static_cast<int>(rem % factors[j].size());
            rem /= factors[j].size();
            a *= factors[j].p0[digit];
            b *= factors[j].p1[digit];
        }
        q0[idx] = a;
        q1[idx] = b;
    }
    return ConditionalPmf::make(std::move(q0), std::move(q1));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string pmf_to_text(const ConditionalPmf& d) {
    std::ostringstream os;
    os << "# pmf |M|=" << d.size() << "\n";
    for (int k = 0; k < d.size(); ++k)
        os << k << ' ' << format_double(d.alphabet.llr_values[k]) << ' '
           << format_double(d.p0[k]) << ' ' << format_double(d.p1[k]) << "\n";
    return os.str();
}

ConditionalPmf pmf_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long line_no = 0;
    int expected = -1;
    std::vector<double> p0, p1, llr;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("|M|=");
            if (pos == std::string::npos) throw parse_error("missing |M|= in pmf header", line_no);
            expected = std::atoi(line.c_str() + pos + 4);
            continue;
        }
        std::istringstream row(line);
        int label = 0;
        double l = 0, a = 0, b = 0;
        if (!(row >> label >> l >> a >> b)) throw parse_error("malformed pmf row", line_no);
        if (label != static_cast<int>(p0.size()))
            throw parse_error("pmf rows out of order", line_no);
        llr.push_back(l);
        p0.push_back(a);
        p1.push_back(b);
    }
    if (expected >= 0 && expected != static_cast<int>(p0.size()))
        throw parse_error("pmf row count differs from header", line_no);
    ConditionalPmf d;
    d.p0 = std::move(p0);
    d.p1 = std::move(p1);
    d.alphabet.size = d.size();
    d.alphabet.llr_values = std::move(llr);
    return d;
}

} // namespace lutldpc
