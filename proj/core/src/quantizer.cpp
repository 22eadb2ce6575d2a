#include "lutldpc/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lutldpc/errors.hpp"

namespace lutldpc {

double partial_mi(double q0, double q1) {
    double m = 0.5 * (q0 + q1);
    if (m <= 0.0) return 0.0;
    double v = 0.0;
    if (q0 > 0.0) v += 0.5 * q0 * std::log2(q0 / m);
    if (q1 > 0.0) v += 0.5 * q1 * std::log2(q1 / m);
    return v;
}

namespace {

// Optimal contiguous partition of atoms [0, n) (in sorted order, described by
// prefix sums) into k groups, maximizing the summed partial MI. Returns the
// boundary positions b_1 < ... < b_{k-1} (first atom of each later group).
// Ties keep the smallest boundary at each DP choice, so the result is
// deterministic.
std::vector<int> dp_boundaries(const std::vector<double>& pre0, const std::vector<double>& pre1,
                               int n, int k) {
    auto phi = [&](int a, int b) {
        return partial_mi(pre0[b] - pre0[a], pre1[b] - pre1[a]);
    };
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> prev(n + 1, neg_inf), cur(n + 1, neg_inf);
    std::vector<std::vector<int>> choice(k + 1, std::vector<int>(n + 1, -1));
    prev[0] = 0.0;
    for (int g = 1; g <= k; ++g) {
        std::fill(cur.begin(), cur.end(), neg_inf);
        for (int i = g; i <= n - (k - g); ++i) {
            double best = neg_inf;
            int best_j = -1;
            for (int j = g - 1; j < i; ++j) {
                if (prev[j] == neg_inf) continue;
                double v = prev[j] + phi(j, i);
                if (v > best) {
                    best = v;
                    best_j = j;
                }
            }
            cur[i] = best;
            choice[g][i] = best_j;
        }
        std::swap(prev, cur);
    }
    std::vector<int> bounds(k - 1);
    int pos = n;
    for (int g = k; g >= 2; --g) {
        pos = choice[g][pos];
        bounds[g - 2] = pos;
    }
    return bounds;
}

// Walks from a void atom toward the center of the (mirror-ordered) label
// range until a usable atom is found.
int host_atom(const ConditionalPmf& d, int idx) {
    int n = d.size();
    int step = idx < n / 2 ? 1 : -1;
    for (int j = idx + step; j >= 0 && j < n; j += step)
        if (!d.is_void(j)) return j;
    for (int j = idx - step; j >= 0 && j < n; j -= step)
        if (!d.is_void(j)) return j;
    throw validation_error("quantizer input carries no probability mass");
}

} // namespace

DesignedQuantizer design_quantizer(const ConditionalPmf& joint, int out_size) {
    if (out_size < 2) throw validation_error("quantizer output size must be >= 2");
    if (!check_symmetry(joint, 1e-6))
        throw validation_error("quantizer input distribution is not symmetric");

    ConditionalPmf d = symmetrize(joint); // exact, D1 of the design flow
    const int n = d.size();

    std::vector<int> order;
    order.reserve(n);
    for (int i = 0; i < n; ++i)
        if (!d.is_void(i)) order.push_back(i);
    if (order.empty()) throw validation_error("quantizer input carries no probability mass");
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        double la = d.alphabet.llr_values[a], lb = d.alphabet.llr_values[b];
        if (la != lb) return la < lb;
        return a < b; // deterministic tie order
    });
    const int usable = static_cast<int>(order.size());

    DesignedQuantizer result;
    int k_eff = std::min(out_size, usable);
    result.reduced = k_eff < out_size;

    std::vector<double> pre0(usable + 1, 0.0), pre1(usable + 1, 0.0);
    for (int s = 0; s < usable; ++s) {
        pre0[s + 1] = pre0[s] + d.p0[order[s]];
        pre1[s + 1] = pre1[s] + d.p1[order[s]];
    }

    std::vector<int> bounds;
    if (k_eff % 2 == 0 && usable % 2 == 0) {
        // Sign-symmetric design: cut at LLR 0, place k/2 - 1 boundaries in the
        // lower half and mirror them. The sorted order of a symmetric pmf is
        // exactly mirror-antisymmetric, so the mirrored table is exact.
        int half = usable / 2;
        std::vector<int> lower = dp_boundaries(pre0, pre1, half, k_eff / 2);
        bounds = lower;
        bounds.push_back(half);
        for (auto it = lower.rbegin(); it != lower.rend(); ++it)
            bounds.push_back(usable - *it);
    } else {
        bounds = dp_boundaries(pre0, pre1, usable, k_eff);
    }

    const int offset = (out_size - k_eff) / 2;
    std::vector<std::uint16_t> map(n, 0);
    {
        int group = 0;
        for (int s = 0; s < usable; ++s) {
            while (group < k_eff - 1 && s >= bounds[group]) ++group;
            map[order[s]] = static_cast<std::uint16_t>(group + offset);
        }
    }
    for (int i = 0; i < n; ++i)
        if (d.is_void(i)) map[i] = map[host_atom(d, i)];

    result.output = push_forward(d, map, out_size);

    result.table.input_arities = {n};
    result.table.output_size = out_size;
    result.table.table = std::move(map);
    result.table.input_mi = mutual_information(d);
    result.table.achieved_mi = mutual_information(result.output);
    result.table.uniform_baseline_mi = uniform_baseline_mi(d, out_size);
    result.table.void_levels.assign(out_size, 0);
    for (int g = 0; g < out_size; ++g)
        if (result.output.is_void(g)) result.table.void_levels[g] = 1;
    return result;
}

double uniform_baseline_mi(const ConditionalPmf& joint, int out_size) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < joint.size(); ++i) {
        if (joint.is_void(i)) continue;
        double l = joint.alphabet.llr_values[i];
        if (std::isinf(l)) continue;
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    std::vector<std::uint16_t> map(joint.size(), 0);
    for (int i = 0; i < joint.size(); ++i) {
        double l = joint.alphabet.llr_values[i];
        int cell;
        if (!(hi > lo)) {
            cell = 0;
        } else if (std::isinf(l)) {
            cell = l > 0 ? out_size - 1 : 0;
        } else {
            cell = static_cast<int>(std::floor((l - lo) / (hi - lo) * out_size));
            cell = std::clamp(cell, 0, out_size - 1);
        }
        map[i] = static_cast<std::uint16_t>(cell);
    }
    return mutual_information(push_forward(joint, map, out_size));
}

} // namespace lutldpc
