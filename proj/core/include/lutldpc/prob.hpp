#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lutldpc {

/// Symbols with less than this total probability under both hypotheses are
/// treated as void: they carry no information and no usable LLR.
inline constexpr double kVoidMass = 1e-15;

/// An ordered finite message alphabet. Labels are 0..size-1 in ascending-LLR
/// order. For even-sized, symmetric alphabets the sign of a message follows
/// from its label alone: labels below size/2 carry negative LLR (favor bit 1),
/// labels from size/2 up carry positive LLR, and mirror(k) = size-1-k negates
/// the LLR. The min-sum check node relies on exactly this property.
struct MessageAlphabet {
    int size = 0;
    std::vector<double> llr_values; // natural-log units, one per label

    int mirror(int label) const { return size - 1 - label; }
    bool is_negative(int label) const { return label < size / 2; }

    /// Magnitude level of a label, 0 = least reliable. Defined for even sizes.
    int magnitude(int label) const {
        return is_negative(label) ? size / 2 - 1 - label : label - size / 2;
    }
    int label_of(bool negative, int mag) const {
        return negative ? size / 2 - 1 - mag : size / 2 + mag;
    }

    /// Checks evenness, strictly increasing LLRs and the mirror property
    /// llr[k] == -llr[size-1-k] within tol. Throws validation_error.
    void validate(double tol = 1e-9) const;
};

/// A pair of conditional probability vectors p(symbol | x = 0) and
/// p(symbol | x = 1) over a labeled alphabet. This is the object density
/// evolution transforms.
struct ConditionalPmf {
    MessageAlphabet alphabet;
    std::vector<double> p0;
    std::vector<double> p1;

    int size() const { return static_cast<int>(p0.size()); }

    /// Builds a pmf and attaches LLR labels computed from the vectors.
    static ConditionalPmf make(std::vector<double> p0, std::vector<double> p1);

    bool is_void(int label) const { return p0[label] + p1[label] < kVoidMass; }

    /// Nonnegative entries, both vectors sum to 1 within tol, sizes match.
    void validate(double tol = 1e-12) const;
};

/// I(m; x) in bits under a uniform prior on x, with 0 log 0 := 0.
double mutual_information(const ConditionalPmf& d);

/// Per-symbol log(p0[k]/p1[k]) in natural-log units, computed as
/// log(p0[k]) - log(p1[k]) so that mirrored symbols of a symmetric pmf get
/// exactly negated values. Void symbols get 0.
std::vector<double> llr_labels(const ConditionalPmf& d);

/// True iff p0[k] == p1[size-1-k] for all k within tol.
bool check_symmetry(const ConditionalPmf& d, double tol = 1e-9);

/// Averages each symbol with its mirror: p0'[k] = (p0[k] + p1[size-1-k])/2,
/// p1' the mirror image. The result satisfies check_symmetry bit-exactly and
/// symmetrize is an exact fixed point on already-symmetric input.
ConditionalPmf symmetrize(const ConditionalPmf& d);

/// Pushes d through a deterministic relabeling map (one output label per
/// input symbol). Output LLRs are recomputed.
ConditionalPmf push_forward(const ConditionalPmf& d, std::span<const std::uint16_t> map,
                            int out_size);

/// Joint distribution of independent inputs conditioned on a common bit
/// (all component bits equal x). Flat index is mixed-radix with the first
/// factor most significant, so mirroring every component mirrors the flat
/// index: mirror(idx) = total-1-idx.
ConditionalPmf joint_same_bit(std::span<const ConditionalPmf> factors);

/// Tabular text form: header "# pmf |M|=<size>", then one row per symbol
/// "label llr p0 p1" with shortest round-trip decimals.
std::string pmf_to_text(const ConditionalPmf& d);
ConditionalPmf pmf_from_text(const std::string& text);

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

} // namespace lutldpc
