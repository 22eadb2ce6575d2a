#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lutldpc {

/// Sparse binary parity-check matrix H, stored as sorted row-index lists per
/// column and sorted column-index lists per row. Immutable once built.
struct ParityCheckMatrix {
    int n_cols = 0; // N, codeword length
    int n_rows = 0; // M, checks
    std::vector<std::vector<int>> column_supports;
    std::vector<std::vector<int>> row_supports;

    /// Cross-consistency, sortedness, ranges. Throws validation_error.
    void validate() const;

    std::size_t edge_count() const;
};

/// Degree profile of a (d_v, d_c)-regular code.
struct CodeProfile {
    int d_v = 0;
    int d_c = 0;
    long rate_num = 0; // designed rate as a rational, R = 1 - M/N reduced
    long rate_den = 1;

    double rate() const { return static_cast<double>(rate_num) / rate_den; }
};

/// Returns the profile if H is (d_v, d_c)-regular, std::nullopt otherwise.
std::optional<CodeProfile> regular_profile(const ParityCheckMatrix& h);

/// Like regular_profile but throws for irregular matrices (the design flow
/// handles regular codes only).
CodeProfile require_regular(const ParityCheckMatrix& h);

/// Bipartite adjacency with stable edge ids, column-major over
/// (column, position-in-column). Edge ids are a bijection onto
/// [0, edge_count).
struct TannerGraph {
    struct Edge {
        int peer = 0; // CN index in vn_edges, VN index in cn_edges
        int id = 0;
    };
    int n_vns = 0;
    int n_cns = 0;
    std::size_t edge_count = 0;
    std::vector<std::vector<Edge>> vn_edges;
    std::vector<std::vector<Edge>> cn_edges;
};

TannerGraph build_tanner_graph(const ParityCheckMatrix& h);

/// True iff every row parity (mod-2 sum over the row support) is zero.
bool check_syndrome(const ParityCheckMatrix& h, std::span<const std::uint8_t> word);

/// alist format, MacKay convention: "N M", "max_col_w max_row_w", N column
/// weights, M row weights, N lines of 1-based row indices (zero padding to
/// the max width permitted and ignored), then M lines of 1-based column
/// indices. Errors carry line numbers.
ParityCheckMatrix parse_alist(const std::string& text);
std::string serialize_alist(const ParityCheckMatrix& h);

/// Deterministic, seed-parameterized (d_v, d_c)-regular quasi-cyclic
/// construction: a d_v x d_c array of Z x Z circulants with shift exponents
/// chosen by a seeded backtracking search that avoids length-4 cycles when
/// the lifting size permits. n_cols must be a multiple of d_c.
ParityCheckMatrix generate_qc_code(int d_v, int d_c, int n_cols, std::uint64_t seed);

/// Number of length-4 cycles in H (pairs of rows sharing two or more
/// columns contribute per shared pair).
long count_4cycles(const ParityCheckMatrix& h);

} // namespace lutldpc
