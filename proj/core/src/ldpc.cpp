#include "lutldpc/ldpc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lutldpc/errors.hpp"

namespace lutldpc {

void ParityCheckMatrix::validate() const {
    if (n_cols <= 0 || n_rows <= 0) throw validation_error("matrix dimensions must be positive");
    if (static_cast<int>(column_supports.size()) != n_cols ||
        static_cast<int>(row_supports.size()) != n_rows)
        throw validation_error("matrix support list sizes mismatch");
    std::size_t col_edges = 0, row_edges = 0;
    for (int n = 0; n < n_cols; ++n) {
        const auto& col = column_supports[n];
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (col[i] < 0 || col[i] >= n_rows)
                throw validation_error("row index out of range in column " + std::to_string(n));
            if (i > 0 && col[i] <= col[i - 1])
                throw validation_error("column support not strictly increasing in column " +
                                       std::to_string(n));
        }
        col_edges += col.size();
    }
    for (int m = 0; m < n_rows; ++m) {
        const auto& row = row_supports[m];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] < 0 || row[i] >= n_cols)
                throw validation_error("column index out of range in row " + std::to_string(m));
            if (i > 0 && row[i] <= row[i - 1])
                throw validation_error("row support not strictly increasing in row " +
                                       std::to_string(m));
        }
        row_edges += row.size();
    }
    if (col_edges != row_edges)
        throw validation_error("column and row supports disagree on edge count");
    // cross-consistency
    for (int m = 0; m < n_rows; ++m)
        for (int n : row_supports[m])
            if (!std::binary_search(column_supports[n].begin(), column_supports[n].end(), m))
                throw validation_error("row/column supports describe different matrices");
}

std::size_t ParityCheckMatrix::edge_count() const {
    std::size_t e = 0;
    for (const auto& col : column_supports) e += col.size();
    return e;
}

std::optional<CodeProfile> regular_profile(const ParityCheckMatrix& h) {
    if (h.n_cols == 0 || h.n_rows == 0) return std::nullopt;
    std::size_t d_v = h.column_supports[0].size();
    std::size_t d_c = h.row_supports[0].size();
    for (const auto& col : h.column_supports)
        if (col.size() != d_v) return std::nullopt;
    for (const auto& row : h.row_supports)
        if (row.size() != d_c) return std::nullopt;
    if (d_v == 0 || d_c == 0) return std::nullopt;
    CodeProfile p;
    p.d_v = static_cast<int>(d_v);
    p.d_c = static_cast<int>(d_c);
    long num = h.n_cols - h.n_rows;
    long den = h.n_cols;
    long g = std::gcd(num, den);
    if (g > 0) {
        num /= g;
        den /= g;
    }
    p.rate_num = num;
    p.rate_den = den;
    return p;
}

CodeProfile require_regular(const ParityCheckMatrix& h) {
    auto p = regular_profile(h);
    if (!p)
        throw validation_error(
            "matrix is irregular; the design flow supports (d_v,d_c)-regular codes only");
    return *p;
}

TannerGraph build_tanner_graph(const ParityCheckMatrix& h) {
    h.validate();
    TannerGraph g;
    g.n_vns = h.n_cols;
    g.n_cns = h.n_rows;
    g.vn_edges.resize(h.n_cols);
    g.cn_edges.resize(h.n_rows);
    int id = 0;
    for (int n = 0; n < h.n_cols; ++n) {
        for (int m : h.column_supports[n]) {
            g.vn_edges[n].push_back({m, id});
            g.cn_edges[m].push_back({n, id});
            ++id;
        }
    }
    g.edge_count = static_cast<std::size_t>(id);
    return g;
}

bool check_syndrome(const ParityCheckMatrix& h, std::span<const std::uint8_t> word) {
    if (static_cast<int>(word.size()) != h.n_cols)
        throw validation_error("syndrome word length mismatch");
    for (const auto& row : h.row_supports) {
        unsigned parity = 0;
        for (int n : row) parity ^= word[n] & 1u;
        if (parity) return false;
    }
    return true;
}

// --- alist -----------------------------------------------------------------

namespace {

struct LineReader {
    std::istringstream is;
    long line_no = 0;

    explicit LineReader(const std::string& text) : is(text) {}

    // returns the tokens of the next non-empty line
    std::vector<long> next_ints(const char* what) {
        std::string line;
        while (std::getline(is, line)) {
            ++line_no;
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            std::istringstream ls(line);
            std::vector<long> out;
            long v;
            while (ls >> v) out.push_back(v);
            if (!ls.eof())
                throw parse_error(std::string("non-integer token in ") + what, line_no);
            return out;
        }
        throw parse_error(std::string("truncated file, expected ") + what, line_no);
    }
};

std::vector<int> read_support(LineReader& r, const char* what, long declared_weight,
                              long max_weight, long peer_count) {
    auto toks = r.next_ints(what);
    if (static_cast<long>(toks.size()) < declared_weight ||
        static_cast<long>(toks.size()) > max_weight)
        throw parse_error(std::string("wrong entry count for ") + what, r.line_no);
    std::vector<int> support;
    for (long i = 0; i < static_cast<long>(toks.size()); ++i) {
        long v = toks[i];
        if (i < declared_weight) {
            if (v == 0)
                throw parse_error(std::string("padding zero inside declared weight of ") + what,
                                  r.line_no);
            if (v < 1 || v > peer_count)
                throw parse_error(std::string("index out of range in ") + what, r.line_no);
            support.push_back(static_cast<int>(v - 1));
        } else if (v != 0) {
            throw parse_error(std::string("nonzero entry beyond declared weight of ") + what,
                              r.line_no);
        }
    }
    std::sort(support.begin(), support.end());
    for (std::size_t i = 1; i < support.size(); ++i)
        if (support[i] == support[i - 1])
            throw parse_error(std::string("duplicate index in ") + what, r.line_no);
    return support;
}

} // namespace

ParityCheckMatrix parse_alist(const std::string& text) {
    LineReader r(text);
    auto dims = r.next_ints("header");
    if (dims.size() != 2 || dims[0] <= 0 || dims[1] <= 0)
        throw parse_error("malformed header, expected 'N M'", r.line_no);
    long n_cols = dims[0], n_rows = dims[1];
    auto maxw = r.next_ints("max weights");
    if (maxw.size() != 2 || maxw[0] <= 0 || maxw[1] <= 0)
        throw parse_error("malformed max-weight line", r.line_no);
    long max_col_w = maxw[0], max_row_w = maxw[1];

    auto col_w = r.next_ints("column weights");
    if (static_cast<long>(col_w.size()) != n_cols)
        throw parse_error("column weight count differs from N", r.line_no);
    auto row_w = r.next_ints("row weights");
    if (static_cast<long>(row_w.size()) != n_rows)
        throw parse_error("row weight count differs from M", r.line_no);
    for (long w : col_w)
        if (w < 0 || w > max_col_w)
            throw parse_error("column weight exceeds declared maximum", r.line_no);
    for (long w : row_w)
        if (w < 0 || w > max_row_w)
            throw parse_error("row weight exceeds declared maximum", r.line_no);
    if (*std::max_element(col_w.begin(), col_w.end()) != max_col_w)
        throw parse_error("declared max column weight differs from actual maximum", r.line_no);
    if (*std::max_element(row_w.begin(), row_w.end()) != max_row_w)
        throw parse_error("declared max row weight differs from actual maximum", r.line_no);

    ParityCheckMatrix h;
    h.n_cols = static_cast<int>(n_cols);
    h.n_rows = static_cast<int>(n_rows);
    h.column_supports.reserve(n_cols);
    for (long n = 0; n < n_cols; ++n)
        h.column_supports.push_back(read_support(r, "column support", col_w[n], max_col_w, n_rows));
    h.row_supports.reserve(n_rows);
    for (long m = 0; m < n_rows; ++m)
        h.row_supports.push_back(read_support(r, "row support", row_w[m], max_row_w, n_cols));

    try {
        h.validate();
    } catch (const validation_error& e) {
        throw parse_error(std::string("inconsistent alist: ") + e.what(), r.line_no);
    }
    return h;
}

std::string serialize_alist(const ParityCheckMatrix& h) {
    std::size_t max_col_w = 0, max_row_w = 0;
    for (const auto& c : h.column_supports) max_col_w = std::max(max_col_w, c.size());
    for (const auto& r : h.row_supports) max_row_w = std::max(max_row_w, r.size());
    std::ostringstream os;
    os << h.n_cols << ' ' << h.n_rows << "\n";
    os << max_col_w << ' ' << max_row_w << "\n";
    for (int n = 0; n < h.n_cols; ++n)
        os << h.column_supports[n].size() << (n + 1 < h.n_cols ? ' ' : '\n');
    for (int m = 0; m < h.n_rows; ++m)
        os << h.row_supports[m].size() << (m + 1 < h.n_rows ? ' ' : '\n');
    auto write_padded = [&](const std::vector<int>& support, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            if (i) os << ' ';
            os << (i < support.size() ? support[i] + 1 : 0);
        }
        os << "\n";
    };
    for (const auto& c : h.column_supports) write_padded(c, max_col_w);
    for (const auto& r : h.row_supports) write_padded(r, max_row_w);
    return os.str();
}

// --- quasi-cyclic construction ----------------------------------------------

namespace {

// splitmix64, used only to derive deterministic search orderings
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Searches shift exponents s[i][j] such that no two block-columns produce the
// same shift difference for any pair of block-rows -- the 4-cycle condition
// for an array of circulants. Per-column backtracking over seeded value
// orders; if the budget runs out the column accepting the fewest collisions
// is kept, so the search always terminates with a matrix.
struct QcSearch {
    int d_v, d_c, z;
    std::uint64_t seed;
    std::vector<std::vector<int>> shifts;             // [d_v][d_c]
    std::vector<std::vector<std::uint8_t>> diff_used; // [pair][z]
    long budget = 2000000;

    QcSearch(int dv, int dc, int zz, std::uint64_t sd)
        : d_v(dv), d_c(dc), z(zz), seed(sd), shifts(dv, std::vector<int>(dc, 0)) {
        diff_used.assign(static_cast<std::size_t>(d_v) * d_v, std::vector<std::uint8_t>(z, 0));
    }

    std::uint8_t& used(int a, int b, int diff) { return diff_used[a * d_v + b][diff]; }

    // value order for variable (col, i), a seeded permutation of [0, z)
    std::vector<int> value_order(int col, int i, std::uint64_t restart) const {
        std::vector<int> vals(z);
        for (int v = 0; v < z; ++v) vals[v] = v;
        std::uint64_t state = seed ^ mix64((std::uint64_t(col) << 32) ^ (i << 8) ^ restart);
        for (int v = z - 1; v > 0; --v) {
            state = mix64(state);
            std::swap(vals[v], vals[state % (v + 1)]);
        }
        return vals;
    }

    bool feasible(const std::vector<int>& cand, int i, int value) {
        for (int a = 0; a < i; ++a) {
            int diff = ((cand[a] - value) % z + z) % z;
            if (used(a, i, diff)) return false;
        }
        return true;
    }

    bool extend(std::vector<int>& cand, int col, int i, std::uint64_t restart) {
        if (budget-- <= 0) return false;
        if (i == d_v) return true;
        for (int v : value_order(col, i, restart)) {
            if (!feasible(cand, i, v)) continue;
            cand[i] = v;
            if (extend(cand, col, i + 1, restart)) return true;
        }
        return false;
    }

    int collisions(const std::vector<int>& cand) {
        int bad = 0;
        for (int a = 0; a < d_v; ++a)
            for (int b = a + 1; b < d_v; ++b) {
                int diff = ((cand[a] - cand[b]) % z + z) % z;
                if (used(a, b, diff)) ++bad;
            }
        return bad;
    }

    void commit(int col, const std::vector<int>& cand) {
        for (int a = 0; a < d_v; ++a)
            for (int b = a + 1; b < d_v; ++b) {
                int diff = ((cand[a] - cand[b]) % z + z) % z;
                used(a, b, diff) = 1;
            }
        for (int i = 0; i < d_v; ++i) shifts[i][col] = cand[i];
    }

    void run() {
        for (int col = 0; col < d_c; ++col) {
            std::vector<int> cand(d_v, 0);
            cand[0] = 0; // first block-row pinned, a common normalization
            bool ok = false;
            for (std::uint64_t restart = 0; restart < 32 && !ok; ++restart)
                ok = extend(cand, col, 1, restart);
            if (!ok) {
                // fall back to the least-colliding seeded candidate
                std::vector<int> best;
                int best_bad = -1;
                for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
                    std::vector<int> c(d_v, 0);
                    for (int i = 1; i < d_v; ++i)
                        c[i] = static_cast<int>(
                            mix64(seed ^ (0x51ed2701ull * (col + 1)) ^ (attempt * d_v + i)) % z);
                    int bad = collisions(c);
                    if (best_bad < 0 || bad < best_bad) {
                        best_bad = bad;
                        best = c;
                    }
                }
                cand = best;
            }
            commit(col, cand);
        }
    }
};

} // namespace

ParityCheckMatrix generate_qc_code(int d_v, int d_c, int n_cols, std::uint64_t seed) {
    if (d_v < 2 || d_c <= d_v) throw validation_error("need 2 <= d_v < d_c");
    if (n_cols <= 0 || n_cols % d_c != 0)
        throw validation_error("n_cols must be a positive multiple of d_c");
    int z = n_cols / d_c;
    if (z < d_v) throw validation_error("lifting size too small for the requested degrees");

    QcSearch search(d_v, d_c, z, seed);
    search.run();

    ParityCheckMatrix h;
    h.n_cols = n_cols;
    h.n_rows = d_v * z;
    h.column_supports.assign(n_cols, {});
    h.row_supports.assign(h.n_rows, {});
    for (int bi = 0; bi < d_v; ++bi) {
        for (int bj = 0; bj < d_c; ++bj) {
            int s = search.shifts[bi][bj];
            for (int t = 0; t < z; ++t) {
                // circulant: row (bi*z + t) has a one in column bj*z + ((t + s) mod z)
                int row = bi * z + t;
                int col = bj * z + (t + s) % z;
                h.column_supports[col].push_back(row);
                h.row_supports[row].push_back(col);
            }
        }
    }
    for (auto& c : h.column_supports) std::sort(c.begin(), c.end());
    for (auto& r : h.row_supports) std::sort(r.begin(), r.end());
    h.validate();
    return h;
}

long count_4cycles(const ParityCheckMatrix& h) {
    // two rows sharing k >= 2 columns contribute C(k,2) four-cycles
    long cycles = 0;
    std::vector<int> shared(h.n_rows, 0);
    for (int m = 0; m < h.n_rows; ++m) {
        std::fill(shared.begin(), shared.end(), 0);
        for (int n : h.row_supports[m])
            for (int m2 : h.column_supports[n])
                if (m2 > m) ++shared[m2];
        for (int m2 = m + 1; m2 < h.n_rows; ++m2)
            if (shared[m2] >= 2) cycles += static_cast<long>(shared[m2]) * (shared[m2] - 1) / 2;
    }
    return cycles;
}

} // namespace lutldpc
