#include "qparity/triortho.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

namespace qparity {

namespace {

int env_thread_count() {
    const char* s = std::getenv("QPARITY_THREADS");
    if (!s) return 1;
    const int n = std::atoi(s);
    return n < 1 ? 1 : n;
}

}  // namespace

GF2Matrix GF2Matrix::from_rows(const std::vector<std::uint64_t>& row_words, int cols) {
    if (cols < 1 || cols > 64) throw std::invalid_argument("column count must be in [1, 64]");
    GF2Matrix g;
    g.rows = static_cast<int>(row_words.size());
    g.cols = cols;
    g.bits = row_words;
    for (auto w : g.bits) {
        if (cols < 64 && (w >> cols) != 0) throw std::invalid_argument("row wider than cols");
    }
    return g;
}

GF2Matrix GF2Matrix::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::uint64_t> rows;
    int cols = -1;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;  // blank line: G1/G0 separator
        std::uint64_t w = 0;
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (line[c] == '1') {
                w |= std::uint64_t{1} << c;
            } else if (line[c] != '0') {
                throw std::invalid_argument("matrix rows must be strings of 0/1");
            }
        }
        if (cols < 0) {
            cols = static_cast<int>(line.size());
        } else if (cols != static_cast<int>(line.size())) {
            throw std::invalid_argument("ragged matrix rows");
        }
        rows.push_back(w);
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    return from_rows(rows, cols);
}

int GF2Matrix::row_weight(int r) const { return std::popcount(bits[r]); }

std::uint64_t GF2Matrix::col_mask() const {
    return cols == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cols) - 1;
}

std::string GF2Matrix::to_string() const {
    std::string out;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) out.push_back(at(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

nlohmann::json GF2Matrix::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (int r = 0; r < rows; ++r) {
        std::string s;
        for (int c = 0; c < cols; ++c) s.push_back(at(r, c) ? '1' : '0');
        arr.push_back(s);
    }
    return arr;
}

bool is_biorthogonal(const GF2Matrix& g) {
    for (int a = 0; a < g.rows; ++a) {
        for (int b = a + 1; b < g.rows; ++b) {
            if (std::popcount(g.bits[a] & g.bits[b]) & 1) return false;
        }
    }
    return true;
}

bool is_triorthogonal(const GF2Matrix& g) {
    for (int a = 0; a < g.rows; ++a) {
        for (int b = a + 1; b < g.rows; ++b) {
            if (std::popcount(g.bits[a] & g.bits[b]) & 1) return false;
            for (int c = b + 1; c < g.rows; ++c) {
                if (std::popcount(g.bits[a] & g.bits[b] & g.bits[c]) & 1) return false;
            }
        }
    }
    return true;
}

int gf2_rank(const GF2Matrix& g) {
    std::vector<std::uint64_t> r = g.bits;
    int rank = 0;
    for (int bit = g.cols - 1; bit >= 0 && rank < g.rows; --bit) {
        int piv = -1;
        for (int i = rank; i < g.rows; ++i) {
            if (r[i] >> bit & 1) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(r[rank], r[piv]);
        for (int i = 0; i < g.rows; ++i) {
            if (i != rank && (r[i] >> bit & 1)) r[i] ^= r[rank];
        }
        ++rank;
    }
    return rank;
}

CodeParams code_params(const GF2Matrix& g) {
    if (gf2_rank(g) != g.rows) throw std::invalid_argument("rows are linearly dependent");
    CodeParams p;
    p.n = g.cols;
    std::uint64_t even_cover = 0;
    for (int r = 0; r < g.rows; ++r) {
        if (g.row_weight(r) % 2 == 1) {
            ++p.k;
        } else {
            even_cover |= g.bits[r];
        }
    }
    p.distance_at_least_2 = even_cover == g.col_mask();
    return p;
}

int max_span_weight(const GF2Matrix& g0) {
    if (g0.rows > 20) throw std::invalid_argument("max_span_weight limited to 20 rows");
    int best = 0;
    std::uint64_t acc = 0;
    const std::uint64_t count = std::uint64_t{1} << g0.rows;
    for (std::uint64_t i = 1; i < count; ++i) {
        acc ^= g0.bits[std::countr_zero(i)];  // Gray-code walk of the span
        best = std::max(best, std::popcount(acc));
    }
    return best;
}

nlohmann::json SearchCertificate::to_json() const {
    nlohmann::json j = {
        {"kind", kind},
        {"bounds", bounds},
        {"symmetry_reductions", symmetry_reductions},
        {"nodes", nodes},
        {"result", found ? "WITNESS" : "NONE-FOUND"},
    };
    if (found) {
        j["witness"] = witness.to_json();
        j["witness_reverified"] = witness_reverified;
    }
    if (!extra.is_null()) j["extra"] = extra;
    return j;
}

// ---------------------------------------------------------------------------
// column-wise DFS for search_triorthogonal

namespace {

struct ColumnSearch {
    int n = 0;
    int m = 0;
    int require_k_min = 1;
    bool require_d2 = true;

    int weight_bits = 0;
    int pair_bits = 0;
    int triple_bits = 0;
    std::vector<std::array<std::uint64_t, 2>> phi;  // parity signature per column value
    std::vector<int> pc;

    std::uint64_t nodes = 0;
    bool found = false;
    std::vector<int> cols;
    std::vector<std::uint64_t> witness_rows;

    void build_tables() {
        weight_bits = m;
        pair_bits = m * (m - 1) / 2;
        triple_bits = m * (m - 1) * (m - 2) / 6;
        const int values = 1 << m;
        phi.assign(values, {0, 0});
        pc.assign(values, 0);
        for (int v = 0; v < values; ++v) {
            int k = 0;
            auto set_bit = [&](int on) {
                if (on) phi[v][k / 64] |= std::uint64_t{1} << (k % 64);
                ++k;
            };
            for (int a = 0; a < m; ++a) set_bit(v >> a & 1);
            for (int a = 0; a < m; ++a) {
                for (int b = a + 1; b < m; ++b) set_bit((v >> a) & (v >> b) & 1);
            }
            for (int a = 0; a < m; ++a) {
                for (int b = a + 1; b < m; ++b) {
                    for (int c = b + 1; c < m; ++c) set_bit((v >> a) & (v >> b) & (v >> c) & 1);
                }
            }
            pc[v] = std::popcount(static_cast<unsigned>(v));
        }
    }

    void leaf(const std::array<std::uint64_t, 2>& state) {
        // all pair/triple parities even <=> state has only weight bits set
        std::array<std::uint64_t, 2> masked = state;
        masked[0] &= ~((weight_bits >= 64) ? ~std::uint64_t{0}
                                           : ((std::uint64_t{1} << weight_bits) - 1));
        if (masked[0] != 0 || masked[1] != 0) return;
        const std::uint64_t wpar = state[0] & ((std::uint64_t{1} << weight_bits) - 1);
        if (std::popcount(wpar) < require_k_min) return;

        std::vector<std::uint64_t> rows(m, 0);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < m; ++r) {
                if (cols[c] >> r & 1) rows[r] |= std::uint64_t{1} << c;
            }
        }
        const GF2Matrix g = GF2Matrix::from_rows(rows, n);
        if (gf2_rank(g) != m) return;
        if (require_d2) {
            std::uint64_t cover = 0;
            for (int r = 0; r < m; ++r) {
                if (!(wpar >> r & 1)) cover |= rows[r];
            }
            if (cover != g.col_mask()) return;
        }
        if (!found) {
            found = true;
            witness_rows = rows;
        }
    }

    void rec(int pos, int max_value, int max_pc, std::array<std::uint64_t, 2> state) {
        if (pos == n) {
            leaf(state);
            return;
        }
        const int lo = require_d2 ? 1 : 0;
        for (int v = max_value; v >= lo; --v) {
            if (pc[v] > max_pc) continue;
            ++nodes;
            cols[pos] = v;
            rec(pos + 1, v, max_pc, {state[0] ^ phi[v][0], state[1] ^ phi[v][1]});
        }
    }

    /// Hot path when every parity bit fits one word (m <= 7).
    void rec1(int pos, int max_value, int max_pc, std::uint64_t state) {
        if (pos == n) {
            leaf({state, 0});
            return;
        }
        const int lo = require_d2 ? 1 : 0;
        for (int v = max_value; v >= lo; --v) {
            if (pc[v] > max_pc) continue;
            ++nodes;
            cols[pos] = v;
            rec1(pos + 1, v, max_pc, state ^ phi[v][0]);
        }
    }

    /// One canonical subtree: first column fixed to the top-sorted value of
    /// popcount a.
    void run_subtree(int a) {
        const int v1 = ((1 << a) - 1) << (m - a);
        cols.assign(n, 0);
        cols[0] = v1;
        ++nodes;
        if (weight_bits + pair_bits + triple_bits <= 64) {
            rec1(1, v1, a, phi[v1][0]);
        } else {
            rec(1, v1, a, phi[v1]);
        }
    }
};

}  // namespace

SearchCertificate search_triorthogonal(int n, int m_max, int require_k_min, bool require_d2) {
    if (n < 1 || n > 14) throw std::invalid_argument("search needs 1 <= n <= 14");
    if (m_max < 1 || m_max > std::min(n, 8)) {
        throw std::invalid_argument("search needs 1 <= m_max <= min(n, 8)");
    }
    SearchCertificate cert;
    cert.kind = "triorthogonal-search";
    cert.bounds = {{"n", n},
                   {"m_min", 1},
                   {"m_max", m_max},
                   {"require_k_min", require_k_min},
                   {"require_d2", require_d2}};
    cert.symmetry_reductions = {
        "columns enumerated as non-increasing m-bit values (column permutations)",
        "first column top-sorted with maximal popcount (row permutations)"};

    const int threads = env_thread_count();
    for (int m = 1; m <= m_max; ++m) {
        std::vector<int> firsts;
        for (int a = 1; a <= m; ++a) firsts.push_back(a);

        std::vector<ColumnSearch> searches(firsts.size());
        auto run_one = [&](std::size_t idx) {
            ColumnSearch& s = searches[idx];
            s.n = n;
            s.m = m;
            s.require_k_min = require_k_min;
            s.require_d2 = require_d2;
            s.build_tables();
            s.run_subtree(firsts[idx]);
        };
        if (threads <= 1 || firsts.size() <= 1) {
            for (std::size_t i = 0; i < firsts.size(); ++i) run_one(i);
        } else {
            std::vector<std::future<void>> futures;
            for (std::size_t i = 0; i < firsts.size(); ++i) {
                futures.push_back(std::async(std::launch::async, run_one, i));
            }
            for (auto& f : futures) f.get();
        }
        // merge in subtree order so the reported witness matches a sequential run
        for (const auto& s : searches) {
            cert.nodes += s.nodes;
            if (s.found && !cert.found) {
                cert.found = true;
                cert.witness = GF2Matrix::from_rows(s.witness_rows, n);
            }
        }
    }
    if (cert.found) {
        cert.witness_reverified = is_triorthogonal(cert.witness) &&
                                  gf2_rank(cert.witness) == cert.witness.rows;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// D-block lemma

GF2Matrix canonical_D() {
    return GF2Matrix::parse("111100\n110011\n");
}

namespace {

struct DLemmaHit {
    int width = 0;
    std::vector<std::uint64_t> rows;
};

/// Smallest width in 1..u_max admitting a D block; conditions as in the proof
/// paragraph, with the pair condition optional.
DLemmaHit d_lemma_search(int u_max, bool with_pair_condition, std::uint64_t& nodes) {
    for (int u = 1; u <= u_max; ++u) {
        const std::uint64_t full = (std::uint64_t{1} << u) - 1;
        for (int m = 2; m <= 4; ++m) {
            // multisets of nonzero rows, non-decreasing
            std::vector<std::uint64_t> rows(m, 0);
            std::function<bool(int, std::uint64_t)> rec = [&](int pos, std::uint64_t lo) -> bool {
                if (pos == m) {
                    ++nodes;
                    std::uint64_t cover = 0;
                    for (auto r : rows) cover |= r;
                    if (cover != full) return false;
                    for (int a = 0; a < m; ++a) {
                        for (int b = a + 1; b < m; ++b) {
                            const int overlap = std::popcount(rows[a] & rows[b]);
                            if (overlap & 1) return false;
                            if (with_pair_condition) {
                                if (overlap < 2) return false;
                                if (std::popcount(rows[a] & ~rows[b] & full) < 2) return false;
                                if (std::popcount(rows[b] & ~rows[a] & full) < 2) return false;
                            }
                        }
                    }
                    // span must not contain the all-1 vector
                    std::uint64_t acc = 0;
                    for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
                        acc ^= rows[std::countr_zero(s)];
                        if (acc == full) return false;
                    }
                    return true;
                }
                for (std::uint64_t v = lo; v <= full; ++v) {
                    rows[pos] = v;
                    if (rec(pos + 1, v)) return true;
                }
                return false;
            };
            if (rec(0, 1)) return {u, rows};
        }
    }
    return {};
}

bool same_up_to_column_permutation(const GF2Matrix& a, const GF2Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    auto column_types = [](const GF2Matrix& g) {
        std::vector<std::uint64_t> types;
        for (int c = 0; c < g.cols; ++c) {
            std::uint64_t t = 0;
            for (int r = 0; r < g.rows; ++r) t |= static_cast<std::uint64_t>(g.at(r, c)) << r;
            types.push_back(t);
        }
        std::sort(types.begin(), types.end());
        return types;
    };
    return column_types(a) == column_types(b);
}

}  // namespace

SearchCertificate verify_D_lemma(int u_max) {
    if (u_max < 1 || u_max > 8) throw std::invalid_argument("u_max must be in [1, 8]");
    SearchCertificate cert;
    cert.kind = "d-lemma";
    cert.bounds = {{"u_max", u_max}, {"rows", "2..4"}};
    cert.symmetry_reductions = {"rows enumerated as non-decreasing multisets (row permutations)"};

    const DLemmaHit with = d_lemma_search(u_max, true, cert.nodes);
    const DLemmaHit without = d_lemma_search(u_max, false, cert.nodes);

    cert.extra = {
        {"conditions",
         {">= 2 non-trivial rows", "supported on every column", "pairwise even overlap",
          "row span excludes the all-1 vector",
          "pair condition: overlap >= 2 and >= 2 exclusive columns per row"}},
        {"min_width_with_pair_condition", with.width},
        {"min_width_without_pair_condition", without.width},
        {"pair_condition_changes_min_width", with.width != without.width},
    };
    if (without.width) {
        cert.extra["witness_without_pair_condition"] =
            GF2Matrix::from_rows(without.rows, without.width).to_json();
    }
    if (with.width) {
        cert.found = true;
        cert.witness = GF2Matrix::from_rows(with.rows, with.width);
        cert.witness_reverified = is_biorthogonal(cert.witness);
        cert.extra["matches_canonical_D_up_to_column_permutation"] =
            with.width == canonical_D().cols && same_up_to_column_permutation(cert.witness, canonical_D());
    }
    return cert;
}

// ---------------------------------------------------------------------------
// constrained 14-qubit completion

SearchCertificate complete_14_qubit_code() {
    SearchCertificate cert;
    cert.kind = "complete-14";
    cert.bounds = {{"n", 14}, {"block", "(A B / C D / 1 0)"}, {"w", 8}, {"u", 6}};
    cert.symmetry_reductions = {
        "left columns enumerated as non-increasing 4-bit values (column permutations)"};

    const GF2Matrix D = canonical_D();
    const std::uint64_t D0 = D.bits[0], D1 = D.bits[1];

    // parity signature of a left column over the four unknown rows
    constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    std::array<std::uint32_t, 16> phi{};
    for (int v = 0; v < 16; ++v) {
        std::uint32_t s = 0;
        int k = 0;
        for (int a = 0; a < 4; ++a) s |= static_cast<std::uint32_t>(v >> a & 1) << k++;
        for (const auto& p : kPairs) s |= static_cast<std::uint32_t>((v >> p[0]) & (v >> p[1]) & 1) << k++;
        for (const auto& t : kTriples) {
            s |= static_cast<std::uint32_t>((v >> t[0]) & (v >> t[1]) & (v >> t[2]) & 1) << k++;
        }
        phi[v] = s;
    }

    std::vector<std::uint64_t> odd6;
    for (std::uint64_t b = 1; b < 64; ++b) {
        if (std::popcount(b) & 1) odd6.push_back(b);
    }

    const std::uint64_t left_all = (std::uint64_t{1} << 8) - 1;  // columns 0..7
    auto build = [&](const std::vector<int>& cols, std::uint64_t B0, std::uint64_t B1) {
        std::vector<std::uint64_t> rows(5, 0);
        for (int c = 0; c < 8; ++c) {
            for (int r = 0; r < 4; ++r) {
                if (cols[c] >> r & 1) rows[r] |= std::uint64_t{1} << c;
            }
        }
        rows[0] |= B0 << 8;
        rows[1] |= B1 << 8;
        rows[2] |= D0 << 8;
        rows[3] |= D1 << 8;
        rows[4] = left_all;
        return GF2Matrix::from_rows(rows, 14);
    };

    for (std::uint64_t B0 : odd6) {
        for (std::uint64_t B1 : odd6) {
            if (std::popcount(B0 & B1) & 1) continue;
            if ((std::popcount(B0 & D0) & 1) || (std::popcount(B0 & D1) & 1)) continue;
            if ((std::popcount(B1 & D0) & 1) || (std::popcount(B1 & D1) & 1)) continue;
            // left-side parity targets: even row weights, even pair overlaps
            // (forced by triples with the all-ones row), triple overlaps equal
            // to the right-side triple parities
            const std::uint64_t right[4] = {B0, B1, D0, D1};
            std::uint32_t target = 0;
            int k = 10;
            for (const auto& t : kTriples) {
                target |= static_cast<std::uint32_t>(
                              std::popcount(right[t[0]] & right[t[1]] & right[t[2]]) & 1)
                          << k++;
            }
            std::vector<int> cols(8, 0);
            bool hit = false;
            std::function<void(int, int, std::uint32_t)> rec = [&](int pos, int maxv,
                                                                   std::uint32_t state) {
                if (hit) return;
                if (pos == 8) {
                    if (state != target) return;
                    const GF2Matrix g = build(cols, B0, B1);
                    if (gf2_rank(g) != 5) return;
                    if (!is_triorthogonal(g)) return;
                    const GF2Matrix g0 = GF2Matrix::from_rows(
                        {g.bits[2], g.bits[3], g.bits[4]}, 14);
                    if (max_span_weight(g0) != 8) return;
                    hit = true;
                    cert.found = true;
                    cert.witness = g;
                    return;
                }
                for (int v = maxv; v >= 0; --v) {
                    ++cert.nodes;
                    cols[pos] = v;
                    rec(pos + 1, v, state ^ phi[v]);
                    if (hit) return;
                }
            };
            rec(0, 15, 0);
            if (cert.found) break;
        }
        if (cert.found) break;
    }

    if (cert.found) {
        const CodeParams p = code_params(cert.witness);
        cert.witness_reverified =
            is_triorthogonal(cert.witness) && p.n == 14 && p.k == 2 && p.distance_at_least_2;
        cert.extra = {{"code_params", {{"n", p.n}, {"k", p.k}, {"d_ge_2", p.distance_at_least_2}}},
                      {"g0_max_span_weight", 8},
                      {"canonical_D_rows", canonical_D().to_json()}};
    }
    return cert;
}

}  // namespace qparity
