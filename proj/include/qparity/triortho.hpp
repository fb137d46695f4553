#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qparity {

/// Binary matrix with rows packed one machine word each (cols <= 64).
/// Column c of row r is bit c of bits[r]; strings read left-to-right as
/// columns 0..n-1.
struct GF2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> bits;

    static GF2Matrix from_rows(const std::vector<std::uint64_t>& row_words, int cols);
    static GF2Matrix parse(const std::string& text);

    int at(int r, int c) const { return static_cast<int>(bits[r] >> c & 1); }
    int row_weight(int r) const;
    std::uint64_t col_mask() const;
    std::string to_string() const;
    nlohmann::json to_json() const;  // list of row strings
};

/// Even overlap for all row pairs.
bool is_biorthogonal(const GF2Matrix& g);
/// Even overlap for all row pairs and all row triples.
bool is_triorthogonal(const GF2Matrix& g);

int gf2_rank(const GF2Matrix& g);

struct CodeParams {
    int n = 0;
    int k = 0;  // number of odd-weight rows
    bool distance_at_least_2 = false;
};

/// [[n, k, d]] parameters under the standard reading: rows split into odd (G1)
/// and even (G0) weight; d >= 2 iff the even rows are non-trivially supported
/// on every column. Throws std::invalid_argument on linearly dependent rows.
CodeParams code_params(const GF2Matrix& g);

/// Maximum Hamming weight over the full GF(2) row span of g0 (the empty
/// combination counts as weight 0). Needs at most 20 rows.
int max_span_weight(const GF2Matrix& g0);

struct SearchCertificate {
    std::string kind;
    nlohmann::json bounds;
    std::vector<std::string> symmetry_reductions;
    std::uint64_t nodes = 0;
    bool found = false;
    GF2Matrix witness;
    bool witness_reverified = false;
    nlohmann::json extra;

    nlohmann::json to_json() const;
};

/// Exhaustive search over m x n binary matrices (exactly n columns,
/// m = 1..m_max rows) for a triorthogonal matrix with at least require_k_min
/// odd rows, linearly independent rows, and (optionally) the d >= 2 column
/// support criterion. Columns are enumerated as non-increasing m-bit values;
/// the first column is canonicalized to top-sorted form. The tree is walked
/// completely (node counts are reproducible); the witness, if any, is the
/// first in canonical order. Pre: n <= 14, m_max <= min(n, 8).
SearchCertificate search_triorthogonal(int n, int m_max, int require_k_min = 1,
                                       bool require_d2 = true);

/// Minimal-width search for the D block: >= 2 nontrivial rows (2..4 searched),
/// support on every column, pairwise even overlap, row span free of the all-1
/// vector, and the pair condition (overlap >= 2 with >= 2 exclusive columns
/// per row). Also reports the minimal width with the pair condition dropped,
/// so the condition's effect is on record. Pre: u_max <= 8.
SearchCertificate verify_D_lemma(int u_max);

/// Constrained completion of the minimal block structure at n = 14: rows
/// (A|B), (A'|B'), (C|D1), (C'|D2), (1^8|0^6) with the canonical D fixed and the
/// all-ones row of width 8 the heaviest element of span(G0). Returns the first
/// witness in canonical order, re-verified by the standalone checkers.
SearchCertificate complete_14_qubit_code();

/// The canonical minimal-width D block.
GF2Matrix canonical_D();

}  // namespace qparity
