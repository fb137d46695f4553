#pragma once

// Shared test support: independent oracles (combinatorial closed forms,
// naive GF(2) checks, Richardson extrapolation) and a subprocess helper.
// Everything here is deliberately written along a different route than the
// library code it checks.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qparity/polynomial.hpp"
#include "qparity/triortho.hpp"

namespace testsupport {

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Acceptance polynomial of the ideal parity check by direct enumeration of
/// the 2^{2N} input error patterns: sum over even-weight patterns of
/// eps^e (1-eps)^{2N-e}, expanded into coefficients of eps^j.
inline qparity::NoisePolynomial oracle_acceptance_poly(int N) {
    using qparity::NoisePolynomial;
    NoisePolynomial acc;
    for (int pattern = 0; pattern < (1 << (2 * N)); ++pattern) {
        const int e = __builtin_popcount(pattern);
        if (e % 2) continue;
        acc += NoisePolynomial::var_power(0, e) *
               NoisePolynomial::one_minus_var_power(0, 2 * N - e);
    }
    return acc;
}

/// Unnormalized error polynomial for output 0: patterns with an error on
/// input 1 and even total weight.
inline qparity::NoisePolynomial oracle_error_poly(int N) {
    using qparity::NoisePolynomial;
    NoisePolynomial err;
    for (int pattern = 0; pattern < (1 << (2 * N)); ++pattern) {
        const int e = __builtin_popcount(pattern);
        if (e % 2) continue;
        if (!(pattern & 1)) continue;
        err += NoisePolynomial::var_power(0, e) *
               NoisePolynomial::one_minus_var_power(0, 2 * N - e);
    }
    return err;
}

inline double max_coeff_diff(const qparity::NoisePolynomial& a, const qparity::NoisePolynomial& b) {
    double d = 0.0;
    for (const auto& [key, v] : a.terms()) d = std::max(d, std::abs(v - b.coeff(key[0], key[1], key[2])));
    for (const auto& [key, v] : b.terms()) d = std::max(d, std::abs(v - a.coeff(key[0], key[1], key[2])));
    return d;
}

/// Naive per-entry triorthogonality check (the packed-word oracle pair).
inline bool naive_is_triorthogonal(const qparity::GF2Matrix& g) {
    for (int a = 0; a < g.rows; ++a) {
        for (int b = a + 1; b < g.rows; ++b) {
            int pair = 0;
            for (int c = 0; c < g.cols; ++c) pair += g.at(a, c) * g.at(b, c);
            if (pair % 2) return false;
            for (int d = b + 1; d < g.rows; ++d) {
                int triple = 0;
                for (int c = 0; c < g.cols; ++c) triple += g.at(a, c) * g.at(b, c) * g.at(d, c);
                if (triple % 2) return false;
            }
        }
    }
    return true;
}

inline bool naive_is_biorthogonal(const qparity::GF2Matrix& g) {
    for (int a = 0; a < g.rows; ++a) {
        for (int b = a + 1; b < g.rows; ++b) {
            int pair = 0;
            for (int c = 0; c < g.cols; ++c) pair += g.at(a, c) * g.at(b, c);
            if (pair % 2) return false;
        }
    }
    return true;
}

inline qparity::GF2Matrix random_matrix(std::mt19937_64& rng, int max_rows, int max_cols) {
    std::uniform_int_distribution<int> rows_d(1, max_rows), cols_d(1, max_cols);
    const int rows = rows_d(rng), cols = cols_d(rng);
    std::vector<std::uint64_t> r(rows);
    const std::uint64_t mask = cols == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cols) - 1;
    for (auto& w : r) w = rng() & mask;
    return qparity::GF2Matrix::from_rows(r, cols);
}

inline qparity::GF2Matrix permute_columns(const qparity::GF2Matrix& g, std::mt19937_64& rng) {
    std::vector<int> perm(g.cols);
    for (int i = 0; i < g.cols; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint64_t> rows(g.rows, 0);
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            if (g.at(r, c)) rows[r] |= std::uint64_t{1} << perm[c];
        }
    }
    return qparity::GF2Matrix::from_rows(rows, g.cols);
}

/// Limit of f(t) as t -> 0+ by polynomial (Neville) extrapolation through
/// (t_i, f(t_i)) at t_i = t0 / 2^i.
inline double extrapolate_to_zero(const std::function<double(double)>& f, double t0, int points) {
    std::vector<double> t(points), v(points);
    for (int i = 0; i < points; ++i) {
        t[i] = t0 / std::pow(2.0, i);
        v[i] = f(t[i]);
    }
    for (int lvl = 1; lvl < points; ++lvl) {
        for (int i = 0; i + lvl < points; ++i) {
            v[i] = (t[i] * v[i + 1] - t[i + lvl] * v[i]) / (t[i] - t[i + lvl]);
        }
    }
    return v[0];
}

struct CommandResult {
    int exit_code;
    std::string output;
};

inline CommandResult run_command(const std::string& command) {
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    const int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

}  // namespace testsupport
