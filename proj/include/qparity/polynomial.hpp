#pragma once

#include <array>
#include <map>

#include "json.hpp"

namespace qparity {

/// Multivariate polynomial in the three fault rates, sum of
/// coeff * eps_theta^a * eps_hash^b * eta^c. Exponent triples are kept in a
/// sorted map so iteration (and serialization) order is deterministic.
class NoisePolynomial {
public:
    using Key = std::array<int, 3>;

    static NoisePolynomial constant(double v);
    /// x_var^k as a single monomial (var: 0 = eps_theta, 1 = eps_hash, 2 = eta).
    static NoisePolynomial var_power(int var, int k);
    /// (1 - x_var)^k expanded binomially.
    static NoisePolynomial one_minus_var_power(int var, int k);

    void add_term(int a, int b, int c, double v);
    double coeff(int a, int b, int c) const;
    bool empty() const { return terms_.empty(); }
    const std::map<Key, double>& terms() const { return terms_; }

    NoisePolynomial& operator+=(const NoisePolynomial& other);
    NoisePolynomial& add_scaled(const NoisePolynomial& other, double scale);
    NoisePolynomial operator*(const NoisePolynomial& other) const;
    NoisePolynomial scaled(double s) const;
    NoisePolynomial truncated(int max_total_degree) const;

    double eval(double eps_theta, double eps_hash, double eta) const;

    /// Formal power series of num/den truncated to total degree `order`.
    /// Requires den(0,0,0) != 0.
    static NoisePolynomial series_divide(const NoisePolynomial& num, const NoisePolynomial& den,
                                         int order);

    /// List of {"exponents": [a,b,c], "coeff": v}; terms below `prune` dropped.
    nlohmann::json to_json(double prune = 1e-12) const;

private:
    std::map<Key, double> terms_;
};

}  // namespace qparity
