#include "qparity/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace qparity {

namespace {
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

NoisePolynomial NoisePolynomial::constant(double v) {
    NoisePolynomial p;
    p.add_term(0, 0, 0, v);
    return p;
}

NoisePolynomial NoisePolynomial::var_power(int var, int k) {
    NoisePolynomial p;
    Key key{0, 0, 0};
    key[var] = k;
    p.terms_[key] = 1.0;
    return p;
}

NoisePolynomial NoisePolynomial::one_minus_var_power(int var, int k) {
    NoisePolynomial p;
    for (int j = 0; j <= k; ++j) {
        Key key{0, 0, 0};
        key[var] = j;
        p.terms_[key] = binom(k, j) * ((j % 2) ? -1.0 : 1.0);
    }
    return p;
}

void NoisePolynomial::add_term(int a, int b, int c, double v) {
    if (v == 0.0) return;
    terms_[Key{a, b, c}] += v;
}

double NoisePolynomial::coeff(int a, int b, int c) const {
    auto it = terms_.find(Key{a, b, c});
    return it == terms_.end() ? 0.0 : it->second;
}

NoisePolynomial& NoisePolynomial::operator+=(const NoisePolynomial& other) {
    for (const auto& [k, v] : other.terms_) terms_[k] += v;
    return *this;
}

NoisePolynomial& NoisePolynomial::add_scaled(const NoisePolynomial& other, double scale) {
    for (const auto& [k, v] : other.terms_) terms_[k] += scale * v;
    return *this;
}

NoisePolynomial NoisePolynomial::operator*(const NoisePolynomial& other) const {
    NoisePolynomial out;
    for (const auto& [ka, va] : terms_) {
        for (const auto& [kb, vb] : other.terms_) {
            out.terms_[Key{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}] += va * vb;
        }
    }
    return out;
}

NoisePolynomial NoisePolynomial::scaled(double s) const {
    NoisePolynomial out = *this;
    for (auto& [k, v] : out.terms_) v *= s;
    return out;
}

NoisePolynomial NoisePolynomial::truncated(int max_total_degree) const {
    NoisePolynomial out;
    for (const auto& [k, v] : terms_) {
        if (k[0] + k[1] + k[2] <= max_total_degree) out.terms_[k] = v;
    }
    return out;
}

double NoisePolynomial::eval(double eps_theta, double eps_hash, double eta) const {
    double r = 0.0;
    for (const auto& [k, v] : terms_) {
        r += v * std::pow(eps_theta, k[0]) * std::pow(eps_hash, k[1]) * std::pow(eta, k[2]);
    }
    return r;
}

NoisePolynomial NoisePolynomial::series_divide(const NoisePolynomial& num,
                                               const NoisePolynomial& den, int order) {
    const double d0 = den.coeff(0, 0, 0);
    if (d0 == 0.0) throw std::domain_error("series_divide: denominator vanishes at origin");
    // 1/den = (1/d0) * sum_k (-den_bar/d0)^k with den_bar = den - d0
    NoisePolynomial den_bar = den;
    den_bar.terms_.erase(Key{0, 0, 0});
    NoisePolynomial inv = NoisePolynomial::constant(1.0 / d0);
    NoisePolynomial pow_term = NoisePolynomial::constant(1.0);
    for (int k = 1; k <= order; ++k) {
        pow_term = (pow_term * den_bar).truncated(order);
        inv.add_scaled(pow_term, std::pow(-1.0 / d0, k) / d0);
    }
    return (num * inv).truncated(order);
}

nlohmann::json NoisePolynomial::to_json(double prune) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : terms_) {
        if (std::abs(v) < prune) continue;
        arr.push_back({{"exponents", {k[0], k[1], k[2]}}, {"coeff", v}});
    }
    return arr;
}

}  // namespace qparity
