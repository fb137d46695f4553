#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qparity/circuit.hpp"
#include "qparity/polynomial.hpp"

namespace qparity {

enum class ResourceModelKind { UniformZ, SingleZUniform, WorstCase, Custom };

/// Conditional distribution of the Z pattern carried by the CCZ_#N resource,
/// given that the single aggregate resource fault (probability eps_hash)
/// occurred. Patterns are bitmasks over the block's touched qubits in sorted
/// machine order.
struct ResourceNoiseModel {
    ResourceModelKind kind = ResourceModelKind::SingleZUniform;
    std::vector<std::pair<std::uint32_t, double>> custom;

    std::string name() const;
    static ResourceNoiseModel from_name(const std::string& name);
};

/// Conditional pattern support for a model: (mask, probability) pairs summing
/// to one. WorstCase simulates every candidate pattern on the ideal circuit
/// and keeps the one maximizing the per-output maximum error weight (ties:
/// smallest mask).
std::vector<std::pair<std::uint32_t, double>> resolve_resource_support(
    int N, const std::vector<double>& thetas, const ResourceNoiseModel& model);

/// One pure fault assignment: Z on a subset of inputs, at most one resource
/// pattern, Z on a subset of pivots.
struct FaultPattern {
    std::uint32_t input_mask = 0;   // bit i-1 = Z on input i
    int resource_index = -1;        // index into the support list, -1 = no fault
    std::uint32_t resource_mask = 0;
    double resource_prob = 0.0;     // conditional probability of this pattern
    std::uint32_t pivot_mask = 0;   // bit j-1 = Z after the pivot of gadget j

    /// Probability of this pattern as an expanded polynomial in
    /// (eps_theta, eps_hash, eta).
    NoisePolynomial probability(int N) const;
};

/// Exhaustive, mutually exclusive pattern list; the probability polynomials
/// sum to the constant 1. Throws for N > 3.
std::vector<FaultPattern> enumerate_patterns(
    int N, const std::vector<std::pair<std::uint32_t, double>>& support);

struct PatternResult {
    double acceptance = 0.0;             // accepted weight
    std::vector<double> error_weight;    // accepted-and-errored weight per output
};

/// Runs one fault pattern through the full protocol: inputs prepared as
/// (Z^fault) R(theta_j)|+>, resource Zs inserted right after the CCZ_#N block,
/// pivot Zs right after R(2 theta_j); gadget outcomes are summed (corrected),
/// the parity outcome postselected.
PatternResult simulate_pattern(const Circuit& circuit, const std::vector<double>& thetas,
                               const FaultPattern& pattern);

struct SimulationReport {
    int N = 0;
    std::vector<double> thetas;
    std::string model_name;
    std::size_t pattern_count = 0;
    NoisePolynomial acceptance;
    std::vector<NoisePolynomial> error;  // one per output qubit

    double eps_prime_at(double eps_theta, double eps_hash, double eta, int output = 0) const;
    double eps_prime_max_at(double eps_theta, double eps_hash, double eta) const;
    nlohmann::json to_json() const;
};

/// Full pipeline: enumerate, simulate, and assemble the exact polynomials.
SimulationReport simulate_protocol(int N, const std::vector<double>& thetas,
                                   const ResourceNoiseModel& model);

struct CoefficientSet {
    double eps_theta_sq;     // eps_theta^2 coefficient of eps'
    double eta_lin;          // eta coefficient of eps'
    double eps_hash_lin;     // eps_hash coefficient of eps' (model dependent)
    double pp_eps_theta;     // linear coefficients of p_parity
    double pp_eta;
    double pp_eps_hash;
    double pp_eps_theta_closed_form;  // -2N, from the even-parity closed form
    double pp_eps_theta_published;        // the published constant, N in {1,2}
};

/// Leading coefficients of the normalized eps' series, by exact truncated
/// polynomial division of error/acceptance.
CoefficientSet extract_coefficients(const SimulationReport& report);

nlohmann::json coefficients_to_json(const CoefficientSet& c);
std::string coefficients_to_csv(const CoefficientSet& c);

struct ThetaScanResult {
    std::vector<double> thetas;
    std::vector<CoefficientSet> coefficients;
    double max_deviation;       // over the theta-independent coefficient set
    double eps_hash_deviation;  // informational: model-dependent coefficient
    nlohmann::json to_json() const;
};

/// Runs the full pipeline per angle and reports the max pairwise deviation of
/// the theta-independent coefficients (eps_theta^2 and eta of eps'; eps_theta
/// and eta of p_parity). Rejects fewer than two angles and angles within 1e-9
/// of a multiple of pi/2 (degenerate pivots).
ThetaScanResult theta_independence_scan(int N, const std::vector<double>& thetas,
                                        const ResourceNoiseModel& model);

bool is_degenerate_angle(double theta);

struct MonteCarloResult {
    double p_parity_hat = 0.0;
    double p_parity_se = 0.0;
    double eps_prime_hat = 0.0;
    double eps_prime_se = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    nlohmann::json to_json() const;
};

/// Sampling cross-check of the exact polynomials: fault patterns are sampled
/// (seeded, deterministic) and each distinct pattern's quantum weights are
/// computed exactly once. eps' uses the ratio estimator with a delta-method
/// standard error.
MonteCarloResult monte_carlo_estimate(int N, const std::vector<double>& thetas,
                                      const ResourceNoiseModel& model, double eps_theta,
                                      double eps_hash, double eta, std::uint64_t samples,
                                      std::uint64_t seed);

}  // namespace qparity
