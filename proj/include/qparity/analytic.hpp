#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qparity {

/// p_good + p_bad of the ideal parity check: (1 + (1 - 2 eps)^{2N}) / 2, the
/// probability of an even number of input errors.
double acceptance_closed_form(double eps_theta, int N);

/// (eps/2)(1 - (1 - 2 eps)^{2N-1}): error on a chosen output and an odd number
/// on the remaining 2N-1. The binomial-sum form is the independent route.
double p_bad_closed_form(double eps_theta, int N);
double p_bad_binomial(double eps_theta, int N);

/// Synthillation output-error bound: 1 - 2(1-e)^{4N+4} / (1 + (1-2e)^{4N+4}).
double synthillation_error_bound(double eps_pi8, int N);
/// Exact leading-order coefficient of the bound: 6 + 14N + 8N^2.
int synthillation_leading_coeff(int N);

struct NoisePoint {
    double eps_theta = 0.0;
    double eps_pi8 = -1.0;   // negative = not supplied
    double eps_hash = -1.0;  // negative = not supplied
    double eta = 0.0;
    int N = 1;
};

struct BoundResult {
    double value;
    double eps_hash_used;
    bool eps_hash_from_bound;  // true when derived from eps_pi8
    bool both_supplied;        // eps_hash took precedence, eps_pi8 ignored
};

/// The exact two-line bound:
///   [(1-eta)^N ((2N-1)(1-e#) et^2 + e#) + (1-(1-eta)^N)]
///   / [(1-eta)^N (1-e#) (p_good+p_bad) + (1-(1-eta)^N)]
/// with e# taken from the synthillation bound when only eps_pi8 is supplied.
/// Throws std::domain_error on a non-positive denominator.
BoundResult epsilon_prime_bound(const NoisePoint& point);

struct LeadingCoeffs {
    double eps_theta_sq;  // 2N - 1
    double eps_pi8_sq;    // 6 + 14N + 8N^2
    double eta;           // N
};
LeadingCoeffs epsilon_prime_bound_leading(int N);

enum class ProtocolFamily { ThisWork, BravyiHaah, Mek, DuclosCianciPoulin };

ProtocolFamily family_from_name(const std::string& name);
const char* family_name(ProtocolFamily family);

struct ProtocolSpec {
    ProtocolFamily family = ProtocolFamily::ThisWork;
    int k = 0;  // outputs, for the 3k+4 / 3k+8 families (even)
    int N = 0;  // block parameter, for DCP / this-work in N form
};

struct OverheadResult {
    int n = 0;  // total inputs
    int k = 0;  // outputs
    double n_over_k = 0.0;
    int t_state_inputs = 0;  // DCP split
    int angle_inputs = 0;
};

/// this-work: 3k+4 -> k; Bravyi-Haah: 3k+8 -> k (both even k);
/// MEK: 10 -> 2; DCP: 2N angle states + (8N+4) T-states -> 2N.
OverheadResult overhead(const ProtocolSpec& spec);

struct TCount {
    int injected_t_count;        // 4N+3
    int synthillation_t_states;  // 4N+4
};
TCount tcount_cczhash(int N);

// Stored comparison constants for the reference protocols (step-one
// internals are modelled, not simulated).
double reference_synth_eps_sq_coeff(int N);        // 8 (N=1), 16 (N=2)
double reference_p_synth_linear(int N);            // -8 (N=1), -12 (N=2)
double reference_p_parity_eps_theta_linear(int N); // -2 (N=1), -6 (N=2), as published
double chained_pi8_leading_coeff(int N);       // 9 (N=1), 19 (N=2)
double bravyi_haah_eps_sq_coeff(int k);        // 25 for the 32 -> 8 instance

struct ConcatenationLevel {
    int level;
    double eps_in;
    double eps_out;
    double success_prob;
    double cumulative_cost;  // inputs per output so far
};

struct ConcatenationResult {
    std::vector<ConcatenationLevel> levels;
    double eps_out;
    double total_inputs_per_output;
    nlohmann::json to_json() const;
};

/// Repeated leading-order map eps -> coeff * eps^2 at theta = pi/8 (so eta=0),
/// using the stored coefficients; success probabilities from the even-parity
/// closed form when enabled, else 1. Throws on unsupported parameters or a
/// non-contracting recursion.
ConcatenationResult concatenation_cost(const ProtocolSpec& spec, int levels, double eps_in,
                                       bool success_model);

}  // namespace qparity
