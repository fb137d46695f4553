#include "qparity/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qparity {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_rate(double eps, const char* name) {
    if (eps < 0.0 || eps >= 1.0) {
        throw std::domain_error(std::string(name) + " must lie in [0, 1)");
    }
}

}  // namespace

double acceptance_closed_form(double eps_theta, int N) {
    check_rate(eps_theta, "eps_theta");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return 0.5 * (1.0 + std::pow(1.0 - 2.0 * eps_theta, 2 * N));
}

double p_bad_closed_form(double eps_theta, int N) {
    check_rate(eps_theta, "eps_theta");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return 0.5 * eps_theta * (1.0 - std::pow(1.0 - 2.0 * eps_theta, 2 * N - 1));
}

double p_bad_binomial(double eps_theta, int N) {
    check_rate(eps_theta, "eps_theta");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    double sum = 0.0;
    for (int j = 1; j <= N; ++j) {
        sum += binom(2 * N - 1, 2 * j - 1) * std::pow(eps_theta, 2 * j - 1) *
               std::pow(1.0 - eps_theta, 2 * N - 2 * j);
    }
    return eps_theta * sum;
}

double synthillation_error_bound(double eps_pi8, int N) {
    if (eps_pi8 < 0.0 || eps_pi8 >= 0.5) {
        throw std::domain_error("eps_pi8 must lie in [0, 0.5)");
    }
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    const int q = 4 * N + 4;
    // 1 - 2(1-e)^q / (1 + (1-2e)^q), written through expm1 so the O(e^2)
    // result does not drown in cancellation at small rates
    const double am1 = std::expm1(q * std::log1p(-eps_pi8));      // (1-e)^q - 1
    const double bm1 = std::expm1(q * std::log1p(-2.0 * eps_pi8));  // (1-2e)^q - 1
    return (bm1 - 2.0 * am1) / (2.0 + bm1);
}

int synthillation_leading_coeff(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return 6 + 14 * N + 8 * N * N;
}

BoundResult epsilon_prime_bound(const NoisePoint& point) {
    const int N = point.N;
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    check_rate(point.eps_theta, "eps_theta");
    check_rate(point.eta, "eta");

    BoundResult out{};
    out.both_supplied = point.eps_hash >= 0.0 && point.eps_pi8 >= 0.0;
    if (point.eps_hash >= 0.0) {
        check_rate(point.eps_hash, "eps_hash");
        out.eps_hash_used = point.eps_hash;
        out.eps_hash_from_bound = false;
    } else if (point.eps_pi8 >= 0.0) {
        out.eps_hash_used = synthillation_error_bound(point.eps_pi8, N);
        out.eps_hash_from_bound = true;
    } else {
        out.eps_hash_used = 0.0;
        out.eps_hash_from_bound = false;
    }

    const double eh = out.eps_hash_used;
    const double et = point.eps_theta;
    const double good = std::pow(1.0 - point.eta, N);
    const double pgb = acceptance_closed_form(et, N);
    const double num = good * ((2 * N - 1) * (1.0 - eh) * et * et + eh) + (1.0 - good);
    const double den = good * (1.0 - eh) * pgb + (1.0 - good);
    if (den <= 0.0) throw std::domain_error("bound denominator is non-positive");
    out.value = num / den;
    return out;
}

LeadingCoeffs epsilon_prime_bound_leading(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return {static_cast<double>(2 * N - 1), static_cast<double>(synthillation_leading_coeff(N)),
            static_cast<double>(N)};
}

ProtocolFamily family_from_name(const std::string& name) {
    if (name == "this-work") return ProtocolFamily::ThisWork;
    if (name == "bravyi-haah") return ProtocolFamily::BravyiHaah;
    if (name == "mek") return ProtocolFamily::Mek;
    if (name == "dcp" || name == "duclos-cianci-poulin") return ProtocolFamily::DuclosCianciPoulin;
    throw std::invalid_argument("unknown protocol family: " + name);
}

const char* family_name(ProtocolFamily family) {
    switch (family) {
        case ProtocolFamily::ThisWork: return "this-work";
        case ProtocolFamily::BravyiHaah: return "bravyi-haah";
        case ProtocolFamily::Mek: return "mek";
        case ProtocolFamily::DuclosCianciPoulin: return "dcp";
    }
    return "?";
}

OverheadResult overhead(const ProtocolSpec& spec) {
    OverheadResult out;
    switch (spec.family) {
        case ProtocolFamily::ThisWork: {
            const int k = spec.k > 0 ? spec.k : 2 * spec.N;
            if (k < 2 || k % 2 != 0) throw std::invalid_argument("this-work needs even k >= 2");
            out.n = 3 * k + 4;
            out.k = k;
            break;
        }
        case ProtocolFamily::BravyiHaah: {
            if (spec.k < 2 || spec.k % 2 != 0) {
                throw std::invalid_argument("bravyi-haah needs even k >= 2");
            }
            out.n = 3 * spec.k + 8;
            out.k = spec.k;
            break;
        }
        case ProtocolFamily::Mek: {
            out.n = 10;
            out.k = 2;
            break;
        }
        case ProtocolFamily::DuclosCianciPoulin: {
            if (spec.N < 1) throw std::invalid_argument("dcp needs N >= 1");
            out.angle_inputs = 2 * spec.N;
            out.t_state_inputs = 8 * spec.N + 4;
            out.n = out.angle_inputs + out.t_state_inputs;
            out.k = 2 * spec.N;
            break;
        }
    }
    out.n_over_k = static_cast<double>(out.n) / out.k;
    return out;
}

TCount tcount_cczhash(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return {4 * N + 3, 4 * N + 4};
}

double reference_synth_eps_sq_coeff(int N) {
    if (N == 1) return 8.0;
    if (N == 2) return 16.0;
    throw std::invalid_argument("reference synthillation coefficients stored for N in {1,2}");
}

double reference_p_synth_linear(int N) {
    if (N == 1) return -8.0;
    if (N == 2) return -12.0;
    throw std::invalid_argument("reference p_synth stored for N in {1,2}");
}

double reference_p_parity_eps_theta_linear(int N) {
    if (N == 1) return -2.0;
    if (N == 2) return -6.0;
    throw std::invalid_argument("reference p_parity stored for N in {1,2}");
}

double chained_pi8_leading_coeff(int N) {
    // eta is forced to 0 at theta = pi/8 (the pivot R(pi/4) is Clifford);
    // combined coefficient = synthillation term + the input-error term 2N-1.
    return reference_synth_eps_sq_coeff(N) + (2 * N - 1);
}

double bravyi_haah_eps_sq_coeff(int k) {
    if (k == 8) return 25.0;
    throw std::invalid_argument("Bravyi-Haah coefficient stored for k = 8 only");
}

namespace {

double leading_map_coeff(const ProtocolSpec& spec) {
    switch (spec.family) {
        case ProtocolFamily::ThisWork: {
            const int k = spec.k > 0 ? spec.k : 2 * spec.N;
            return chained_pi8_leading_coeff(k / 2);  // throws outside {2,4}
        }
        case ProtocolFamily::BravyiHaah:
            return bravyi_haah_eps_sq_coeff(spec.k);
        case ProtocolFamily::Mek:
        case ProtocolFamily::DuclosCianciPoulin:
            throw std::invalid_argument("no stored leading-order map for this family");
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace

ConcatenationResult concatenation_cost(const ProtocolSpec& spec, int levels, double eps_in,
                                       bool success_model) {
    if (levels < 1) throw std::invalid_argument("need at least one level");
    check_rate(eps_in, "eps_in");
    const OverheadResult oh = overhead(spec);
    const double coeff = leading_map_coeff(spec);

    ConcatenationResult out;
    double eps = eps_in;
    double cost = 1.0;
    for (int level = 1; level <= levels; ++level) {
        const double eps_next = coeff * eps * eps;
        if (eps > 0.0 && eps_next >= eps) {
            throw std::domain_error("recursion does not contract at level " +
                                    std::to_string(level) + ": eps grows");
        }
        double p = 1.0;
        if (success_model) p = acceptance_closed_form(eps, oh.k / 2);
        cost *= oh.n_over_k / p;
        out.levels.push_back({level, eps, eps_next, p, cost});
        eps = eps_next;
    }
    out.eps_out = eps;
    out.total_inputs_per_output = cost;
    return out;
}

nlohmann::json ConcatenationResult::to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (const auto& l : levels) {
        lv.push_back({{"level", l.level},
                      {"eps_in", l.eps_in},
                      {"eps_out", l.eps_out},
                      {"success_prob", l.success_prob},
                      {"cumulative_cost", l.cumulative_cost}});
    }
    return {{"levels", lv},
            {"eps_out", eps_out},
            {"total_inputs_per_output", total_inputs_per_output}};
}

}  // namespace qparity
