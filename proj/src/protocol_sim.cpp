#include "qparity/protocol_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qparity/builders.hpp"
#include "qparity/errors.hpp"
#include "qparity/version.hpp"

namespace qparity {

namespace {

int num_gadgets_of(const Circuit& circuit) {
    int n = 0;
    for (auto r : circuit.roles) {
        if (r == QubitRole::GadgetAncilla) ++n;
    }
    return n;
}

double theta_of_input(const std::vector<double>& thetas, int input_label) {
    return thetas[(input_label + 1) / 2 - 1];
}

Circuit inject_faults(const Circuit& circuit, const FaultPattern& pattern) {
    if (!circuit.resource_block) throw std::invalid_argument("circuit has no resource block");
    const ResourceBlock& block = *circuit.resource_block;
    Circuit out;
    out.num_qubits = circuit.num_qubits;
    out.roles = circuit.roles;
    out.postselect = circuit.postselect;
    for (int i = 0; i < static_cast<int>(circuit.gates.size()); ++i) {
        out.gates.push_back(circuit.gates[i]);
        if (i == block.last_gate && pattern.resource_index >= 0) {
            for (std::size_t b = 0; b < block.qubits.size(); ++b) {
                if (pattern.resource_mask >> b & 1) {
                    out.gates.push_back({GateKind::Z, {block.qubits[b]}});
                }
            }
        }
        for (std::size_t j = 0; j < circuit.pivot_gates.size(); ++j) {
            if (i == circuit.pivot_gates[j] && (pattern.pivot_mask >> j & 1)) {
                out.gates.push_back({GateKind::Z, {circuit.gates[i].qubits[0]}});
            }
        }
    }
    return out;
}

}  // namespace

std::string ResourceNoiseModel::name() const {
    switch (kind) {
        case ResourceModelKind::UniformZ: return "uniform-z";
        case ResourceModelKind::SingleZUniform: return "single-z-uniform";
        case ResourceModelKind::WorstCase: return "worst-case";
        case ResourceModelKind::Custom: return "custom";
    }
    return "?";
}

ResourceNoiseModel ResourceNoiseModel::from_name(const std::string& name) {
    if (name == "uniform" || name == "uniform-z") return {ResourceModelKind::UniformZ, {}};
    if (name == "single" || name == "single-z-uniform") {
        return {ResourceModelKind::SingleZUniform, {}};
    }
    if (name == "worst" || name == "worst-case") return {ResourceModelKind::WorstCase, {}};
    throw std::invalid_argument("unknown resource noise model: " + name);
}

std::vector<std::pair<std::uint32_t, double>> resolve_resource_support(
    int N, const std::vector<double>& thetas, const ResourceNoiseModel& model) {
    const int nblock = 2 * N + 1;
    const std::uint32_t npat = (std::uint32_t{1} << nblock) - 1;
    switch (model.kind) {
        case ResourceModelKind::UniformZ: {
            std::vector<std::pair<std::uint32_t, double>> out;
            for (std::uint32_t m = 1; m <= npat; ++m) out.push_back({m, 1.0 / npat});
            return out;
        }
        case ResourceModelKind::SingleZUniform: {
            std::vector<std::pair<std::uint32_t, double>> out;
            for (int b = 0; b < nblock; ++b) {
                out.push_back({std::uint32_t{1} << b, 1.0 / nblock});
            }
            return out;
        }
        case ResourceModelKind::WorstCase: {
            const Circuit circuit = build_full_protocol(N, thetas);
            std::uint32_t best_mask = 1;
            double best_err = -1.0;
            for (std::uint32_t m = 1; m <= npat; ++m) {
                FaultPattern p;
                p.resource_index = 0;
                p.resource_mask = m;
                p.resource_prob = 1.0;
                const PatternResult r = simulate_pattern(circuit, thetas, p);
                double worst = 0.0;
                for (double e : r.error_weight) worst = std::max(worst, e);
                if (worst > best_err + 1e-12) {
                    best_err = worst;
                    best_mask = m;
                }
            }
            return {{best_mask, 1.0}};
        }
        case ResourceModelKind::Custom: {
            double total = 0.0;
            for (const auto& [m, q] : model.custom) {
                if (m == 0 || m > npat) throw std::invalid_argument("custom pattern out of range");
                if (q < 0) throw std::invalid_argument("negative pattern probability");
                total += q;
            }
            if (std::abs(total - 1.0) > 1e-9) {
                throw std::invalid_argument("custom pattern distribution must sum to 1");
            }
            return model.custom;
        }
    }
    throw std::invalid_argument("unknown resource model kind");
}

NoisePolynomial FaultPattern::probability(int N) const {
    const int in_errors = std::popcount(input_mask);
    const int piv_errors = std::popcount(pivot_mask);
    NoisePolynomial p = NoisePolynomial::var_power(0, in_errors) *
                        NoisePolynomial::one_minus_var_power(0, 2 * N - in_errors);
    if (resource_index >= 0) {
        p = p * NoisePolynomial::var_power(1, 1).scaled(resource_prob);
    } else {
        p = p * NoisePolynomial::one_minus_var_power(1, 1);
    }
    p = p * NoisePolynomial::var_power(2, piv_errors) *
        NoisePolynomial::one_minus_var_power(2, N - piv_errors);
    return p;
}

std::vector<FaultPattern> enumerate_patterns(
    int N, const std::vector<std::pair<std::uint32_t, double>>& support) {
    if (N < 1 || N > 3) throw std::invalid_argument("pattern enumeration supports 1 <= N <= 3");
    std::vector<FaultPattern> out;
    for (std::uint32_t in = 0; in < (std::uint32_t{1} << (2 * N)); ++in) {
        for (std::uint32_t piv = 0; piv < (std::uint32_t{1} << N); ++piv) {
            FaultPattern base;
            base.input_mask = in;
            base.pivot_mask = piv;
            out.push_back(base);
            for (std::size_t s = 0; s < support.size(); ++s) {
                FaultPattern p = base;
                p.resource_index = static_cast<int>(s);
                p.resource_mask = support[s].first;
                p.resource_prob = support[s].second;
                out.push_back(p);
            }
        }
    }
    return out;
}

PatternResult simulate_pattern(const Circuit& circuit, const std::vector<double>& thetas,
                               const FaultPattern& pattern) {
    const QubitMap map{num_gadgets_of(circuit)};
    const int N = map.num_gadgets;
    const int num_inputs = 2 * N;
    if (static_cast<int>(thetas.size()) != N) throw std::invalid_argument("theta count != N");
    if (pattern.input_mask >> num_inputs) throw std::invalid_argument("input fault out of range");
    if (pattern.pivot_mask >> N) throw std::invalid_argument("pivot fault out of range");
    if (pattern.resource_index >= 0 && circuit.resource_block &&
        (pattern.resource_mask >> circuit.resource_block->qubits.size())) {
        throw std::invalid_argument("resource fault pattern out of range");
    }

    const Circuit faulted = inject_faults(circuit, pattern);
    StateVector psi = StateVector::plus_state(circuit.num_qubits);
    for (int i = 1; i <= num_inputs; ++i) {
        psi.apply_r(map.input(i), theta_of_input(thetas, i));
        if (pattern.input_mask >> (i - 1) & 1) psi.apply_z(map.input(i));
    }

    PatternResult result;
    result.error_weight.assign(num_inputs, 0.0);
    for (const Branch& branch : run_with_branches(faulted, psi)) {
        const double w = branch.state.norm_sq();
        result.acceptance += w;
        if (w <= 1e-300) continue;
        for (int i = 1; i <= num_inputs; ++i) {
            result.error_weight[i - 1] +=
                single_qubit_error_weight(branch.state, map.input(i), theta_of_input(thetas, i))
                    .first;
        }
    }
    return result;
}

SimulationReport simulate_protocol(int N, const std::vector<double>& thetas,
                                   const ResourceNoiseModel& model) {
    const Circuit circuit = build_full_protocol(N, thetas);
    const auto support = resolve_resource_support(N, thetas, model);
    const auto patterns = enumerate_patterns(N, support);

    SimulationReport report;
    report.N = N;
    report.thetas = thetas;
    report.model_name = model.name();
    report.pattern_count = patterns.size();
    report.error.assign(2 * N, NoisePolynomial{});
    for (const FaultPattern& pattern : patterns) {
        const NoisePolynomial prob = pattern.probability(N);
        const PatternResult r = simulate_pattern(circuit, thetas, pattern);
        report.acceptance.add_scaled(prob, r.acceptance);
        for (int i = 0; i < 2 * N; ++i) report.error[i].add_scaled(prob, r.error_weight[i]);
    }
    return report;
}

double SimulationReport::eps_prime_at(double eps_theta, double eps_hash, double eta,
                                      int output) const {
    const double a = acceptance.eval(eps_theta, eps_hash, eta);
    if (a <= 0.0) throw undefined_conditional_error("acceptance vanishes at this point");
    return error.at(output).eval(eps_theta, eps_hash, eta) / a;
}

double SimulationReport::eps_prime_max_at(double eps_theta, double eps_hash, double eta) const {
    double worst = 0.0;
    for (int i = 0; i < static_cast<int>(error.size()); ++i) {
        worst = std::max(worst, eps_prime_at(eps_theta, eps_hash, eta, i));
    }
    return worst;
}

nlohmann::json SimulationReport::to_json() const {
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& e : error) errs.push_back(e.to_json());
    return {
        {"n", N},
        {"thetas", thetas},
        {"resource_model", model_name},
        {"pattern_count", pattern_count},
        {"tool_version", kToolVersion},
        {"acceptance_poly", acceptance.to_json()},
        {"error_polys", errs},
    };
}

CoefficientSet extract_coefficients(const SimulationReport& report) {
    const NoisePolynomial series =
        NoisePolynomial::series_divide(report.error.at(0), report.acceptance, 2);
    CoefficientSet c;
    c.eps_theta_sq = series.coeff(2, 0, 0);
    c.eta_lin = series.coeff(0, 0, 1);
    c.eps_hash_lin = series.coeff(0, 1, 0);
    c.pp_eps_theta = report.acceptance.coeff(1, 0, 0);
    c.pp_eta = report.acceptance.coeff(0, 0, 1);
    c.pp_eps_hash = report.acceptance.coeff(0, 1, 0);
    c.pp_eps_theta_closed_form = -2.0 * report.N;
    c.pp_eps_theta_published = report.N == 1   ? -2.0
                           : report.N == 2 ? -6.0
                                           : std::numeric_limits<double>::quiet_NaN();
    return c;
}

nlohmann::json coefficients_to_json(const CoefficientSet& c) {
    nlohmann::json j = {
        {"eps_prime", {{"eps_theta_sq", c.eps_theta_sq}, {"eta", c.eta_lin},
                       {"eps_hash", c.eps_hash_lin}}},
        {"p_parity",
         {{"eps_theta_measured", c.pp_eps_theta},
          {"eps_theta_closed_form", c.pp_eps_theta_closed_form},
          {"eta", c.pp_eta},
          {"eps_hash", c.pp_eps_hash}}},
    };
    if (!std::isnan(c.pp_eps_theta_published)) {
        j["p_parity"]["eps_theta_published"] = c.pp_eps_theta_published;
    }
    return j;
}

std::string coefficients_to_csv(const CoefficientSet& c) {
    std::ostringstream out;
    char buf[64];
    auto row = [&](const char* name, double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out << name << ',' << buf << '\n';
    };
    out << "coefficient,value\n";
    row("eps_prime.eps_theta_sq", c.eps_theta_sq);
    row("eps_prime.eta", c.eta_lin);
    row("eps_prime.eps_hash", c.eps_hash_lin);
    row("p_parity.eps_theta_measured", c.pp_eps_theta);
    row("p_parity.eps_theta_closed_form", c.pp_eps_theta_closed_form);
    if (!std::isnan(c.pp_eps_theta_published)) row("p_parity.eps_theta_published", c.pp_eps_theta_published);
    row("p_parity.eta", c.pp_eta);
    row("p_parity.eps_hash", c.pp_eps_hash);
    return out.str();
}

bool is_degenerate_angle(double theta) {
    const double half_pi = std::acos(0.0);
    const double r = std::remainder(theta, half_pi);
    return std::abs(r) < 1e-9;
}

ThetaScanResult theta_independence_scan(int N, const std::vector<double>& thetas,
                                        const ResourceNoiseModel& model) {
    if (thetas.size() < 2) {
        throw std::invalid_argument("theta scan needs at least two angles");
    }
    for (double t : thetas) {
        if (is_degenerate_angle(t)) {
            std::ostringstream msg;
            msg << "degenerate angle " << t << ": multiples of pi/2 make the pivot trivial";
            throw std::invalid_argument(msg.str());
        }
    }
    ThetaScanResult out;
    out.thetas = thetas;
    for (double t : thetas) {
        out.coefficients.push_back(
            extract_coefficients(simulate_protocol(N, std::vector<double>(N, t), model)));
    }
    double dev = 0.0, hash_dev = 0.0;
    for (std::size_t i = 1; i < out.coefficients.size(); ++i) {
        const auto& a = out.coefficients[0];
        const auto& b = out.coefficients[i];
        dev = std::max({dev, std::abs(a.eps_theta_sq - b.eps_theta_sq),
                        std::abs(a.eta_lin - b.eta_lin),
                        std::abs(a.pp_eps_theta - b.pp_eps_theta),
                        std::abs(a.pp_eta - b.pp_eta)});
        hash_dev = std::max(hash_dev, std::abs(a.eps_hash_lin - b.eps_hash_lin));
    }
    out.max_deviation = dev;
    out.eps_hash_deviation = hash_dev;
    return out;
}

nlohmann::json ThetaScanResult::to_json() const {
    nlohmann::json per_theta = nlohmann::json::array();
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        per_theta.push_back(
            {{"theta", thetas[i]}, {"coefficients", coefficients_to_json(coefficients[i])}});
    }
    return {
        {"per_theta", per_theta},
        {"max_deviation", max_deviation},
        {"eps_hash_deviation_informational", eps_hash_deviation},
    };
}

MonteCarloResult monte_carlo_estimate(int N, const std::vector<double>& thetas,
                                      const ResourceNoiseModel& model, double eps_theta,
                                      double eps_hash, double eta, std::uint64_t samples,
                                      std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    const Circuit circuit = build_full_protocol(N, thetas);
    const auto support = resolve_resource_support(N, thetas, model);
    std::vector<double> cumulative;
    double acc_q = 0.0;
    for (const auto& [m, q] : support) {
        acc_q += q;
        cumulative.push_back(acc_q);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::map<std::tuple<std::uint32_t, int, std::uint32_t>, PatternResult> memo;

    double sa = 0, se = 0, saa = 0, see = 0, sae = 0;
    for (std::uint64_t shot = 0; shot < samples; ++shot) {
        FaultPattern p;
        for (int i = 0; i < 2 * N; ++i) {
            if (unif(rng) < eps_theta) p.input_mask |= std::uint32_t{1} << i;
        }
        if (unif(rng) < eps_hash) {
            const double u = unif(rng) * acc_q;
            std::size_t idx = 0;
            while (idx + 1 < cumulative.size() && u > cumulative[idx]) ++idx;
            p.resource_index = static_cast<int>(idx);
            p.resource_mask = support[idx].first;
            p.resource_prob = support[idx].second;
        }
        for (int j = 0; j < N; ++j) {
            if (unif(rng) < eta) p.pivot_mask |= std::uint32_t{1} << j;
        }
        const auto key = std::make_tuple(p.input_mask, p.resource_index, p.pivot_mask);
        auto it = memo.find(key);
        if (it == memo.end()) {
            it = memo.emplace(key, simulate_pattern(circuit, thetas, p)).first;
        }
        const double a = it->second.acceptance;
        const double e = it->second.error_weight[0];
        sa += a;
        se += e;
        saa += a * a;
        see += e * e;
        sae += a * e;
    }
    const double S = static_cast<double>(samples);
    MonteCarloResult out;
    out.samples = samples;
    out.seed = seed;
    out.p_parity_hat = sa / S;
    const double var_a = std::max(0.0, saa / S - out.p_parity_hat * out.p_parity_hat);
    out.p_parity_se = std::sqrt(var_a / S);
    const double mean_e = se / S;
    if (sa <= 0.0) throw undefined_conditional_error("no accepted weight in Monte Carlo run");
    const double ratio = se / sa;
    out.eps_prime_hat = ratio;
    const double var_e = std::max(0.0, see / S - mean_e * mean_e);
    const double cov_ae = sae / S - out.p_parity_hat * mean_e;
    const double var_ratio =
        (var_e - 2.0 * ratio * cov_ae + ratio * ratio * var_a) /
        (out.p_parity_hat * out.p_parity_hat);
    out.eps_prime_se = std::sqrt(std::max(0.0, var_ratio) / S);
    return out;
}

nlohmann::json MonteCarloResult::to_json() const {
    return {
        {"p_parity_hat", p_parity_hat}, {"p_parity_se", p_parity_se},
        {"eps_prime_hat", eps_prime_hat}, {"eps_prime_se", eps_prime_se},
        {"samples", samples},           {"seed", seed},
    };
}

}  // namespace qparity
