// Command-line front end: every computation in the workbench behind a
// machine-readable envelope. Exit codes: 0 = success / claim holds,
// 1 = claim violated, 2 = usage or domain error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qparity/analytic.hpp"
#include "qparity/builders.hpp"
#include "qparity/identities.hpp"
#include "qparity/protocol_sim.hpp"
#include "qparity/triortho.hpp"
#include "qparity/version.hpp"

using nlohmann::json;
using namespace qparity;

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Accepts plain radians or exact symbolic forms: "pi", "pi/8", "3pi/16",
/// "-pi/4". Symbolic parsing avoids decimal drift in regression files.
double parse_angle(const std::string& text) {
    std::string s = text;
    double sign = 1.0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
    }
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw CLI::ValidationError("angle", "bad angle: " + text);
        return v;
    }
    double numerator = 1.0;
    if (pi_pos > 0) numerator = std::stod(s.substr(0, pi_pos));
    double denominator = 1.0;
    std::string rest = s.substr(pi_pos + 2);
    if (!rest.empty()) {
        if (rest[0] != '/') throw CLI::ValidationError("angle", "bad angle: " + text);
        denominator = std::stod(rest.substr(1));
    }
    if (denominator == 0.0) throw CLI::ValidationError("angle", "zero denominator: " + text);
    return sign * numerator * kPi / denominator;
}

std::vector<double> parse_angle_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(parse_angle(tok));
    }
    return out;
}

ResourceNoiseModel parse_model(const std::string& text, int N) {
    if (text.rfind("custom:", 0) == 0) {
        std::ifstream in(text.substr(7));
        if (!in) throw CLI::ValidationError("model", "cannot open " + text.substr(7));
        json spec = json::parse(in);
        ResourceNoiseModel model;
        model.kind = ResourceModelKind::Custom;
        for (const auto& entry : spec.at("patterns")) {
            std::uint32_t mask = 0;
            if (entry.at("pattern").is_string()) {
                const std::string bits = entry["pattern"].get<std::string>();
                if (static_cast<int>(bits.size()) != 2 * N + 1) {
                    throw CLI::ValidationError("model", "pattern width must be 2N+1");
                }
                for (std::size_t i = 0; i < bits.size(); ++i) {
                    if (bits[i] == '1') mask |= std::uint32_t{1} << i;
                }
            } else {
                mask = entry["pattern"].get<std::uint32_t>();
            }
            model.custom.push_back({mask, entry.at("prob").get<double>()});
        }
        return model;
    }
    return ResourceNoiseModel::from_name(text);
}

struct Envelope {
    std::string command;
    json parameters = json::object();
    json payload = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json finish() const {
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return json{{"command", command},      {"parameters", parameters},
                    {"tool", kToolName},       {"tool_version", kToolVersion},
                    {"wall_time_ms", ms},      {"payload", payload}};
    }
};

void emit(const Envelope& env, const std::string& format, const std::string& csv_body,
          const std::string& text_body) {
    if (format == "json") {
        std::cout << env.finish().dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << csv_body;
    } else {
        std::cout << text_body;
    }
}

std::vector<double> deterministic_random_angles(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 1.5);
    std::vector<double> out;
    while (static_cast<int>(out.size()) < count) {
        const double t = unif(rng);
        if (!is_degenerate_angle(t)) out.push_back(t);
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------

int cmd_verify_identities(int n, std::uint64_t seed, bool dump_circuits,
                          const std::string& format) {
    Envelope env;
    env.command = "verify-identities";
    env.parameters = {{"n", n}, {"seed", seed}};
    const auto thetas = deterministic_random_angles(5, seed);
    const auto reports = verify_all_identities(n, thetas);

    bool all_pass = true;
    json items = json::array();
    std::ostringstream text, csv;
    csv << "identity,max_deviation,pass\n";
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        items.push_back({{"id", identity_name(r.id)},
                         {"max_deviation", r.max_deviation},
                         {"pass", r.pass},
                         {"detail", r.detail}});
        text << (r.pass ? "PASS" : "FAIL") << "  " << identity_name(r.id)
             << "  max_dev=" << format_double(r.max_deviation) << "\n";
        csv << identity_name(r.id) << ',' << format_double(r.max_deviation) << ','
            << (r.pass ? "true" : "false") << "\n";
    }
    double kraus_dev = 0.0;
    for (double t : thetas) kraus_dev = std::max(kraus_dev, parity_check_kraus_agreement(n, t));
    const bool kraus_pass = kraus_dev < 1e-10;
    all_pass = all_pass && kraus_pass;
    text << (kraus_pass ? "PASS" : "FAIL")
         << "  parity_check_kraus_agreement  max_dev=" << format_double(kraus_dev) << "\n";

    env.payload = {{"identities", items},
                   {"kraus_agreement",
                    {{"max_deviation", kraus_dev}, {"pass", kraus_pass}}},
                   {"thetas", thetas},
                   {"all_pass", all_pass}};
    if (dump_circuits) {
        const double t = kPi / 8.0;
        env.payload["circuits"] = {
            {"parity_check_direct", to_text(build_parity_check_direct(n, t))},
            {"parity_check_decomposed", to_text(build_parity_check_decomposed(n, t))},
            {"full_protocol", to_text(build_full_protocol(n, std::vector<double>(n, t)))},
            {"tilde_v", to_text(build_tildeV(n))},
            {"tilde_v_compressed", to_text(build_tildeV_compressed(n))},
        };
        env.parameters["dump_circuits"] = true;
    }
    emit(env, format, csv.str(), text.str());
    return all_pass ? 0 : 1;
}

int cmd_simulate(int n, const std::string& theta_text, const std::string& model_text,
                 const std::string& format, const std::string& scan_text,
                 std::uint64_t mc_samples, std::uint64_t seed, double mc_eps_theta,
                 double mc_eps_hash, double mc_eta) {
    const double theta = parse_angle(theta_text);
    if (is_degenerate_angle(theta)) {
        throw CLI::ValidationError("theta", "degenerate angle (multiple of pi/2)");
    }
    const ResourceNoiseModel model = parse_model(model_text, n);

    Envelope env;
    env.command = "simulate";
    env.parameters = {{"n", n}, {"theta", theta}, {"model", model.name()}};

    const SimulationReport report = simulate_protocol(n, std::vector<double>(n, theta), model);
    const CoefficientSet coeffs = extract_coefficients(report);
    env.payload = report.to_json();
    env.payload["coefficients"] = coefficients_to_json(coeffs);

    std::ostringstream text;
    text << "n=" << n << " theta=" << format_double(theta) << " model=" << model.name() << "\n"
         << "eps' ~ " << format_double(coeffs.eps_theta_sq) << " eps_theta^2 + "
         << format_double(coeffs.eps_hash_lin) << " eps_hash + " << format_double(coeffs.eta_lin)
         << " eta\n"
         << "p_parity ~ 1 " << format_double(coeffs.pp_eps_theta) << " eps_theta "
         << format_double(coeffs.pp_eps_hash) << " eps_hash " << format_double(coeffs.pp_eta)
         << " eta (closed-form eps_theta coeff " << format_double(coeffs.pp_eps_theta_closed_form);
    if (!std::isnan(coeffs.pp_eps_theta_published)) {
        text << ", published " << format_double(coeffs.pp_eps_theta_published);
    }
    text << ")\n";

    if (!scan_text.empty()) {
        const auto scan = theta_independence_scan(n, parse_angle_list(scan_text), model);
        env.payload["theta_scan"] = scan.to_json();
        env.parameters["scan_thetas"] = scan.thetas;
        text << "theta scan max deviation " << format_double(scan.max_deviation) << "\n";
    }
    if (mc_samples > 0) {
        const auto mc = monte_carlo_estimate(n, std::vector<double>(n, theta), model,
                                             mc_eps_theta, mc_eps_hash, mc_eta, mc_samples, seed);
        env.payload["monte_carlo"] = mc.to_json();
        env.parameters["mc"] = {{"samples", mc_samples},
                                {"seed", seed},
                                {"eps_theta", mc_eps_theta},
                                {"eps_hash", mc_eps_hash},
                                {"eta", mc_eta}};
        text << "mc: p_parity " << format_double(mc.p_parity_hat) << " +- "
             << format_double(mc.p_parity_se) << ", eps' " << format_double(mc.eps_prime_hat)
             << " +- " << format_double(mc.eps_prime_se) << "\n";
    }
    emit(env, format, coefficients_to_csv(coeffs), text.str());
    return 0;
}

int cmd_bounds(int n, double eps_theta, double eps_pi8, double eps_hash, double eta,
               const std::string& format) {
    NoisePoint point;
    point.N = n;
    point.eps_theta = eps_theta;
    point.eps_pi8 = eps_pi8;
    point.eps_hash = eps_hash;
    point.eta = eta;

    Envelope env;
    env.command = "bounds";
    env.parameters = {{"n", n},
                      {"eps_theta", eps_theta},
                      {"eps_pi8", eps_pi8},
                      {"eps_hash", eps_hash},
                      {"eta", eta}};
    const BoundResult bound = epsilon_prime_bound(point);
    if (bound.both_supplied) {
        std::cerr << "warning: both eps_pi8 and eps_hash supplied; eps_hash takes precedence\n";
    }
    const LeadingCoeffs lead = epsilon_prime_bound_leading(n);
    env.payload = {
        {"acceptance_closed_form", acceptance_closed_form(eps_theta, n)},
        {"p_bad_closed_form", p_bad_closed_form(eps_theta, n)},
        {"p_bad_binomial", p_bad_binomial(eps_theta, n)},
        {"eps_hash_used", bound.eps_hash_used},
        {"eps_hash_from_synthillation_bound", bound.eps_hash_from_bound},
        {"eps_prime_bound", bound.value},
        {"leading_coeffs",
         {{"eps_theta_sq", lead.eps_theta_sq},
          {"eps_pi8_sq", lead.eps_pi8_sq},
          {"eta", lead.eta}}},
    };
    if (eps_pi8 >= 0.0) {
        env.payload["synthillation_bound"] = synthillation_error_bound(eps_pi8, n);
        env.payload["synthillation_leading_coeff"] = synthillation_leading_coeff(n);
    }

    std::ostringstream text, csv;
    csv << "quantity,value\n";
    for (const auto& [key, value] : env.payload.items()) {
        if (value.is_number()) {
            text << key << " = " << format_double(value.get<double>()) << "\n";
            csv << key << ',' << format_double(value.get<double>()) << "\n";
        }
    }
    emit(env, format, csv.str(), text.str());
    return 0;
}

int cmd_overhead(const std::string& family_text, int k, int N, int levels, double eps_in,
                 bool success_model, const std::string& format) {
    ProtocolSpec spec;
    spec.family = family_from_name(family_text);
    spec.k = k;
    spec.N = N;
    const OverheadResult oh = overhead(spec);

    Envelope env;
    env.command = "overhead";
    env.parameters = {{"family", family_text}, {"k", k}, {"N", N}};
    env.payload = {{"family", family_name(spec.family)},
                   {"n", oh.n},
                   {"k", oh.k},
                   {"n_over_k", oh.n_over_k}};
    if (spec.family == ProtocolFamily::DuclosCianciPoulin) {
        env.payload["angle_inputs"] = oh.angle_inputs;
        env.payload["t_state_inputs"] = oh.t_state_inputs;
    }
    if (spec.family == ProtocolFamily::ThisWork) {
        const int block_N = oh.k / 2;
        const TCount tc = tcount_cczhash(block_N);
        env.payload["t_counts"] = {{"injected_t_count", tc.injected_t_count},
                                   {"synthillation_t_states", tc.synthillation_t_states}};
        if (block_N <= 2) {
            env.payload["chained_pi8_eps_sq_coeff"] = chained_pi8_leading_coeff(block_N);
            env.payload["reference_constants"] = {
                {"synth_eps_sq_coeff", reference_synth_eps_sq_coeff(block_N)},
                {"p_synth_linear", reference_p_synth_linear(block_N)},
                {"p_parity_eps_theta_linear", reference_p_parity_eps_theta_linear(block_N)}};
        }
    }
    if (levels > 0) {
        env.payload["concatenation"] =
            concatenation_cost(spec, levels, eps_in, success_model).to_json();
        env.parameters["levels"] = levels;
        env.parameters["eps_in"] = eps_in;
        env.parameters["success_model"] = success_model;
    }

    std::ostringstream text, csv;
    text << family_name(spec.family) << ": " << oh.n << " -> " << oh.k
         << "  (n/k = " << format_double(oh.n_over_k) << ")\n";
    csv << "quantity,value\nn," << oh.n << "\nk," << oh.k << "\nn_over_k,"
        << format_double(oh.n_over_k) << "\n";
    emit(env, format, csv.str(), text.str());
    return 0;
}

int cmd_triortho_check(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("file", "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const GF2Matrix g = GF2Matrix::parse(buf.str());

    Envelope env;
    env.command = "triortho-check";
    env.parameters = {{"file", path}};
    const bool tri = is_triorthogonal(g);
    env.payload = {{"rows", g.rows},
                   {"cols", g.cols},
                   {"matrix", g.to_json()},
                   {"biorthogonal", is_biorthogonal(g)},
                   {"triorthogonal", tri}};
    try {
        const CodeParams p = code_params(g);
        env.payload["code_params"] = {{"n", p.n}, {"k", p.k}, {"d_ge_2", p.distance_at_least_2}};
    } catch (const std::invalid_argument& e) {
        env.payload["code_params_error"] = e.what();
    }
    std::ostringstream text, csv;
    text << "triorthogonal: " << (tri ? "true" : "false") << "\n";
    csv << "quantity,value\ntriorthogonal," << (tri ? "true" : "false") << "\n";
    emit(env, format, csv.str(), text.str());
    return tri ? 0 : 1;
}

int emit_certificate(Envelope& env, const SearchCertificate& cert, const std::string& format,
                     int exit_code) {
    env.payload = cert.to_json();
    std::ostringstream text, csv;
    text << cert.kind << ": " << (cert.found ? "WITNESS" : "NONE-FOUND") << " (nodes "
         << cert.nodes << ")\n";
    if (cert.found) text << cert.witness.to_string();
    csv << "quantity,value\nresult," << (cert.found ? "WITNESS" : "NONE-FOUND") << "\nnodes,"
        << cert.nodes << "\n";
    emit(env, format, csv.str(), text.str());
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-step magic-state parity-check distillation workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // global options (e.g. --format) may follow the subcommand
    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    // verify-identities
    auto* vi = app.add_subcommand("verify-identities", "check the circuit identities");
    int vi_n = 1;
    std::uint64_t vi_seed = 12345;
    bool vi_dump = false;
    vi->add_option("--n", vi_n, "block parameter N")->check(CLI::Range(1, 3))->required();
    vi->add_option("--seed", vi_seed, "seed for the random angles")->capture_default_str();
    vi->add_flag("--dump-circuits", vi_dump, "include serialized circuits in the payload");

    // simulate
    auto* sim = app.add_subcommand("simulate", "exact fault-pattern enumeration");
    int sim_n = 1;
    std::string sim_theta = "pi/8", sim_model = "single", sim_scan;
    std::uint64_t sim_mc = 0, sim_seed = 1;
    double sim_et = 0.01, sim_eh = 0.0, sim_eta = 0.0;
    sim->add_option("--n", sim_n, "block parameter N")->check(CLI::Range(1, 3))->required();
    sim->add_option("--theta", sim_theta, "angle (radians or pi/K)")->required();
    sim->add_option("--model", sim_model, "resource noise model: uniform|single|worst|custom:file")
        ->capture_default_str();
    sim->add_option("--scan-thetas", sim_scan, "comma list of angles for the independence scan");
    sim->add_option("--mc-samples", sim_mc, "Monte Carlo cross-check sample count");
    sim->add_option("--seed", sim_seed, "Monte Carlo seed")->capture_default_str();
    sim->add_option("--eps-theta", sim_et, "Monte Carlo noise point")->capture_default_str();
    sim->add_option("--eps-hash", sim_eh, "Monte Carlo noise point")->capture_default_str();
    sim->add_option("--eta", sim_eta, "Monte Carlo noise point")->capture_default_str();

    // bounds
    auto* bd = app.add_subcommand("bounds", "closed forms and rigorous bounds");
    int bd_n = 1;
    double bd_et = 0.0, bd_pi8 = -1.0, bd_hash = -1.0, bd_eta = 0.0;
    bd->add_option("--n", bd_n, "block parameter N")->check(CLI::Range(1, 64))->required();
    bd->add_option("--eps-theta", bd_et, "input error rate")->capture_default_str();
    bd->add_option("--eps-pi8", bd_pi8, "T-state error rate (feeds the synthillation bound)");
    bd->add_option("--eps-hash", bd_hash, "resource error rate (overrides --eps-pi8)");
    bd->add_option("--eta", bd_eta, "pivot error rate")->capture_default_str();

    // overhead
    auto* oh = app.add_subcommand("overhead", "n -> k accounting and concatenation");
    std::string oh_family = "this-work";
    int oh_k = 0, oh_N = 0, oh_levels = 0;
    double oh_eps = 0.01;
    bool oh_success = false;
    oh->add_option("--family", oh_family, "this-work|bravyi-haah|mek|dcp")->required();
    oh->add_option("--k", oh_k, "output count (even)");
    oh->add_option("--N", oh_N, "block parameter");
    oh->add_option("--levels", oh_levels, "concatenation levels");
    oh->add_option("--eps-in", oh_eps, "input error for concatenation")->capture_default_str();
    oh->add_flag("--success-model", oh_success, "divide costs by acceptance probabilities");

    // triortho
    auto* tri = app.add_subcommand("triortho", "triorthogonal matrix machinery");
    tri->require_subcommand(1);
    auto* tcheck = tri->add_subcommand("check", "check a matrix file");
    std::string tri_file;
    tcheck->add_option("file", tri_file, "ASCII 0/1 matrix file")->required();
    auto* tsearch = tri->add_subcommand("search", "exhaustive nonexistence search");
    int ts_n = 8, ts_m = 6, ts_kmin = 1;
    bool ts_no_d2 = false;
    tsearch->add_option("--n", ts_n, "columns")->check(CLI::Range(1, 14))->required();
    tsearch->add_option("--m-max", ts_m, "max rows")->check(CLI::Range(1, 8))->required();
    tsearch->add_option("--k-min", ts_kmin, "required odd-row count")->capture_default_str();
    tsearch->add_flag("--allow-d-less", ts_no_d2, "drop the d >= 2 column-support requirement");
    auto* tlemma = tri->add_subcommand("lemma-d", "minimal D-block width");
    int tl_umax = 6;
    tlemma->add_option("--u-max", tl_umax, "max width searched")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    auto* t14 = tri->add_subcommand("complete-14", "construct the 14-qubit witness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*vi) return cmd_verify_identities(vi_n, vi_seed, vi_dump, format);
        if (*sim) {
            return cmd_simulate(sim_n, sim_theta, sim_model, format, sim_scan, sim_mc, sim_seed,
                                sim_et, sim_eh, sim_eta);
        }
        if (*bd) return cmd_bounds(bd_n, bd_et, bd_pi8, bd_hash, bd_eta, format);
        if (*oh) {
            return cmd_overhead(oh_family, oh_k, oh_N, oh_levels, oh_eps, oh_success, format);
        }
        if (*tri) {
            if (*tcheck) return cmd_triortho_check(tri_file, format);
            if (*tsearch) {
                Envelope env;
                env.command = "triortho-search";
                env.parameters = {{"n", ts_n},
                                  {"m_max", ts_m},
                                  {"k_min", ts_kmin},
                                  {"require_d2", !ts_no_d2}};
                const auto cert = search_triorthogonal(ts_n, ts_m, ts_kmin, !ts_no_d2);
                return emit_certificate(env, cert, format, cert.found ? 1 : 0);
            }
            if (*tlemma) {
                Envelope env;
                env.command = "triortho-lemma-d";
                env.parameters = {{"u_max", tl_umax}};
                const auto cert = verify_D_lemma(tl_umax);
                const bool claim_holds =
                    cert.extra.value("min_width_with_pair_condition", 0) == 6 || tl_umax < 6;
                return emit_certificate(env, cert, format, claim_holds ? 0 : 1);
            }
            if (*t14) {
                Envelope env;
                env.command = "triortho-complete-14";
                env.parameters = json::object();
                const auto cert = complete_14_qubit_code();
                return emit_certificate(env, cert, format, cert.found ? 0 : 1);
            }
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
