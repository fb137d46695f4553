#include "qparity/circuit.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qparity {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::R:
        case GateKind::W:
        case GateKind::Measure:
            return 1;
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::CR:
        case GateKind::CW:
        case GateKind::OCW:
            return 2;
        case GateKind::CCZ:
            return 3;
    }
    throw std::invalid_argument("unknown gate kind");
}

bool gate_has_angle(GateKind kind) {
    switch (kind) {
        case GateKind::R:
        case GateKind::W:
        case GateKind::CR:
        case GateKind::CW:
        case GateKind::OCW:
            return true;
        default:
            return false;
    }
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::R: return "R";
        case GateKind::W: return "W";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::CCZ: return "CCZ";
        case GateKind::CR: return "CR";
        case GateKind::CW: return "CW";
        case GateKind::OCW: return "OCW";
        case GateKind::Measure: return "MEASURE";
    }
    throw std::invalid_argument("unknown gate kind");
}

GateKind gate_from_name(const std::string& name) {
    static const std::map<std::string, GateKind> table = {
        {"X", GateKind::X},   {"Z", GateKind::Z},     {"H", GateKind::H},
        {"R", GateKind::R},   {"W", GateKind::W},     {"CX", GateKind::CX},
        {"CZ", GateKind::CZ}, {"CCZ", GateKind::CCZ}, {"CR", GateKind::CR},
        {"CW", GateKind::CW}, {"OCW", GateKind::OCW}, {"MEASURE", GateKind::Measure},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown gate name: " + name);
    return it->second;
}

char role_code(QubitRole role) {
    switch (role) {
        case QubitRole::Input: return 'i';
        case QubitRole::ParityAncilla: return 'p';
        case QubitRole::GadgetAncilla: return 'g';
        case QubitRole::Resource: return 'r';
    }
    throw std::invalid_argument("unknown role");
}

QubitRole role_from_code(char code) {
    switch (code) {
        case 'i': return QubitRole::Input;
        case 'p': return QubitRole::ParityAncilla;
        case 'g': return QubitRole::GadgetAncilla;
        case 'r': return QubitRole::Resource;
    }
    throw std::invalid_argument("unknown role code");
}

std::vector<int> Circuit::input_qubits() const {
    std::vector<int> out;
    for (int q = 0; q < num_qubits; ++q) {
        if (roles.empty() || roles[q] == QubitRole::Input) out.push_back(q);
    }
    return out;
}

int Circuit::count_gates(GateKind kind) const {
    int n = 0;
    for (const auto& g : gates) {
        if (g.kind == kind) ++n;
    }
    return n;
}

void Circuit::validate() const {
    if (!roles.empty() && static_cast<int>(roles.size()) != num_qubits) {
        throw std::invalid_argument("role list size does not match qubit count");
    }
    std::set<int> seen_meas;
    std::set<int> conditioned_on;
    for (const auto& g : gates) {
        if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind)) {
            throw std::invalid_argument(std::string("bad arity for ") + gate_name(g.kind));
        }
        std::set<int> uniq(g.qubits.begin(), g.qubits.end());
        if (uniq.size() != g.qubits.size()) {
            throw std::invalid_argument("repeated qubit in gate");
        }
        for (int q : g.qubits) {
            if (q < 0 || q >= num_qubits) throw std::invalid_argument("gate qubit out of range");
        }
        if (g.kind == GateKind::Measure) {
            if (g.meas_id < 0) throw std::invalid_argument("measurement without id");
            if (!seen_meas.insert(g.meas_id).second) {
                throw std::invalid_argument("duplicate measurement id");
            }
            if (g.cond >= 0) throw std::invalid_argument("conditioned measurement unsupported");
        }
        if (g.cond >= 0 && !seen_meas.count(g.cond)) {
            throw std::invalid_argument("correction references a later or unknown measurement");
        }
        if (g.cond >= 0) conditioned_on.insert(g.cond);
    }
    for (const auto& [mid, outcome] : postselect) {
        if (!seen_meas.count(mid)) throw std::invalid_argument("postselect on unknown measurement");
        if (outcome != 0 && outcome != 1) throw std::invalid_argument("postselect outcome not a bit");
        if (conditioned_on.count(mid)) {
            throw std::invalid_argument("measurement is both postselected and corrected on");
        }
    }
    if (resource_block) {
        if (resource_block->first_gate < 0 || resource_block->last_gate >= (int)gates.size() ||
            resource_block->first_gate > resource_block->last_gate) {
            throw std::invalid_argument("resource block gate range invalid");
        }
    }
    for (int idx : pivot_gates) {
        if (idx < 0 || idx >= (int)gates.size() || gates[idx].kind != GateKind::R) {
            throw std::invalid_argument("pivot gate index does not point at an R gate");
        }
    }
}

void apply_gate(StateVector& state, const GateOp& gate) {
    if (static_cast<int>(gate.qubits.size()) != gate_arity(gate.kind)) {
        throw std::invalid_argument("gate arity mismatch");
    }
    const auto& q = gate.qubits;
    switch (gate.kind) {
        case GateKind::X: state.apply_x(q[0]); return;
        case GateKind::Z: state.apply_z(q[0]); return;
        case GateKind::H: state.apply_h(q[0]); return;
        case GateKind::R: state.apply_r(q[0], gate.angle); return;
        case GateKind::W: state.apply_w(q[0], gate.angle); return;
        case GateKind::CX: state.apply_cx(q[0], q[1]); return;
        case GateKind::CZ: state.apply_cz(q[0], q[1]); return;
        case GateKind::CCZ: state.apply_ccz(q[0], q[1], q[2]); return;
        case GateKind::CR: state.apply_cr(q[0], q[1], gate.angle); return;
        case GateKind::CW: state.apply_cw(q[0], q[1], gate.angle, false); return;
        case GateKind::OCW: state.apply_cw(q[0], q[1], gate.angle, true); return;
        case GateKind::Measure:
            throw std::invalid_argument("measurements are handled by run_with_branches");
    }
    throw std::invalid_argument("unknown gate kind");
}

std::string to_text(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.num_qubits << "\n";
    if (!circuit.roles.empty()) {
        out << "roles";
        for (auto r : circuit.roles) out << ' ' << role_code(r);
        out << "\n";
    }
    for (const auto& [mid, v] : circuit.postselect) {
        out << "postselect m" << mid << "=" << v << "\n";
    }
    char buf[64];
    for (const auto& g : circuit.gates) {
        out << gate_name(g.kind);
        for (int q : g.qubits) out << ' ' << q;
        if (gate_has_angle(g.kind)) {
            std::snprintf(buf, sizeof buf, "%.17g", g.angle);
            out << ' ' << buf;
        }
        if (g.kind == GateKind::Measure) out << " id=" << g.meas_id;
        if (g.cond >= 0) out << " cond=m" << g.cond;
        out << "\n";
    }
    return out.str();
}

Circuit from_text(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "qubits") {
            ls >> c.num_qubits;
            continue;
        }
        if (head == "roles") {
            std::string code;
            while (ls >> code) c.roles.push_back(role_from_code(code[0]));
            continue;
        }
        if (head == "postselect") {
            std::string token;
            ls >> token;
            auto eq = token.find('=');
            if (eq == std::string::npos || token[0] != 'm') {
                throw std::invalid_argument("bad postselect line: " + line);
            }
            c.postselect[std::stoi(token.substr(1, eq - 1))] = std::stoi(token.substr(eq + 1));
            continue;
        }
        GateOp g;
        g.kind = gate_from_name(head);
        const int arity = gate_arity(g.kind);
        for (int i = 0; i < arity; ++i) {
            int q;
            if (!(ls >> q)) throw std::invalid_argument("missing qubit in line: " + line);
            g.qubits.push_back(q);
        }
        std::string tok;
        bool angle_seen = false;
        while (ls >> tok) {
            if (tok.rfind("id=", 0) == 0) {
                g.meas_id = std::stoi(tok.substr(3));
            } else if (tok.rfind("cond=m", 0) == 0) {
                g.cond = std::stoi(tok.substr(6));
            } else {
                g.angle = std::stod(tok);
                angle_seen = true;
            }
        }
        if (gate_has_angle(g.kind) && !angle_seen) {
            throw std::invalid_argument("missing angle in line: " + line);
        }
        c.gates.push_back(std::move(g));
    }
    c.validate();
    return c;
}

namespace {

void run_branches_rec(const Circuit& circuit, std::size_t gate_idx, StateVector state,
                      std::map<int, int>& outcomes, std::vector<Branch>& out) {
    for (std::size_t i = gate_idx; i < circuit.gates.size(); ++i) {
        const GateOp& g = circuit.gates[i];
        if (g.kind == GateKind::Measure) {
            auto ps = circuit.postselect.find(g.meas_id);
            if (ps != circuit.postselect.end()) {
                state.project(g.qubits[0], ps->second);
                outcomes[g.meas_id] = ps->second;
                continue;
            }
            // fork: outcome 0 first
            for (int outcome = 0; outcome <= 1; ++outcome) {
                StateVector branch = state;
                branch.project(g.qubits[0], outcome);
                outcomes[g.meas_id] = outcome;
                run_branches_rec(circuit, i + 1, std::move(branch), outcomes, out);
            }
            outcomes.erase(g.meas_id);
            return;
        }
        if (g.cond >= 0) {
            auto it = outcomes.find(g.cond);
            if (it == outcomes.end()) {
                throw std::invalid_argument("correction before its measurement");
            }
            if (it->second == 0) continue;
        }
        apply_gate(state, g);
    }
    out.push_back(Branch{outcomes, std::move(state)});
}

}  // namespace

std::vector<Branch> run_with_branches(const Circuit& circuit, const StateVector& init) {
    if (init.num_qubits() != circuit.num_qubits) {
        throw std::invalid_argument("state size does not match circuit");
    }
    std::vector<Branch> out;
    std::map<int, int> outcomes;
    run_branches_rec(circuit, 0, init, outcomes, out);
    return out;
}

}  // namespace qparity
