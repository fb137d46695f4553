#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qparity/statevec.hpp"

namespace qparity {

enum class GateKind {
    X,
    Z,
    H,
    R,        // R(theta) = exp(i theta Z)
    W,        // W(theta) = R(2 theta) X
    CX,
    CZ,
    CCZ,
    CR,       // controlled-R(theta)
    CW,       // controlled-W(theta)
    OCW,      // open-controlled W(theta), triggers on |0>
    Measure,  // computational-basis measurement, records an outcome id
};

int gate_arity(GateKind kind);
bool gate_has_angle(GateKind kind);
const char* gate_name(GateKind kind);
GateKind gate_from_name(const std::string& name);

/// One gate record. A gate with `cond >= 0` is a classical correction: it is
/// applied only on branches where the referenced measurement returned 1.
struct GateOp {
    GateKind kind;
    std::vector<int> qubits;
    double angle = 0.0;  // R/W/CR/CW/OCW only
    int meas_id = -1;    // Measure only
    int cond = -1;       // measurement id this gate is conditioned on
};

enum class QubitRole { Input, ParityAncilla, GadgetAncilla, Resource };

char role_code(QubitRole role);
QubitRole role_from_code(char code);

/// Gate index range of the CCZ_#N sub-sequence plus the qubits it touches;
/// noise channels attach immediately after the block.
struct ResourceBlock {
    int first_gate = 0;
    int last_gate = 0;            // inclusive
    std::vector<int> qubits;      // sorted machine indices
};

/// Protocol-label to machine-index mapping. Gadget ancillas (labels -1..-N)
/// map to machine N-1..0, the parity ancilla (label 0) to machine N, inputs
/// (labels 1..2N) to machine N+1..3N. Bare parity-check circuits use
/// num_gadgets = 0.
struct QubitMap {
    int num_gadgets = 0;

    int gadget(int j) const { return num_gadgets - j; }   // label -j, 1 <= j <= N
    int parity() const { return num_gadgets; }            // label 0
    int input(int i) const { return num_gadgets + i; }    // labels 1..2N
    int total(int num_inputs) const { return num_gadgets + 1 + num_inputs; }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> gates;
    std::vector<QubitRole> roles;
    std::map<int, int> postselect;  // measurement id -> accepted outcome
    std::optional<ResourceBlock> resource_block;
    std::vector<int> pivot_gates;   // gate index of R(2 theta_j) per gadget j

    std::vector<int> input_qubits() const;
    int count_gates(GateKind kind) const;

    /// Checks arity, index ranges, measurement id uniqueness, that conditions
    /// reference earlier measurements, and that postselected measurements are
    /// distinct from conditioned-on ones. Throws std::invalid_argument.
    void validate() const;
};

/// Applies one unitary gate record. Measure is rejected here; measurements are
/// handled by run_with_branches.
void apply_gate(StateVector& state, const GateOp& gate);

/// Line format: one gate per line, `KIND q0 q1 ... [angle] [id=m] [cond=m]`,
/// preceded by a `qubits N` line and optional `roles ...` / `postselect m=v`
/// lines. Lines starting with '#' are comments.
std::string to_text(const Circuit& circuit);
Circuit from_text(const std::string& text);

struct Branch {
    std::map<int, int> outcomes;  // all measurement outcomes on this branch
    StateVector state;            // unnormalized
};

/// Executes the circuit on `init`. Postselected measurements are projected to
/// their accepted outcome; every other measurement forks the branch (outcome 0
/// explored first, so branch order is the lexicographic order of outcome
/// strings). Gates with `cond` set apply only where that outcome was 1.
std::vector<Branch> run_with_branches(const Circuit& circuit, const StateVector& init);

}  // namespace qparity
