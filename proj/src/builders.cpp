#include "qparity/builders.hpp"

#include <algorithm>
#include <stdexcept>

namespace qparity {

namespace {

void set_roles(Circuit& c, const QubitMap& map, int num_inputs) {
    c.roles.assign(c.num_qubits, QubitRole::Input);
    for (int j = 1; j <= map.num_gadgets; ++j) c.roles[map.gadget(j)] = QubitRole::GadgetAncilla;
    c.roles[map.parity()] = QubitRole::ParityAncilla;
    (void)num_inputs;
}

}  // namespace

Circuit build_parity_check_direct(int N, double theta) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    QubitMap map{0};
    Circuit c;
    c.num_qubits = map.total(2 * N);
    set_roles(c, map, 2 * N);
    const int p = map.parity();
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::OCW, {p, map.input(2 * j)}, theta});
        c.gates.push_back({GateKind::CW, {p, map.input(2 * j - 1)}, theta});
    }
    c.gates.push_back({GateKind::H, {p}});
    GateOp m{GateKind::Measure, {p}};
    m.meas_id = 0;
    c.gates.push_back(m);
    c.postselect[0] = 0;  // even-parity outcome
    c.validate();
    return c;
}

Circuit build_parity_check_decomposed(int N, double theta) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    QubitMap map{0};
    Circuit c;
    c.num_qubits = map.total(2 * N);
    set_roles(c, map, 2 * N);
    const int p = map.parity();
    // control-X part of the control-W decomposition; open controls realized by
    // conjugating the shared control with X
    for (int j = 1; j <= N; ++j) c.gates.push_back({GateKind::CX, {p, map.input(2 * j - 1)}});
    c.gates.push_back({GateKind::X, {p}});
    for (int j = 1; j <= N; ++j) c.gates.push_back({GateKind::CX, {p, map.input(2 * j)}});
    c.gates.push_back({GateKind::X, {p}});
    // phase circuit V = prod_j U_j
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CR, {p, map.input(2 * j - 1)}, 2.0 * theta});
    }
    c.gates.push_back({GateKind::X, {p}});
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CR, {p, map.input(2 * j)}, 2.0 * theta});
    }
    c.gates.push_back({GateKind::X, {p}});
    c.gates.push_back({GateKind::H, {p}});
    GateOp m{GateKind::Measure, {p}};
    m.meas_id = 0;
    c.gates.push_back(m);
    c.postselect[0] = 0;
    c.validate();
    return c;
}

Circuit build_gadget_uj(int j, double theta) {
    if (j < 1) throw std::invalid_argument("gadget index must be >= 1");
    // Standalone fragment: qubit 0 = fresh gadget ancilla, qubits 1..3 = the
    // data it touches (protocol labels 0, 2j-1, 2j).
    Circuit c;
    c.num_qubits = 4;
    c.roles = {QubitRole::GadgetAncilla, QubitRole::Input, QubitRole::Input, QubitRole::Input};
    const int anc = 0, q0 = 1, qodd = 2, qeven = 3;
    // control-M_j = CZ_{a,2j} CCZ_{a,0,2j} CCZ_{a,0,2j-1}
    c.gates.push_back({GateKind::CCZ, {anc, q0, qodd}});
    c.gates.push_back({GateKind::CCZ, {anc, q0, qeven}});
    c.gates.push_back({GateKind::CZ, {anc, qeven}});
    c.gates.push_back({GateKind::H, {anc}});
    c.gates.push_back({GateKind::R, {anc}, 2.0 * theta});
    c.pivot_gates.push_back(static_cast<int>(c.gates.size()) - 1);
    c.gates.push_back({GateKind::H, {anc}});
    GateOp m{GateKind::Measure, {anc}};
    m.meas_id = 0;
    c.gates.push_back(m);
    // M_j correction on the 1 outcome
    GateOp g1{GateKind::Z, {qeven}};
    g1.cond = 0;
    GateOp g2{GateKind::CZ, {q0, qeven}};
    g2.cond = 0;
    GateOp g3{GateKind::CZ, {q0, qodd}};
    g3.cond = 0;
    c.gates.push_back(g1);
    c.gates.push_back(g2);
    c.gates.push_back(g3);
    c.validate();
    return c;
}

Circuit build_tildeV(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    QubitMap map{N};
    Circuit c;
    c.num_qubits = map.total(2 * N);
    set_roles(c, map, 2 * N);
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CCZ, {map.gadget(j), map.parity(), map.input(2 * j - 1)}});
        c.gates.push_back({GateKind::CCZ, {map.gadget(j), map.parity(), map.input(2 * j)}});
        c.gates.push_back({GateKind::CZ, {map.gadget(j), map.input(2 * j)}});
    }
    c.validate();
    return c;
}

namespace {

/// Appends the compressed tilde-V gate sequence and tags the CCZ_#N block.
void append_tildeV_compressed(Circuit& c, const QubitMap& map, int N) {
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CZ, {map.gadget(j), map.input(2 * j)}});
    }
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CX, {map.input(2 * j), map.input(2 * j - 1)}});
    }
    ResourceBlock block;
    block.first_gate = static_cast<int>(c.gates.size());
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CCZ, {map.gadget(j), map.parity(), map.input(2 * j - 1)}});
    }
    block.last_gate = static_cast<int>(c.gates.size()) - 1;
    for (int j = 1; j <= N; ++j) block.qubits.push_back(map.gadget(j));
    block.qubits.push_back(map.parity());
    for (int j = 1; j <= N; ++j) block.qubits.push_back(map.input(2 * j - 1));
    std::sort(block.qubits.begin(), block.qubits.end());
    c.resource_block = block;
    for (int j = 1; j <= N; ++j) {
        c.gates.push_back({GateKind::CX, {map.input(2 * j), map.input(2 * j - 1)}});
    }
}

}  // namespace

Circuit build_tildeV_compressed(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    QubitMap map{N};
    Circuit c;
    c.num_qubits = map.total(2 * N);
    set_roles(c, map, 2 * N);
    append_tildeV_compressed(c, map, N);
    c.validate();
    return c;
}

Circuit build_full_protocol(int N, const std::vector<double>& thetas) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (static_cast<int>(thetas.size()) != N) {
        throw std::invalid_argument("need exactly N pivot angles");
    }
    QubitMap map{N};
    Circuit c;
    c.num_qubits = map.total(2 * N);
    set_roles(c, map, 2 * N);
    const int p = map.parity();

    // control-X part of the parity-check decomposition
    for (int j = 1; j <= N; ++j) c.gates.push_back({GateKind::CX, {p, map.input(2 * j - 1)}});
    c.gates.push_back({GateKind::X, {p}});
    for (int j = 1; j <= N; ++j) c.gates.push_back({GateKind::CX, {p, map.input(2 * j)}});
    c.gates.push_back({GateKind::X, {p}});

    // tilde-V in compressed form; the CCZ_#N block is the tagged sub-sequence
    append_tildeV_compressed(c, map, N);

    // gadget measurements with M_j corrections
    for (int j = 1; j <= N; ++j) {
        const int anc = map.gadget(j);
        c.gates.push_back({GateKind::H, {anc}});
        c.gates.push_back({GateKind::R, {anc}, 2.0 * thetas[j - 1]});
        c.pivot_gates.push_back(static_cast<int>(c.gates.size()) - 1);
        c.gates.push_back({GateKind::H, {anc}});
        GateOp m{GateKind::Measure, {anc}};
        m.meas_id = j;
        c.gates.push_back(m);
        GateOp g1{GateKind::Z, {map.input(2 * j)}};
        g1.cond = j;
        GateOp g2{GateKind::CZ, {p, map.input(2 * j)}};
        g2.cond = j;
        GateOp g3{GateKind::CZ, {p, map.input(2 * j - 1)}};
        g3.cond = j;
        c.gates.push_back(g1);
        c.gates.push_back(g2);
        c.gates.push_back(g3);
    }

    // postselected parity measurement
    c.gates.push_back({GateKind::H, {p}});
    GateOp m{GateKind::Measure, {p}};
    m.meas_id = 0;
    c.gates.push_back(m);
    c.postselect[0] = 0;
    c.validate();
    return c;
}

}  // namespace qparity
