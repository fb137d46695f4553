#pragma once

#include <vector>

#include "qparity/circuit.hpp"

namespace qparity {

/// Ancilla-controlled W(theta) parity check on 2N inputs. Per input
/// pair (2j-1, 2j) the even member carries the open control; the accepted
/// Kraus operator is invariant under swapping the assignment within a pair.
Circuit build_parity_check_direct(int N, double theta);

/// The same channel with every control-W split into control-X gates
/// followed by the diagonal circuit V (control-phase gates).
Circuit build_parity_check_decomposed(int N, double theta);

/// Measurement gadget realizing U_j with one fresh |+> ancilla, a control-M_j,
/// the pivotal rotation H R(2 theta) H, a measurement, and an M_j correction
/// on the 1 outcome. Fragment layout: qubit 0 = ancilla, qubits 1..3 = the
/// data (protocol labels 0, 2j-1, 2j).
Circuit build_gadget_uj(int j, double theta);

/// Chained control-M_j circuit of 2N CCZ gates (plus CZ dressing).
Circuit build_tildeV(int N);

/// Same unitary with exactly N CCZ gates, all sharing the parity qubit; the
/// CCZ run is tagged as the circuit's resource block.
Circuit build_tildeV_compressed(int N);

/// The whole second step on 3N+1 qubits. Gadget measurements are
/// corrected, the parity measurement is postselected on the even outcome,
/// pivot gate positions and the CCZ_#N block are tagged for noise insertion.
/// thetas must have length N (all equal for the main protocol; distinct
/// angles give the paired-angle variant).
Circuit build_full_protocol(int N, const std::vector<double>& thetas);

}  // namespace qparity
