#pragma once

#include <functional>
#include <vector>

#include "qparity/circuit.hpp"
#include "qparity/statevec.hpp"

namespace qparity {

/// Small dense complex matrix, row-major. Only what the identity verifiers
/// need; dimensions stay at or below 2^10.
struct Matrix {
    int dim = 0;
    std::vector<cplx> a;

    Matrix() = default;
    explicit Matrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d, cplx{0, 0}) {}
    static Matrix identity(int d);

    cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
    cplx at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix scaled(cplx s) const;
    Matrix dagger() const;
    cplx frobenius_inner(const Matrix& other) const;  // tr(this^dag other)
};

/// Builds the matrix of a linear map given by its action on basis states.
Matrix matrix_of(int num_qubits, const std::function<void(StateVector&)>& action);

/// Dense unitary of a measurement-free circuit.
Matrix circuit_unitary(const Circuit& circuit);

/// Max entry-wise |A - B|.
double max_abs_diff(const Matrix& A, const Matrix& B);

/// Max entry-wise |A - lambda B| minimized over a single global phase lambda.
double max_abs_diff_up_to_phase(const Matrix& A, const Matrix& B);

/// Accepted Kraus operators of a circuit on its input-qubit space: ancillas
/// start in |+>, postselected measurements are projected, the remaining
/// measurement outcomes enumerate the branches. Every non-input qubit must be
/// measured by the end of the circuit.
std::vector<Matrix> accepted_kraus(const Circuit& circuit);

/// Deviation between the channel sum_b K_b rho K_b^dag and the rank-one
/// channel K rho K^dag: each branch must be proportional to K and the
/// proportionality weights must sum to one.
double channel_matches_single_kraus(const std::vector<Matrix>& branches, const Matrix& K);

/// The 4^n Pauli operator basis on n qubits (I, X, Y, Z tensor words).
std::vector<Matrix> pauli_basis(int num_qubits);

/// Max entry deviation of sum_b K_b P K_b^dag vs U P U^dag over all Paulis P.
double channel_deviation_on_pauli_basis(const std::vector<Matrix>& branches, const Matrix& U);

}  // namespace qparity
