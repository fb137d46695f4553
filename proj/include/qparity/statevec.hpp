#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace qparity {

using cplx = std::complex<double>;

inline constexpr int kDefaultQubitCap = 24;

/// Dense state vector over n qubits. Qubit 0 is the least significant bit of
/// the basis-state index; this convention is used everywhere in the project.
///
/// Values are plain data: copy freely, mutate only what you own. Unitary gate
/// application preserves the stored norm; projections leave the vector
/// unnormalized (postselected branches carry their weight in the norm).
class StateVector {
public:
    StateVector(int num_qubits, int qubit_cap = kDefaultQubitCap);

    /// |+>^n, all 2^n amplitudes equal to 2^{-n/2}.
    static StateVector plus_state(int num_qubits, int qubit_cap = kDefaultQubitCap);
    /// Computational basis state |index>.
    static StateVector basis_state(int num_qubits, std::uint64_t index,
                                   int qubit_cap = kDefaultQubitCap);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    cplx amp(std::uint64_t i) const { return amps_[i]; }

    double norm_sq() const;
    bool is_normalized(double tol = 1e-12) const;

    // single-qubit gates
    void apply_x(int q);
    void apply_z(int q);
    void apply_h(int q);
    void apply_r(int q, double theta);   // exp(i theta Z) = diag(e^{i theta}, e^{-i theta})
    void apply_w(int q, double theta);   // W(theta) = R(2 theta) X
    void apply_2x2(int q, const cplx u[2][2]);

    // multi-qubit gates
    void apply_cx(int c, int t);
    void apply_cz(int a, int b);
    void apply_ccz(int a, int b, int c);
    void apply_cr(int c, int t, double theta);
    void apply_cw(int c, int t, double theta, bool open_control);

    /// Project qubit q onto |outcome> without renormalizing.
    void project(int q, int outcome);

    cplx inner_product(const StateVector& other) const;

private:
    void check_qubit(int q) const;

    int num_qubits_;
    std::vector<cplx> amps_;
};

struct MeasureBranch {
    double probability;    // squared norm of the projected branch
    StateVector state;     // projected, unrenormalized
};

/// Computational-basis measurement of one qubit: both branches, unrenormalized.
/// The two probabilities sum to the squared norm of the input.
std::pair<MeasureBranch, MeasureBranch> measure_branch(const StateVector& state, int qubit);

/// Weight on Z|R(theta)> in the reduced state of `qubit`, before and after
/// normalization: returns (error weight, total weight). The partial trace is a
/// direct sum over the 2^{n-1} co-indices; only the 2x2 reduced block is formed.
std::pair<double, double> single_qubit_error_weight(const StateVector& state, int qubit,
                                                    double theta);

/// <Z R(theta)| rho_q |Z R(theta)> / tr(rho_q). Throws undefined_conditional_error
/// when the total weight vanishes.
double single_qubit_error_prob(const StateVector& state, int qubit, double theta);

/// Amplitudes of |R(theta)> = R(theta)|+>: (e^{i theta}, e^{-i theta})/sqrt(2).
std::pair<cplx, cplx> ket_r(double theta);

}  // namespace qparity
