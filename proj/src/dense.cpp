#include "qparity/dense.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qparity {

Matrix Matrix::identity(int d) {
    Matrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (dim != other.dim) throw std::invalid_argument("matrix dim mismatch");
    Matrix out(dim);
    for (int r = 0; r < dim; ++r) {
        for (int k = 0; k < dim; ++k) {
            const cplx v = at(r, k);
            if (v == cplx{0, 0}) continue;
            for (int c = 0; c < dim; ++c) out.at(r, c) += v * other.at(k, c);
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (dim != other.dim) throw std::invalid_argument("matrix dim mismatch");
    Matrix out(dim);
    for (std::size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + other.a[i];
    return out;
}

Matrix Matrix::scaled(cplx s) const {
    Matrix out = *this;
    for (auto& v : out.a) v *= s;
    return out;
}

Matrix Matrix::dagger() const {
    Matrix out(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) out.at(c, r) = std::conj(at(r, c));
    }
    return out;
}

cplx Matrix::frobenius_inner(const Matrix& other) const {
    cplx s{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * other.a[i];
    return s;
}

Matrix matrix_of(int num_qubits, const std::function<void(StateVector&)>& action) {
    const int dim = 1 << num_qubits;
    Matrix m(dim);
    for (int b = 0; b < dim; ++b) {
        StateVector psi = StateVector::basis_state(num_qubits, b);
        action(psi);
        for (int r = 0; r < dim; ++r) m.at(r, b) = psi.amp(r);
    }
    return m;
}

Matrix circuit_unitary(const Circuit& circuit) {
    for (const auto& g : circuit.gates) {
        if (g.kind == GateKind::Measure) {
            throw std::invalid_argument("circuit_unitary needs a measurement-free circuit");
        }
    }
    return matrix_of(circuit.num_qubits, [&](StateVector& psi) {
        for (const auto& g : circuit.gates) apply_gate(psi, g);
    });
}

double max_abs_diff(const Matrix& A, const Matrix& B) {
    if (A.dim != B.dim) throw std::invalid_argument("matrix dim mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < A.a.size(); ++i) d = std::max(d, std::abs(A.a[i] - B.a[i]));
    return d;
}

double max_abs_diff_up_to_phase(const Matrix& A, const Matrix& B) {
    if (A.dim != B.dim) throw std::invalid_argument("matrix dim mismatch");
    std::size_t ref = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < B.a.size(); ++i) {
        if (std::abs(B.a[i]) > best) {
            best = std::abs(B.a[i]);
            ref = i;
        }
    }
    if (best < 1e-14) return max_abs_diff(A, B);
    cplx lambda = A.a[ref] / B.a[ref];
    if (std::abs(lambda) < 1e-14) lambda = 1.0;
    lambda /= std::abs(lambda);
    double d = 0.0;
    for (std::size_t i = 0; i < A.a.size(); ++i) {
        d = std::max(d, std::abs(A.a[i] - lambda * B.a[i]));
    }
    return d;
}

std::vector<Matrix> accepted_kraus(const Circuit& circuit) {
    const auto inputs = circuit.input_qubits();
    const int nd = static_cast<int>(inputs.size());
    std::vector<int> ancillas;
    for (int q = 0; q < circuit.num_qubits; ++q) {
        if (std::find(inputs.begin(), inputs.end(), q) == inputs.end()) ancillas.push_back(q);
    }
    // every ancilla must be measured so branch amplitudes have a definite address
    std::map<int, int> measured_qubit;  // meas_id -> qubit
    for (const auto& g : circuit.gates) {
        if (g.kind == GateKind::Measure) measured_qubit[g.meas_id] = g.qubits[0];
    }
    for (int q : ancillas) {
        bool found = false;
        for (const auto& [mid, mq] : measured_qubit) found = found || mq == q;
        if (!found) throw std::invalid_argument("accepted_kraus: unmeasured non-input qubit");
    }

    const int na = static_cast<int>(ancillas.size());
    const std::uint64_t dim_d = std::uint64_t{1} << nd;
    const double anc_amp = std::pow(2.0, -0.5 * na);

    std::vector<Matrix> branches;
    for (std::uint64_t b = 0; b < dim_d; ++b) {
        StateVector init(circuit.num_qubits);
        for (std::uint64_t av = 0; av < (std::uint64_t{1} << na); ++av) {
            std::uint64_t idx = 0;
            for (int k = 0; k < nd; ++k) {
                if (b >> k & 1) idx |= std::uint64_t{1} << inputs[k];
            }
            for (int k = 0; k < na; ++k) {
                if (av >> k & 1) idx |= std::uint64_t{1} << ancillas[k];
            }
            init.amplitudes()[idx] = anc_amp;
        }
        auto results = run_with_branches(circuit, init);
        if (b == 0) {
            branches.assign(results.size(), Matrix(static_cast<int>(dim_d)));
        }
        for (std::size_t br = 0; br < results.size(); ++br) {
            std::uint64_t anc_bits = 0;
            for (const auto& [mid, outcome] : results[br].outcomes) {
                if (outcome) anc_bits |= std::uint64_t{1} << measured_qubit[mid];
            }
            for (std::uint64_t d = 0; d < dim_d; ++d) {
                std::uint64_t idx = anc_bits;
                for (int k = 0; k < nd; ++k) {
                    if (d >> k & 1) idx |= std::uint64_t{1} << inputs[k];
                }
                branches[br].at(static_cast<int>(d), static_cast<int>(b)) =
                    results[br].state.amp(idx);
            }
        }
    }
    return branches;
}

double channel_matches_single_kraus(const std::vector<Matrix>& branches, const Matrix& K) {
    const double k_norm_sq = K.frobenius_inner(K).real();
    if (k_norm_sq < 1e-14) throw std::invalid_argument("reference Kraus is zero");
    double dev = 0.0;
    double weight = 0.0;
    for (const auto& B : branches) {
        const cplx mu = K.frobenius_inner(B) / k_norm_sq;
        weight += std::norm(mu);
        dev = std::max(dev, max_abs_diff(B, K.scaled(mu)));
    }
    // weights must reassemble the whole channel: sum |mu_b|^2 = 1
    dev = std::max(dev, std::abs(weight - 1.0));
    return dev;
}

std::vector<Matrix> pauli_basis(int num_qubits) {
    static const cplx sigma[4][2][2] = {
        {{1, 0}, {0, 1}},                      // I
        {{0, 1}, {1, 0}},                      // X
        {{0, cplx{0, -1}}, {cplx{0, 1}, 0}},   // Y
        {{1, 0}, {0, -1}},                     // Z
    };
    const int dim = 1 << num_qubits;
    std::vector<Matrix> out;
    const int count = 1 << (2 * num_qubits);
    out.reserve(count);
    for (int word = 0; word < count; ++word) {
        Matrix P(dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                cplx v{1, 0};
                for (int q = 0; q < num_qubits && v != cplx{0, 0}; ++q) {
                    const int s = (word >> (2 * q)) & 3;
                    v *= sigma[s][(r >> q) & 1][(c >> q) & 1];
                }
                P.at(r, c) = v;
            }
        }
        out.push_back(std::move(P));
    }
    return out;
}

double channel_deviation_on_pauli_basis(const std::vector<Matrix>& branches, const Matrix& U) {
    int nq = 0;
    while ((1 << nq) < U.dim) ++nq;
    const Matrix Ud = U.dagger();
    double dev = 0.0;
    for (const auto& P : pauli_basis(nq)) {
        Matrix lhs(U.dim);
        for (const auto& B : branches) lhs = lhs + B * P * B.dagger();
        const Matrix rhs = U * P * Ud;
        dev = std::max(dev, max_abs_diff(lhs, rhs));
    }
    return dev;
}

}  // namespace qparity
