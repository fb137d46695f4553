#include "qparity/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qparity/errors.hpp"

namespace qparity {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

StateVector::StateVector(int num_qubits, int qubit_cap) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("StateVector needs at least one qubit");
    }
    if (num_qubits > qubit_cap) {
        throw resource_limit_error("qubit count " + std::to_string(num_qubits) +
                                   " exceeds cap " + std::to_string(qubit_cap));
    }
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
}

StateVector StateVector::plus_state(int num_qubits, int qubit_cap) {
    StateVector s(num_qubits, qubit_cap);
    const double a = std::pow(2.0, -0.5 * num_qubits);
    for (auto& x : s.amps_) x = a;
    return s;
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index, int qubit_cap) {
    StateVector s(num_qubits, qubit_cap);
    if (index >= s.dim()) throw std::out_of_range("basis state index out of range");
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_sq() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply_x(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & step)) std::swap(amps_[i], amps_[i | step]);
    }
}

void StateVector::apply_z(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & step) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_h(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & step)) {
            const cplx a0 = amps_[i], a1 = amps_[i | step];
            amps_[i] = (a0 + a1) * kInvSqrt2;
            amps_[i | step] = (a0 - a1) * kInvSqrt2;
        }
    }
}

void StateVector::apply_r(int q, double theta) {
    check_qubit(q);
    const cplx p0 = std::polar(1.0, theta), p1 = std::polar(1.0, -theta);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= (i & step) ? p1 : p0;
    }
}

void StateVector::apply_w(int q, double theta) {
    // W(theta) = R(2 theta) X = [[0, e^{2 i theta}], [e^{-2 i theta}, 0]]
    check_qubit(q);
    const cplx p0 = std::polar(1.0, 2.0 * theta), p1 = std::polar(1.0, -2.0 * theta);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & step)) {
            const cplx a0 = amps_[i], a1 = amps_[i | step];
            amps_[i] = p0 * a1;
            amps_[i | step] = p1 * a0;
        }
    }
}

void StateVector::apply_2x2(int q, const cplx u[2][2]) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & step)) {
            const cplx a0 = amps_[i], a1 = amps_[i | step];
            amps_[i] = u[0][0] * a0 + u[0][1] * a1;
            amps_[i | step] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
}

void StateVector::apply_cx(int c, int t) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) throw std::invalid_argument("CX control equals target");
    const std::uint64_t cs = std::uint64_t{1} << c, ts = std::uint64_t{1} << t;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & cs) && !(i & ts)) std::swap(amps_[i], amps_[i | ts]);
    }
}

void StateVector::apply_cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("CZ qubits must differ");
    const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_ccz(int a, int b, int c) {
    check_qubit(a);
    check_qubit(b);
    check_qubit(c);
    if (a == b || a == c || b == c) throw std::invalid_argument("CCZ qubits must differ");
    const std::uint64_t mask =
        (std::uint64_t{1} << a) | (std::uint64_t{1} << b) | (std::uint64_t{1} << c);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_cr(int c, int t, double theta) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) throw std::invalid_argument("controlled-R control equals target");
    const cplx p0 = std::polar(1.0, theta), p1 = std::polar(1.0, -theta);
    const std::uint64_t cs = std::uint64_t{1} << c, ts = std::uint64_t{1} << t;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & cs) amps_[i] *= (i & ts) ? p1 : p0;
    }
}

void StateVector::apply_cw(int c, int t, double theta, bool open_control) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) throw std::invalid_argument("controlled-W control equals target");
    const cplx p0 = std::polar(1.0, 2.0 * theta), p1 = std::polar(1.0, -2.0 * theta);
    const std::uint64_t cs = std::uint64_t{1} << c, ts = std::uint64_t{1} << t;
    const std::uint64_t want = open_control ? 0 : cs;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & cs) == want && !(i & ts)) {
            const cplx a0 = amps_[i], a1 = amps_[i | ts];
            amps_[i] = p0 * a1;
            amps_[i | ts] = p1 * a0;
        }
    }
}

void StateVector::project(int q, int outcome) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    const std::uint64_t want = outcome ? step : 0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & step) != want) amps_[i] = 0.0;
    }
}

cplx StateVector::inner_product(const StateVector& other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw std::invalid_argument("inner product needs equal qubit counts");
    }
    cplx r{0.0, 0.0};
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        r += std::conj(amps_[i]) * other.amps_[i];
    }
    return r;
}

std::pair<MeasureBranch, MeasureBranch> measure_branch(const StateVector& state, int qubit) {
    StateVector b0 = state, b1 = state;
    b0.project(qubit, 0);
    b1.project(qubit, 1);
    MeasureBranch m0{b0.norm_sq(), std::move(b0)};
    MeasureBranch m1{b1.norm_sq(), std::move(b1)};
    return {std::move(m0), std::move(m1)};
}

std::pair<cplx, cplx> ket_r(double theta) {
    return {std::polar(kInvSqrt2, theta), std::polar(kInvSqrt2, -theta)};
}

std::pair<double, double> single_qubit_error_weight(const StateVector& state, int qubit,
                                                    double theta) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    const std::uint64_t step = std::uint64_t{1} << qubit;
    cplx r00 = 0, r01 = 0, r11 = 0;
    const auto& a = state.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if (i & step) continue;
        const cplx a0 = a[i], a1 = a[i | step];
        r00 += a0 * std::conj(a0);
        r01 += a0 * std::conj(a1);
        r11 += a1 * std::conj(a1);
    }
    // |Z R(theta)> = (e^{i theta}, -e^{-i theta})/sqrt(2)
    const cplx v0 = std::polar(kInvSqrt2, theta), v1 = -std::polar(kInvSqrt2, -theta);
    const cplx w = std::conj(v0) * (r00 * v0 + r01 * v1) +
                   std::conj(v1) * (std::conj(r01) * v0 + r11 * v1);
    return {w.real(), (r00 + r11).real()};
}

double single_qubit_error_prob(const StateVector& state, int qubit, double theta) {
    auto [err, tot] = single_qubit_error_weight(state, qubit, theta);
    if (tot <= 0.0) {
        throw undefined_conditional_error("zero total weight in single_qubit_error_prob");
    }
    return err / tot;
}

}  // namespace qparity
