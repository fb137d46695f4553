#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qparity/dense.hpp"
#include "qparity/errors.hpp"
#include "qparity/statevec.hpp"

using namespace qparity;

namespace {
constexpr double kPi = 3.14159265358979323846;

StateVector random_state(int n, std::mt19937_64& rng) {
    StateVector s(n);
    std::normal_distribution<double> g;
    double norm = 0.0;
    for (auto& a : s.amplitudes()) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto& a : s.amplitudes()) a /= std::sqrt(norm);
    return s;
}
}  // namespace

TEST_CASE("plus state amplitudes") {
    const StateVector one = StateVector::plus_state(1);
    CHECK(std::abs(one.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(one.amp(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
    const StateVector two = StateVector::plus_state(2);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(two.amp(i) - 0.5) < 1e-15);
    CHECK(two.is_normalized());
}

TEST_CASE("qubit cap") {
    CHECK_THROWS_AS(StateVector::plus_state(25), resource_limit_error);
    CHECK_THROWS_AS(StateVector::plus_state(5, 4), resource_limit_error);
    CHECK_NOTHROW(StateVector::plus_state(5, 5));
    CHECK_THROWS(StateVector(0));
}

TEST_CASE("basic gate actions") {
    StateVector s = StateVector::basis_state(1, 0);
    s.apply_x(0);
    CHECK(std::abs(s.amp(1) - 1.0) < 1e-15);

    StateVector plus = StateVector::plus_state(1);
    plus.apply_r(0, 0.7);
    CHECK(std::abs(plus.amp(0) - std::polar(1.0 / std::sqrt(2.0), 0.7)) < 1e-15);
    CHECK(std::abs(plus.amp(1) - std::polar(1.0 / std::sqrt(2.0), -0.7)) < 1e-15);

    StateVector ccz = StateVector::basis_state(3, 7);
    ccz.apply_ccz(0, 1, 2);
    CHECK(std::abs(ccz.amp(7) + 1.0) < 1e-15);
    StateVector ccz2 = StateVector::basis_state(3, 6);
    ccz2.apply_ccz(0, 1, 2);
    CHECK(std::abs(ccz2.amp(6) - 1.0) < 1e-15);
}

TEST_CASE("W(pi/8) conjugation interchanges X and Y") {
    const double t = kPi / 8.0;
    const Matrix lhs = matrix_of(1, [&](StateVector& psi) {
        psi.apply_w(0, t);  // W^dag = W
        psi.apply_x(0);
        psi.apply_w(0, t);
    });
    Matrix y(2);
    y.at(0, 1) = cplx{0, -1};
    y.at(1, 0) = cplx{0, 1};
    // with R(theta) = exp(i theta Z) the conjugation lands on -Y; identity
    // comparisons are up to one global phase
    CHECK(max_abs_diff_up_to_phase(lhs, y) < 1e-12);
    CHECK(max_abs_diff(lhs, y.scaled(-1.0)) < 1e-12);
}

TEST_CASE("W(theta) = R(2 theta) X as matrices") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double t = unif(rng);
        const Matrix w = matrix_of(1, [&](StateVector& psi) { psi.apply_w(0, t); });
        const Matrix rx = matrix_of(1, [&](StateVector& psi) {
            psi.apply_x(0);
            psi.apply_r(0, 2.0 * t);
        });
        CHECK(max_abs_diff(w, rx) < 1e-12);
    }
}

TEST_CASE("R(theta) equals exp(i theta Z) entrywise") {
    const Matrix r = matrix_of(1, [](StateVector& psi) { psi.apply_r(0, 0.3); });
    CHECK(std::abs(r.at(0, 0) - std::polar(1.0, 0.3)) < 1e-15);
    CHECK(std::abs(r.at(1, 1) - std::polar(1.0, -0.3)) < 1e-15);
    CHECK(std::abs(r.at(0, 1)) < 1e-15);
}

TEST_CASE("|R(theta)> is the +1 eigenstate of W(theta)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double t = unif(rng);
        StateVector r(1);
        auto [a0, a1] = ket_r(t);
        r.amplitudes() = {a0, a1};
        StateVector wr = r;
        wr.apply_w(0, t);
        CHECK(std::abs(wr.amp(0) - r.amp(0)) < 1e-12);
        CHECK(std::abs(wr.amp(1) - r.amp(1)) < 1e-12);

        StateVector zr = r;
        zr.apply_z(0);
        StateVector wzr = zr;
        wzr.apply_w(0, t);
        CHECK(std::abs(wzr.amp(0) + zr.amp(0)) < 1e-12);
        CHECK(std::abs(wzr.amp(1) + zr.amp(1)) < 1e-12);
    }
}

TEST_CASE("gate then inverse is identity") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double t = unif(rng);
        StateVector s = random_state(3, rng);
        const StateVector base = s;
        auto check_roundtrip = [&](auto fwd, auto bwd) {
            StateVector x = base;
            fwd(x);
            bwd(x);
            for (std::size_t i = 0; i < x.dim(); ++i) {
                CHECK(std::abs(x.amp(i) - base.amp(i)) < 1e-12);
            }
        };
        check_roundtrip([](StateVector& x) { x.apply_x(1); }, [](StateVector& x) { x.apply_x(1); });
        check_roundtrip([](StateVector& x) { x.apply_z(2); }, [](StateVector& x) { x.apply_z(2); });
        check_roundtrip([](StateVector& x) { x.apply_h(0); }, [](StateVector& x) { x.apply_h(0); });
        check_roundtrip([&](StateVector& x) { x.apply_r(0, t); },
                        [&](StateVector& x) { x.apply_r(0, -t); });
        check_roundtrip([&](StateVector& x) { x.apply_w(1, t); },
                        [&](StateVector& x) { x.apply_w(1, t); });
        check_roundtrip([](StateVector& x) { x.apply_cx(0, 2); },
                        [](StateVector& x) { x.apply_cx(0, 2); });
        check_roundtrip([](StateVector& x) { x.apply_cz(1, 2); },
                        [](StateVector& x) { x.apply_cz(1, 2); });
        check_roundtrip([](StateVector& x) { x.apply_ccz(0, 1, 2); },
                        [](StateVector& x) { x.apply_ccz(0, 1, 2); });
        check_roundtrip([&](StateVector& x) { x.apply_cr(0, 1, t); },
                        [&](StateVector& x) { x.apply_cr(0, 1, -t); });
        check_roundtrip([&](StateVector& x) { x.apply_cw(2, 0, t, false); },
                        [&](StateVector& x) { x.apply_cw(2, 0, t, false); });
        check_roundtrip([&](StateVector& x) { x.apply_cw(2, 0, t, true); },
                        [&](StateVector& x) { x.apply_cw(2, 0, t, true); });
    }
}

TEST_CASE("measure_branch splits the norm") {
    const auto [m0, m1] = measure_branch(StateVector::plus_state(1), 0);
    CHECK(m0.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m1.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(m0.state.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(m0.state.amp(1)) < 1e-15);

    const auto [z0, z1] = measure_branch(StateVector::basis_state(1, 0), 0);
    CHECK(z0.probability == doctest::Approx(1.0));
    CHECK(z1.probability == doctest::Approx(0.0));

    StateVector bell(2);
    bell.amplitudes()[0] = 1.0 / std::sqrt(2.0);
    bell.amplitudes()[3] = 1.0 / std::sqrt(2.0);
    const auto [b0, b1] = measure_branch(bell, 1);
    CHECK(b0.probability == doctest::Approx(0.5));
    CHECK(b1.probability == doctest::Approx(0.5));
    CHECK(std::abs(b0.state.amp(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(b1.state.amp(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("branch probabilities sum to the squared norm") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        StateVector s = random_state(4, rng);
        s.project(0, 1);  // leave it unnormalized
        const double total = s.norm_sq();
        const auto [m0, m1] = measure_branch(s, 2);
        CHECK(m0.probability + m1.probability == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("single-qubit error probability") {
    const double t = 0.42;
    auto [a0, a1] = ket_r(t);
    StateVector r(1);
    r.amplitudes() = {a0, a1};
    CHECK(single_qubit_error_prob(r, 0, t) == doctest::Approx(0.0).epsilon(1e-12));
    StateVector zr = r;
    zr.apply_z(0);
    CHECK(single_qubit_error_prob(zr, 0, t) == doctest::Approx(1.0).epsilon(1e-12));

    // (|R R> + Z|R> Z|R>)/sqrt(2): tracing the partner leaves half the weight bad
    StateVector mix(2);
    for (int b0 = 0; b0 < 2; ++b0) {
        for (int b1 = 0; b1 < 2; ++b1) {
            const cplx good = (b0 ? a1 : a0) * (b1 ? a1 : a0);
            const cplx bad = (b0 ? -a1 : a0) * (b1 ? -a1 : a0);
            mix.amplitudes()[b0 | (b1 << 1)] = (good + bad) / std::sqrt(2.0);
        }
    }
    CHECK(single_qubit_error_prob(mix, 0, t) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("error probability ignores W on other qubits") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        StateVector s = random_state(3, rng);
        const double t = 0.37;
        const double before = single_qubit_error_prob(s, 0, t);
        s.apply_w(1, t);
        s.apply_w(2, 1.1);
        CHECK(single_qubit_error_prob(s, 0, t) == doctest::Approx(before).epsilon(1e-11));
    }
}

TEST_CASE("error paths") {
    StateVector s(2);  // zero vector
    CHECK_THROWS_AS(single_qubit_error_prob(s, 0, 0.1), undefined_conditional_error);
    StateVector p = StateVector::plus_state(2);
    CHECK_THROWS_AS(p.apply_x(5), std::out_of_range);
    CHECK_THROWS_AS(p.apply_cx(0, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)single_qubit_error_prob(p, -1, 0.1), std::out_of_range);
}
