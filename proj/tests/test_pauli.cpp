#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include "tqc/pauli.hpp"
#include "tqc/solver.hpp"

using namespace tqc;

TEST_CASE("single qubit products") {
    auto x = PauliString::single_x(1, 0);
    auto z = PauliString::single_z(1, 0);

    auto xx = multiply(x, x);
    CHECK(xx.is_identity());

    // X*Z = -i Y with the Y = iXZ convention
    auto xz = multiply(x, z);
    CHECK(xz.x_bit(0));
    CHECK(xz.z_bit(0));
    CHECK(xz.phase_exp() == 0);  // XZ stored directly; equals -iY in the Y = iXZ convention

    auto zx = multiply(z, x);
    CHECK(zx.phase_exp() == 2);
    CHECK(multiply(xz, xz).phase_exp() == 2);  // (XZ)^2 = -I
}

TEST_CASE("two qubit product against dense oracle") {
    auto xx = PauliString::x_string(2, {0, 1});
    auto zz = PauliString::z_string(2, {0, 1});
    auto prod = multiply(xx, zz);
    Eigen::MatrixXcd lhs = dense_matrix(prod);
    Eigen::MatrixXcd rhs = dense_matrix(xx) * dense_matrix(zz);
    CHECK((lhs - rhs).norm() == doctest::Approx(0.0));
    // (X x X)(Z x Z) = -(Y x Y)
    auto yy = PauliString::from_string("-YY");
    CHECK((dense_matrix(yy) - rhs).norm() == doctest::Approx(0.0));
}

TEST_CASE("random products match dense matrices exactly") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng.next() % 5;
        PauliString a(n), b(n);
        for (std::size_t q = 0; q < n; ++q) {
            a.set_x(q, rng.next() & 1);
            a.set_z(q, rng.next() & 1);
            b.set_x(q, rng.next() & 1);
            b.set_z(q, rng.next() & 1);
        }
        a.set_phase_exp(int(rng.next() % 4));
        b.set_phase_exp(int(rng.next() % 4));
        auto ab = multiply(a, b);
        CHECK((dense_matrix(ab) - dense_matrix(a) * dense_matrix(b)).norm() < 1e-14);
        // associativity on a third random string
        PauliString c(n);
        for (std::size_t q = 0; q < n; ++q) {
            c.set_x(q, rng.next() & 1);
            c.set_z(q, rng.next() & 1);
        }
        CHECK(multiply(multiply(a, b), c).equals(multiply(a, multiply(b, c))));
        // commutes() agrees with the product phases
        auto ba = multiply(b, a);
        const bool same_phase = ab.phase_exp() == ba.phase_exp();
        CHECK(commutes(a, b) == same_phase);
    }
}

TEST_CASE("anticommuting pairs") {
    auto x = PauliString::single_x(2, 0);
    auto z = PauliString::single_z(2, 0);
    CHECK(!commutes(x, z));
    CHECK(commutes(PauliString::x_string(2, {0, 1}), PauliString::z_string(2, {0, 1})));
}

TEST_CASE("restrict") {
    auto a = PauliString::from_string("+XZX");
    auto r = restrict_to(a, {0, 2});
    CHECK(r.to_string() == "+XX");
    CHECK(restrict_to(restrict_to(a, {0, 2}), {0, 1}).to_string() == "+XX");
    CHECK(restrict_to(PauliString::identity(5), {1, 3}).is_identity());
    CHECK_THROWS(restrict_to(a, {7}));
    // restrict is idempotent on a fixed window
    auto r2 = restrict_to(a, {0, 1});
    auto idx = std::vector<std::size_t>{0, 1};
    CHECK(restrict_to(r2, idx).equals(r2));
}

TEST_CASE("dense single-site matrices") {
    auto z = dense_matrix(PauliString::single_z(1, 0));
    CHECK(z(0, 0) == std::complex<double>(1, 0));
    CHECK(z(1, 1) == std::complex<double>(-1, 0));
    auto id = dense_matrix(PauliString::identity(1));
    CHECK((id - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);
    // 4-qubit plaquette Z: diagonal, trace zero, entries +-1
    auto zp = dense_matrix(PauliString::z_string(4, {0, 1, 2, 3}));
    CHECK(std::abs(zp.trace()) == doctest::Approx(0.0));
    for (int i = 0; i < 16; ++i) CHECK(std::abs(std::abs(zp(i, i).real()) - 1.0) < 1e-15);
    CHECK_THROWS(dense_matrix(PauliString::identity(20)));
}

TEST_CASE("string round trip") {
    for (const char* s : {"+XIZY", "-ZZZ", "+iXY", "-iIIX"}) {
        CHECK(PauliString::from_string(s).to_string() == s);
    }
}
