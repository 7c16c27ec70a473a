#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "discordia/info.hpp"
#include "discordia/qmat.hpp"
#include "discordia/random.hpp"

using namespace discordia;

namespace {

bool is_valid(const QState& s) { return check_density(s.dims(), s.matrix()).empty(); }

}  // namespace

TEST_CASE("kron") {
  CHECK(max_abs_diff(kron(identity(2), identity(2)), identity(4)) == 0.0);

  const CMatrix xz = kron(pauli::X(), pauli::Z());
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = pauli::Z();
  expected.block(2, 0, 2, 2) = pauli::Z();
  CHECK(max_abs_diff(xz, expected) == 0.0);

  const CMatrix big = kron(CMatrix::Ones(2, 2), CMatrix::Ones(3, 3));
  CHECK(big.rows() == 6);
  CHECK(big.cols() == 6);
}

TEST_CASE("partial trace") {
  const std::size_t keep_a[] = {0}, keep_b[] = {1};

  SUBCASE("Bell marginal is maximally mixed") {
    const QState a = partial_trace(bell_state(), keep_a);
    CHECK(max_abs_diff(a.matrix(), identity(2) / 2.0) < 1e-14);
  }
  SUBCASE("product state") {
    Rng rng(3);
    const QState rho = random_state({2}, rng), sigma = random_state({3}, rng);
    const QState prod = product_state(rho, sigma);
    CHECK(max_abs_diff(partial_trace(prod, keep_a).matrix(), rho.matrix()) < 1e-12);
    CHECK(max_abs_diff(partial_trace(prod, keep_b).matrix(), sigma.matrix()) < 1e-12);
  }
  SUBCASE("classical correlated state") {
    CHECK(max_abs_diff(partial_trace(classical_corr_state(), keep_b).matrix(), identity(2) / 2.0) < 1e-14);
  }
  SUBCASE("middle subsystem of three") {
    Rng rng(5);
    const QState a = random_state({2}, rng), b = random_state({3}, rng), c = random_state({2}, rng);
    const QState abc = product_state(product_state(a, b), c);
    const std::size_t mid[] = {1}, outer[] = {2, 0};
    CHECK(max_abs_diff(partial_trace(abc, mid).matrix(), b.matrix()) < 1e-12);
    CHECK(max_abs_diff(partial_trace(abc, outer).matrix(), kron(a.matrix(), c.matrix())) < 1e-12);
  }
  SUBCASE("invalid index") {
    const std::size_t bad[] = {2};
    CHECK_THROWS_AS(partial_trace(bell_state(), bad), ValidationError);
    CHECK_THROWS_AS(partial_trace(bell_state(), std::span<const std::size_t>{}), ValidationError);
  }
}

TEST_CASE("apply_unitary") {
  SUBCASE("identity leaves the state unchanged") {
    const QState s = werner_state(0.3);
    CHECK(max_abs_diff(apply_unitary(s, UnitaryOp::make(identity(2), 0)).matrix(), s.matrix()) < 1e-15);
  }
  SUBCASE("bit flip on the classical mixture") {
    const QState out = apply_unitary(classical_corr_state(), UnitaryOp::make(pauli::X(), 0));
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(2, 2) = 0.5;  // |10⟩⟨10|
    expected(1, 1) = 0.5;  // |01⟩⟨01|
    CHECK(max_abs_diff(out.matrix(), expected) < 1e-15);
  }
  SUBCASE("X on half a Bell pair gives Ψ+ and keeps I(A,B) = 2") {
    const QState out = apply_unitary(bell_state(), UnitaryOp::make(pauli::X(), 0));
    CVector psi = CVector::Zero(4);
    psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
    CHECK(max_abs_diff(out.matrix(), psi * psi.adjoint()) < 1e-15);
    CHECK(mutual_info(out) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(apply_unitary(bell_state(), UnitaryOp::make(identity(3), 0)), ValidationError);
    CHECK_THROWS_AS(apply_unitary(bell_state(), UnitaryOp::make(identity(2), 2)), ValidationError);
  }
  SUBCASE("non-unitary rejected") {
    CHECK_THROWS_AS(UnitaryOp::make(2.0 * identity(2), 0), ValidationError);
  }
}

TEST_CASE("canonical states") {
  const QState bell = bell_state();
  CHECK(std::abs(bell.matrix()(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(bell.matrix()(0, 3) - 0.5) < 1e-15);
  CHECK(std::abs(bell.matrix()(3, 0) - 0.5) < 1e-15);
  CHECK(std::abs(bell.matrix()(3, 3) - 0.5) < 1e-15);

  const Eigen::VectorXd ev = clipped_eigenvalues(classical_corr_state().matrix());
  CHECK(ev(0) == doctest::Approx(0.0));
  CHECK(ev(1) == doctest::Approx(0.0));
  CHECK(ev(2) == doctest::Approx(0.5));
  CHECK(ev(3) == doctest::Approx(0.5));

  CHECK(max_abs_diff(werner_state(1.0).matrix(), bell.matrix()) < 1e-15);
  CHECK(max_abs_diff(werner_state(0.0).matrix(), identity(4) / 4.0) < 1e-15);
  CHECK_THROWS_AS(werner_state(1.5), ValidationError);
}

TEST_CASE("custom state validation names the violated invariant") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 0.7;
  m(1, 1) = 0.7;
  CHECK_THROWS_WITH_AS(custom_state({2}, m), doctest::Contains("unit trace"), ValidationError);

  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  CHECK_THROWS_WITH_AS(custom_state({2}, m), doctest::Contains("positive semidefinite"), ValidationError);

  m = identity(2) / 2.0;
  m(0, 1) = 0.1;
  CHECK_THROWS_WITH_AS(custom_state({2}, m), doctest::Contains("hermitian"), ValidationError);

  CHECK_THROWS_AS(custom_state({1, 2}, identity(2) / 2.0), ValidationError);
  CHECK_THROWS_AS(custom_state({2, 2}, identity(2) / 2.0), ValidationError);
}

TEST_CASE("random states stay valid under unitaries and partial traces") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::vector<int> dims = (trial % 3 == 0) ? std::vector<int>{2, 3} : std::vector<int>{2, 2};
    QState s = random_state(dims, rng);
    REQUIRE(is_valid(s));
    for (int step = 0; step < 3; ++step) {
      const std::size_t target = static_cast<std::size_t>(rng() % s.parties());
      s = apply_unitary(s, UnitaryOp::make(random_unitary(s.dims()[target], rng), target));
      REQUIRE(is_valid(s));
    }
    const std::size_t keep[] = {static_cast<std::size_t>(rng() % 2)};
    REQUIRE(is_valid(partial_trace(s, keep)));
  }
}

TEST_CASE("local unitary on A leaves B's marginal unchanged") {
  Rng rng(99);
  const std::size_t keep_b[] = {1};
  for (int trial = 0; trial < 200; ++trial) {
    const QState s = random_state({2, 3}, rng);
    const QState t = apply_unitary(s, UnitaryOp::make(random_unitary(2, rng), 0));
    REQUIRE(max_abs_diff(partial_trace(s, keep_b).matrix(), partial_trace(t, keep_b).matrix()) <= 1e-10);
  }
}

TEST_CASE("Hermitian eigendecomposition reconstructs the matrix") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 7);
    const CMatrix g = ginibre(d, rng);
    const CMatrix h = g + g.adjoint();
    const auto eig = hermitian_eig(h);
    const CMatrix back = eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    REQUIRE(max_abs_diff(back, h) <= 1e-9);
  }
}

TEST_CASE("Haar unitaries are unitary") {
  Rng rng(11);
  for (int d = 2; d <= 6; ++d) {
    const CMatrix u = random_unitary(d, rng);
    CHECK(max_abs_diff(u.adjoint() * u, identity(d)) < 1e-12);
  }
}
