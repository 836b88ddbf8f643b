#include <doctest.h>

#include <cmath>

#include "ahcurv/curvature.hpp"
#include "oracles.hpp"

using namespace ahcurv;

namespace {

FourTensor random_tensor(int n, SeededSampler& s) {
  FourTensor t(n);
  for (double& v : t.components()) v = s.normal();
  return t;
}

FourTensor random_rk(int n, SeededSampler& s) {
  const AdaptedStructure st(n);
  FourTensor t = project_rk(project_curvature(random_tensor(n, s)), st);
  t *= 1.0 / t.frobenius_norm();
  return t;
}

double rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

Eigen::MatrixXd eye(int d) { return Eigen::MatrixXd::Identity(d, d); }

}  // namespace

TEST_CASE("validate_curvature_symmetries") {
  const AdaptedStructure st(3);
  const SymmetryReport p1 = validate_curvature_symmetries(pi1(st));
  CHECK(p1.worst() == 0.0);

  FourTensor bad(3);
  bad(0, 0, 1, 2) = 1.0;
  CHECK(validate_curvature_symmetries(bad).skew12 == 2.0);  // |T(0,0,1,2) + T(0,0,1,2)|

  CHECK(validate_curvature_symmetries(FourTensor::zero(3)).worst() == 0.0);
  CHECK(validate_curvature_symmetries(pi2(st)).worst() <= 1e-14);
}

TEST_CASE("project_curvature") {
  const AdaptedStructure st(3);
  const FourTensor p1 = pi1(st);
  CHECK((project_curvature(p1) - p1).max_abs() <= 1e-15);
  CHECK(project_curvature(FourTensor::zero(3)).max_abs() == 0.0);

  SeededSampler s(1);
  for (int n : {2, 3}) {
    const FourTensor t = random_tensor(n, s);
    const FourTensor once = project_curvature(t);
    const FourTensor twice = project_curvature(once);
    CHECK((twice - once).max_abs() <= 1e-12 * std::max(1.0, once.max_abs()));
    CHECK(validate_curvature_symmetries(once).passes(1e-12, once.frobenius_norm()));
    // orthogonal projection: residual is orthogonal to the image
    CHECK(std::abs((t - once).dot(once)) <= 1e-10 * t.frobenius_norm() * once.frobenius_norm());
  }
}

TEST_CASE("project_rk") {
  const AdaptedStructure st(3);
  const FourTensor p2 = pi2(st);
  CHECK((project_rk(p2, st) - p2).max_abs() <= 1e-15);

  SeededSampler s(2);
  const FourTensor rk = random_rk(3, s);
  CHECK((project_rk(rk, st) - rk).max_abs() <= 1e-14);

  const FourTensor curv = project_curvature(random_tensor(3, s));
  const FourTensor out = project_rk(curv, st);
  CHECK(rk_residual(out, st) <= 1e-12);
  CHECK(validate_curvature_symmetries(out).passes(1e-12, out.frobenius_norm()));
  CHECK((project_rk(out, st) - out).max_abs() <= 1e-12);
}

TEST_CASE("pair symmetry follows from the other three") {
  SeededSampler s(3);
  for (int trial = 0; trial < 5; ++trial) {
    const FourTensor t = project_curvature(random_tensor(2 + trial % 2, s));
    const SymmetryReport r = validate_curvature_symmetries(t);
    REQUIRE(std::max({r.skew12, r.skew34, r.bianchi}) <= 1e-12 * std::max(1.0, t.frobenius_norm()));
    CHECK(r.pair_symmetry <= 1e-10 * std::max(1.0, t.frobenius_norm()));
  }
}

TEST_CASE("CurvatureTensor validation") {
  const AdaptedStructure st(3);
  FourTensor bad(3);
  bad(0, 1, 0, 1) = 1.0;  // not pair/skew consistent
  CHECK_THROWS_AS(CurvatureTensor(bad, st), Error);
  CHECK(CurvatureTensor(pi1(st), st).is_rk());

  SeededSampler s(4);
  const FourTensor curv = project_curvature(random_tensor(3, s));
  CHECK_FALSE(CurvatureTensor(curv, st).is_rk());
}

TEST_CASE("Ricci traces of pi1 and pi2") {
  for (int n : {3, 4}) {
    const AdaptedStructure st(n);
    const int d = 2 * n;
    const CurvatureTensor p1(pi1(st), st);
    const CurvatureTensor p2(pi2(st), st);
    CHECK(rel(ricci(p1), (2.0 * n - 1.0) * eye(d)) <= 1e-14);
    CHECK(rel(ricci(p2), 3.0 * eye(d)) <= 1e-14);
    CHECK(rel(star_ricci(p1), eye(d)) <= 1e-14);
    CHECK(rel(star_ricci(p2), (2.0 * n + 1.0) * eye(d)) <= 1e-14);

    // The same closed forms from the vector oracle in a random orthonormal frame.
    std::mt19937_64 rng(static_cast<unsigned>(n));
    const auto frame = oracle::random_orthonormal_frame(d, rng);
    CHECK(rel(oracle::brute_ricci(oracle::pi1, frame), (2.0 * n - 1.0) * eye(d)) <= 1e-12);
    CHECK(rel(oracle::brute_ricci(oracle::pi2, frame), 3.0 * eye(d)) <= 1e-12);
    CHECK(rel(oracle::brute_star_ricci(oracle::pi1, frame), eye(d)) <= 1e-12);
    CHECK(rel(oracle::brute_star_ricci(oracle::pi2, frame), (2.0 * n + 1.0) * eye(d)) <= 1e-12);
  }
  const AdaptedStructure st(3);
  CHECK(ricci(FourTensor::zero(3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(star_ricci(FourTensor::zero(3), st).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scalars") {
  const AdaptedStructure st(3);
  const Scalars s1 = scalars(CurvatureTensor(pi1(st), st));
  CHECK(s1.tau == doctest::Approx(30.0).epsilon(1e-14));
  CHECK(s1.tau_star == doctest::Approx(6.0).epsilon(1e-14));
  const Scalars s2 = scalars(CurvatureTensor(pi2(st), st));
  CHECK(s2.tau == doctest::Approx(18.0).epsilon(1e-14));
  CHECK(s2.tau_star == doctest::Approx(42.0).epsilon(1e-14));
  const Scalars z = scalars(FourTensor::zero(3), st);
  CHECK(z.tau == 0.0);
  CHECK(z.tau_star == 0.0);
}

TEST_CASE("phi and psi builders") {
  for (int n : {2, 3}) {
    const AdaptedStructure st(n);
    const int d = 2 * n;
    CHECK((phi(eye(d), st) - 2.0 * pi1(st)).max_abs() <= 1e-15);
    CHECK((psi(eye(d), st) - 2.0 * pi2(st)).max_abs() <= 1e-15);
    CHECK(phi(Eigen::MatrixXd::Zero(d, d), st).max_abs() == 0.0);
    CHECK(psi(Eigen::MatrixXd::Zero(d, d), st).max_abs() == 0.0);

    std::mt19937_64 rng(7);
    const Eigen::MatrixXd q = oracle::random_hermitian_form(d, rng);
    const FourTensor ph = phi(q, st), ps = psi(q, st);
    SeededSampler s(8);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector x = s.normal_vector(d), y = s.normal_vector(d), z = s.normal_vector(d), u = s.normal_vector(d);
      CHECK(evaluate4(ph, x, y, z, u) == doctest::Approx(oracle::phi(q, x, y, z, u)).epsilon(1e-12));
      CHECK(evaluate4(ps, x, y, z, u) == doctest::Approx(oracle::psi(q, x, y, z, u)).epsilon(1e-12));
    }
    CHECK(validate_curvature_symmetries(ph).passes(1e-13, ph.frobenius_norm()));
    CHECK(validate_curvature_symmetries(ps).passes(1e-13, ps.frobenius_norm()));
    CHECK(rk_residual(ps, st) <= 1e-13);
  }
}

TEST_CASE("phi and psi reject invalid forms") {
  const AdaptedStructure st(3);
  Eigen::MatrixXd nonsym = Eigen::MatrixXd::Zero(6, 6);
  nonsym(0, 1) = 1.0;
  try {
    phi(nonsym, st);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  // symmetric but not J-invariant
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(6, 6);
  diag(0, 0) = 1.0;
  CHECK_NOTHROW(phi(diag, st));
  try {
    psi(diag, st);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("trace identities on random Hermitian forms") {
  for (int n : {3, 4, 5}) {
    const AdaptedStructure st(n);
    const int d = 2 * n;
    std::mt19937_64 rng(100 + n);
    for (int trial = 0; trial < 4; ++trial) {
      const Eigen::MatrixXd q = oracle::random_hermitian_form(d, rng);
      const double tr = q.trace();
      const FourTensor ph = phi(q, st), ps = psi(q, st);
      CHECK(rel(ricci(ph), tr * eye(d) + (2.0 * n - 2.0) * q) <= 1e-10);
      CHECK(rel(ricci(ps), 6.0 * q) <= 1e-10);
      CHECK(rel(star_ricci(ph, st), 2.0 * q) <= 1e-10);
      CHECK(rel(star_ricci(ps, st), tr * eye(d) + (2.0 * n + 2.0) * q) <= 1e-10);
    }
    // closed forms against brute traces of the vector formulas
    const Eigen::MatrixXd q = oracle::random_hermitian_form(d, rng);
    const auto frame = oracle::random_orthonormal_frame(d, rng);
    Eigen::MatrixXd f(d, d);
    for (int i = 0; i < d; ++i) f.col(i) = frame[i];
    const Eigen::MatrixXd qf = f.transpose() * q * f;
    const auto phi_q = [&](const oracle::Vec& x, const oracle::Vec& y, const oracle::Vec& z, const oracle::Vec& u) {
      return oracle::phi(q, x, y, z, u);
    };
    const auto psi_q = [&](const oracle::Vec& x, const oracle::Vec& y, const oracle::Vec& z, const oracle::Vec& u) {
      return oracle::psi(q, x, y, z, u);
    };
    CHECK(rel(oracle::brute_ricci(phi_q, frame), q.trace() * eye(d) + (2.0 * n - 2.0) * qf) <= 1e-10);
    CHECK(rel(oracle::brute_ricci(psi_q, frame), 6.0 * qf) <= 1e-10);
    CHECK(rel(oracle::brute_star_ricci(phi_q, frame), 2.0 * qf) <= 1e-10);
    CHECK(rel(oracle::brute_star_ricci(psi_q, frame), q.trace() * eye(d) + (2.0 * n + 2.0) * qf) <= 1e-10);
  }
}

TEST_CASE("Bochner tensor of the pencil vanishes") {
  const AdaptedStructure st3(3);
  CHECK(bochner(CurvatureTensor(pi1(st3), st3)).max_abs() <= 1e-14);
  CHECK(bochner(CurvatureTensor(FourTensor::zero(3), st3)).max_abs() == 0.0);
  SeededSampler s(9);
  for (int n : {3, 4, 5}) {
    const AdaptedStructure st(n);
    for (int trial = 0; trial < 3; ++trial) {
      const double a = s.uniform(-2, 2), b = s.uniform(-2, 2);
      const FourTensor b_t = bochner(CurvatureTensor(pencil(st, a, b), st));
      CHECK(b_t.frobenius_norm() <= 1e-10 * (std::abs(a) + std::abs(b)) * pi1(st).frobenius_norm());
    }
  }
}

TEST_CASE("Bochner preconditions") {
  const AdaptedStructure st2(2);
  try {
    bochner(CurvatureTensor(pi1(st2), st2));
    FAIL("expected DimensionTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooSmall);
  }
  const AdaptedStructure st(3);
  SeededSampler s(10);
  const CurvatureTensor non_rk(project_curvature(random_tensor(3, s)), st);
  try {
    bochner(non_rk);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("Bochner tensor is trace-free, linear and curvature-like") {
  SeededSampler s(12);
  for (int n : {3, 4}) {
    const AdaptedStructure st(n);
    for (int trial = 0; trial < 3; ++trial) {
      const FourTensor r1 = random_rk(n, s), r2 = random_rk(n, s);
      const FourTensor b1 = bochner(CurvatureTensor(r1, st));
      CHECK(ricci(b1).norm() <= 1e-9 * r1.frobenius_norm());
      CHECK(star_ricci(b1, st).norm() <= 1e-9 * r1.frobenius_norm());
      CHECK(validate_curvature_symmetries(b1).passes(1e-12, b1.frobenius_norm()));
      CHECK(rk_residual(b1, st) <= 1e-12);

      const double a = s.normal(), c = s.normal();
      const FourTensor combo = bochner(CurvatureTensor(a * r1 + c * r2, st));
      const FourTensor sum = a * b1 + c * bochner(CurvatureTensor(r2, st));
      CHECK((combo - sum).frobenius_norm() <= 1e-12 * (std::abs(a) + std::abs(c)));
    }
  }
}

TEST_CASE("Ricci forms of RK tensors are symmetric and J-invariant") {
  SeededSampler s(13);
  const AdaptedStructure st(3);
  for (int trial = 0; trial < 5; ++trial) {
    const CurvatureTensor r(random_rk(3, s), st);
    const InvariantBundle inv = invariants(r);
    CHECK(symmetry_residual(inv.S) <= 1e-10);
    CHECK(symmetry_residual(inv.S_star) <= 1e-10);
    CHECK(j_invariance_residual(inv.S, st) <= 1e-10);
    CHECK(j_invariance_residual(inv.S_star, st) <= 1e-10);
    CHECK(inv.tau == doctest::Approx(inv.S.trace()));
  }
}

TEST_CASE("scalars are frame independent") {
  SeededSampler s(14);
  for (int n : {3, 4}) {
    const AdaptedStructure st(n);
    const FourTensor r = random_rk(n, s);
    const Scalars base = scalars(r, st);
    const FourTensor moved = change_frame(r, frame_matrix(random_adapted_frame(s, st)));
    const Scalars after = scalars(moved, st);
    CHECK(std::abs(after.tau - base.tau) <= 1e-9 * std::max(1.0, std::abs(base.tau)));
    CHECK(std::abs(after.tau_star - base.tau_star) <= 1e-9 * std::max(1.0, std::abs(base.tau_star)));
  }
}

TEST_CASE("sectional and holomorphic sectional curvature") {
  const AdaptedStructure st(3);
  SeededSampler s(15);
  const double a = 0.7, b = -1.3;
  const CurvatureTensor pen(pencil(st, a, b), st);
  const Vector e1 = st.basis(0), e2 = st.basis(1);
  CHECK(sectional(pen, e1, e2) == doctest::Approx(a).epsilon(1e-14));
  const CurvatureTensor p1(pi1(st), st);
  CHECK(sectional(p1, e1, (e1 + e2) / std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sectional(CurvatureTensor(FourTensor::zero(3), st), e1, e2) == 0.0);
  CHECK_THROWS_AS(sectional(p1, e1, 2.0 * e1), Error);

  for (int trial = 0; trial < 10; ++trial) {
    const Vector x = sample_unit_vector(s, st);
    CHECK(holomorphic_sectional(pen, x) == doctest::Approx(a + 3.0 * b).epsilon(1e-12));
  }
  CHECK(holomorphic_sectional(CurvatureTensor(pi2(st), st), e1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(holomorphic_sectional(CurvatureTensor(FourTensor::zero(3), st), e1) == 0.0);
  CHECK_THROWS_AS(holomorphic_sectional(pen, 1.1 * e1), Error);
}

TEST_CASE("condition_residual") {
  const AdaptedStructure st(3);
  SeededSampler s(16);
  const double a = 1.4, b = 0.35;
  const ConditionEstimate pen = condition_residual(CurvatureTensor(pencil(st, a, b), st), 1.0, 0.0, 0.0, 50, s);
  CHECK(pen.c_est == doctest::Approx(a).epsilon(1e-12));
  CHECK(pen.max_dev <= 1e-10);

  // S = 5 g for pi1 at n = 3
  const ConditionEstimate ric = condition_residual(CurvatureTensor(pi1(st), st), 0.0, 1.0, 0.0, 50, s);
  CHECK(ric.c_est == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(ric.max_dev <= 1e-10);

  const ConditionEstimate zero = condition_residual(CurvatureTensor(FourTensor::zero(3), st), 0.2, 0.5, -1.0, 10, s);
  CHECK(zero.c_est == 0.0);
  CHECK(zero.max_dev == 0.0);

  try {
    condition_residual(CurvatureTensor(pi1(st), st), 0.0, 0.0, 0.0, 10, s);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  CHECK_THROWS_AS(condition_residual(CurvatureTensor(pi1(st), st), 1.0, 0.0, 0.0, 1, s), Error);
}
