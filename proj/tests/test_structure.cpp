#include <doctest.h>

#include <cmath>
#include <cstring>

#include "ahcurv/curvature.hpp"
#include "ahcurv/structure.hpp"
#include "oracles.hpp"

using namespace ahcurv;

TEST_CASE("standard structure: block J") {
  const AdaptedStructure st = standard_structure(3);
  const Vector e1 = st.basis(0);
  const Vector e4 = st.basis(3);
  CHECK(st.apply_j(e1) == e4);
  CHECK(st.apply_j(e4) == -e1);
  CHECK(st.J() * e1 == e4);
  CHECK(st.J() * e4 == -e1);

  const AdaptedStructure st2 = standard_structure(2);
  const Eigen::MatrixXd j2 = st2.J() * st2.J();
  CHECK(j2 == -Eigen::MatrixXd::Identity(4, 4));
  CHECK(st.J().transpose() * st.J() == Eigen::MatrixXd::Identity(6, 6));
}

TEST_CASE("standard structure rejects n < 2") {
  for (int n : {-1, 0, 1}) {
    try {
      standard_structure(n);
      FAIL("expected DimensionTooSmall");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionTooSmall);
    }
  }
}

TEST_CASE("evaluate4 on constant tensors") {
  const AdaptedStructure st(3);
  const Vector e1 = st.basis(0), e2 = st.basis(1), je1 = st.apply_j(e1);
  CHECK(evaluate4(pi1(st), e1, e2, e2, e1) == 1.0);
  CHECK(evaluate4(pi2(st), e1, je1, je1, e1) == 3.0);
  CHECK(evaluate4(FourTensor::zero(3), e1, e2, je1, e1) == 0.0);

  CHECK_THROWS_AS(evaluate4(pi1(st), Vector::Zero(4), e2, e2, e1), Error);
}

TEST_CASE("evaluate4 agrees with the vector-formula oracle") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int n : {2, 3, 4}) {
    const AdaptedStructure st(n);
    const FourTensor p1 = pi1(st), p2 = pi2(st);
    for (int trial = 0; trial < 5; ++trial) {
      Vector v[4];
      for (auto& x : v) {
        x.resize(2 * n);
        for (int i = 0; i < 2 * n; ++i) x[i] = nd(rng);
      }
      CHECK(evaluate4(p1, v[0], v[1], v[2], v[3]) == doctest::Approx(oracle::pi1(v[0], v[1], v[2], v[3])).epsilon(1e-12));
      CHECK(evaluate4(p2, v[0], v[1], v[2], v[3]) == doctest::Approx(oracle::pi2(v[0], v[1], v[2], v[3])).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate4 is multilinear") {
  SeededSampler s(11);
  const AdaptedStructure st(3);
  FourTensor t(3);
  for (double& v : t.components()) v = s.normal();
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = s.normal_vector(6), xp = s.normal_vector(6), y = s.normal_vector(6), z = s.normal_vector(6),
                 u = s.normal_vector(6);
    const double a = s.normal(), b = s.normal();
    const double lhs = evaluate4(t, a * x + b * xp, y, z, u);
    const double rhs = a * evaluate4(t, x, y, z, u) + b * evaluate4(t, xp, y, z, u);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    // last slot too
    const double lhs4 = evaluate4(t, y, z, u, a * x + b * xp);
    const double rhs4 = a * evaluate4(t, y, z, u, x) + b * evaluate4(t, y, z, u, xp);
    CHECK(std::abs(lhs4 - rhs4) <= 1e-10 * std::max(1.0, std::abs(rhs4)));
  }
}

TEST_CASE("change_frame matches evaluation on frame vectors") {
  SeededSampler s(3);
  const AdaptedStructure st(2);
  FourTensor t(2);
  for (double& v : t.components()) v = s.normal();
  const auto frame = random_adapted_frame(s, st);
  const Eigen::MatrixXd f = frame_matrix(frame);
  const FourTensor moved = change_frame(t, f);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          worst = std::max(worst, std::abs(moved(a, b, c, d) - evaluate4(t, frame[a], frame[b], frame[c], frame[d])));
  CHECK(worst < 1e-12);
  CHECK(change_frame(t, Eigen::MatrixXd::Identity(4, 4)) == t);
}

TEST_CASE("sample_unit_vector") {
  const AdaptedStructure st(3);
  SeededSampler s(42);
  for (int i = 0; i < 100; ++i) CHECK(std::abs(sample_unit_vector(s, st).norm() - 1.0) <= 1e-12);

  SeededSampler a(42), b(42);
  const Vector va = sample_unit_vector(a, st);
  const Vector vb = sample_unit_vector(b, st);
  CHECK(std::memcmp(va.data(), vb.data(), sizeof(double) * 6) == 0);

  SeededSampler m(2024);
  Vector mean = Vector::Zero(6);
  const int count = 10000;
  for (int i = 0; i < count; ++i) mean += sample_unit_vector(m, st);
  mean /= count;
  CHECK(mean.cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("samplers with equal seeds give identical byte streams") {
  SeededSampler a(99), b(99);
  std::vector<double> sa, sb;
  for (int i = 0; i < 1000; ++i) {
    sa.push_back(a.normal());
    sa.push_back(a.uniform(-1, 1));
    sb.push_back(b.normal());
    sb.push_back(b.uniform(-1, 1));
  }
  CHECK(std::memcmp(sa.data(), sb.data(), sa.size() * sizeof(double)) == 0);
  CHECK(a.fork(3).seed() == b.fork(3).seed());
  CHECK(a.fork(3).seed() != a.fork(4).seed());
}

TEST_CASE("sample_antiholomorphic_pair") {
  const AdaptedStructure st(3);
  SeededSampler s(17);
  for (int i = 0; i < 200; ++i) {
    const PlanePair p = sample_antiholomorphic_pair(s, st);
    CHECK(std::abs(p.x.dot(p.y)) <= 1e-12);
    CHECK(std::abs(st.omega(p.x, p.y)) <= 1e-12);
    CHECK(std::abs(p.x.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(p.y.norm() - 1.0) <= 1e-12);
    CHECK(p.kind == PlaneKind::antiholomorphic);
    CHECK(classify_plane(p.x, p.y, st, 1e-9) == PlaneKind::antiholomorphic);
  }

  // x = e1 forces y into span{e2, e3, e5, e6}
  const PlanePair forced = sample_antiholomorphic_pair(s, st, st.basis(0));
  CHECK(std::abs(forced.y[0]) <= 1e-12);
  CHECK(std::abs(forced.y[3]) <= 1e-12);
}

TEST_CASE("classify_plane") {
  const AdaptedStructure st(3);
  const Vector e1 = st.basis(0), e2 = st.basis(1), je1 = st.apply_j(e1);
  CHECK(classify_plane(e1, je1, st) == PlaneKind::holomorphic);
  CHECK(classify_plane(e1, e2, st) == PlaneKind::antiholomorphic);
  // g(x', J y') = 1/sqrt(2) after orthonormalization
  const Vector y = (e2 + je1) / std::sqrt(2.0);
  CHECK(classify_plane(e1, y, st) == PlaneKind::generic);
  // holomorphic planes stay holomorphic in a skewed basis
  CHECK(classify_plane(e1 + je1, 2.0 * e1 - je1, st) == PlaneKind::holomorphic);

  try {
    classify_plane(e1, 3.0 * e1, st);
    FAIL("expected DegeneratePlane");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePlane);
  }
}

TEST_CASE("random_adapted_frame") {
  for (int n : {2, 3, 5}) {
    const AdaptedStructure st(n);
    SeededSampler s(static_cast<std::uint64_t>(n));
    const auto frame = random_adapted_frame(s, st);
    REQUIRE(frame.size() == static_cast<std::size_t>(2 * n));
    const Eigen::MatrixXd f = frame_matrix(frame);
    CHECK((f.transpose() * f - Eigen::MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() <= 1e-10);
    for (int i = 0; i < n; ++i) CHECK(frame[n + i] == st.apply_j(frame[i]));
  }

  const AdaptedStructure st(3);
  const auto canonical = adapted_frame_from(Eigen::MatrixXd::Identity(6, 6), st);
  for (int i = 0; i < 6; ++i) CHECK(canonical[i] == st.basis(i));

  // J-dependent seed columns
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(6, 6);
  bad.col(1) = st.apply_j(bad.col(0));
  CHECK_THROWS_AS(adapted_frame_from(bad, st), Error);
}

TEST_CASE("FourTensor shape checks") {
  CHECK_THROWS_AS(FourTensor(2, std::vector<double>(10)), Error);
  FourTensor a(2), b(3);
  CHECK_THROWS_AS(a += b, Error);
}
