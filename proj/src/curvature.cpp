#include "ahcurv/curvature.hpp"

#include <cmath>
#include <limits>

namespace ahcurv {

namespace {

template <typename F>
void for_each_index(int d, F&& f) {
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) f(i, j, k, l);
}

double relative_scale(const BilinearForm& q) { return std::max(1.0, q.norm()); }

// Builders without argument validation; callers guarantee the preconditions.
FourTensor phi_unchecked(const BilinearForm& q, int n) {
  FourTensor out(n);
  const int d = 2 * n;
  for_each_index(d, [&](int x, int y, int z, int u) {
    double v = 0.0;
    if (x == u) v += q(y, z);
    if (x == z) v -= q(y, u);
    if (y == z) v += q(x, u);
    if (y == u) v -= q(x, z);
    out(x, y, z, u) = v;
  });
  return out;
}

FourTensor psi_unchecked(const BilinearForm& q, const AdaptedStructure& structure) {
  const Eigen::MatrixXd& j = structure.J();
  const Eigen::MatrixXd qj = q * j;  // qj(a, b) = Q(e_a, J e_b)
  FourTensor out(structure.n());
  // g(e_a, J e_b) = J(a, b)
  for_each_index(structure.dim(), [&](int x, int y, int z, int u) {
    out(x, y, z, u) = j(x, u) * qj(y, z) - j(x, z) * qj(y, u) + j(y, z) * qj(x, u) - j(y, u) * qj(x, z) -
                      2.0 * j(x, y) * qj(z, u) - 2.0 * j(z, u) * qj(x, y);
  });
  return out;
}

}  // namespace

SymmetryReport validate_curvature_symmetries(const FourTensor& t) {
  SymmetryReport rep;
  for_each_index(t.dim(), [&](int i, int j, int k, int l) {
    const double v = t(i, j, k, l);
    rep.skew12 = std::max(rep.skew12, std::abs(v + t(j, i, k, l)));
    rep.skew34 = std::max(rep.skew34, std::abs(v + t(i, j, l, k)));
    rep.bianchi = std::max(rep.bianchi, std::abs(v + t(j, k, i, l) + t(k, i, j, l)));
    rep.pair_symmetry = std::max(rep.pair_symmetry, std::abs(v - t(k, l, i, j)));
  });
  return rep;
}

FourTensor j_pullback(const FourTensor& t, const AdaptedStructure& structure) {
  if (t.n() != structure.n()) throw Error(ErrorKind::ShapeError, "tensor and structure dimensions differ");
  return change_frame(t, structure.J());
}

double rk_residual(const FourTensor& t, const AdaptedStructure& structure) {
  return (t - j_pullback(t, structure)).max_abs();
}

FourTensor project_curvature(const FourTensor& t) {
  const int d = t.dim();
  FourTensor a(t.n());
  for_each_index(d, [&](int i, int j, int k, int l) {
    a(i, j, k, l) = 0.25 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k));
  });
  FourTensor c(t.n());
  for_each_index(d, [&](int i, int j, int k, int l) { c(i, j, k, l) = 0.5 * (a(i, j, k, l) + a(k, l, i, j)); });
  // For skew/skew/pair-symmetric C the cyclic sum is an alternating 4-form;
  // removing a third of it is the orthogonal Bianchi projection.
  FourTensor out(t.n());
  for_each_index(d, [&](int i, int j, int k, int l) {
    out(i, j, k, l) = c(i, j, k, l) - (c(i, j, k, l) + c(j, k, i, l) + c(k, i, j, l)) / 3.0;
  });
  return out;
}

FourTensor project_rk(const FourTensor& t, const AdaptedStructure& structure) {
  FourTensor out = t + j_pullback(t, structure);
  out *= 0.5;
  return out;
}

CurvatureTensor::CurvatureTensor(FourTensor tensor, AdaptedStructure structure, double tol)
    : tensor_(std::move(tensor)), structure_(std::move(structure)) {
  if (tensor_.n() != structure_.n()) throw Error(ErrorKind::ShapeError, "tensor and structure dimensions differ");
  const double norm = tensor_.frobenius_norm();
  const SymmetryReport rep = validate_curvature_symmetries(tensor_);
  if (!rep.passes(tol, norm))
    throw Error(ErrorKind::InvalidArgument, "tensor violates curvature symmetries", rep.worst());
  rk_checked_ = rk_residual(tensor_, structure_) <= tol * std::max(1.0, norm);
}

BilinearForm ricci(const FourTensor& t) {
  const int d = t.dim();
  BilinearForm s = BilinearForm::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < d; ++i) s(a, b) += t(a, i, i, b);
  return s;
}

BilinearForm star_ricci(const FourTensor& t, const AdaptedStructure& structure) {
  if (t.n() != structure.n()) throw Error(ErrorKind::ShapeError, "tensor and structure dimensions differ");
  const int d = t.dim();
  const Eigen::MatrixXd& j = structure.J();
  BilinearForm s = BilinearForm::Zero(d, d);
  // J E_i = sum_k J(k,i) E_k, J E_b = sum_l J(l,b) E_l
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
          if (j(k, i) == 0.0) continue;
          for (int l = 0; l < d; ++l) {
            if (j(l, b) == 0.0) continue;
            s(a, b) += t(a, i, k, l) * j(k, i) * j(l, b);
          }
        }
  return s;
}

Scalars scalars(const FourTensor& t, const AdaptedStructure& structure) {
  return {ricci(t).trace(), star_ricci(t, structure).trace()};
}

InvariantBundle invariants(const FourTensor& t, const AdaptedStructure& structure) {
  InvariantBundle b;
  b.S = ricci(t);
  b.S_star = star_ricci(t, structure);
  b.tau = b.S.trace();
  b.tau_star = b.S_star.trace();
  return b;
}

double symmetry_residual(const BilinearForm& a) { return (a - a.transpose()).cwiseAbs().maxCoeff(); }

double j_invariance_residual(const BilinearForm& a, const AdaptedStructure& structure) {
  const Eigen::MatrixXd& j = structure.J();
  return (j.transpose() * a * j - a).cwiseAbs().maxCoeff();
}

FourTensor phi(const BilinearForm& q, const AdaptedStructure& structure) {
  if (q.rows() != structure.dim() || q.cols() != structure.dim())
    throw Error(ErrorKind::ShapeError, "phi: form has wrong shape");
  if (symmetry_residual(q) > 1e-9 * relative_scale(q))
    throw Error(ErrorKind::InvalidArgument, "phi: Q is not symmetric", symmetry_residual(q));
  return phi_unchecked(q, structure.n());
}

FourTensor psi(const BilinearForm& q, const AdaptedStructure& structure) {
  if (q.rows() != structure.dim() || q.cols() != structure.dim())
    throw Error(ErrorKind::ShapeError, "psi: form has wrong shape");
  if (symmetry_residual(q) > 1e-9 * relative_scale(q))
    throw Error(ErrorKind::InvalidArgument, "psi: Q is not symmetric", symmetry_residual(q));
  const double jres = j_invariance_residual(q, structure);
  if (jres > 1e-9 * relative_scale(q)) throw Error(ErrorKind::InvalidArgument, "psi: Q is not J-invariant", jres);
  return psi_unchecked(q, structure);
}

FourTensor pi1(const AdaptedStructure& structure) {
  FourTensor out(structure.n());
  for_each_index(structure.dim(), [&](int x, int y, int z, int u) {
    out(x, y, z, u) = double(x == u && y == z) - double(x == z && y == u);
  });
  return out;
}

FourTensor pi2(const AdaptedStructure& structure) {
  const Eigen::MatrixXd& j = structure.J();
  FourTensor out(structure.n());
  for_each_index(structure.dim(), [&](int x, int y, int z, int u) {
    out(x, y, z, u) = j(x, u) * j(y, z) - j(x, z) * j(y, u) - 2.0 * j(x, y) * j(z, u);
  });
  return out;
}

FourTensor pencil(const AdaptedStructure& structure, double a, double b) {
  return a * pi1(structure) + b * pi2(structure);
}

FourTensor bochner(const CurvatureTensor& r) {
  const int n = r.n();
  if (n <= 2) throw Error(ErrorKind::DimensionTooSmall, "Bochner tensor needs n >= 3");
  if (!r.is_rk()) throw Error(ErrorKind::InvalidArgument, "Bochner tensor needs an RK curvature tensor");
  const AdaptedStructure& st = r.structure();
  const InvariantBundle inv = invariants(r);
  // Symmetrize and J-average away roundoff before handing forms to psi.
  const Eigen::MatrixXd& j = st.J();
  auto clean = [&](const BilinearForm& q) {
    BilinearForm s = 0.5 * (q + q.transpose());
    return BilinearForm(0.5 * (s + j.transpose() * s * j));
  };
  const BilinearForm plus = clean(inv.S + 3.0 * inv.S_star);
  const BilinearForm minus = clean(inv.S - inv.S_star);

  const double nn = n;
  const FourTensor p1 = pi1(st);
  const FourTensor p2 = pi2(st);

  FourTensor b = r.tensor();
  b -= (1.0 / (8.0 * (nn + 2.0))) * (phi_unchecked(plus, n) + psi_unchecked(plus, st));
  b -= (1.0 / (8.0 * (nn - 2.0))) * (3.0 * phi_unchecked(minus, n) - psi_unchecked(minus, st));
  b += ((inv.tau + 3.0 * inv.tau_star) / (16.0 * (nn + 1.0) * (nn + 2.0))) * (p1 + p2);
  b += ((inv.tau - inv.tau_star) / (16.0 * (nn - 1.0) * (nn - 2.0))) * (3.0 * p1 - p2);
  return b;
}

double sectional(const CurvatureTensor& r, const Vector& x, const Vector& y) {
  const double xx = x.dot(x);
  const double yy = y.dot(y);
  const double xy = x.dot(y);
  const double area = xx * yy - xy * xy;
  if (!(area > 1e-12 * xx * yy) || xx == 0.0 || yy == 0.0)
    throw Error(ErrorKind::DegeneratePlane, "sectional: x and y do not span a plane");
  return evaluate4(r.tensor(), x, y, y, x) / area;
}

double holomorphic_sectional(const CurvatureTensor& r, const Vector& x) {
  const double norm = x.norm();
  if (std::abs(norm - 1.0) > 1e-9) throw Error(ErrorKind::InvalidArgument, "holomorphic_sectional: x must be a unit vector");
  const Vector jx = r.structure().apply_j(x);
  return evaluate4(r.tensor(), x, jx, jx, x);
}

ConditionEstimate condition_residual(const CurvatureTensor& r, double lambda, double mu, double nu, int sample_count,
                                     SeededSampler& sampler) {
  if (lambda == 0.0 && mu == 0.0 && nu == 0.0)
    throw Error(ErrorKind::InvalidArgument, "condition_residual: (lambda, mu, nu) must not all vanish");
  if (sample_count < 2) throw Error(ErrorKind::InvalidArgument, "condition_residual: need at least 2 samples");
  const InvariantBundle inv = invariants(r);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(sample_count));
  for (int s = 0; s < sample_count; ++s) {
    const PlanePair p = sample_antiholomorphic_pair(sampler, r.structure());
    const double v = lambda * evaluate4(r.tensor(), p.x, p.y, p.y, p.x) +
                     mu * (p.x.dot(inv.S * p.x) + p.y.dot(inv.S * p.y)) +
                     nu * (p.x.dot(inv.S_star * p.x) + p.y.dot(inv.S_star * p.y));
    values.push_back(v);
  }
  ConditionEstimate est;
  for (double v : values) est.c_est += v;
  est.c_est /= static_cast<double>(values.size());
  for (double v : values) est.max_dev = std::max(est.max_dev, std::abs(v - est.c_est));
  return est;
}

}  // namespace ahcurv
