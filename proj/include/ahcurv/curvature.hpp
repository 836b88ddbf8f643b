#pragma once

// Algebraic curvature tensors on an almost Hermitian vector space: symmetry
// checks and projectors, the two Ricci-type traces, the operators phi, psi,
// pi1, pi2, the Bochner tensor and plane-curvature evaluations.

#include <algorithm>

#include "ahcurv/structure.hpp"

namespace ahcurv {

/// Max-abs violations over all index quadruples.
struct SymmetryReport {
  double skew12 = 0.0;
  double skew34 = 0.0;
  double bianchi = 0.0;
  double pair_symmetry = 0.0;

  double worst() const { return std::max({skew12, skew34, bianchi, pair_symmetry}); }
  /// All residuals <= tol * max(1, frobenius_norm).
  bool passes(double tol, double frobenius_norm) const { return worst() <= tol * std::max(1.0, frobenius_norm); }
};

SymmetryReport validate_curvature_symmetries(const FourTensor& t);

/// (J*T)(X,Y,Z,U) = T(JX,JY,JZ,JU)
FourTensor j_pullback(const FourTensor& t, const AdaptedStructure& structure);
/// max |T - J*T|
double rk_residual(const FourTensor& t, const AdaptedStructure& structure);

/// Orthogonal projection onto tensors that are skew in both pairs, pair
/// symmetric and satisfy the first Bianchi identity.
FourTensor project_curvature(const FourTensor& t);
/// (T + J*T) / 2
FourTensor project_rk(const FourTensor& t, const AdaptedStructure& structure);

/// A four-tensor that passed the curvature symmetry checks. `is_rk()` records
/// whether it was also found to be J-invariant at construction.
class CurvatureTensor {
 public:
  /// Throws InvalidArgument if the curvature symmetries fail at `tol`
  /// (relative to max(1, ||T||_F)).
  CurvatureTensor(FourTensor tensor, AdaptedStructure structure, double tol = 1e-9);

  const FourTensor& tensor() const noexcept { return tensor_; }
  const AdaptedStructure& structure() const noexcept { return structure_; }
  bool is_rk() const noexcept { return rk_checked_; }
  int n() const noexcept { return structure_.n(); }

 private:
  FourTensor tensor_;
  AdaptedStructure structure_;
  bool rk_checked_ = false;
};

struct InvariantBundle {
  BilinearForm S;
  BilinearForm S_star;
  double tau = 0.0;
  double tau_star = 0.0;
};

/// S(X,Y) = sum_i T(X, E_i, E_i, Y) in the canonical basis.
BilinearForm ricci(const FourTensor& t);
/// S'(X,Y) = sum_i T(X, E_i, J E_i, J Y).
BilinearForm star_ricci(const FourTensor& t, const AdaptedStructure& structure);

inline BilinearForm ricci(const CurvatureTensor& r) { return ricci(r.tensor()); }
inline BilinearForm star_ricci(const CurvatureTensor& r) { return star_ricci(r.tensor(), r.structure()); }

struct Scalars {
  double tau = 0.0;
  double tau_star = 0.0;
};

Scalars scalars(const FourTensor& t, const AdaptedStructure& structure);
inline Scalars scalars(const CurvatureTensor& r) { return scalars(r.tensor(), r.structure()); }

InvariantBundle invariants(const FourTensor& t, const AdaptedStructure& structure);
inline InvariantBundle invariants(const CurvatureTensor& r) { return invariants(r.tensor(), r.structure()); }

/// phi(Q)(X,Y,Z,U) = g(X,U)Q(Y,Z) - g(X,Z)Q(Y,U) + g(Y,Z)Q(X,U) - g(Y,U)Q(X,Z).
/// Q must be symmetric.
FourTensor phi(const BilinearForm& q, const AdaptedStructure& structure);

/// Six-term operator
///   g(X,JU)Q(Y,JZ) - g(X,JZ)Q(Y,JU) + g(Y,JZ)Q(X,JU) - g(Y,JU)Q(X,JZ)
///   - 2 g(X,JY)Q(Z,JU) - 2 g(Z,JU)Q(X,JY).
/// Q must be symmetric and J-invariant.
FourTensor psi(const BilinearForm& q, const AdaptedStructure& structure);

/// pi1 = phi(g) / 2
FourTensor pi1(const AdaptedStructure& structure);
/// pi2 = psi(g) / 2
FourTensor pi2(const AdaptedStructure& structure);

/// a * pi1 + b * pi2
FourTensor pencil(const AdaptedStructure& structure, double a, double b);

/// Bochner curvature tensor. Requires n >= 3 and an RK input.
FourTensor bochner(const CurvatureTensor& r);

/// R(x,y,y,x) / (g(x,x) g(y,y) - g(x,y)^2)
double sectional(const CurvatureTensor& r, const Vector& x, const Vector& y);
/// H(x) = R(x, Jx, Jx, x) for unit x.
double holomorphic_sectional(const CurvatureTensor& r, const Vector& x);

struct ConditionEstimate {
  double c_est = 0.0;
  double max_dev = 0.0;
};

/// Samples lambda R(x,y,y,x) + mu (S(x,x)+S(y,y)) + nu (S'(x,x)+S'(y,y))
/// over `sample_count` antiholomorphic orthonormal pairs.
ConditionEstimate condition_residual(const CurvatureTensor& r, double lambda, double mu, double nu, int sample_count,
                                     SeededSampler& sampler);

/// |A - A^T| max-abs
double symmetry_residual(const BilinearForm& a);
/// |A - J^T A J| max-abs, i.e. the defect of A(JX,JY) = A(X,Y)
double j_invariance_residual(const BilinearForm& a, const AdaptedStructure& structure);

}  // namespace ahcurv
