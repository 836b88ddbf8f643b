#pragma once

// Generation of RK curvature tensors whose antiholomorphic plane function
//   lambda R(x,y,y,x) + mu (S(x,x)+S(y,y)) + nu (S'(x,x)+S'(y,y))
// is constant, and numerical verification of the classification theorem,
// its corollary, the vanishing lemma and the intermediate identities.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ahcurv/curvature.hpp"
#include "ahcurv/numerics.hpp"

namespace ahcurv {

/// Frobenius-orthonormal basis of the curvature-symmetric, J-invariant tensors.
struct RKBasis {
  AdaptedStructure structure;
  std::vector<FourTensor> tensors;

  int dimension() const { return static_cast<int>(tensors.size()); }
  /// (2n)^4 x dimension, one flattened element per column.
  Eigen::MatrixXd matrix() const;
  Eigen::VectorXd coordinates(const FourTensor& t) const;
  FourTensor combine(const Eigen::VectorXd& coords) const;
};

RKBasis rk_basis(const AdaptedStructure& structure);
/// Same as rk_basis, memoized per n (thread-safe).
const RKBasis& cached_rk_basis(int n);

struct ConstrainedSample {
  FourTensor tensor;  // ||tensor||_F = 1
  double c = 0.0;     // constant of the plane function, from the nullspace vector
  int solution_dimension = 0;  // kernel dimension of the (coords, c) system
  int plane_count = 0;
  double smallest_retained_sv = 0.0;  // relative to sigma_max
  double posterior_max_dev = 0.0;     // out-of-sample check
};

/// `plane_count` <= 0 selects 4 * (dim RKBasis + 1).
ConstrainedSample constrained_sample(const AdaptedStructure& structure, double lambda, double mu, double nu,
                                     SeededSampler& sampler, int plane_count = 0);

enum class TheoremCase { lambda_zero, lambda_nonzero };
enum class Verdict { pass, fail, not_applicable };

const char* to_string(TheoremCase c);
const char* to_string(Verdict v);

struct TheoremReport {
  TheoremCase theorem_case = TheoremCase::lambda_zero;
  double tolerance = 0.0;
  int sample_count = 0;
  double condition_dev = 0.0;
  double c_est = 0.0;
  /// ||B||_F; only for n >= 3.
  std::optional<double> bochner_norm;
  double relative_bochner_norm = 0.0;
  double proportionality_residual = 0.0;
  Verdict bochner_verdict = Verdict::not_applicable;
  Verdict proportionality_verdict = Verdict::fail;
  std::optional<int> solution_dimension;

  bool passed() const {
    return proportionality_verdict == Verdict::pass && bochner_verdict != Verdict::fail;
  }
};

/// Throws HypothesisNotSatisfied (with the measured max deviation) when the
/// plane function is not constant to tol * max(1, ||R||_F).
TheoremReport verify_theorem(const CurvatureTensor& r, double lambda, double mu, double nu, SeededSampler& sampler,
                             double tol, int sample_count = 64);

/// Residual of (k_s S + k_p S') against its metric part, normalized by
/// |k_s| ||S|| + |k_p| ||S'|| so that cancelling combinations stay meaningful.
double combination_proportionality_residual(const InvariantBundle& inv, double k_s, double k_p);

struct CorollaryDirection {
  Verdict verdict = Verdict::not_applicable;
  bool premise_holds = false;
};

struct CorollaryReport {
  double tolerance = 0.0;
  int sample_count = 0;
  double sectional_dev = 0.0;  // max deviation of antiholomorphic sectional curvature
  double sectional_mean = 0.0;
  double relative_bochner_norm = 0.0;
  double ricci_residual = 0.0;  // proportionality of (n+1) S - 3 S'
  CorollaryDirection forward;   // constant curvature => B = 0 and Ricci condition
  CorollaryDirection reverse;   // B = 0 and Ricci condition => constant curvature

  bool passed() const { return forward.verdict != Verdict::fail && reverse.verdict != Verdict::fail; }
};

CorollaryReport verify_corollary(const CurvatureTensor& r, SeededSampler& sampler, double tol, int sample_count = 64);

enum class LemmaMode { float_svd, exact };

struct LemmaConfig {
  bool holomorphic_planes = true;
  bool antiholomorphic_planes = true;
  int float_plane_count = 800;
  double float_threshold = 1e-10;
  std::uint64_t seed = 1;
  /// Exact mode: enlargements alternate between raising the coefficient bound
  /// and widening the support of the integer spanning vectors.
  int max_enlargements = 3;
};

struct LemmaResult {
  int kernel_dimension = 0;
  int space_dimension = 0;  // dimension of J-invariant LC-tensors
  int constraint_rows = 0;
  int enlargements = 0;  // exact mode: enlargements performed
  double smallest_retained_ratio = 0.0;  // float mode: sigma_min_retained / sigma_max
};

/// Throws Inconclusive when exact mode does not stabilize.
LemmaResult lemma_kernel_dimension(int n, LemmaMode mode, const LemmaConfig& config = {});

struct ReplayReport {
  std::map<std::string, double> residuals;
  double scale = 1.0;  // max(1, ||R||, |tau|, |tau'|)
  double c_est = 0.0;
  double c1_formula = 0.0;  // c1 from the closed-form trace expression

  double worst_relative() const;
};

/// Tags reported by replay_derivation, in order.
const std::vector<std::string>& replay_tags();

ReplayReport replay_derivation(const CurvatureTensor& r, double lambda, double mu, double nu, SeededSampler& sampler,
                               int sample_count = 64);

/// c1 = (mu1/n + (2n+1)/(8n(n^2-1))) tau + (nu1/n - 3/(8n(n^2-1))) tau'
double c1_from_traces(int n, double mu1, double nu1, double tau, double tau_star);

}  // namespace ahcurv
