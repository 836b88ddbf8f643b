#include "ahcurv/constraint_lab.hpp"

#include <cmath>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace ahcurv {

const char* to_string(TheoremCase c) { return c == TheoremCase::lambda_zero ? "lambda_zero" : "lambda_nonzero"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// RK basis

namespace {

struct PairIndex {
  int i, j;
};

std::vector<PairIndex> skew_pairs(int d) {
  std::vector<PairIndex> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.push_back({i, j});
  return pairs;
}

/// One representative (i<j, k<l, (i,j) <= (k,l)) per independent component
/// of a curvature tensor, up to sign.
std::vector<std::array<int, 4>> canonical_quadruples(int d) {
  const auto pairs = skew_pairs(d);
  std::vector<std::array<int, 4>> out;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p; q < pairs.size(); ++q) out.push_back({pairs[p].i, pairs[p].j, pairs[q].i, pairs[q].j});
  return out;
}

double quad_form(const BilinearForm& a, const Vector& x) { return x.dot(a * x); }

}  // namespace

Eigen::MatrixXd RKBasis::matrix() const {
  if (tensors.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(tensors.front().size()), dimension());
  for (int b = 0; b < dimension(); ++b) m.col(b) = tensors[b].flat();
  return m;
}

Eigen::VectorXd RKBasis::coordinates(const FourTensor& t) const {
  Eigen::VectorXd c(dimension());
  for (int b = 0; b < dimension(); ++b) c[b] = tensors[b].dot(t);
  return c;
}

FourTensor RKBasis::combine(const Eigen::VectorXd& coords) const {
  if (coords.size() != dimension()) throw Error(ErrorKind::ShapeError, "coordinate vector has wrong length");
  FourTensor out(structure.n());
  for (int b = 0; b < dimension(); ++b) out.flat() += coords[b] * tensors[b].flat();
  return out;
}

RKBasis rk_basis(const AdaptedStructure& structure) {
  const int d = structure.dim();
  const auto quads = canonical_quadruples(d);
  const Eigen::Index len = static_cast<Eigen::Index>(d) * d * d * d;
  Eigen::MatrixXd images(len, static_cast<Eigen::Index>(quads.size()));
  for (std::size_t q = 0; q < quads.size(); ++q) {
    FourTensor e(structure.n());
    e(quads[q][0], quads[q][1], quads[q][2], quads[q][3]) = 1.0;
    images.col(static_cast<Eigen::Index>(q)) = project_rk(project_curvature(e), structure).flat();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(images, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-10 * (sv.size() ? sv[0] : 0.0);
  RKBasis basis{structure, {}};
  for (Eigen::Index c = 0; c < sv.size(); ++c) {
    if (sv[c] <= cutoff) break;
    Eigen::VectorXd v = svd.matrixU().col(c);
    // Fix the sign so the first significant entry is positive.
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v[k]) > 1e-8) {
        if (v[k] < 0) v = -v;
        break;
      }
    }
    basis.tensors.emplace_back(structure.n(), std::vector<double>(v.data(), v.data() + v.size()));
  }
  return basis;
}

const RKBasis& cached_rk_basis(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<RKBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RKBasis>(rk_basis(standard_structure(n)));
  return *slot;
}

// ---------------------------------------------------------------------------
// Constrained generation

ConstrainedSample constrained_sample(const AdaptedStructure& structure, double lambda, double mu, double nu,
                                     SeededSampler& sampler, int plane_count) {
  if (lambda == 0.0 && mu == 0.0 && nu == 0.0)
    throw Error(ErrorKind::InvalidArgument, "constrained_sample: (lambda, mu, nu) must not all vanish");
  if (structure.n() < 3) throw Error(ErrorKind::DimensionTooSmall, "constrained_sample needs n >= 3");
  const RKBasis& basis = cached_rk_basis(structure.n());
  const int dim = basis.dimension();
  const int min_planes = 4 * (dim + 1);
  if (plane_count <= 0) plane_count = min_planes;
  if (plane_count < min_planes)
    throw Error(ErrorKind::InvalidArgument, "constrained_sample: plane_count must be >= 4 * (basis dimension + 1)");

  std::vector<InvariantBundle> traces;
  traces.reserve(static_cast<std::size_t>(dim));
  for (const FourTensor& t : basis.tensors) traces.push_back(invariants(t, structure));

  Eigen::MatrixXd system(plane_count, dim + 1);
  for (int row = 0; row < plane_count; ++row) {
    const PlanePair p = sample_antiholomorphic_pair(sampler, structure);
    for (int b = 0; b < dim; ++b) {
      const InvariantBundle& tr = traces[b];
      system(row, b) = lambda * evaluate4(basis.tensors[b], p.x, p.y, p.y, p.x) +
                       mu * (quad_form(tr.S, p.x) + quad_form(tr.S, p.y)) +
                       nu * (quad_form(tr.S_star, p.x) + quad_form(tr.S_star, p.y));
    }
    system(row, dim) = -1.0;
  }

  const FloatNullspace kernel = nullspace_float(system, 1e-10);
  if (kernel.dimension() == 0) throw Error(ErrorKind::NoSolution, "constraint system has a trivial kernel");

  Eigen::VectorXd weights(kernel.dimension());
  for (Eigen::Index k = 0; k < weights.size(); ++k) weights[k] = sampler.normal();
  weights.normalize();
  const Eigen::VectorXd v = kernel.basis * weights;
  const Eigen::VectorXd coords = v.head(dim);
  const double norm = coords.norm();
  if (norm < 1e-12) throw Error(ErrorKind::NoSolution, "kernel contains only the zero tensor");

  ConstrainedSample out;
  out.tensor = basis.combine(coords / norm);
  out.c = v[dim] / norm;
  out.solution_dimension = kernel.dimension();
  out.plane_count = plane_count;
  out.smallest_retained_sv = kernel.sigma_max > 0 ? kernel.smallest_retained / kernel.sigma_max : 0.0;

  const CurvatureTensor r(out.tensor, structure);
  const ConditionEstimate check = condition_residual(r, lambda, mu, nu, 200, sampler);
  out.posterior_max_dev = check.max_dev;
  if (check.max_dev > 1e-7)
    throw Error(ErrorKind::NumericalFailure, "constrained sample fails the out-of-sample condition check", check.max_dev);
  return out;
}

// ---------------------------------------------------------------------------
// Theorem and corollary

double combination_proportionality_residual(const InvariantBundle& inv, double k_s, double k_p) {
  const Eigen::MatrixXd a = k_s * inv.S + k_p * inv.S_star;
  const double scale = std::abs(k_s) * inv.S.norm() + std::abs(k_p) * inv.S_star.norm();
  const Eigen::Index d = a.rows();
  const Eigen::MatrixXd target = (a.trace() / static_cast<double>(d)) * Eigen::MatrixXd::Identity(d, d);
  return (a - target).norm() / std::max(scale, 1e-30);
}

TheoremReport verify_theorem(const CurvatureTensor& r, double lambda, double mu, double nu, SeededSampler& sampler,
                             double tol, int sample_count) {
  const ConditionEstimate hyp = condition_residual(r, lambda, mu, nu, sample_count, sampler);
  const double rnorm = r.tensor().frobenius_norm();
  if (hyp.max_dev > tol * std::max(1.0, rnorm))
    throw Error(ErrorKind::HypothesisNotSatisfied,
                "plane function is not constant (max deviation " + std::to_string(hyp.max_dev) + ")", hyp.max_dev);

  TheoremReport rep;
  rep.tolerance = tol;
  rep.sample_count = sample_count;
  rep.condition_dev = hyp.max_dev;
  rep.c_est = hyp.c_est;

  const InvariantBundle inv = invariants(r);
  const int n = r.n();
  const bool can_bochner = n >= 3 && r.is_rk();
  if (can_bochner) {
    rep.bochner_norm = bochner(r).frobenius_norm();
    rep.relative_bochner_norm = *rep.bochner_norm / std::max(rnorm, 1e-30);
  }

  if (lambda == 0.0) {
    rep.theorem_case = TheoremCase::lambda_zero;
    rep.proportionality_residual = metric_proportionality_residual(mu * inv.S + nu * inv.S_star);
    rep.proportionality_verdict = rep.proportionality_residual <= tol ? Verdict::pass : Verdict::fail;
    rep.bochner_verdict = Verdict::not_applicable;
  } else {
    rep.theorem_case = TheoremCase::lambda_nonzero;
    if (!can_bochner)
      throw Error(ErrorKind::InvalidArgument, "the lambda != 0 case needs n >= 3 and an RK tensor");
    const double nn = n;
    const double k_s = (nn + 1.0) * lambda + 2.0 * (nn * nn - 4.0) * mu;
    const double k_p = 2.0 * (nn * nn - 4.0) * nu - 3.0 * lambda;
    rep.proportionality_residual = combination_proportionality_residual(inv, k_s, k_p);
    rep.proportionality_verdict = rep.proportionality_residual <= tol ? Verdict::pass : Verdict::fail;
    rep.bochner_verdict = rep.relative_bochner_norm <= tol ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

CorollaryReport verify_corollary(const CurvatureTensor& r, SeededSampler& sampler, double tol, int sample_count) {
  if (r.n() < 3) throw Error(ErrorKind::DimensionTooSmall, "corollary needs n >= 3");
  if (!r.is_rk()) throw Error(ErrorKind::InvalidArgument, "corollary needs an RK tensor");
  CorollaryReport rep;
  rep.tolerance = tol;
  rep.sample_count = sample_count;

  const ConditionEstimate sec = condition_residual(r, 1.0, 0.0, 0.0, sample_count, sampler);
  const double rnorm = r.tensor().frobenius_norm();
  rep.sectional_dev = sec.max_dev;
  rep.sectional_mean = sec.c_est;
  rep.relative_bochner_norm = bochner(r).frobenius_norm() / std::max(rnorm, 1e-30);
  rep.ricci_residual = combination_proportionality_residual(invariants(r), r.n() + 1.0, -3.0);

  const bool constant = rep.sectional_dev <= tol * std::max(1.0, rnorm);
  const bool bochner_flat = rep.relative_bochner_norm <= tol;
  const bool ricci_ok = rep.ricci_residual <= tol;

  rep.forward.premise_holds = constant;
  rep.forward.verdict = !constant ? Verdict::not_applicable : (bochner_flat && ricci_ok ? Verdict::pass : Verdict::fail);
  rep.reverse.premise_holds = bochner_flat && ricci_ok;
  rep.reverse.verdict = !rep.reverse.premise_holds ? Verdict::not_applicable : (constant ? Verdict::pass : Verdict::fail);
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma

namespace {

using IntTensor = std::vector<long long>;

struct IntIndexer {
  int d;
  std::size_t operator()(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * d + j) * d + k) * d + l;
  }
};

/// 48 * (J-average o curvature projection)(E_ijkl), exact integers.
IntTensor exact_rk_image(const std::array<int, 4>& q, int n) {
  const int d = 2 * n;
  const IntIndexer at{d};
  const std::size_t len = static_cast<std::size_t>(d) * d * d * d;
  IntTensor e(len, 0);
  e[at(q[0], q[1], q[2], q[3])] = 1;

  IntTensor a(len), c(len), b(len), out(len);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) a[at(i, j, k, l)] = e[at(i, j, k, l)] - e[at(j, i, k, l)] - e[at(i, j, l, k)] + e[at(j, i, l, k)];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) c[at(i, j, k, l)] = a[at(i, j, k, l)] + a[at(k, l, i, j)];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          b[at(i, j, k, l)] = 2 * c[at(i, j, k, l)] - c[at(j, k, i, l)] - c[at(k, i, j, l)];
  // J e_a = s_a e_{sigma(a)}
  auto sigma = [n](int a) { return a < n ? a + n : a - n; };
  auto sign = [n](int a) { return a < n ? 1LL : -1LL; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out[at(i, j, k, l)] = b[at(i, j, k, l)] +
                                sign(i) * sign(j) * sign(k) * sign(l) * b[at(sigma(i), sigma(j), sigma(k), sigma(l))];
  return out;
}

using IntVector = std::vector<long long>;

long long int_eval_xyyx(const IntTensor& t, const IntVector& x, const IntVector& y, int d) {
  const IntIndexer at{d};
  long long total = 0;
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      for (int k = 0; k < d; ++k) {
        if (y[k] == 0) continue;
        for (int l = 0; l < d; ++l) {
          if (x[l] == 0) continue;
          total += t[at(i, j, k, l)] * x[i] * y[j] * y[k] * x[l];
        }
      }
    }
  }
  return total;
}

IntVector int_apply_j(const IntVector& x, int n) {
  IntVector out(x.size());
  for (int i = 0; i < n; ++i) {
    out[i] = -x[n + i];
    out[n + i] = x[i];
  }
  return out;
}

long long int_dot(const IntVector& a, const IntVector& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool int_parallel(const IntVector& a, const IntVector& b) {
  // |a|^2 |b|^2 == (a.b)^2
  const long long ab = int_dot(a, b);
  return int_dot(a, a) * int_dot(b, b) == ab * ab;
}

/// Primitive integer vectors with at most `support` non-zero entries, each of
/// absolute value <= `bound`, first non-zero entry positive.
std::vector<IntVector> integer_family(int d, int bound, int support) {
  std::vector<IntVector> fam;
  IntVector v(static_cast<std::size_t>(d), 0);
  // odometer over {-bound..bound}^d, pruned by support
  auto rec = [&](auto&& self, int pos, int used, bool leading, long long g) -> void {
    if (pos == d) {
      if (used > 0 && g == 1) fam.push_back(v);
      return;
    }
    v[pos] = 0;
    self(self, pos + 1, used, leading, g);
    if (used == support) return;
    for (int c = -bound; c <= bound; ++c) {
      if (c == 0 || (leading && c < 0)) continue;
      v[pos] = c;
      self(self, pos + 1, used + 1, false, std::gcd(g, static_cast<long long>(std::abs(c))));
    }
    v[pos] = 0;
  };
  rec(rec, 0, 0, true, 0);
  return fam;
}

struct ExactSpace {
  std::vector<IntTensor> basis;
};

ExactSpace exact_rk_space(int n) {
  const int d = 2 * n;
  const auto quads = canonical_quadruples(d);
  const IntIndexer at{d};
  std::vector<IntTensor> images;
  images.reserve(quads.size());
  for (const auto& q : quads) images.push_back(exact_rk_image(q, n));
  // Curvature tensors are determined by their canonical components, so the
  // rank can be read off that square block.
  RationalMatrix block(static_cast<int>(quads.size()), static_cast<int>(quads.size()));
  for (std::size_t r = 0; r < quads.size(); ++r)
    for (std::size_t c = 0; c < images.size(); ++c)
      block(static_cast<int>(r), static_cast<int>(c)) = static_cast<long>(images[c][at(quads[r][0], quads[r][1], quads[r][2], quads[r][3])]);
  const ExactNullspace ns = nullspace_exact(block, false);
  ExactSpace space;
  for (int c : ns.pivot_columns) space.basis.push_back(images[static_cast<std::size_t>(c)]);
  return space;
}

int exact_kernel_at_bound(const ExactSpace& space, int n, int bound, int support, const LemmaConfig& config, int& rows_out) {
  const int d = 2 * n;
  const auto fam = integer_family(d, bound, support);
  RationalMatrix rows(0, static_cast<int>(space.basis.size()));
  std::vector<mpq_class> row(space.basis.size());
  auto push = [&](const IntVector& x, const IntVector& y) {
    bool nonzero = false;
    for (std::size_t b = 0; b < space.basis.size(); ++b) {
      const long long v = int_eval_xyyx(space.basis[b], x, y, d);
      row[b] = static_cast<long>(v);
      nonzero = nonzero || v != 0;
    }
    if (nonzero) rows.append_row(row);
  };
  for (std::size_t a = 0; a < fam.size(); ++a) {
    const IntVector jx = int_apply_j(fam[a], n);
    if (config.holomorphic_planes) push(fam[a], jx);
    if (!config.antiholomorphic_planes) continue;
    for (std::size_t b = a + 1; b < fam.size(); ++b) {
      // span{x, y} is antiholomorphic iff g(x, J y) = 0
      if (int_dot(fam[a], int_apply_j(fam[b], n)) != 0) continue;
      if (int_parallel(fam[a], fam[b])) continue;
      push(fam[a], fam[b]);
    }
  }
  rows_out = rows.rows();
  if (rows.rows() == 0) return static_cast<int>(space.basis.size());
  return nullspace_exact(rows, false).dimension;
}

}  // namespace

LemmaResult lemma_kernel_dimension(int n, LemmaMode mode, const LemmaConfig& config) {
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "lemma needs n >= 2");
  if (!config.holomorphic_planes && !config.antiholomorphic_planes)
    throw Error(ErrorKind::InvalidArgument, "at least one plane family is required");
  LemmaResult res;

  if (mode == LemmaMode::float_svd) {
    const AdaptedStructure st(n);
    const RKBasis& basis = cached_rk_basis(n);
    res.space_dimension = basis.dimension();
    SeededSampler sampler(config.seed);
    const int count = config.float_plane_count;
    Eigen::MatrixXd m(count, basis.dimension());
    for (int row = 0; row < count; ++row) {
      const bool holo = config.holomorphic_planes && (!config.antiholomorphic_planes || row % 2 == 0);
      Vector x, y;
      if (holo) {
        x = sample_unit_vector(sampler, st);
        y = st.apply_j(x);
      } else {
        const PlanePair p = sample_antiholomorphic_pair(sampler, st);
        x = p.x;
        y = p.y;
      }
      for (int b = 0; b < basis.dimension(); ++b) m(row, b) = evaluate4(basis.tensors[b], x, y, y, x);
    }
    const FloatNullspace ns = nullspace_float(m, config.float_threshold);
    res.kernel_dimension = ns.dimension();
    res.constraint_rows = count;
    res.smallest_retained_ratio = ns.sigma_max > 0 ? ns.smallest_retained / ns.sigma_max : 0.0;
    return res;
  }

  const ExactSpace space = exact_rk_space(n);
  res.space_dimension = static_cast<int>(space.basis.size());
  std::optional<int> previous;
  for (int level = 0; level <= config.max_enlargements; ++level) {
    int rows = 0;
    const int dim = exact_kernel_at_bound(space, n, 1 + level % 2, 2 + level / 2, config, rows);
    res.kernel_dimension = dim;
    res.constraint_rows = rows;
    res.enlargements = level;
    // The kernel can only shrink as planes are added, so zero is final.
    if (dim == 0 || (previous && *previous == dim)) return res;
    previous = dim;
  }
  throw Error(ErrorKind::Inconclusive,
              "kernel did not stabilize after " + std::to_string(config.max_enlargements) + " enlargements",
              static_cast<double>(res.kernel_dimension));
}

// ---------------------------------------------------------------------------
// Derivation replay

const std::vector<std::string>& replay_tags() {
  static const std::vector<std::string> tags = {"2.1", "polarization", "2.4", "2.5", "2.6",
                                                "2.7", "2.8",          "2.9", "2.10"};
  return tags;
}

double ReplayReport::worst_relative() const {
  double w = 0.0;
  for (const auto& [tag, v] : residuals) w = std::max(w, v / scale);
  return w;
}

double c1_from_traces(int n, double mu1, double nu1, double tau, double tau_star) {
  const double nn = n;
  const double q = 8.0 * nn * (nn * nn - 1.0);
  return (mu1 / nn + (2.0 * nn + 1.0) / q) * tau + (nu1 / nn - 3.0 / q) * tau_star;
}

ReplayReport replay_derivation(const CurvatureTensor& r, double lambda, double mu, double nu, SeededSampler& sampler,
                               int sample_count) {
  if (lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "replay_derivation needs lambda != 0");
  const int n = r.n();
  if (n < 3) throw Error(ErrorKind::DimensionTooSmall, "replay_derivation needs n >= 3");
  const AdaptedStructure& st = r.structure();
  const FourTensor& t = r.tensor();
  const double rnorm = t.frobenius_norm();

  const ConditionEstimate hyp = condition_residual(r, lambda, mu, nu, sample_count, sampler);
  if (hyp.max_dev > 1e-7 * std::max(1.0, rnorm))
    throw Error(ErrorKind::HypothesisNotSatisfied, "plane function is not constant", hyp.max_dev);

  const InvariantBundle inv = invariants(r);
  const double tau = inv.tau;
  const double taus = inv.tau_star;
  const double nn = n;
  const double mu1 = mu / lambda;
  const double nu1 = nu / lambda;
  const double c = hyp.c_est;
  const double c1 = c / lambda;

  ReplayReport rep;
  rep.scale = std::max({1.0, rnorm, std::abs(tau), std::abs(taus)});
  rep.c_est = c;
  rep.c1_formula = c1_from_traces(n, mu1, nu1, tau, taus);
  for (const auto& tag : replay_tags()) rep.residuals[tag] = 0.0;
  auto record = [&](const char* tag, double v) { rep.residuals[tag] = std::max(rep.residuals[tag], std::abs(v)); };

  auto H = [&](const Vector& x) {
    const Vector jx = st.apply_j(x);
    return evaluate4(t, x, jx, jx, x);
  };
  auto S = [&](const Vector& x) { return quad_form(inv.S, x); };
  auto Sp = [&](const Vector& x) { return quad_form(inv.S_star, x); };

  const double holo_total = (tau + 3.0 * taus) / (4.0 * (nn + 1.0));
  double canonical_sum_h = 0.0;
  for (int i = 0; i < n; ++i) canonical_sum_h += H(st.basis(i));
  const double d4 = nn * nn - 4.0;

  for (int s = 0; s < sample_count; ++s) {
    const Vector x = sample_unit_vector(sampler, st);
    const double hx = H(x), sx = S(x), spx = Sp(x);
    record("2.1", lambda * hx - (lambda + 2.0 * (nn - 2.0) * mu) * sx - 2.0 * (nn - 2.0) * nu * spx -
                      (mu * tau + nu * taus - 2.0 * (nn - 1.0) * c));
    record("2.4", (nn + 2.0) * hx + canonical_sum_h - sx - 3.0 * spx);
    record("2.6", hx - (sx + 3.0 * spx) / (nn + 2.0) + holo_total / (nn + 2.0));
    record("2.7", (2.0 * (nn - 2.0) * mu1 + (nn + 1.0) / (nn + 2.0)) * sx +
                      (2.0 * (nn - 2.0) * nu1 - 3.0 / (nn + 2.0)) * spx -
                      (2.0 * (nn - 1.0) * c1 - mu1 * tau - nu1 * taus - holo_total / (nn + 2.0)));
    const double ks = mu1 + (nn + 1.0) / (2.0 * d4);
    const double kp = nu1 - 3.0 / (2.0 * d4);
    record("2.9", ks * sx + kp * spx - (ks * tau + kp * taus) / (2.0 * nn));
  }

  const double rhs_2_10 = (-(2.0 * nn * nn + 3.0 * nn + 4.0) * tau + 9.0 * nn * taus) / (8.0 * (nn * nn - 1.0) * d4);
  for (int s = 0; s < sample_count; ++s) {
    const PlanePair p = sample_antiholomorphic_pair(sampler, st);
    const Vector& x = p.x;
    const Vector& y = p.y;
    const Vector jx = st.apply_j(x);
    const Vector jy = st.apply_j(y);
    const double rxy = evaluate4(t, x, y, y, x);
    record("polarization", H(x) + H(y) -
                               (4.0 * rxy - 2.0 * evaluate4(t, x, jy, jy, x) + 2.0 * evaluate4(t, x, jx, jy, y) +
                                2.0 * evaluate4(t, x, jy, jx, y)));
    record("2.10", rxy - (nn + 1.0) / (2.0 * d4) * (S(x) + S(y)) + 3.0 / (2.0 * d4) * (Sp(x) + Sp(y)) - rhs_2_10);
  }

  record("2.5", canonical_sum_h - holo_total);
  for (int f = 0; f < 5; ++f) {
    const std::vector<Vector> frame = random_adapted_frame(sampler, st);
    double sum_h = 0.0;
    for (int i = 0; i < n; ++i) sum_h += H(frame[static_cast<std::size_t>(i)]);
    record("2.5", sum_h - holo_total);
  }
  record("2.8", c1 - rep.c1_formula);
  return rep;
}

}  // namespace ahcurv
