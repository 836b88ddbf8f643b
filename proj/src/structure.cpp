#include "ahcurv/structure.hpp"

#include <algorithm>
#include <cmath>

namespace ahcurv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

const char* to_string(PlaneKind kind) {
  switch (kind) {
    case PlaneKind::holomorphic: return "holomorphic";
    case PlaneKind::antiholomorphic: return "antiholomorphic";
    case PlaneKind::generic: return "generic";
  }
  return "unknown";
}

AdaptedStructure::AdaptedStructure(int n) : n_(n) {
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "complex dimension must be >= 2, got " + std::to_string(n));
  j_ = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j_(n + i, i) = 1.0;
    j_(i, n + i) = -1.0;
  }
}

Vector AdaptedStructure::apply_j(const Vector& x) const {
  if (x.size() != dim()) throw Error(ErrorKind::ShapeError, "vector has wrong dimension");
  Vector out(dim());
  out.head(n_) = -x.tail(n_);
  out.tail(n_) = x.head(n_);
  return out;
}

double AdaptedStructure::omega(const Vector& x, const Vector& y) const { return x.dot(apply_j(y)); }

Vector AdaptedStructure::basis(int i) const { return Vector::Unit(dim(), i); }

AdaptedStructure standard_structure(int n) { return AdaptedStructure(n); }

// ---------------------------------------------------------------------------

FourTensor::FourTensor(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::ShapeError, "tensor dimension must be positive");
  const std::size_t d = static_cast<std::size_t>(2 * n);
  data_.assign(d * d * d * d, 0.0);
}

FourTensor::FourTensor(int n, std::vector<double> components) : n_(n), data_(std::move(components)) {
  const std::size_t d = static_cast<std::size_t>(2 * n);
  if (n < 1 || data_.size() != d * d * d * d)
    throw Error(ErrorKind::ShapeError, "component count does not match (2n)^4");
}

double FourTensor::frobenius_norm() const { return flat().norm(); }

double FourTensor::max_abs() const { return data_.empty() ? 0.0 : flat().cwiseAbs().maxCoeff(); }

double FourTensor::dot(const FourTensor& other) const {
  require_same_shape(other);
  return flat().dot(other.flat());
}

FourTensor& FourTensor::operator+=(const FourTensor& other) {
  require_same_shape(other);
  flat() += other.flat();
  return *this;
}

FourTensor& FourTensor::operator-=(const FourTensor& other) {
  require_same_shape(other);
  flat() -= other.flat();
  return *this;
}

FourTensor& FourTensor::operator*=(double s) {
  flat() *= s;
  return *this;
}

void FourTensor::require_same_shape(const FourTensor& other) const {
  if (n_ != other.n_) throw Error(ErrorKind::ShapeError, "tensor dimensions differ");
}

double evaluate4(const FourTensor& t, const Vector& x, const Vector& y, const Vector& z, const Vector& u) {
  const int d = t.dim();
  if (x.size() != d || y.size() != d || z.size() != d || u.size() != d)
    throw Error(ErrorKind::ShapeError, "evaluate4: vector dimension does not match tensor");
  const double* p = t.components().data();
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0.0) {
      p += static_cast<std::size_t>(d) * d * d;
      continue;
    }
    double si = 0.0;
    for (int j = 0; j < d; ++j) {
      double sj = 0.0;
      for (int k = 0; k < d; ++k) {
        double sk = 0.0;
        for (int l = 0; l < d; ++l) sk += p[l] * u[l];
        p += d;
        sj += sk * z[k];
      }
      si += sj * y[j];
    }
    total += si * x[i];
  }
  return total;
}

FourTensor change_frame(const FourTensor& t, const Eigen::MatrixXd& frame) {
  const int d = t.dim();
  if (frame.rows() != d || frame.cols() != d) throw Error(ErrorKind::ShapeError, "frame must be 2n x 2n");
  // Transform one slot per pass: out[..a..] = sum_i in[..i..] F(i, a).
  const std::size_t sd = static_cast<std::size_t>(d);
  const std::size_t strides[4] = {sd * sd * sd, sd * sd, sd, 1};
  FourTensor cur = t;
  for (int slot = 0; slot < 4; ++slot) {
    FourTensor next(t.n());
    const std::size_t stride = strides[slot];
    auto in = cur.components();
    auto out = next.components();
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
      const std::size_t i = (idx / stride) % sd;
      const double v = in[idx];
      if (v == 0.0) continue;
      const std::size_t base = idx - i * stride;
      for (std::size_t a = 0; a < sd; ++a) out[base + a * stride] += v * frame(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
    }
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------

Vector SeededSampler::normal_vector(int size) {
  Vector v(size);
  for (int i = 0; i < size; ++i) v[i] = normal();
  return v;
}

SeededSampler SeededSampler::fork(std::uint64_t tag) const {
  // splitmix64 finalizer over (seed, tag)
  std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return SeededSampler(z ^ (z >> 31));
}

Vector sample_unit_vector(SeededSampler& sampler, const AdaptedStructure& structure) {
  for (;;) {
    Vector v = sampler.normal_vector(structure.dim());
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

PlanePair sample_antiholomorphic_pair(SeededSampler& sampler, const AdaptedStructure& structure, const Vector& x_in) {
  if (x_in.size() != structure.dim()) throw Error(ErrorKind::ShapeError, "vector has wrong dimension");
  const double xnorm = x_in.norm();
  if (xnorm < 1e-12) throw Error(ErrorKind::InvalidArgument, "x must be non-zero");
  const Vector x = x_in / xnorm;
  const Vector jx = structure.apply_j(x);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector y = sampler.normal_vector(structure.dim());
    y -= x.dot(y) * x;
    y -= jx.dot(y) * jx;
    const double norm = y.norm();
    if (norm < 1e-12) continue;
    y /= norm;
    // one re-orthogonalization pass
    y -= x.dot(y) * x;
    y -= jx.dot(y) * jx;
    y.normalize();
    return {x, y, PlaneKind::antiholomorphic};
  }
  throw Error(ErrorKind::DegenerateSample, "could not sample a vector off span{x, Jx}");
}

PlanePair sample_antiholomorphic_pair(SeededSampler& sampler, const AdaptedStructure& structure) {
  const Vector x = sample_unit_vector(sampler, structure);
  return sample_antiholomorphic_pair(sampler, structure, x);
}

PlaneKind classify_plane(const Vector& x, const Vector& y, const AdaptedStructure& structure, double tol) {
  if (x.size() != structure.dim() || y.size() != structure.dim())
    throw Error(ErrorKind::ShapeError, "vector has wrong dimension");
  const double xn = x.norm();
  if (xn <= tol) throw Error(ErrorKind::DegeneratePlane, "x is zero");
  const Vector e1 = x / xn;
  Vector e2 = y - e1.dot(y) * e1;
  const double yn = e2.norm();
  if (yn <= tol * std::max(1.0, y.norm())) throw Error(ErrorKind::DegeneratePlane, "x and y are linearly dependent");
  e2 /= yn;
  const double w = std::abs(structure.omega(e1, e2));
  if (std::abs(w - 1.0) <= tol) return PlaneKind::holomorphic;
  if (w <= tol) return PlaneKind::antiholomorphic;
  return PlaneKind::generic;
}

std::vector<Vector> adapted_frame_from(const Eigen::MatrixXd& seed, const AdaptedStructure& structure) {
  const int n = structure.n();
  const int d = structure.dim();
  if (seed.rows() != d || seed.cols() < n) throw Error(ErrorKind::ShapeError, "seed matrix must have 2n rows and >= n columns");
  std::vector<Vector> first;
  first.reserve(n);
  for (int c = 0; c < n; ++c) {
    Vector v = seed.col(c);
    const double start = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& f : first) {
        v -= f.dot(v) * f;
        const Vector jf = structure.apply_j(f);
        v -= jf.dot(v) * jf;
      }
    }
    const double norm = v.norm();
    if (norm <= 1e-10 * std::max(1.0, start)) throw Error(ErrorKind::DegenerateSample, "seed columns are J-dependent");
    first.push_back(v / norm);
  }
  std::vector<Vector> frame = first;
  for (const Vector& f : first) frame.push_back(structure.apply_j(f));
  return frame;
}

std::vector<Vector> random_adapted_frame(SeededSampler& sampler, const AdaptedStructure& structure) {
  const int n = structure.n();
  for (int attempt = 0; attempt < 100; ++attempt) {
    // Element of the commutant of J: [[P, -Q], [Q, P]].
    Eigen::MatrixXd p(n, n), q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        p(i, j) = sampler.normal();
        q(i, j) = sampler.normal();
      }
    Eigen::MatrixXd seed(2 * n, 2 * n);
    seed << p, -q, q, p;
    try {
      return adapted_frame_from(seed, structure);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateSample) throw;
    }
  }
  throw Error(ErrorKind::DegenerateSample, "random adapted frame: rank deficiency after 100 attempts");
}

Eigen::MatrixXd frame_matrix(const std::vector<Vector>& frame) {
  if (frame.empty()) return {};
  Eigen::MatrixXd m(frame.front().size(), static_cast<Eigen::Index>(frame.size()));
  for (std::size_t c = 0; c < frame.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = frame[c];
  return m;
}

}  // namespace ahcurv
