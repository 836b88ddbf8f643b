#pragma once

// Pointwise linear algebra over R^{2n} with the canonical almost Hermitian
// structure: identity metric, block complex structure J, dense (0,4)-tensors
// and seeded sampling of vectors, planes and adapted frames.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ahcurv/errors.hpp"

namespace ahcurv {

using Vector = Eigen::VectorXd;
/// Symmetric 2n x 2n matrix in the adapted frame (S, S', Q, g).
using BilinearForm = Eigen::MatrixXd;

/// Identity metric plus canonical J with J e_i = e_{n+i}, J e_{n+i} = -e_i.
class AdaptedStructure {
 public:
  explicit AdaptedStructure(int n);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_; }
  const Eigen::MatrixXd& J() const noexcept { return j_; }
  Eigen::MatrixXd metric() const { return Eigen::MatrixXd::Identity(dim(), dim()); }

  Vector apply_j(const Vector& x) const;
  /// g(x, Jy)
  double omega(const Vector& x, const Vector& y) const;
  Vector basis(int i) const;

 private:
  int n_;
  Eigen::MatrixXd j_;
};

AdaptedStructure standard_structure(int n);

/// Dense rank-4 array over R^{2n}, row-major [i][j][k][l].
class FourTensor {
 public:
  FourTensor() = default;
  explicit FourTensor(int n);
  FourTensor(int n, std::vector<double> components);

  static FourTensor zero(int n) { return FourTensor(n); }

  int n() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }

  std::span<double> components() noexcept { return data_; }
  std::span<const double> components() const noexcept { return data_; }
  Eigen::Map<const Eigen::VectorXd> flat() const { return {data_.data(), static_cast<Eigen::Index>(data_.size())}; }
  Eigen::Map<Eigen::VectorXd> flat() { return {data_.data(), static_cast<Eigen::Index>(data_.size())}; }

  double frobenius_norm() const;
  double max_abs() const;
  double dot(const FourTensor& other) const;

  FourTensor& operator+=(const FourTensor& other);
  FourTensor& operator-=(const FourTensor& other);
  FourTensor& operator*=(double s);

  friend FourTensor operator+(FourTensor a, const FourTensor& b) { return a += b; }
  friend FourTensor operator-(FourTensor a, const FourTensor& b) { return a -= b; }
  friend FourTensor operator*(double s, FourTensor a) { return a *= s; }
  friend FourTensor operator*(FourTensor a, double s) { return a *= s; }
  friend bool operator==(const FourTensor&, const FourTensor&) = default;

  std::size_t offset(int i, int j, int k, int l) const noexcept {
    const std::size_t d = static_cast<std::size_t>(dim());
    return ((static_cast<std::size_t>(i) * d + j) * d + k) * d + l;
  }

 private:
  void require_same_shape(const FourTensor& other) const;

  int n_ = 0;
  std::vector<double> data_;
};

/// T(x, y, z, u) = sum T[i][j][k][l] x_i y_j z_k u_l.
double evaluate4(const FourTensor& t, const Vector& x, const Vector& y, const Vector& z, const Vector& u);

/// Pullback (F^* T)[a][b][c][d] = T(F_a, F_b, F_c, F_d) for the columns F_a of `frame`.
FourTensor change_frame(const FourTensor& t, const Eigen::MatrixXd& frame);

/// Seeded source of randomness. Single owner; use `fork` to hand a
/// deterministic child stream to another consumer.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Vector normal_vector(int size);
  SeededSampler fork(std::uint64_t tag) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

enum class PlaneKind { holomorphic, antiholomorphic, generic };

const char* to_string(PlaneKind kind);

struct PlanePair {
  Vector x;
  Vector y;
  PlaneKind kind = PlaneKind::generic;
};

Vector sample_unit_vector(SeededSampler& sampler, const AdaptedStructure& structure);

/// Unit x, unit y with g(x,y) = g(x,Jy) = 0.
PlanePair sample_antiholomorphic_pair(SeededSampler& sampler, const AdaptedStructure& structure);
/// Same, with x fixed (normalized internally).
PlanePair sample_antiholomorphic_pair(SeededSampler& sampler, const AdaptedStructure& structure, const Vector& x);

PlaneKind classify_plane(const Vector& x, const Vector& y, const AdaptedStructure& structure, double tol = 1e-9);

/// Orthonormalizes the first n columns of `seed` in the complex sense
/// (against previous f_k and J f_k) and returns f_1..f_n, J f_1..J f_n.
std::vector<Vector> adapted_frame_from(const Eigen::MatrixXd& seed, const AdaptedStructure& structure);
std::vector<Vector> random_adapted_frame(SeededSampler& sampler, const AdaptedStructure& structure);
Eigen::MatrixXd frame_matrix(const std::vector<Vector>& frame);

}  // namespace ahcurv
