#include "ahcurv/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace ahcurv {

void RationalMatrix::append_row(const std::vector<mpq_class>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(row.size());
  if (static_cast<int>(row.size()) != cols_) throw Error(ErrorKind::ShapeError, "row length does not match matrix");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).get_d();
  return m;
}

FloatNullspace nullspace_float(const DenseMatrix& a, double rel_threshold) {
  if (a.rows() < 1 || a.cols() < 1) throw Error(ErrorKind::InvalidArgument, "nullspace_float: empty matrix");
  if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, "nullspace_float: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  FloatNullspace out;
  out.singular_values = svd.singularValues();
  out.sigma_max = out.singular_values.size() ? out.singular_values[0] : 0.0;
  const double cutoff = rel_threshold * out.sigma_max;
  int rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values[i] > cutoff) {
      ++rank;
      out.smallest_retained = out.singular_values[i];
    }
  }
  out.basis = svd.matrixV().rightCols(a.cols() - rank);
  return out;
}

ExactNullspace nullspace_exact(const RationalMatrix& a, bool want_basis) {
  const int rows = a.rows();
  const int cols = a.cols();
  // Clear denominators row by row; the row space is unchanged.
  std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(rows), std::vector<mpz_class>(cols));
  for (int r = 0; r < rows; ++r) {
    mpz_class lcm = 1;
    for (int c = 0; c < cols; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(r, c).get_den_mpz_t());
    for (int c = 0; c < cols; ++c) {
      mpq_class scaled = a(r, c) * lcm;
      m[r][c] = scaled.get_num();
    }
  }

  ExactNullspace out;
  mpz_class prev = 1;
  mpz_class tmp;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const mpz_class& piv = m[r][c];
    for (int i = r + 1; i < rows; ++i) {
      auto& row = m[i];
      const mpz_class lead = row[c];
      for (int j = c + 1; j < cols; ++j) {
        // row[j] = (piv * row[j] - lead * m[r][j]) / prev, exact
        row[j] *= piv;
        if (lead != 0 && m[r][j] != 0) {
          tmp = lead * m[r][j];
          row[j] -= tmp;
        }
        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = piv;
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  out.dimension = cols - r;

  if (want_basis && out.dimension > 0) {
    std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
    for (int c : out.pivot_columns) is_pivot[c] = 1;
    for (int f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<mpq_class> x(static_cast<std::size_t>(cols), 0);
      x[f] = 1;
      for (int i = r - 1; i >= 0; --i) {
        const int pc = out.pivot_columns[i];
        mpq_class acc = 0;
        for (int j = pc + 1; j < cols; ++j)
          if (m[i][j] != 0 && x[j] != 0) acc += mpq_class(m[i][j]) * x[j];
        x[pc] = -acc / mpq_class(m[i][pc]);
      }
      out.basis.push_back(std::move(x));
    }
  }
  return out;
}

double metric_proportionality_residual(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeError, "metric_proportionality_residual: form must be square");
  const double norm = a.norm();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, norm))
    throw Error(ErrorKind::InvalidArgument, "metric_proportionality_residual: form is not symmetric", asym);
  const double mean = a.trace() / static_cast<double>(a.rows());
  const Eigen::MatrixXd dev = a - mean * Eigen::MatrixXd::Identity(a.rows(), a.cols());
  return dev.norm() / std::max(norm, 1e-30);
}

}  // namespace ahcurv
