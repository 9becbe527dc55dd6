#include "iccr/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace iccr {

double RandomSource::uniform() {
  // 53-bit mantissa in (0, 1]; never returns 0 so log() below is safe
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1p-53;
}

double RandomSource::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex RandomSource::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexMatrix RandomSource::gaussian_matrix(int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
  return m;
}

ComplexVector RandomSource::gaussian_vector(int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_gaussian();
  return v;
}

RankReport numeric_rank(const ComplexMatrix& a, double rel_tol) {
  RankReport report;
  if (a.rows() == 0 || a.cols() == 0) {
    report.tolerance_used = 0.0;
    report.condition_number = std::numeric_limits<double>::infinity();
    return report;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double smax = sv(0);
  report.tolerance_used = rel_tol * smax;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > report.tolerance_used) ++r;
  report.rank = r;
  report.condition_number = (r > 0 && sv(r - 1) > 0.0)
                                ? smax / sv(r - 1)
                                : std::numeric_limits<double>::infinity();
  return report;
}

LeastSquaresSolution solve_least_squares(const ComplexMatrix& a, const ComplexVector& y,
                                         double rel_tol) {
  if (a.rows() != y.size()) throw std::invalid_argument("solve_least_squares: rhs length mismatch");
  LeastSquaresSolution out;
  if (a.cols() == 0) {
    out.x = ComplexVector(0);
    out.residual_norm = y.norm();
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0) ? rel_tol * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  // minimum-norm least squares via truncated SVD, same retention as numeric_rank
  ComplexVector z = svd.matrixU().adjoint() * y;
  ComplexVector w = ComplexVector::Zero(sv.size());
  for (int i = 0; i < rank; ++i) w(i) = z(i) / sv(i);
  out.x = svd.matrixV() * w;
  out.residual_norm = (a * out.x - y).norm();
  out.rank_deficient = rank < a.cols();
  return out;
}

}  // namespace iccr
