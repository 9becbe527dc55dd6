#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace iccr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultRankTol = 1e-9;

// Deterministic Gaussian source. The engine is mt19937_64 (exactly specified
// by the standard); normals come from an explicit Box-Muller transform over
// 53-bit uniforms because std::normal_distribution is implementation defined
// and identical seeds must give identical streams everywhere.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // uniform on (0, 1]
  double uniform();
  // real N(0, 1)
  double gaussian();
  // circularly symmetric CN(0, 1): (g1 + i*g2) / sqrt(2)
  Complex complex_gaussian();

  ComplexMatrix gaussian_matrix(int rows, int cols);
  ComplexVector gaussian_vector(int n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct RankReport {
  int rank = 0;
  std::vector<double> singular_values;  // descending
  double tolerance_used = 0.0;          // absolute cutoff applied
  // sigma_max over the smallest retained singular value; inf for rank 0
  double condition_number = 0.0;
};

RankReport numeric_rank(const ComplexMatrix& a, double rel_tol = kDefaultRankTol);

struct LeastSquaresSolution {
  ComplexVector x;
  double residual_norm = 0.0;
  // rank < cols: x is the minimum-norm solution among the optimal set
  bool rank_deficient = false;
};

LeastSquaresSolution solve_least_squares(const ComplexMatrix& a, const ComplexVector& y,
                                         double rel_tol = kDefaultRankTol);

}  // namespace iccr
