#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace rrd::numerics {

// Dense row-major matrix with value semantics. The Monte Carlo layer stores
// A and B in this form; Eigen maps are used for any actual factorization.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major, rows * cols

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), entries(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }

  // Throws ConfigError if the entry count is wrong or any entry is not finite.
  void validate() const;
};

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;

inline RowMajorMap as_eigen(const DenseMatrix& m) {
  return RowMajorMap(m.entries.data(), static_cast<Eigen::Index>(m.rows),
                     static_cast<Eigen::Index>(m.cols));
}

inline Eigen::Map<const Eigen::VectorXd> as_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

// Orthogonal projector onto the nullspace of A, applied as
// P x = x - A^T (A A^T)^{-1} A x with a cached Cholesky factor of A A^T.
// An empty A (zero rows) yields the identity.
class NullspaceProjector {
 public:
  explicit NullspaceProjector(const DenseMatrix& a);

  void apply_inplace(Eigen::VectorXd& x) const;
  std::vector<double> apply(std::span<const double> x) const;

  std::size_t dim() const { return n_; }
  std::size_t rank_rows() const { return m_; }

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  Eigen::MatrixXd a_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace rrd::numerics
