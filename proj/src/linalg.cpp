#include "linalg.hpp"

#include <cmath>

#include "errors.hpp"

namespace rrd::numerics {

void DenseMatrix::validate() const {
  if (entries.size() != rows * cols)
    throw ConfigError("DenseMatrix: entry count does not match rows * cols");
  for (double e : entries)
    if (!std::isfinite(e))
      throw ConfigError("DenseMatrix: non-finite entry");
}

NullspaceProjector::NullspaceProjector(const DenseMatrix& a)
    : m_(a.rows), n_(a.cols) {
  if (m_ == 0) return;
  if (m_ > n_)
    throw ConfigError("NullspaceProjector: more rows than columns");
  a_ = as_eigen(a);
  llt_.compute(a_ * a_.transpose());
  if (llt_.info() != Eigen::Success)
    throw SingularMatrixError(
        "NullspaceProjector: A A^T is not positive definite (rank-deficient "
        "A?)");
}

void NullspaceProjector::apply_inplace(Eigen::VectorXd& x) const {
  if (m_ == 0) return;
  x.noalias() -= a_.transpose() * llt_.solve(a_ * x);
}

std::vector<double> NullspaceProjector::apply(std::span<const double> x) const {
  if (n_ != 0 && x.size() != n_)
    throw ConfigError("NullspaceProjector: dimension mismatch");
  Eigen::VectorXd v = as_eigen(x);
  apply_inplace(v);
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace rrd::numerics
