#pragma once

#include <functional>

namespace rrd::numerics {

struct ScalarOptResult {
  double argopt = 0.0;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Maximize a unimodal f over [lo, inf). The bracket grows geometrically from
// hi_init until f stops increasing, then golden-section refinement narrows
// the argopt to within tol. Throws UnboundedMaximumError if the expansion
// cap (~2^60 * hi_init) is reached while f is still increasing.
ScalarOptResult maximize_scalar(const std::function<double(double)>& f,
                                double lo, double hi_init = 1.0,
                                double tol = 1e-10);

}  // namespace rrd::numerics
