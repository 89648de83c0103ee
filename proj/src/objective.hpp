#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rrd::problem {

enum class ObjectiveKind { PurelyLinear, GeneralLinear, BpSplit };

// One of the three built-in positive homogeneous objectives:
//   PurelyLinear  f(x) = sum_i x_i
//   GeneralLinear f(x) = c^T x
//   BpSplit       f(x) = sum_{i<=n-k} |x_i| + sum_{i>n-k} x_i
// All are homogeneous of degree 1; the degree field is metadata only.
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::PurelyLinear;
  std::vector<double> c;  // GeneralLinear only
  std::size_t k = 0;      // BpSplit only
  double degree = 1.0;

  static ObjectiveSpec purely_linear();
  static ObjectiveSpec general_linear(std::vector<double> c);
  static ObjectiveSpec bp_split(std::size_t k);
};

double evaluate_objective(const ObjectiveSpec& obj, std::span<const double> x);

// argmin_u { t f(u) + 0.5 ||u - v||^2 }: linear parts shift by -t * coeff,
// absolute-value parts soft-threshold at t.
std::vector<double> prox_objective(const ObjectiveSpec& obj,
                                   std::span<const double> v, double t);
void prox_objective_inplace(const ObjectiveSpec& obj, double* v,
                            std::size_t n, double t);

// A subgradient of f at x (used by the brute-force polish).
std::vector<double> subgradient(const ObjectiveSpec& obj,
                                std::span<const double> x);

}  // namespace rrd::problem
