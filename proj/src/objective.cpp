#include "objective.hpp"

#include <cmath>

#include "errors.hpp"

namespace rrd::problem {

ObjectiveSpec ObjectiveSpec::purely_linear() { return ObjectiveSpec{}; }

ObjectiveSpec ObjectiveSpec::general_linear(std::vector<double> c) {
  double norm2 = 0.0;
  for (double v : c) norm2 += v * v;
  if (!(norm2 > 0.0))
    throw ConfigError("ObjectiveSpec: GeneralLinear needs a nonzero c");
  ObjectiveSpec obj;
  obj.kind = ObjectiveKind::GeneralLinear;
  obj.c = std::move(c);
  return obj;
}

ObjectiveSpec ObjectiveSpec::bp_split(std::size_t k) {
  ObjectiveSpec obj;
  obj.kind = ObjectiveKind::BpSplit;
  obj.k = k;
  return obj;
}

double evaluate_objective(const ObjectiveSpec& obj, std::span<const double> x) {
  const std::size_t n = x.size();
  switch (obj.kind) {
    case ObjectiveKind::PurelyLinear: {
      double s = 0.0;
      for (double v : x) s += v;
      return s;
    }
    case ObjectiveKind::GeneralLinear: {
      if (obj.c.size() != n)
        throw ConfigError("evaluate_objective: c dimension mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += obj.c[i] * x[i];
      return s;
    }
    case ObjectiveKind::BpSplit: {
      if (obj.k > n)
        throw ConfigError("evaluate_objective: k exceeds dimension");
      double s = 0.0;
      const std::size_t split = n - obj.k;
      for (std::size_t i = 0; i < split; ++i) s += std::abs(x[i]);
      for (std::size_t i = split; i < n; ++i) s += x[i];
      return s;
    }
  }
  throw ConfigError("evaluate_objective: unknown objective kind");
}

void prox_objective_inplace(const ObjectiveSpec& obj, double* v, std::size_t n,
                            double t) {
  if (!(t > 0.0)) throw ConfigError("prox_objective: t must be positive");
  switch (obj.kind) {
    case ObjectiveKind::PurelyLinear:
      for (std::size_t i = 0; i < n; ++i) v[i] -= t;
      return;
    case ObjectiveKind::GeneralLinear:
      if (obj.c.size() != n)
        throw ConfigError("prox_objective: c dimension mismatch");
      for (std::size_t i = 0; i < n; ++i) v[i] -= t * obj.c[i];
      return;
    case ObjectiveKind::BpSplit: {
      if (obj.k > n) throw ConfigError("prox_objective: k exceeds dimension");
      const std::size_t split = n - obj.k;
      for (std::size_t i = 0; i < split; ++i) {
        const double a = std::abs(v[i]) - t;
        v[i] = a > 0.0 ? std::copysign(a, v[i]) : 0.0;
      }
      for (std::size_t i = split; i < n; ++i) v[i] -= t;
      return;
    }
  }
  throw ConfigError("prox_objective: unknown objective kind");
}

std::vector<double> prox_objective(const ObjectiveSpec& obj,
                                   std::span<const double> v, double t) {
  std::vector<double> out(v.begin(), v.end());
  prox_objective_inplace(obj, out.data(), out.size(), t);
  return out;
}

std::vector<double> subgradient(const ObjectiveSpec& obj,
                                std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> g(n, 1.0);
  switch (obj.kind) {
    case ObjectiveKind::PurelyLinear:
      return g;
    case ObjectiveKind::GeneralLinear:
      if (obj.c.size() != n)
        throw ConfigError("subgradient: c dimension mismatch");
      return obj.c;
    case ObjectiveKind::BpSplit: {
      if (obj.k > n) throw ConfigError("subgradient: k exceeds dimension");
      const std::size_t split = n - obj.k;
      for (std::size_t i = 0; i < split; ++i)
        g[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
      return g;
    }
  }
  throw ConfigError("subgradient: unknown objective kind");
}

}  // namespace rrd::problem
