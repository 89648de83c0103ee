#include "instance.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

#include "errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "instance serialization assumes a little-endian host");

namespace rrd::problem {

std::size_t scaled_dim(double alpha, std::size_t n) {
  if (alpha < 0.0) throw ConfigError("shape: negative dimension ratio");
  return static_cast<std::size_t>(
      std::floor(alpha * static_cast<double>(n) + 0.5));
}

std::size_t ShapeConfig::m1() const { return scaled_dim(alpha1, n); }
std::size_t ShapeConfig::m2() const { return scaled_dim(alpha2, n); }
std::size_t ShapeConfig::k() const { return scaled_dim(beta, n); }

bool ProblemInstance::homogeneous() const {
  for (double v : a_vec)
    if (v != 0.0) return false;
  for (double v : b_vec)
    if (v != 0.0) return false;
  return true;
}

ProblemInstance sample_instance(const ShapeConfig& cfg,
                                const ObjectiveSpec& objective,
                                numerics::RngStream& stream,
                                std::optional<Offsets> offsets,
                                bool ball_bound, bool allow_unbounded) {
  if (cfg.n == 0) throw ConfigError("sample_instance: n must be >= 1");
  if (!ball_bound && !allow_unbounded)
    throw ConfigError(
        "sample_instance: ball_bound=false refused for homogeneous "
        "objectives (pass allow_unbounded to override)");

  ProblemInstance ins;
  ins.n = cfg.n;
  ins.objective = objective;
  if (objective.kind == ObjectiveKind::BpSplit) {
    // beta > alpha1 leaves the sparse-recovery regime but stays a valid
    // program (the reference tables sweep beta past alpha1); only k > n is
    // malformed.
    ins.objective.k = cfg.k();
    if (ins.objective.k > cfg.n)
      throw ConfigError("sample_instance: split k exceeds n");
  }
  if (ins.objective.kind == ObjectiveKind::GeneralLinear &&
      ins.objective.c.size() != cfg.n)
    throw ConfigError("sample_instance: c dimension mismatch");

  const std::size_t m1 = cfg.m1();
  const std::size_t m2 = cfg.m2();
  ins.A = numerics::DenseMatrix(m1, cfg.n);
  ins.B = numerics::DenseMatrix(m2, cfg.n);
  if (m1 > 0) stream.fill_gaussian(ins.A.entries.data(), m1 * cfg.n);
  if (m2 > 0) stream.fill_gaussian(ins.B.entries.data(), m2 * cfg.n);

  if (offsets) {
    if (offsets->a_vec.size() != m1 || offsets->b_vec.size() != m2)
      throw ConfigError("sample_instance: offset dimensions mismatch");
    ins.a_vec = std::move(offsets->a_vec);
    ins.b_vec = std::move(offsets->b_vec);
  } else {
    ins.a_vec.assign(m1, 0.0);
    ins.b_vec.assign(m2, 0.0);
  }
  ins.ball_bound = ball_bound;
  return ins;
}

CanonicalRotation rotate_to_canonical(const ProblemInstance& instance) {
  if (instance.objective.kind != ObjectiveKind::GeneralLinear)
    throw ConfigError("rotate_to_canonical: objective is not GeneralLinear");
  const std::size_t n = instance.n;
  const auto& c = instance.objective.c;
  double cnorm2 = 0.0;
  for (double v : c) cnorm2 += v * v;
  if (!(cnorm2 > 0.0)) throw ConfigError("rotate_to_canonical: c is zero");
  const double cnorm = std::sqrt(cnorm2);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  // q = c/||c|| - ones/sqrt(n); the reflector through q swaps the two.
  std::vector<double> q(n);
  double qnorm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = c[i] / cnorm - inv_sqrt_n;
    qnorm2 += q[i] * q[i];
  }

  CanonicalRotation rot;
  rot.scale = cnorm * inv_sqrt_n;
  rot.instance = instance;
  rot.instance.objective = ObjectiveSpec::purely_linear();
  if (qnorm2 < 1e-28) return rot;  // c already aligned with ones
  rot.reflector = q;

  // Row i of M Q^T = m_i - 2 (m_i . q) / (q . q) * q^T (Q is symmetric).
  auto rotate_rows = [&](numerics::DenseMatrix& m) {
    for (std::size_t i = 0; i < m.rows; ++i) {
      double* row = m.entries.data() + i * m.cols;
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += row[j] * q[j];
      const double coeff = 2.0 * dot / qnorm2;
      for (std::size_t j = 0; j < n; ++j) row[j] -= coeff * q[j];
    }
  };
  rotate_rows(rot.instance.A);
  rotate_rows(rot.instance.B);
  return rot;
}

std::vector<double> apply_rotation(const std::vector<double>& reflector,
                                   std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  if (reflector.empty()) return out;
  if (reflector.size() != x.size())
    throw ConfigError("apply_rotation: dimension mismatch");
  double qnorm2 = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    qnorm2 += reflector[i] * reflector[i];
    dot += reflector[i] * x[i];
  }
  const double coeff = 2.0 * dot / qnorm2;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] -= coeff * reflector[i];
  return out;
}

namespace {

constexpr char kMagic[4] = {'R', 'R', 'D', 'I'};
constexpr std::uint32_t kFormatVersion = 1;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

void write_bytes(std::FILE* f, const void* p, std::size_t bytes,
                 const std::string& path) {
  if (std::fwrite(p, 1, bytes, f) != bytes)
    throw IoError("save_instance: short write to " + path);
}

void read_bytes(std::FILE* f, void* p, std::size_t bytes,
                const std::string& path) {
  if (std::fread(p, 1, bytes, f) != bytes)
    throw IoError("load_instance: short read from " + path);
}

template <typename T>
void write_pod(std::FILE* f, T v, const std::string& path) {
  write_bytes(f, &v, sizeof(T), path);
}

template <typename T>
T read_pod(std::FILE* f, const std::string& path) {
  T v;
  read_bytes(f, &v, sizeof(T), path);
  return v;
}

}  // namespace

void save_instance(const ProblemInstance& instance, const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw IoError("save_instance: cannot open " + path);
  write_bytes(f.get(), kMagic, 4, path);
  write_pod<std::uint32_t>(f.get(), kFormatVersion, path);
  write_pod<std::uint64_t>(f.get(), instance.n, path);
  write_pod<std::uint64_t>(f.get(), instance.m1(), path);
  write_pod<std::uint64_t>(f.get(), instance.m2(), path);
  write_pod<std::uint32_t>(
      f.get(), static_cast<std::uint32_t>(instance.objective.kind), path);
  write_pod<std::uint64_t>(f.get(), instance.objective.k, path);
  write_pod<double>(f.get(), instance.objective.degree, path);
  write_pod<std::uint8_t>(f.get(), instance.ball_bound ? 1 : 0, path);
  auto write_vec = [&](const std::vector<double>& v) {
    if (!v.empty())
      write_bytes(f.get(), v.data(), v.size() * sizeof(double), path);
  };
  write_vec(instance.A.entries);
  write_vec(instance.B.entries);
  write_vec(instance.a_vec);
  write_vec(instance.b_vec);
  if (instance.objective.kind == ObjectiveKind::GeneralLinear)
    write_vec(instance.objective.c);
}

ProblemInstance load_instance(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
  if (!f) throw IoError("load_instance: cannot open " + path);
  char magic[4];
  read_bytes(f.get(), magic, 4, path);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("load_instance: bad magic in " + path);
  const auto version = read_pod<std::uint32_t>(f.get(), path);
  if (version != kFormatVersion)
    throw IoError("load_instance: unsupported format version in " + path);

  ProblemInstance ins;
  ins.n = read_pod<std::uint64_t>(f.get(), path);
  const auto m1 = read_pod<std::uint64_t>(f.get(), path);
  const auto m2 = read_pod<std::uint64_t>(f.get(), path);
  const auto kind = read_pod<std::uint32_t>(f.get(), path);
  if (kind > 2) throw IoError("load_instance: bad objective kind in " + path);
  ins.objective.kind = static_cast<ObjectiveKind>(kind);
  ins.objective.k = read_pod<std::uint64_t>(f.get(), path);
  ins.objective.degree = read_pod<double>(f.get(), path);
  ins.ball_bound = read_pod<std::uint8_t>(f.get(), path) != 0;

  auto read_vec = [&](std::vector<double>& v, std::size_t count) {
    v.resize(count);
    if (count) read_bytes(f.get(), v.data(), count * sizeof(double), path);
  };
  ins.A = numerics::DenseMatrix(m1, ins.n);
  ins.B = numerics::DenseMatrix(m2, ins.n);
  read_vec(ins.A.entries, m1 * ins.n);
  read_vec(ins.B.entries, m2 * ins.n);
  read_vec(ins.a_vec, m1);
  read_vec(ins.b_vec, m2);
  if (ins.objective.kind == ObjectiveKind::GeneralLinear)
    read_vec(ins.objective.c, ins.n);
  ins.A.validate();
  ins.B.validate();
  return ins;
}

}  // namespace rrd::problem
