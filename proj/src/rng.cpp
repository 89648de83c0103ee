#include "rng.hpp"

#include <cmath>

#include "errors.hpp"

namespace rrd::numerics {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

void philox_4x64_10(const std::uint64_t ctr[4], const std::uint64_t key[2],
                    std::uint64_t out[4]) {
  std::uint64_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
  std::uint64_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, x0, hi0, lo0);
    mulhilo(kPhiloxM1, x2, hi1, lo1);
    const std::uint64_t y0 = hi1 ^ x1 ^ k0;
    const std::uint64_t y1 = lo1;
    const std::uint64_t y2 = hi0 ^ x3 ^ k1;
    const std::uint64_t y3 = lo0;
    x0 = y0;
    x1 = y1;
    x2 = y2;
    x3 = y3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  out[0] = x0;
  out[1] = x1;
  out[2] = x2;
  out[3] = x3;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id) {
  key_[0] = master_seed;
  key_[1] = stream_id;
}

void RngStream::refill() {
  const std::uint64_t ctr[4] = {block_index_, 0, 0, 0};
  philox_4x64_10(ctr, key_, buffer_);
  ++block_index_;
  buffer_pos_ = 0;
}

std::uint64_t RngStream::next_u64() {
  if (buffer_pos_ == 4) refill();
  ++words_drawn_;
  return buffer_[buffer_pos_++];
}

double RngStream::uniform() {
  // 53 mantissa bits; add half an ulp so the result stays in (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::gaussian() {
  double first, second;
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double m = std::sqrt(-2.0 * std::log(s) / s);
      first = u * m;
      second = v * m;
      break;
    }
  }
  (void)second;
  return first;
}

void RngStream::fill_gaussian(double* dst, std::size_t dim) {
  std::size_t i = 0;
  while (i + 1 < dim) {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        dst[i] = u * m;
        dst[i + 1] = v * m;
        break;
      }
    }
    i += 2;
  }
  if (i < dim) dst[i] = gaussian();
}

std::vector<double> gaussian_vector(RngStream& stream, std::size_t dim) {
  if (dim == 0) throw ConfigError("gaussian_vector: dimension must be >= 1");
  std::vector<double> out(dim);
  stream.fill_gaussian(out.data(), dim);
  return out;
}

}  // namespace rrd::numerics
