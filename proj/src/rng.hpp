#pragma once

#include <cstdint>
#include <vector>

namespace rrd::numerics {

// Counter-based stream built on the Philox-4x64-10 block function. A stream
// is fully determined by (master_seed, stream_id, counter), so Monte Carlo
// trial t can own stream_id = t and replay identically no matter how trials
// are scheduled across threads. Streams with distinct ids are independent.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return key_[0]; }
  std::uint64_t stream_id() const { return key_[1]; }
  // Number of 64-bit words consumed so far.
  std::uint64_t counter() const { return words_drawn_; }

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  // One standard normal draw (polar method, first deviate of the pair).
  double gaussian();
  // Fill dst with standard normals, consuming deviates pairwise.
  void fill_gaussian(double* dst, std::size_t dim);

 private:
  void refill();

  std::uint64_t key_[2];
  std::uint64_t block_index_ = 0;
  std::uint64_t words_drawn_ = 0;
  std::uint64_t buffer_[4];
  int buffer_pos_ = 4;
};

// dim standard normal draws from the stream. Throws ConfigError if dim == 0.
std::vector<double> gaussian_vector(RngStream& stream, std::size_t dim);

}  // namespace rrd::numerics
