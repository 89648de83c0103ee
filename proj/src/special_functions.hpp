#pragma once

namespace rrd::numerics {

// Complementary error function, absolute error below 1e-12 on [-6, 6].
// Power series for small arguments, Lentz continued fraction for the tail.
double erfc(double x);

}  // namespace rrd::numerics
