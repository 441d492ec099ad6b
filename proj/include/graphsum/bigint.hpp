#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace graphsum {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division and the matching non-negative remainder, for any b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int pos_mod(const Int& a, const Int& b) {
  Int r = a % b;
  if (r < 0) r += b;
  return r;
}

// Exact integer square root of a perfect square.
inline Int isqrt_exact(const Int& x) {
  if (x < 0) throw std::invalid_argument("isqrt_exact: negative input");
  Int r = boost::multiprecision::sqrt(x);
  if (r * r != x) throw std::invalid_argument("isqrt_exact: not a perfect square");
  return r;
}

inline Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace graphsum
