#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hms {

// All quantities in this library are exact: arbitrary-precision integers and
// rationals kept in lowest terms with a positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// num/den as a normalized rational; den may be negative but not zero.
Rat make_rat(const Int& num, const Int& den);

// Least s >= 0 with s*s >= v. Requires v >= 0.
Int isqrt_ceil(const Int& v);

// Largest integer <= r.
Int rat_floor(const Rat& r);

bool rat_is_integer(const Rat& r);

std::string int_str(const Int& v);

// "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string rat_str(const Rat& r);

// Strict decimal integer parse, optional leading '-'. Throws ParseError.
Int parse_int(const std::string& s);

// Accepts "p" or "p/q" with q > 0 after normalization. Throws ParseError.
Rat parse_rat(const std::string& s);

double rat_double(const Rat& r);

std::uint64_t fnv1a64(std::string_view s);

// Deterministic splitmix64 stream; used everywhere randomness is needed so
// results are reproducible across platforms and standard libraries.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n >= 1, via rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace hms
