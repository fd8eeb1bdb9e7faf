#include "hms/numbers.hpp"

#include "hms/errors.hpp"

#include <cctype>

namespace hms {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  return Rat(num) / Rat(den);
}

Int isqrt_ceil(const Int& v) {
  if (v < 0) throw EvalError("isqrt_ceil of negative value");
  Int s = sqrt(v);
  if (s * s < v) ++s;
  return s;
}

Int rat_floor(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool valid_decimal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Int parse_int(const std::string& s) {
  if (!valid_decimal(s)) throw ParseError("not a decimal integer: '" + s + "'");
  return Int(s);
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return make_rat(num, den);
}

double rat_double(const Rat& r) { return r.convert_to<double>(); }

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hms
