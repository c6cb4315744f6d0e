#pragma once
// Exact rationals on top of GMP. Everything in the library is mpq_class;
// the helpers here exist because mpq_class(p,q) does not canonicalize.

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>

namespace tri {

using Rat = mpq_class;

inline Rat frac(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// "p" or "p/q", canonical form.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline std::optional<Rat> parse_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  mpq_class r;
  if (r.set_str(s, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return Rat(r);
}

}  // namespace tri
