#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace pseudoseg {

/// Exact rational number, always kept in canonical reduced form with a
/// positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "p/q" or decimal integer strings of arbitrary size.
  static Rat parse(const std::string& num, const std::string& den = "1");

  const mpq_class& raw() const { return q_; }
  std::string num_str() const { return q_.get_num().get_str(); }
  std::string den_str() const { return q_.get_den().get_str(); }
  bool num_fits_int64() const { return q_.get_num().fits_slong_p(); }
  bool den_fits_int64() const { return q_.get_den().fits_slong_p(); }
  long num_long() const { return q_.get_num().get_si(); }
  long den_long() const { return q_.get_den().get_si(); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }
  int sign() const { return sgn(q_); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

/// Floor of a rational as an integer (assumes the result fits in long).
long floor_long(const Rat& r);
/// Ceiling of a rational as an integer (assumes the result fits in long).
long ceil_long(const Rat& r);

}  // namespace pseudoseg

template <>
struct std::hash<pseudoseg::Rat> {
  std::size_t operator()(const pseudoseg::Rat& r) const { return r.hash(); }
};
