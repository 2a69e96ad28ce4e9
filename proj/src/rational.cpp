#include "pseudoseg/rational.hpp"

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

Rat::Rat(long num, long den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  q_ = mpq_class(mpz_class(num), mpz_class(den));
  q_.canonicalize();
}

Rat Rat::parse(const std::string& num, const std::string& den) {
  mpz_class n;
  mpz_class d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
    throw InvalidInput("bad rational '" + num + "/" + den + "'");
  }
  if (d == 0) throw InvalidInput("rational with zero denominator");
  return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
  if (sgn(o.q_) == 0) throw InvalidInput("division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rat::hash() const {
  return std::hash<std::string>{}(q_.get_str());
}

long floor_long(const Rat& r) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return f.get_si();
}

long ceil_long(const Rat& r) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return c.get_si();
}

}  // namespace pseudoseg
