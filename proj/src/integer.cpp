#include "torlink/integer.hpp"

#include <stdexcept>

namespace torlink {

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return 0;
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("inverse_mod: not a unit");
  return r;
}

Integer normalizing_unit(const Integer& a, const Integer& n) {
  Integer g = gcd(a, n);
  if (g == 0 || g == n) return 1;
  Integer cofactor = n / g;
  Integer u = inverse_mod(mod(a / g, cofactor), cofactor);
  // u is only determined modulo n/g; lift it to a unit modulo n.
  while (gcd(u, n) != 1) u += cofactor;
  return mod(u, n);
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Integer exact_sqrt(const Integer& n) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return -1;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer: " + s);
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer: " + s);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

std::string to_string(const Integer& a) { return a.get_str(); }

std::int64_t to_int64(const Integer& a) {
  if (!mpz_fits_slong_p(a.get_mpz_t())) throw std::overflow_error("integer does not fit in int64");
  return a.get_si();
}

std::uint64_t to_uint64(const Integer& a) {
  if (a < 0 || !mpz_fits_ulong_p(a.get_mpz_t()))
    throw std::overflow_error("integer does not fit in uint64");
  return a.get_ui();
}

}  // namespace torlink
