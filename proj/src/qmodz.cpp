#include "torlink/qmodz.hpp"

#include <ostream>
#include <stdexcept>

namespace torlink {

QmodZ::QmodZ(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw std::invalid_argument("QmodZ: zero denominator");
  Integer a = numerator;
  Integer b = denominator;
  if (b < 0) {
    a = -a;
    b = -b;
  }
  a = mod(a, b);
  Integer g = gcd(a, b);
  num_ = a / g;
  den_ = b / g;
}

QmodZ QmodZ::operator-() const { return QmodZ(-num_, den_); }

QmodZ& QmodZ::operator+=(const QmodZ& o) {
  *this = QmodZ(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

QmodZ& QmodZ::operator-=(const QmodZ& o) {
  *this = QmodZ(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  return *this;
}

QmodZ operator*(const Integer& k, const QmodZ& a) { return QmodZ(k * a.num_, a.den_); }

Integer QmodZ::scaled_by(const Integer& n) const {
  if (!mpz_divisible_p(n.get_mpz_t(), den_.get_mpz_t()))
    throw std::domain_error("QmodZ: denominator does not divide scale");
  return num_ * (n / den_);
}

bool operator<(const QmodZ& a, const QmodZ& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

std::string QmodZ::to_string() const { return num_.get_str() + "/" + den_.get_str(); }

QmodZ QmodZ::parse_canonical(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw std::invalid_argument("expected a/b, got \"" + std::string(text) + "\"");
  const std::string_view a = text.substr(0, slash);
  const std::string_view b = text.substr(slash + 1);
  for (std::string_view part : {a, b})
    if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos ||
        (part.size() > 1 && part[0] == '0'))
      throw std::invalid_argument("non-canonical rational \"" + std::string(text) + "\"");
  Integer num = parse_integer(a);
  Integer den = parse_integer(b);
  if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  QmodZ q(num, den);
  if (q.num_ != num || q.den_ != den)
    throw std::invalid_argument("non-canonical rational \"" + std::string(text) + "\" (canonical: " +
                                q.to_string() + ")");
  return q;
}

QmodZ QmodZ::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return QmodZ(parse_integer(text), 1);
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return QmodZ(parse_integer(text.substr(0, slash)), den);
}

std::ostream& operator<<(std::ostream& os, const QmodZ& q) { return os << q.to_string(); }

}  // namespace torlink
