#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "torlink/integer.hpp"

namespace torlink {

// An element of Q/Z held as a/b with 0 <= a < b and gcd(a, b) = 1; zero is 0/1.
class QmodZ {
 public:
  QmodZ() = default;
  // Any representative a/b with b != 0; reduced on construction.
  QmodZ(const Integer& numerator, const Integer& denominator);

  const Integer& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QmodZ operator-() const;
  QmodZ& operator+=(const QmodZ& o);
  QmodZ& operator-=(const QmodZ& o);
  friend QmodZ operator+(QmodZ a, const QmodZ& b) { return a += b; }
  friend QmodZ operator-(QmodZ a, const QmodZ& b) { return a -= b; }
  friend QmodZ operator*(const Integer& k, const QmodZ& a);

  // n * a/b as an integer in [0, n); requires b | n (throws std::domain_error).
  Integer scaled_by(const Integer& n) const;

  friend bool operator==(const QmodZ& a, const QmodZ& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const QmodZ& a, const QmodZ& b);

  // Always "a/b", including "0/1".
  std::string to_string() const;
  // Accepts only the canonical "a/b" spelling; throws std::invalid_argument.
  static QmodZ parse_canonical(std::string_view text);
  // Accepts any "a/b" or integer spelling and reduces it.
  static QmodZ parse(std::string_view text);

 private:
  Integer num_ = 0;
  Integer den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const QmodZ& q);

}  // namespace torlink
