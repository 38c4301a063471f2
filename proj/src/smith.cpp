#include "torlink/smith.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace torlink {
namespace {

struct Position {
  std::size_t row, col;
};

// Smallest-magnitude nonzero entry of the trailing block starting at (s, s).
std::optional<Position> smallest_entry(const IntegerMatrix& d, std::size_t s) {
  std::optional<Position> best;
  Integer best_abs;
  for (std::size_t i = s; i < d.rows(); ++i)
    for (std::size_t j = s; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer m = abs(d(i, j));
      if (!best || m < best_abs) {
        best = Position{i, j};
        best_abs = m;
      }
    }
  return best;
}

class Reducer {
 public:
  explicit Reducer(const IntegerMatrix& a)
      : d_(a),
        u_(IntegerMatrix::identity(a.rows())),
        v_(IntegerMatrix::identity(a.cols())),
        u_inv_(IntegerMatrix::identity(a.rows())) {}

  SmithForm run() {
    const std::size_t n = std::min(d_.rows(), d_.cols());
    for (std::size_t s = 0; s < n; ++s) {
      if (!settle_pivot(s)) break;
      if (d_(s, s) < 0) negate_row(s);
    }
    return {std::move(u_), std::move(d_), std::move(v_), std::move(u_inv_)};
  }

 private:
  // Row operations are mirrored on U and, inverted, on U^{-1}.
  void swap_rows(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    u_.swap_rows(a, b);
    u_inv_.swap_cols(a, b);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& f) {
    d_.add_row_multiple(dst, src, f);
    u_.add_row_multiple(dst, src, f);
    u_inv_.add_col_multiple(src, dst, -f);
  }
  void negate_row(std::size_t i) {
    d_.negate_row(i);
    u_.negate_row(i);
    u_inv_.negate_col(i);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    v_.swap_cols(a, b);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& f) {
    d_.add_col_multiple(dst, src, f);
    v_.add_col_multiple(dst, src, f);
  }

  // Clears row and column s around a pivot dividing the whole trailing block.
  // Returns false when the trailing block is zero.
  bool settle_pivot(std::size_t s) {
    for (;;) {
      auto pos = smallest_entry(d_, s);
      if (!pos) return false;
      swap_rows(s, pos->row);
      swap_cols(s, pos->col);
      const Integer pivot = d_(s, s);

      bool residue = false;
      for (std::size_t i = s + 1; i < d_.rows(); ++i) {
        if (d_(i, s) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_(i, s).get_mpz_t(), pivot.get_mpz_t());
        add_row_multiple(i, s, -q);
        residue = residue || d_(i, s) != 0;
      }
      for (std::size_t j = s + 1; j < d_.cols(); ++j) {
        if (d_(s, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_(s, j).get_mpz_t(), pivot.get_mpz_t());
        add_col_multiple(j, s, -q);
        residue = residue || d_(s, j) != 0;
      }
      if (residue) continue;

      // Divisibility chain: fold a row holding a non-multiple into row s.
      bool divides_all = true;
      for (std::size_t i = s + 1; i < d_.rows() && divides_all; ++i)
        for (std::size_t j = s + 1; j < d_.cols(); ++j)
          if (!mpz_divisible_p(d_(i, j).get_mpz_t(), pivot.get_mpz_t())) {
            add_row_multiple(s, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) return true;
    }
  }

  IntegerMatrix d_, u_, v_, u_inv_;
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) { return Reducer(a).run(); }

}  // namespace torlink
