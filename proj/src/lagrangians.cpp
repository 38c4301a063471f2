#include <algorithm>
#include <cstdint>
#include <set>

#include "torlink/errors.hpp"
#include "torlink/linking.hpp"

namespace torlink {
namespace {

// Echelon enumeration of totally isotropic h-dimensional subspaces of
// GF(p)^r, h = r/2. Rows are reduced echelon: 1 at the pivot, 0 at the
// other pivots, free entries at non-pivot columns right of the pivot.
class ElementaryEnumerator {
 public:
  ElementaryEnumerator(const LinkingForm& form, std::int64_t p,
                       const std::function<void(const Subgroup&)>& visit)
      : form_(form), p_(p), r_(form.group().rank()), h_(r_ / 2), visit_(visit) {
    const Integer n = form.group().exponent();
    gram_.assign(r_, std::vector<std::int64_t>(r_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) gram_[i][j] = to_int64(form.gram()[i][j].scaled_by(n));
    rows_.assign(h_, std::vector<std::int64_t>(r_, 0));
  }

  void run() {
    std::vector<std::size_t> pivots(h_);
    choose_pivots(pivots, 0, 0);
  }

 private:
  void choose_pivots(std::vector<std::size_t>& pivots, std::size_t k, std::size_t start) {
    if (k == h_) {
      pivots_ = pivots;
      fill_row(0);
      return;
    }
    for (std::size_t c = start; c + (h_ - k) <= r_; ++c) {
      pivots[k] = c;
      choose_pivots(pivots, k + 1, c + 1);
    }
  }

  std::int64_t pairing(const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& w) const {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < r_; ++i) {
      if (u[i] == 0) continue;
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r_; ++j) s += gram_[i][j] * w[j];
      acc = (acc + u[i] * (s % p_)) % p_;
    }
    return acc;
  }

  void fill_row(std::size_t i) {
    if (i == h_) {
      emit();
      return;
    }
    auto& row = rows_[i];
    std::fill(row.begin(), row.end(), 0);
    row[pivots_[i]] = 1;
    std::vector<std::size_t> free;
    for (std::size_t c = pivots_[i] + 1; c < r_; ++c)
      if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) free.push_back(c);

    for (;;) {
      bool ok = pairing(row, row) == 0;
      for (std::size_t k = 0; ok && k < i; ++k) ok = pairing(rows_[k], row) == 0;
      if (ok) fill_row(i + 1);
      // Odometer over the free entries.
      std::size_t f = 0;
      for (; f < free.size(); ++f) {
        if (++row[free[f]] < p_) break;
        row[free[f]] = 0;
      }
      if (f == free.size()) return;
    }
  }

  void emit() {
    std::vector<GroupElement> gens;
    for (const auto& row : rows_) {
      std::vector<Integer> c(row.begin(), row.end());
      gens.push_back(form_.group().element(std::move(c)));
    }
    visit_(Subgroup::generated_by(form_.group(), gens));
  }

  const LinkingForm& form_;
  std::int64_t p_;
  std::size_t r_, h_;
  const std::function<void(const Subgroup&)>& visit_;
  std::vector<std::vector<std::int64_t>> gram_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

bool square_order(const LinkingForm& form) { return exact_sqrt(form.group().order()) >= 0; }

}  // namespace

void for_each_elementary_lagrangian(const LinkingForm& form,
                                    const std::function<void(const Subgroup&)>& visit) {
  const FiniteAbelianGroup& g = form.group();
  const Integer p = g.elementary_prime();
  if (p == 0) throw UnsupportedScope("group " + g.to_string() + " is not elementary abelian");
  if (g.rank() > kElementaryLagrangianRankLimit)
    throw UnsupportedScope("elementary Lagrangian enumeration supports rank <= 12");
  if (p >= 65536) throw UnsupportedScope("elementary Lagrangian enumeration supports p < 65536");
  if (g.rank() % 2 != 0) return;
  ElementaryEnumerator(form, to_int64(p), visit).run();
}

std::vector<Subgroup> enumerate_lagrangians_exhaustive(const LinkingForm& form) {
  const FiniteAbelianGroup& g = form.group();
  if (g.order() > kExhaustiveLagrangianOrderLimit)
    throw UnsupportedScope("exhaustive Lagrangian search supports groups of order <= " +
                           std::to_string(kExhaustiveLagrangianOrderLimit));
  if (!square_order(form)) return {};
  const Integer target = exact_sqrt(g.order());

  std::vector<GroupElement> isotropic;
  g.for_each_element([&](const GroupElement& x) {
    if (x != g.zero() && form(x, x).is_zero()) isotropic.push_back(x);
  });

  std::set<Subgroup> seen;
  std::vector<Subgroup> stack{Subgroup::trivial(g)};
  std::vector<Subgroup> found;
  while (!stack.empty()) {
    Subgroup s = std::move(stack.back());
    stack.pop_back();
    if (s.order() == target) {
      if (is_lagrangian(form, s)) found.push_back(s);
      continue;
    }
    for (const auto& x : isotropic) {
      if (s.contains(x)) continue;
      bool orthogonal = true;
      for (const auto& gen : s.generators())
        if (!form(gen, x).is_zero()) {
          orthogonal = false;
          break;
        }
      if (!orthogonal) continue;
      std::vector<GroupElement> gens = s.generators();
      gens.push_back(x);
      Subgroup next = Subgroup::generated_by(g, gens);
      if (next.order() > target) continue;
      if (seen.insert(next).second) stack.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<Subgroup> enumerate_lagrangians(const LinkingForm& form) {
  const FiniteAbelianGroup& g = form.group();
  if (!square_order(form)) return {};
  if (g.elementary_prime() != 0 && g.rank() <= kElementaryLagrangianRankLimit &&
      g.elementary_prime() < 65536) {
    std::vector<Subgroup> out;
    for_each_elementary_lagrangian(form, [&](const Subgroup& l) { out.push_back(l); });
    std::sort(out.begin(), out.end());
    return out;
  }
  if (g.order() <= kExhaustiveLagrangianOrderLimit) return enumerate_lagrangians_exhaustive(form);
  throw UnsupportedScope("Lagrangian enumeration supports elementary abelian groups of rank <= 12 "
                         "or groups of order <= 10^4; got " + g.to_string());
}

}  // namespace torlink
