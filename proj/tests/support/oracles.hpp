#pragma once

// Brute-force reference computations used to check the library. Everything
// here works element by element, so it is only usable on small groups.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "torlink/linking.hpp"
#include "torlink/triple.hpp"

namespace oracle {

using torlink::FiniteAbelianGroup;
using torlink::GroupElement;
using torlink::Integer;
using torlink::IntegerMatrix;
using torlink::QmodZ;

inline std::set<GroupElement> closure(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> seen{g.zero()};
  std::vector<GroupElement> frontier{g.zero()};
  while (!frontier.empty()) {
    GroupElement e = frontier.back();
    frontier.pop_back();
    for (const auto& s : gens) {
      GroupElement f = g.add(e, s);
      if (seen.insert(f).second) frontier.push_back(f);
    }
  }
  return seen;
}

inline std::vector<GroupElement> all_elements(const FiniteAbelianGroup& g) {
  std::vector<GroupElement> out;
  g.for_each_element([&](const GroupElement& e) { out.push_back(e); });
  return out;
}

// sum_ij x_i y_j gram_ij, straight from the Gram matrix.
inline QmodZ pairing(const torlink::LinkingForm& f, const GroupElement& x, const GroupElement& y) {
  QmodZ s;
  for (std::size_t i = 0; i < x.rank(); ++i)
    for (std::size_t j = 0; j < y.rank(); ++j) s += Integer(x.coords[i] * y.coords[j]) * f.gram()[i][j];
  return s;
}

// Full alternating expansion over ordered index triples.
inline QmodZ triple_tensor(const std::map<torlink::GeneratorTriple, QmodZ>& coeffs, const GroupElement& x,
                           const GroupElement& y, const GroupElement& z) {
  QmodZ s;
  const std::size_t r = x.rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (i == j || j == k || i == k) continue;
        std::array<std::size_t, 3> idx{i, j, k};
        int sign = 1;
        for (int a = 0; a < 3; ++a)
          for (int b = a + 1; b < 3; ++b)
            if (idx[a] > idx[b]) sign = -sign;
        std::sort(idx.begin(), idx.end());
        auto it = coeffs.find(idx);
        if (it == coeffs.end()) continue;
        s += Integer(x.coords[i] * y.coords[j] * z.coords[k] * sign) * it->second;
      }
  return s;
}

// Every subgroup generated by at most `max_gens` elements, as element sets.
inline std::set<std::set<GroupElement>> small_subgroups(const FiniteAbelianGroup& g, int max_gens) {
  const auto elems = all_elements(g);
  std::set<std::set<GroupElement>> out{{g.zero()}};
  std::set<std::set<GroupElement>> layer = out;
  for (int k = 0; k < max_gens; ++k) {
    std::set<std::set<GroupElement>> next;
    for (const auto& s : layer)
      for (const auto& e : elems) {
        if (s.contains(e)) continue;
        std::vector<GroupElement> gens(s.begin(), s.end());
        gens.push_back(e);
        next.insert(closure(g, gens));
      }
    out.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline bool isotropic(const torlink::LinkingForm& f, const std::set<GroupElement>& s) {
  for (const auto& a : s)
    for (const auto& b : s)
      if (!pairing(f, a, b).is_zero()) return false;
  return true;
}

inline std::set<std::set<GroupElement>> lagrangians(const torlink::LinkingForm& f, int max_gens) {
  std::set<std::set<GroupElement>> out;
  const Integer order = f.group().order();
  for (const auto& s : small_subgroups(f.group(), max_gens))
    if (Integer(s.size()) * Integer(s.size()) == order && isotropic(f, s)) out.insert(s);
  return out;
}

inline std::set<GroupElement> element_set(const torlink::Subgroup& s) {
  std::set<GroupElement> out;
  s.for_each_element([&](const GroupElement& e) { out.insert(e); });
  return out;
}

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline IntegerMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

inline GroupElement random_element(std::mt19937_64& rng, const FiniteAbelianGroup& g) {
  std::vector<Integer> c;
  for (const auto& t : g.invariant_factors()) {
    std::uniform_int_distribution<unsigned long> d(0, t.get_ui() - 1);
    c.push_back(Integer(d(rng)));
  }
  return g.element(c);
}

// gcd of all k x k minors (the k-th determinantal divisor).
inline Integer determinantal_divisor(const IntegerMatrix& a, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Integer g = 0;
  auto next = [](std::vector<std::size_t>& c, std::size_t n) {
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] < n - c.size() + i) {
        ++c[i];
        for (std::size_t j = i + 1; j < c.size(); ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      IntegerMatrix m(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rows[i], cols[j]);
      g = torlink::gcd(g, m.determinant());
    } while (next(cols, a.cols()));
  } while (next(rows, a.rows()));
  return g;
}

// Adjugate-based inverse entries: -(A^{-1})_ij mod 1.
inline QmodZ negative_inverse_entry(const IntegerMatrix& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.rows();
  IntegerMatrix minor(n - 1, n - 1);
  for (std::size_t r = 0, rr = 0; r < n; ++r) {
    if (r == j) continue;
    for (std::size_t c = 0, cc = 0; c < n; ++c) {
      if (c == i) continue;
      minor(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  Integer cof = minor.determinant();
  if ((i + j) % 2) cof = -cof;
  return QmodZ(-cof, a.determinant());
}

}  // namespace oracle
