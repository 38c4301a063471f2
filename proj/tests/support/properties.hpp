#pragma once

// Randomised property checks shared by the unit suites and the acceptance
// runner. Each returns an empty string on success, otherwise the first
// counterexample.

#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "torlink/clasper.hpp"
#include "torlink/search/sweep.hpp"
#include "torlink/smith.hpp"

namespace props {

using namespace torlink;

inline std::string check_snf(const IntegerMatrix& a) {
  std::ostringstream why;
  SmithForm s = smith_normal_form(a);
  if (s.U * a * s.V != s.D) why << "U*A*V != D";
  if (abs(s.U.determinant()) != 1) why << " U not unimodular";
  if (abs(s.V.determinant()) != 1) why << " V not unimodular";
  if (s.U * s.left_inverse != IntegerMatrix::identity(a.rows())) why << " left_inverse wrong";
  const std::size_t k = std::min(a.rows(), a.cols());
  Integer running = 1;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) why << " off-diagonal entry";
  for (std::size_t i = 0; i < k; ++i) {
    const Integer& d = s.D(i, i);
    if (d < 0) why << " negative diagonal";
    if (i + 1 < k && !(d == 0 ? s.D(i + 1, i + 1) == 0 : s.D(i + 1, i + 1) % d == 0)) why << " chain broken";
    running *= d;
    if (running != oracle::determinantal_divisor(a, i + 1)) why << " determinantal divisor " << i + 1;
  }
  if (!why.str().empty()) why << " for A = " << a;
  return why.str();
}

inline std::string snf_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int i = 0; i < count; ++i) {
    IntegerMatrix a = oracle::random_matrix(rng, dim(rng), dim(rng), -20, 20);
    if (auto why = check_snf(a); !why.empty()) return why;
  }
  return {};
}

// Random nonsingular symmetric matrix with a small cokernel.
inline IntegerMatrix random_surgery_matrix(std::mt19937_64& rng, std::size_t max_n, long max_order) {
  std::uniform_int_distribution<std::size_t> dim(1, max_n);
  for (;;) {
    IntegerMatrix a = oracle::random_symmetric(rng, dim(rng), -6, 6);
    Integer d = abs(a.determinant());
    if (d >= 2 && d <= max_order) return a;
  }
}

inline std::string lambda2_suite(std::uint64_t seed, int forms, int samples) {
  std::mt19937_64 rng(seed);
  std::ostringstream why;
  for (int f = 0; f < forms; ++f) {
    IntegerMatrix a = random_surgery_matrix(rng, 4, 2000);
    LinkingPresentation pres = linking_form_from_matrix(a);
    const LinkingForm& lf = pres.form;
    const FiniteAbelianGroup& g = lf.group();
    if (g.order() != abs(a.determinant())) return "group order != |det A| for A = " + a.to_string();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.rows(); ++j)
        if (lf(pres.meridian_images[i], pres.meridian_images[j]) != oracle::negative_inverse_entry(a, i, j))
          return "meridian pairing differs from -A^{-1} for A = " + a.to_string();
    for (int s = 0; s < samples; ++s) {
      GroupElement x = oracle::random_element(rng, g), x2 = oracle::random_element(rng, g),
                   y = oracle::random_element(rng, g);
      if (lf(x, y) != lf(y, x)) return "asymmetric on " + a.to_string();
      if (lf(g.add(x, x2), y) != lf(x, y) + lf(x2, y)) return "not bilinear on " + a.to_string();
      if (!(g.exponent() * lf(x, y)).is_zero()) return "exponent does not annihilate on " + a.to_string();
      if (lf(x, y) != oracle::pairing(lf, x, y)) return "disagrees with Gram expansion on " + a.to_string();
    }
    for (std::size_t i = 0; i < g.rank(); ++i)
      for (std::size_t j = 0; j < g.rank(); ++j)
        if (!(g.factor(i) * lf.gram()[i][j]).is_zero()) return "t_i does not annihilate gram row on " + a.to_string();
  }
  return {};
}

// A random alternating form on g whose coefficients respect the orders.
inline TripleForm random_triple_form(std::mt19937_64& rng, const LinkingForm& f) {
  const FiniteAbelianGroup& g = f.group();
  std::map<GeneratorTriple, QmodZ> c;
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = i + 1; j < g.rank(); ++j)
      for (std::size_t k = j + 1; k < g.rank(); ++k) {
        Integer d = gcd(gcd(g.factor(i), g.factor(j)), g.factor(k));
        std::uniform_int_distribution<unsigned long> num(0, d.get_ui() - 1);
        c[{i, j, k}] = QmodZ(Integer(num(rng)), d);
      }
  return TripleForm(f, std::move(c));
}

inline GroupElement random_member(std::mt19937_64& rng, const Subgroup& l) {
  const FiniteAbelianGroup& g = l.group();
  GroupElement e = g.zero();
  std::uniform_int_distribution<long> k(-20, 20);
  for (const auto& gen : l.generators()) e = g.add(e, g.scale(Integer(k(rng)), gen));
  return e;
}

inline std::string triple_suite(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  // Isotropic triples inside Lagrangians of clasper base forms, where the
  // checked evaluator applies.
  for (auto [p, n] : {std::pair<unsigned, std::size_t>{2, 3}, {3, 3}, {5, 2}, {3, 2}}) {
    ClasperFamily fam = family(p, n);
    auto ls = enumerate_lagrangians(fam.base_form());
    std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
    for (int s = 0; s < samples; ++s) {
      TripleForm t = random_triple_form(rng, fam.base_form());
      const FiniteAbelianGroup& g = fam.base_form().group();
      const Subgroup& l = ls[pick(rng)];
      GroupElement x = random_member(rng, l), x2 = random_member(rng, l), y = random_member(rng, l),
                   z = random_member(rng, l);
      QmodZ v = evaluate_triple(t, x, y, z);
      if (v != oracle::triple_tensor(t.coefficients(), x, y, z)) return "evaluate_triple disagrees with tensor";
      if (evaluate_triple(t, y, x, z) != -v || evaluate_triple(t, x, z, y) != -v || evaluate_triple(t, z, y, x) != -v)
        return "not alternating under a swap";
      if (!evaluate_triple(t, x, x, z).is_zero() || !evaluate_triple(t, x, y, y).is_zero())
        return "repeated argument does not vanish";
      if (evaluate_triple(t, g.add(x, x2), y, z) != v + evaluate_triple(t, x2, y, z)) return "not trilinear";
      if (!(t.t() * v).is_zero()) return "t does not annihilate";
    }
  }
  // Mixed invariant factors, through the unchecked evaluator.
  for (auto factors : {std::vector<long>{2, 4, 4, 8}, {3, 9, 9, 27}, {2, 2, 6, 6, 12}}) {
    std::vector<Integer> fs(factors.begin(), factors.end());
    FiniteAbelianGroup g(fs);
    QmodZMatrix gram(g.rank(), std::vector<QmodZ>(g.rank()));
    for (std::size_t i = 0; i < g.rank(); ++i) gram[i][i] = QmodZ(1, g.factor(i));
    LinkingForm f(g, gram);
    for (int s = 0; s < samples; ++s) {
      TripleForm t = random_triple_form(rng, f);
      GroupElement x = oracle::random_element(rng, g), x2 = oracle::random_element(rng, g),
                   y = oracle::random_element(rng, g), z = oracle::random_element(rng, g);
      QmodZ v = t.evaluate_unchecked(x, y, z);
      if (v != oracle::triple_tensor(t.coefficients(), x, y, z)) return "tensor mismatch on mixed group";
      if (t.evaluate_unchecked(y, x, z) != -v || t.evaluate_unchecked(x, z, y) != -v) return "mixed: not alternating";
      if (!t.evaluate_unchecked(x, y, x).is_zero()) return "mixed: repeat does not vanish";
      if (t.evaluate_unchecked(x, y, g.add(z, x2)) != v + t.evaluate_unchecked(x, y, x2)) return "mixed: not trilinear";
      if (!(t.t() * v).is_zero()) return "mixed: t does not annihilate";
    }
  }
  return {};
}

inline std::string chunk_merge_suite(std::uint64_t seed) {
  using namespace torlink::search;
  ClasperFamily fam = family(2, 3);
  LagrangianFunctionalSet fs = lagrangian_functionals(fam);
  SweepOptions whole;
  whole.min_chunks = 16;
  SweepReport full = sweep(fam, fs, whole);
  if (full.chunk_count != 16) return "expected a 16-chunk partition, got " + std::to_string(full.chunk_count);
  if (!full.complete() || full.total_vectors != (1u << 20)) return "full sweep incomplete";

  std::vector<SweepReport> parts;
  for (std::uint64_t c = 0; c < 16; ++c) {
    SweepOptions o = whole;
    o.first_chunk = c;
    o.last_chunk = c + 1;
    parts.push_back(sweep(fam, fs, o));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(parts.begin(), parts.end(), rng);
  SweepReport merged = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) merged = merge(merged, parts[i]);
  if (!merged.complete()) return "merged report incomplete";
  if (merged.total_vectors != full.total_vectors || merged.exception_count != full.exception_count)
    return "merged totals differ";
  if (merged.checksum() != full.checksum()) return "merged checksum differs";
  if (merged.chunks != full.chunks) return "merged chunk records differ";
  return {};
}

}  // namespace props
