#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "support/properties.hpp"
#include "torlink/clasper.hpp"
#include "torlink/errors.hpp"
#include "torlink/linking.hpp"

using namespace torlink;

namespace {

LinkingForm diagonal_form(std::initializer_list<long> factors, std::initializer_list<long> numerators) {
  auto g = FiniteAbelianGroup::of(factors);
  QmodZMatrix gram(g.rank(), std::vector<QmodZ>(g.rank()));
  std::size_t i = 0;
  for (long a : numerators) {
    gram[i][i] = QmodZ(a, g.factor(i));
    ++i;
  }
  return LinkingForm(g, gram);
}

std::uint64_t split_count(std::uint64_t p, int half_rank) {
  std::uint64_t c = 1, q = 1;
  for (int i = 0; i < half_rank; ++i, q *= p) c *= q + 1;
  return c;
}

}  // namespace

TEST_CASE("QmodZ canonical values") {
  CHECK(QmodZ(-1, 3) == QmodZ(2, 3));
  CHECK(QmodZ(4, 6).to_string() == "2/3");
  CHECK(QmodZ(3, 3).to_string() == "0/1");
  CHECK(QmodZ(5, -3) == QmodZ(1, 3));
  CHECK(QmodZ(1, 3) + QmodZ(2, 3) == QmodZ());
  CHECK(QmodZ(1, 2) - QmodZ(3, 4) == QmodZ(3, 4));
  CHECK(-QmodZ(1, 3) == QmodZ(2, 3));
  CHECK(Integer(3) * QmodZ(1, 6) == QmodZ(1, 2));
  CHECK(QmodZ(2, 3).scaled_by(9) == 6);
  CHECK_THROWS_AS(QmodZ(1, 3).scaled_by(4), std::domain_error);
  CHECK(QmodZ::parse_canonical("2/3") == QmodZ(2, 3));
  CHECK(QmodZ::parse_canonical("0/1").is_zero());
  for (const char* bad : {"4/6", "3/3", "-1/3", "1/0", "0/3", "02/3", "2/03", "1", "", "a/b", "1/3 "})
    CHECK_THROWS_AS(QmodZ::parse_canonical(bad), std::invalid_argument);
  CHECK(QmodZ::parse("4/6") == QmodZ(2, 3));
  CHECK(QmodZ::parse("-1/3") == QmodZ(2, 3));
  // Formatting and canonical parsing are inverse on every value with small denominator.
  for (long b = 1; b <= 30; ++b)
    for (long a = 0; a < b; ++a) {
      QmodZ q(a, b);
      CHECK(QmodZ::parse_canonical(q.to_string()) == q);
    }
}

TEST_CASE("linking form from a surgery matrix: conventions") {
  auto minus3 = linking_form_from_matrix(IntegerMatrix{{-3}});
  CHECK(minus3.form.group() == FiniteAbelianGroup::of({3}));
  CHECK(minus3.form(minus3.meridian_images[0], minus3.meridian_images[0]) == QmodZ(1, 3));
  auto plus3 = linking_form_from_matrix(IntegerMatrix{{3}});
  CHECK(plus3.form(plus3.meridian_images[0], plus3.meridian_images[0]) == QmodZ(2, 3));
  auto trivial = linking_form_from_matrix(IntegerMatrix::identity(2));
  CHECK(trivial.form.group().rank() == 0);
  CHECK(trivial.form.gram().empty());
  CHECK_THROWS_AS(linking_form_from_matrix(IntegerMatrix{{1, 2}, {2, 4}}), SingularMatrix);
  CHECK_THROWS_AS(linking_form_from_matrix(IntegerMatrix{{1, 2}, {3, 4}}), NonSymmetric);

  auto m0 = linking_form_from_matrix(IntegerMatrix{{3, 0, 0, 0, 0, 0}, {0, 3, 0, 0, 0, 0}, {0, 0, 3, 0, 0, 0},
                                                   {0, 0, 0, -3, 0, 0}, {0, 0, 0, 0, -3, 0}, {0, 0, 0, 0, 0, -3}});
  CHECK(m0.form.group() == FiniteAbelianGroup::of({3, 3, 3, 3, 3, 3}));
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(m0.form(m0.meridian_images[i], m0.meridian_images[i]) == QmodZ(i < 3 ? 2 : 1, 3));
  CHECK(m0.form == m0_model().form());

  auto two = linking_form_from_matrix(IntegerMatrix{{2, 1}, {1, 2}});
  CHECK(two.form.group() == FiniteAbelianGroup::of({3}));
  CHECK(two.form(two.meridian_images[0], two.meridian_images[0]) == QmodZ(1, 3));
  CHECK(two.form(two.meridian_images[0], two.meridian_images[1]) == QmodZ(1, 3));
}

TEST_CASE("linking form validation") {
  auto g = FiniteAbelianGroup::of({3, 3});
  CHECK_THROWS_AS(LinkingForm(g, {{QmodZ(1, 3), QmodZ()}, {QmodZ(), QmodZ()}}), DegenerateForm);
  CHECK_THROWS_AS(LinkingForm(g, {{QmodZ(1, 3), QmodZ(1, 3)}, {QmodZ(), QmodZ(1, 3)}}), NonSymmetric);
  CHECK_THROWS_AS(LinkingForm(FiniteAbelianGroup::of({3}), {{QmodZ(1, 2)}}), InvalidData);
  CHECK_THROWS_AS(LinkingForm(g, {{QmodZ(1, 3)}}), InvalidData);
  // Z/4 with 2/4 = 1/2 pairs 2 with everything trivially: degenerate.
  CHECK_THROWS_AS(LinkingForm(FiniteAbelianGroup::of({4}), {{QmodZ(1, 2)}}), DegenerateForm);
  CHECK_NOTHROW(LinkingForm(FiniteAbelianGroup::of({4}), {{QmodZ(1, 4)}}));
  CHECK_THROWS_AS(eval_lambda2(LinkingForm(FiniteAbelianGroup::of({4}), {{QmodZ(1, 4)}}), GroupElement{{1, 0}},
                               GroupElement{{1}}),
                  GroupMismatch);
}

TEST_CASE("nondegeneracy agrees with brute-force injectivity of the adjoint") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<long>> shapes{{3, 3}, {2, 4}, {9}, {2, 2, 2}, {3, 9}, {4, 4}};
    const auto& f = shapes[trial % shapes.size()];
    FiniteAbelianGroup g(std::vector<Integer>(f.begin(), f.end()));
    QmodZMatrix gram(g.rank(), std::vector<QmodZ>(g.rank()));
    for (std::size_t i = 0; i < g.rank(); ++i)
      for (std::size_t j = i; j < g.rank(); ++j) {
        Integer d = gcd(g.factor(i), g.factor(j));
        std::uniform_int_distribution<unsigned long> num(0, d.get_ui() - 1);
        gram[i][j] = gram[j][i] = QmodZ(Integer(num(rng)), d);
      }
    // Brute force with the symmetric pairing that skips validation.
    bool injective = true;
    const auto elems = oracle::all_elements(g);
    for (const auto& x : elems) {
      if (x == g.zero()) continue;
      bool hit = false;
      for (const auto& y : elems) {
        QmodZ s;
        for (std::size_t i = 0; i < g.rank(); ++i)
          for (std::size_t j = 0; j < g.rank(); ++j) s += Integer(x.coords[i] * y.coords[j]) * gram[i][j];
        if (!s.is_zero()) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        injective = false;
        break;
      }
    }
    bool accepted = true;
    try {
      LinkingForm form(g, gram);
    } catch (const DegenerateForm&) {
      accepted = false;
    }
    CHECK(accepted == injective);
  }
}

TEST_CASE("lambda2 symmetry, bilinearity, annihilation and -A^{-1} on meridians") {
  CHECK(props::lambda2_suite(2, 150, 40) == "");
}

TEST_CASE("orthogonal complement duality against brute force") {
  std::mt19937_64 rng(9);
  std::vector<LinkingForm> forms{
      m0_model().form(), diagonal_form({3, 3}, {2, 1}), diagonal_form({4, 4}, {1, 3}),
      diagonal_form({2, 8}, {1, 3}), diagonal_form({3, 9, 9}, {1, 2, 4}),
      linking_form_from_matrix(IntegerMatrix{{4, 1, 0}, {1, -3, 2}, {0, 2, 5}}).form};
  for (const auto& f : forms) {
    const FiniteAbelianGroup& g = f.group();
    const auto elems = oracle::all_elements(g);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<GroupElement> gens;
      for (int k = trial % 4; k > 0; --k) gens.push_back(oracle::random_element(rng, g));
      Subgroup l = Subgroup::generated_by(g, gens);
      Subgroup perp = orthogonal_complement(f, l);
      std::set<GroupElement> brute;
      for (const auto& y : elems) {
        bool ok = true;
        for (const auto& x : gens) ok = ok && oracle::pairing(f, x, y).is_zero();
        if (ok) brute.insert(y);
      }
      CHECK(oracle::element_set(perp) == brute);
      CHECK(l.order() * perp.order() == g.order());
      CHECK(orthogonal_complement(f, perp) == l);
      CHECK(is_isotropic(f, l) == oracle::isotropic(f, oracle::element_set(l)));
      CHECK(is_lagrangian(f, l) == (perp == l));
    }
  }
  auto f = diagonal_form({3}, {1});
  CHECK(orthogonal_complement(f, Subgroup::trivial(f.group())) == Subgroup::whole(f.group()));
  CHECK(orthogonal_complement(f, Subgroup::whole(f.group())) == Subgroup::trivial(f.group()));
}

TEST_CASE("Lagrangians of (Z/3)^2 with diag(2/3, 1/3)") {
  auto f = diagonal_form({3, 3}, {2, 1});
  const auto& g = f.group();
  auto ls = enumerate_lagrangians(f);
  REQUIRE(ls.size() == 2);
  std::vector<Subgroup> expected{Subgroup::generated_by(g, std::vector<GroupElement>{g.element({1, 1})}),
                                 Subgroup::generated_by(g, std::vector<GroupElement>{g.element({1, 2})})};
  std::sort(expected.begin(), expected.end());
  CHECK(ls == expected);
  // All four subgroups of order 3, by hand.
  int isotropic = 0;
  for (auto v : {std::vector<long>{1, 0}, {0, 1}, {1, 1}, {1, 2}}) {
    Subgroup s = Subgroup::generated_by(g, std::vector<GroupElement>{g.element({v[0], v[1]})});
    CHECK(s.order() == 3);
    isotropic += is_lagrangian(f, s);
  }
  CHECK(isotropic == 2);
  CHECK(enumerate_lagrangians_exhaustive(f) == ls);
}

TEST_CASE("M0 form has 80 Lagrangians by two routes and the split count") {
  const M0Model m0 = m0_model();
  const LinkingForm& f = m0.form();
  auto fast = enumerate_lagrangians(f);
  auto slow = enumerate_lagrangians_exhaustive(f);
  CHECK(fast.size() == split_count(3, 3));
  CHECK(split_count(3, 3) == 80);
  CHECK(fast == slow);
  for (const auto& l : fast) {
    CHECK(is_lagrangian(f, l));
    for (const auto& a : l.generators())
      for (const auto& b : l.generators()) CHECK(f(a, b).is_zero());
  }
  std::set<Subgroup> unique(fast.begin(), fast.end());
  CHECK(unique.size() == fast.size());
}

TEST_CASE("Lagrangian enumeration against brute-force subgroup search") {
  std::vector<LinkingForm> forms{
      diagonal_form({3, 3}, {2, 1}),         diagonal_form({3, 3}, {1, 1}),
      diagonal_form({9}, {1}),               diagonal_form({4, 4}, {1, 3}),
      diagonal_form({2, 2, 2, 2}, {1, 1, 1, 1}), diagonal_form({3, 3, 3, 3}, {1, 2, 1, 2}),
      diagonal_form({5, 5}, {1, 4}),         diagonal_form({2, 8}, {1, 1}),
      diagonal_form({3}, {1}),               diagonal_form({4, 16}, {1, 7}),
      family(5, 1).base_form(),              family(2, 2).base_form(),
      LinkingForm(FiniteAbelianGroup::of({2, 2}), {{QmodZ(), QmodZ(1, 2)}, {QmodZ(1, 2), QmodZ()}}),
  };
  for (const auto& f : forms) {
    CAPTURE(f.group().to_string());
    std::set<std::set<GroupElement>> brute = oracle::lagrangians(f, 2);
    std::set<std::set<GroupElement>> got;
    for (const auto& l : enumerate_lagrangians(f)) got.insert(oracle::element_set(l));
    CHECK(got == brute);
    std::set<std::set<GroupElement>> slow;
    for (const auto& l : enumerate_lagrangians_exhaustive(f)) slow.insert(oracle::element_set(l));
    CHECK(slow == brute);
  }
}

TEST_CASE("split elementary forms hit the product count") {
  CHECK(enumerate_lagrangians(family(3, 2).base_form()).size() == split_count(3, 2));
  CHECK(enumerate_lagrangians(family(5, 2).base_form()).size() == split_count(5, 2));
  CHECK(enumerate_lagrangians(family(7, 1).base_form()).size() == split_count(7, 1));
  CHECK(enumerate_lagrangians(family(5, 3).base_form()).size() == split_count(5, 3));
  CHECK(enumerate_lagrangians(family(3, 4).base_form()).size() == split_count(3, 4));
}

TEST_CASE("global sign flip leaves Lagrangians unchanged") {
  std::mt19937_64 rng(4);
  std::vector<LinkingForm> forms{m0_model().form(), diagonal_form({4, 4}, {1, 3}), diagonal_form({9, 9}, {1, 8})};
  for (int i = 0; i < 10; ++i) forms.push_back(linking_form_from_matrix(props::random_surgery_matrix(rng, 3, 400)).form);
  for (const auto& f : forms) {
    if (f.group().order() > kExhaustiveLagrangianOrderLimit && f.group().elementary_prime() == 0) continue;
    auto ls = enumerate_lagrangians(f);
    CHECK(enumerate_lagrangians(f.negated()) == ls);
    for (const auto& l : ls) CHECK(is_lagrangian(f.negated(), l));
  }
}

TEST_CASE("non-square order has no Lagrangian; scope limits") {
  CHECK(enumerate_lagrangians(diagonal_form({3}, {1})).empty());
  CHECK(enumerate_lagrangians(diagonal_form({2, 4}, {1, 1})).empty());
  // (Z/2)^14 is elementary beyond the rank limit and too large for the exhaustive route.
  std::vector<Integer> twos(14, Integer(2));
  FiniteAbelianGroup g(twos);
  QmodZMatrix gram(14, std::vector<QmodZ>(14));
  for (std::size_t i = 0; i < 14; ++i) gram[i][i] = QmodZ(1, 2);
  CHECK_THROWS_AS(enumerate_lagrangians(LinkingForm(g, gram)), UnsupportedScope);
}
