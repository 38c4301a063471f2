#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "support/properties.hpp"
#include "torlink/clasper.hpp"
#include "torlink/errors.hpp"

using namespace torlink;

TEST_CASE("family shape") {
  ClasperFamily f = family(3, 3);
  CHECK(f.curve_count() == 6);
  CHECK(f.parameter_dimension() == 20);
  CHECK(f.triples().front() == GeneratorTriple{0, 1, 2});
  CHECK(f.triples().back() == GeneratorTriple{3, 4, 5});
  CHECK(std::is_sorted(f.triples().begin(), f.triples().end()));
  for (std::size_t i = 0; i < f.triples().size(); ++i) CHECK(triple_index(f, f.triples()[i]) == i);
  CHECK_THROWS_AS(triple_index(f, {0, 0, 1}), InvalidParameters);
  const auto& gram = f.base_form().gram();
  for (std::size_t i = 0; i < 6; ++i) CHECK(gram[i][i] == QmodZ(i < 3 ? 2 : 1, 3));
  CHECK(family(2, 1).parameter_dimension() == 0);
  CHECK(family(5, 2).parameter_dimension() == 4);
  CHECK_THROWS_AS(family(4, 3), InvalidParameters);
  CHECK_THROWS_AS(family(1, 3), InvalidParameters);
  CHECK_THROWS_AS(family(3, 0), InvalidParameters);
  CHECK_THROWS_AS(lambda3_of(f, ParameterVector{{1, 2}}), DimensionMismatch);
}

TEST_CASE("lambda3_of: zero, units and linearity") {
  ClasperFamily f = family(3, 3);
  CHECK(lambda3_of(f, ParameterVector{std::vector<std::uint32_t>(20, 0)}).coefficients().empty());
  ParameterVector u = unit_parameter(f, {0, 1, 2});
  CHECK(u.v[0] == 1);
  TripleForm t = lambda3_of(f, u);
  CHECK(t.coefficient({0, 1, 2}) == QmodZ(1, 3));
  CHECK(t.coefficients().size() == 1);

  std::mt19937_64 rng(12);
  for (auto [p, n] : {std::pair<unsigned, std::size_t>{3, 3}, {2, 3}, {5, 2}, {7, 3}}) {
    ClasperFamily fam = family(p, n);
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    for (int trial = 0; trial < 50; ++trial) {
      ParameterVector a{std::vector<std::uint32_t>(fam.parameter_dimension())}, b = a, sum = a;
      for (std::size_t i = 0; i < a.v.size(); ++i) {
        a.v[i] = d(rng);
        b.v[i] = d(rng);
        sum.v[i] = (a.v[i] + b.v[i]) % p;
      }
      TripleForm ta = lambda3_of(fam, a), tb = lambda3_of(fam, b), ts = lambda3_of(fam, sum);
      for (const auto& tri : fam.triples()) CHECK(ts.coefficient(tri) == ta.coefficient(tri) + tb.coefficient(tri));
    }
  }
}

TEST_CASE("families with n <= 2 never obstruct") {
  std::mt19937_64 rng(13);
  for (auto [p, n] : {std::pair<unsigned, std::size_t>{2, 2}, {3, 2}, {5, 2}, {3, 1}}) {
    ClasperFamily fam = family(p, n);
    auto ls = enumerate_lagrangians(fam.base_form());
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    for (int trial = 0; trial < 20; ++trial) {
      ParameterVector v{std::vector<std::uint32_t>(fam.parameter_dimension())};
      for (auto& x : v.v) x = d(rng);
      TripleForm t = lambda3_of(fam, v);
      for (const auto& l : ls) CHECK(vanishes_on(t, l));
    }
  }
}

TEST_CASE("M0 model") {
  M0Model m = m0_model();
  const auto& g = m.form().group();
  CHECK(m.parameters == unit_parameter(m.family, {0, 1, 2}));
  CHECK(m["x"] == g.add(m["x1"], m["x2"]));
  CHECK(m["l2"] == g.add(g.subtract(m["y1"], m["z1"]), g.subtract(m["y2"], m["z2"])));
  CHECK(m["l3"] == g.add(g.add(m["x1"], m["y1"]), m["z1"]));
  CHECK(evaluate_triple(m.triple, m["x"], m["y"], m["z"]) == QmodZ(1, 3));
  CHECK(evaluate_triple(m.triple, m["l1"], m["l2"], m["l3"]).is_zero());
  Subgroup xyz = Subgroup::generated_by(g, std::vector{m["x"], m["y"], m["z"]});
  Subgroup ls = Subgroup::generated_by(g, std::vector{m["l1"], m["l2"], m["l3"]});
  CHECK(xyz.order() == 27);
  CHECK(ls.order() == 27);
  CHECK(is_lagrangian(m.form(), xyz));
  CHECK(is_lagrangian(m.form(), ls));
  CHECK(orthogonal_complement(m.form(), xyz) == xyz);
  // Worked by hand: lambda(l2, l2) = 2/3 + 2/3 + 1/3 + 1/3 = 0.
  CHECK(m.form()(m["l2"], m["l2"]).is_zero());
}

TEST_CASE("published M0 values survive the other framing assignment and the sign flip") {
  M0Model m = m0_model();
  IntegerMatrix swapped{{-3, 0, 0, 0, 0, 0}, {0, -3, 0, 0, 0, 0}, {0, 0, -3, 0, 0, 0},
                        {0, 0, 0, 3, 0, 0},  {0, 0, 0, 0, 3, 0},  {0, 0, 0, 0, 0, 3}};
  LinkingPresentation pres = linking_form_from_matrix(swapped);
  for (const LinkingForm& f : {pres.form, m.form().negated()}) {
    REQUIRE(f.group() == m.form().group());
    CHECK_FALSE(f == m.form());
    TripleForm t(f, m.triple.coefficients());
    const auto& g = f.group();
    CHECK(evaluate_triple(t, m["x"], m["y"], m["z"]) == QmodZ(1, 3));
    CHECK(evaluate_triple(t, m["l1"], m["l2"], m["l3"]).is_zero());
    Subgroup xyz = Subgroup::generated_by(g, std::vector{m["x"], m["y"], m["z"]});
    Subgroup ls = Subgroup::generated_by(g, std::vector{m["l1"], m["l2"], m["l3"]});
    CHECK(is_lagrangian(f, xyz));
    CHECK(is_lagrangian(f, ls));
    CHECK_FALSE(vanishes_on(t, xyz));
    CHECK(vanishes_on(t, ls));
    auto all = enumerate_lagrangians(f);
    CHECK(all.size() == 80);
  }
}
