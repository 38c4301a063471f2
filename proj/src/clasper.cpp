#include "torlink/clasper.hpp"

#include <algorithm>

#include "torlink/errors.hpp"

namespace torlink {
namespace {

LinkingForm lens_sum_form(std::uint32_t p, std::size_t n) {
  std::vector<Integer> factors(2 * n, Integer(p));
  QmodZMatrix gram(2 * n, std::vector<QmodZ>(2 * n));
  for (std::size_t i = 0; i < 2 * n; ++i) gram[i][i] = QmodZ(i < n ? -1 : 1, p);
  return LinkingForm(FiniteAbelianGroup(std::move(factors)), std::move(gram));
}

}  // namespace

ClasperFamily::ClasperFamily(std::uint32_t p, std::size_t n) : p_(p), n_(n) {
  if (!is_prime(Integer(p))) throw InvalidParameters("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw InvalidParameters("n must be >= 1");
  base_form_ = lens_sum_form(p, n);
  const std::size_t c = 2 * n;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j)
      for (std::size_t k = j + 1; k < c; ++k) triples_.push_back({i, j, k});
}

void ClasperFamily::check(const ParameterVector& v) const {
  if (v.v.size() != parameter_dimension())
    throw DimensionMismatch("parameter vector has length " + std::to_string(v.v.size()) + ", family needs " +
                            std::to_string(parameter_dimension()));
}

ClasperFamily family(std::uint32_t p, std::size_t n) { return ClasperFamily(p, n); }

TripleForm lambda3_of(const ClasperFamily& fam, const ParameterVector& v) {
  fam.check(v);
  std::map<GeneratorTriple, QmodZ> coeffs;
  for (std::size_t i = 0; i < v.v.size(); ++i)
    if (v.v[i] % fam.p() != 0) coeffs.emplace(fam.triples()[i], QmodZ(v.v[i], fam.p()));
  return TripleForm(fam.base_form(), std::move(coeffs));
}

std::size_t triple_index(const ClasperFamily& fam, const GeneratorTriple& t) {
  const auto& ts = fam.triples();
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.end() || *it != t) throw InvalidParameters("not an increasing curve triple of this family");
  return static_cast<std::size_t>(it - ts.begin());
}

ParameterVector unit_parameter(const ClasperFamily& fam, const GeneratorTriple& t) {
  ParameterVector v{std::vector<std::uint32_t>(fam.parameter_dimension(), 0)};
  v.v[triple_index(fam, t)] = 1;
  return v;
}

M0Model m0_model() {
  ClasperFamily fam = family(3, 3);
  ParameterVector v = unit_parameter(fam, {0, 1, 2});
  TripleForm triple = lambda3_of(fam, v);
  const FiniteAbelianGroup& g = fam.base_form().group();

  std::map<std::string, GroupElement> e;
  e["x1"] = g.element({1, 0, 0, 0, 0, 0});
  e["y1"] = g.element({0, 1, 0, 0, 0, 0});
  e["z1"] = g.element({0, 0, 1, 0, 0, 0});
  e["x2"] = g.element({0, 0, 0, 1, 0, 0});
  e["y2"] = g.element({0, 0, 0, 0, 1, 0});
  e["z2"] = g.element({0, 0, 0, 0, 0, 1});
  e["x"] = g.add(e["x1"], e["x2"]);
  e["y"] = g.add(e["y1"], e["y2"]);
  e["z"] = g.add(e["z1"], e["z2"]);
  e["l1"] = g.add(g.add(e["x2"], e["y2"]), e["z2"]);
  e["l2"] = g.subtract(g.add(g.subtract(e["y1"], e["z1"]), e["y2"]), e["z2"]);
  e["l3"] = g.add(g.add(e["x1"], e["y1"]), e["z1"]);
  return {std::move(fam), std::move(v), std::move(triple), std::move(e)};
}

}  // namespace torlink
