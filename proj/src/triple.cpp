#include "torlink/triple.hpp"

#include <utility>

#include "torlink/errors.hpp"

namespace torlink {

void SurfaceIntersectionData::validate() const {
  if (t < 1) throw InvalidData("annihilator t must be >= 1");
  const std::size_t g = cy.size();
  if (cz.size() != g || dy.size() != g || dz.size() != g)
    throw InvalidData("intersection vectors must all have length g");
}

SurfaceIntersectionData SurfaceIntersectionData::swapped() const { return {t, cz, cy, dz, dy}; }

Integer matsumoto_term(const SurfaceIntersectionData& d) {
  d.validate();
  Integer sum = 0;
  for (std::size_t i = 0; i < d.genus(); ++i) sum += d.cy[i] * d.dz[i] - d.cz[i] * d.dy[i];
  return sum;
}

QmodZ lambda3_from_surface_data(const SurfaceIntersectionData& d) {
  return QmodZ(matsumoto_term(d), d.t);
}

Integer cup_product_eval(const CocycleVector& phi, const CocycleVector& psi) {
  const std::size_t g = phi.gamma_values.size();
  if (phi.delta_values.size() != g || psi.gamma_values.size() != g || psi.delta_values.size() != g)
    throw LengthMismatch("cocycles must be given on the same symplectic basis");
  Integer sum = 0;
  for (std::size_t i = 0; i < g; ++i)
    sum += phi.gamma_values[i] * psi.delta_values[i] - phi.delta_values[i] * psi.gamma_values[i];
  return sum;
}

CocycleVector phi_cocycle(const SurfaceIntersectionData& d) {
  d.validate();
  return {d.cy, d.dy};
}

CocycleVector psi_cocycle(const SurfaceIntersectionData& d) {
  d.validate();
  return {d.cz, d.dz};
}

QmodZ lambda3_from_cocycles(const CocycleVector& phi, const CocycleVector& psi, const Integer& t) {
  if (t < 1) throw InvalidData("annihilator t must be >= 1");
  return QmodZ(cup_product_eval(phi, psi), t);
}

// --- tensor model -------------------------------------------------------------

TripleForm::TripleForm(LinkingForm form, std::map<GeneratorTriple, QmodZ> coefficients)
    : form_(std::move(form)) {
  const FiniteAbelianGroup& g = form_.group();
  for (auto& [triple, value] : coefficients) {
    const auto [i, j, k] = triple;
    if (!(i < j && j < k)) throw InvalidData("triple indices must be strictly increasing");
    if (k >= g.rank()) throw InvalidData("triple index out of range");
    // Factors form a divisibility chain, so t_i is the smallest of the three.
    if (!(g.factor(i) * value).is_zero())
      throw InvalidData("coefficient " + value.to_string() + " on triple (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "," + std::to_string(k + 1) + ") is not annihilated by " +
                        g.factor(i).get_str());
    if (!value.is_zero()) coefficients_.emplace(triple, value);
  }
}

QmodZ TripleForm::coefficient(const GeneratorTriple& t) const {
  auto it = coefficients_.find(t);
  return it == coefficients_.end() ? QmodZ() : it->second;
}

QmodZ TripleForm::evaluate_unchecked(const GroupElement& x, const GroupElement& y, const GroupElement& z) const {
  const FiniteAbelianGroup& g = form_.group();
  g.check(x);
  g.check(y);
  g.check(z);
  const Integer& n = g.exponent();
  Integer acc = 0;
  for (const auto& [triple, value] : coefficients_) {
    const auto [i, j, k] = triple;
    // 3x3 determinant of the rows x, y, z restricted to columns i, j, k.
    Integer det = x.coords[i] * (y.coords[j] * z.coords[k] - y.coords[k] * z.coords[j]) -
                  x.coords[j] * (y.coords[i] * z.coords[k] - y.coords[k] * z.coords[i]) +
                  x.coords[k] * (y.coords[i] * z.coords[j] - y.coords[j] * z.coords[i]);
    acc += det * value.scaled_by(n);
  }
  return QmodZ(acc, n);
}

QmodZ evaluate_triple(const TripleForm& t, const GroupElement& x, const GroupElement& y,
                      const GroupElement& z) {
  const LinkingForm& f = t.form();
  const FiniteAbelianGroup& g = f.group();
  g.check(x);
  g.check(y);
  g.check(z);
  const std::pair<const char*, QmodZ> pairs[] = {{"(x,y)", f(x, y)}, {"(x,z)", f(x, z)}, {"(y,z)", f(y, z)}};
  for (const auto& [name, value] : pairs)
    if (!value.is_zero())
      throw NotPairwiseIsotropic(std::string("lambda_2") + name + " = " + value.to_string() +
                                 " is nonzero; lambda_3 is undefined");
  return t.evaluate_unchecked(x, y, z);
}

bool vanishes_on(const TripleForm& t, const Subgroup& l) {
  if (!(l.group() == t.form().group())) throw GroupMismatch("subgroup lives in a different group");
  if (!is_isotropic(t.form(), l)) throw NotIsotropicSubgroup("lambda_2 does not vanish on " + l.to_string());
  const auto& gens = l.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      for (std::size_t c = b + 1; c < gens.size(); ++c)
        if (!t.evaluate_unchecked(gens[a], gens[b], gens[c]).is_zero()) return false;
  return true;
}

}  // namespace torlink
