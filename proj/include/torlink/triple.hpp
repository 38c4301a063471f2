#pragma once

#include <array>
#include <map>
#include <vector>

#include "torlink/linking.hpp"

namespace torlink {

// Intersection numbers of second-stage surfaces C_i, D_i (bounding t times
// the symplectic basis curves gamma_i, delta_i of a base surface) with the
// curves y and z: cy[i] = C_i.y, cz[i] = C_i.z, dy[i] = D_i.y, dz[i] = D_i.z.
struct SurfaceIntersectionData {
  Integer t = 1;
  std::vector<Integer> cy, cz, dy, dz;

  std::size_t genus() const { return cy.size(); }
  // Throws InvalidData on length mismatch or t < 1.
  void validate() const;
  // Exchanges the roles of y and z.
  SurfaceIntersectionData swapped() const;
};

// Values of a 1-cocycle on a symplectic basis (gamma_i, delta_i).
struct CocycleVector {
  std::vector<Integer> gamma_values, delta_values;
};

// (1/t) * sum_i (C_i.y)(D_i.z) - (C_i.z)(D_i.y) in Q/Z.
QmodZ lambda3_from_surface_data(const SurfaceIntersectionData& d);

// Cup product pairing on H^1 of a surface in symplectic coordinates:
// sum_i phi(gamma_i) psi(delta_i) - phi(delta_i) psi(gamma_i).
Integer cup_product_eval(const CocycleVector& phi, const CocycleVector& psi);

// The cocycles phi(a) = A.y and psi(a) = A.z read off surface data.
CocycleVector phi_cocycle(const SurfaceIntersectionData& d);
CocycleVector psi_cocycle(const SurfaceIntersectionData& d);

// (1/t) * (phi cup psi) in Q/Z; must agree with lambda3_from_surface_data.
QmodZ lambda3_from_cocycles(const CocycleVector& phi, const CocycleVector& psi, const Integer& t);

// The integer sum_i (C_i.Y)(D_i.Z) - (C_i.Z)(D_i.Y), without division.
Integer matsumoto_term(const SurfaceIntersectionData& d);

using GeneratorTriple = std::array<std::size_t, 3>;

// Alternating trilinear Q/Z-valued form on a linking-form group, stored by
// its coefficients on increasing generator triples i < j < k. Evaluation is
// sum_T c_T * det(x, y, z restricted to T).
class TripleForm {
 public:
  TripleForm() = default;
  // Validates indices (strictly increasing, in range) and that each
  // coefficient is annihilated by the orders of its three generators.
  TripleForm(LinkingForm form, std::map<GeneratorTriple, QmodZ> coefficients);

  const LinkingForm& form() const { return form_; }
  // The modelling denominator: the group exponent.
  const Integer& t() const { return form_.group().exponent(); }
  // Nonzero coefficients only.
  const std::map<GeneratorTriple, QmodZ>& coefficients() const { return coefficients_; }
  QmodZ coefficient(const GeneratorTriple& t) const;

  // Evaluation without the domain check; used by the oracles and tests of
  // the tensor model itself.
  QmodZ evaluate_unchecked(const GroupElement& x, const GroupElement& y, const GroupElement& z) const;

  friend bool operator==(const TripleForm& a, const TripleForm& b) {
    return a.form_ == b.form_ && a.coefficients_ == b.coefficients_;
  }

 private:
  LinkingForm form_;
  std::map<GeneratorTriple, QmodZ> coefficients_;
};

// lambda_3(x, y, z). Refuses triples whose pairwise linking does not vanish
// (NotPairwiseIsotropic names the failing pair).
QmodZ evaluate_triple(const TripleForm& t, const GroupElement& x, const GroupElement& y,
                      const GroupElement& z);

// Does lambda_3 vanish on every triple from L? Checks the increasing triples
// of L's canonical generators. Throws NotIsotropicSubgroup unless lambda_2
// vanishes on L x L.
bool vanishes_on(const TripleForm& t, const Subgroup& l);

}  // namespace torlink
