#pragma once

#include <functional>
#include <vector>

#include "torlink/abelian.hpp"
#include "torlink/matrix.hpp"
#include "torlink/qmodz.hpp"

namespace torlink {

using QmodZMatrix = std::vector<std::vector<QmodZ>>;

// Symmetric nondegenerate Q/Z-valued bilinear form on a finite abelian group,
// given by its values on the invariant-factor generators.
class LinkingForm {
 public:
  LinkingForm() = default;
  // Validates symmetry, well-definedness (t_i * gram[i][j] = 0) and
  // nondegeneracy. Throws NonSymmetric, InvalidData or DegenerateForm.
  LinkingForm(FiniteAbelianGroup group, QmodZMatrix gram);

  const FiniteAbelianGroup& group() const { return group_; }
  const QmodZMatrix& gram() const { return gram_; }

  QmodZ operator()(const GroupElement& x, const GroupElement& y) const;

  // Values lambda(x, e_j) scaled by the exponent, as integers mod exponent.
  std::vector<Integer> adjoint_row(const GroupElement& x) const;

  // The same group with every Gram entry negated.
  LinkingForm negated() const;

  friend bool operator==(const LinkingForm& a, const LinkingForm& b) {
    return a.group_ == b.group_ && a.gram_ == b.gram_;
  }

 private:
  FiniteAbelianGroup group_;
  QmodZMatrix gram_;
  // gram scaled by the exponent; entries in [0, exponent).
  std::vector<std::vector<Integer>> scaled_;
};

struct LinkingPresentation {
  LinkingForm form;
  std::vector<GroupElement> meridian_images;
  std::vector<std::vector<Integer>> generator_lifts;
};

// lambda(mu_i, mu_j) = -(A^{-1})_{ij} mod Z on meridians, transported to the
// invariant-factor generators of coker A.
LinkingPresentation linking_form_from_matrix(const IntegerMatrix& a);

QmodZ eval_lambda2(const LinkingForm& form, const GroupElement& x, const GroupElement& y);

// {y : lambda(x, y) = 0 for all x in L}.
Subgroup orthogonal_complement(const LinkingForm& form, const Subgroup& l);

// Does lambda vanish on L x L?
bool is_isotropic(const LinkingForm& form, const Subgroup& l);

bool is_lagrangian(const LinkingForm& form, const Subgroup& l);

// Largest group order accepted by the exhaustive route of enumerate_lagrangians.
inline constexpr long kExhaustiveLagrangianOrderLimit = 10000;
// Largest rank accepted by the elementary (GF(p)) route.
inline constexpr std::size_t kElementaryLagrangianRankLimit = 12;

// Every Lagrangian, duplicate-free, sorted by canonical form. Elementary
// groups (Z/p)^r with r <= 12 use echelon enumeration over GF(p); other
// groups of order <= 10^4 use an exhaustive isotropic-subgroup search.
// Throws UnsupportedScope otherwise.
std::vector<Subgroup> enumerate_lagrangians(const LinkingForm& form);

// Streaming variant of the elementary route; visits in canonical order.
void for_each_elementary_lagrangian(const LinkingForm& form,
                                    const std::function<void(const Subgroup&)>& visit);

// Independent brute-force oracle for tests: every subgroup generated by
// isotropic elements, closed under the search, filtered by is_lagrangian.
std::vector<Subgroup> enumerate_lagrangians_exhaustive(const LinkingForm& form);

}  // namespace torlink
