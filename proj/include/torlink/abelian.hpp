#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "torlink/howell.hpp"
#include "torlink/integer.hpp"
#include "torlink/matrix.hpp"

namespace torlink {

// Coordinates with respect to the invariant-factor generators; coordinate i
// is kept in [0, t_i).
struct GroupElement {
  std::vector<Integer> coords;

  std::size_t rank() const { return coords.size(); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.coords < b.coords; }
};

std::string to_string(const GroupElement& e);

// Z/t_1 + ... + Z/t_r with t_i | t_{i+1} and every t_i >= 2.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Integer> invariant_factors);

  // Convenience for literals, e.g. FiniteAbelianGroup::of({3, 3}).
  static FiniteAbelianGroup of(std::initializer_list<long> factors);

  std::size_t rank() const { return factors_.size(); }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  const Integer& factor(std::size_t i) const { return factors_[i]; }
  const Integer& order() const { return order_; }
  // Largest invariant factor; annihilates every element. 1 for the trivial group.
  const Integer& exponent() const { return exponent_; }

  GroupElement zero() const;
  GroupElement generator(std::size_t i) const;
  // Reduces arbitrary integer coordinates into canonical range.
  GroupElement element(std::vector<Integer> coords) const;
  GroupElement element(std::initializer_list<long> coords) const;

  // Throws GroupMismatch unless e has this rank and canonical coordinates.
  void check(const GroupElement& e) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement subtract(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(const Integer& k, const GroupElement& a) const;

  // Visits every element in lexicographic coordinate order.
  void for_each_element(const std::function<void(const GroupElement&)>& visit) const;

  // Is every invariant factor the same prime p? Returns p, or 0.
  Integer elementary_prime() const;

  // Embedding into (Z/exponent)^r: coordinate i scaled by exponent/t_i.
  IntegerRow embed(const GroupElement& e) const;
  GroupElement unembed(const IntegerRow& row) const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

  std::string to_string() const;

 private:
  std::vector<Integer> factors_;
  Integer order_ = 1;
  Integer exponent_ = 1;
};

// A subgroup stored by the Howell form of its embedded generators, which is
// unique per subgroup; equality of subgroups is equality of that form.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup trivial(const FiniteAbelianGroup& g);
  static Subgroup whole(const FiniteAbelianGroup& g);
  static Subgroup generated_by(const FiniteAbelianGroup& g, std::span<const GroupElement> gens);

  const FiniteAbelianGroup& group() const { return group_; }
  const Integer& order() const { return order_; }

  // Canonical generators in group coordinates, one per Howell row.
  const std::vector<GroupElement>& generators() const { return generators_; }
  std::size_t generator_count() const { return generators_.size(); }
  // Canonical generator matrix (rows are generators).
  IntegerMatrix generator_matrix() const;

  bool contains(const GroupElement& e) const;
  bool is_subgroup_of(const Subgroup& other) const;

  // Every element exactly once.
  void for_each_element(const std::function<void(const GroupElement&)>& visit) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_ == b.group_ && a.howell_ == b.howell_;
  }
  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.howell_ < b.howell_; }

  std::string to_string() const;

 private:
  Subgroup(FiniteAbelianGroup g, std::vector<IntegerRow> howell);

  FiniteAbelianGroup group_;
  std::vector<IntegerRow> howell_;
  std::vector<Integer> row_orders_;
  std::vector<GroupElement> generators_;
  Integer order_ = 1;
};

// Z^n / A Z^n for square nonsingular A, with unit invariant factors dropped.
struct CokernelPresentation {
  FiniteAbelianGroup group;
  // Image of the i-th standard basis vector (the i-th meridian).
  std::vector<GroupElement> meridian_images;
  // Integer lift in Z^n of each invariant-factor generator.
  std::vector<std::vector<Integer>> generator_lifts;
};

CokernelPresentation cokernel_presentation(const IntegerMatrix& a);

// Kernel of the homomorphism G -> (Z/modulus)^k sending generator j of G
// to row j of `images` (r rows of k entries). Each image must be annihilated
// by the order of its generator.
Subgroup kernel_of_homomorphism(const FiniteAbelianGroup& g,
                                const std::vector<std::vector<Integer>>& images,
                                const Integer& modulus);

}  // namespace torlink
