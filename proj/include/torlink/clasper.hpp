#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "torlink/triple.hpp"

namespace torlink {

// Clasper parameters: one entry in Z/p per increasing curve triple, in
// lexicographic triple order.
struct ParameterVector {
  std::vector<std::uint32_t> v;
  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;
};

// The family {M_v} obtained from n copies of L(p,1) # -L(p,1) by clasper
// surgeries on triples of the 2n surgery curves.
//
// Curves are ordered a_1..a_n (framing +p, self-linking -1/p) followed by
// b_1..b_n (framing -p, self-linking +1/p); for the n = 3 model these are
// x_1, y_1, z_1, x_2, y_2, z_2. One unit of clasper surgery on curve triple
// T adds 1/p to lambda_3 on the meridian triple T. Any other unit
// normalisation is a reparameterisation of v.
class ClasperFamily {
 public:
  ClasperFamily(std::uint32_t p, std::size_t n);

  std::uint32_t p() const { return p_; }
  std::size_t blocks() const { return n_; }
  std::size_t curve_count() const { return 2 * n_; }
  // C(2n, 3).
  std::size_t parameter_dimension() const { return triples_.size(); }
  const LinkingForm& base_form() const { return base_form_; }
  // Increasing curve triples in lexicographic order; index = parameter slot.
  const std::vector<GeneratorTriple>& triples() const { return triples_; }

  // Throws DimensionMismatch on a wrong-length vector.
  void check(const ParameterVector& v) const;

 private:
  std::uint32_t p_;
  std::size_t n_;
  LinkingForm base_form_;
  std::vector<GeneratorTriple> triples_;
};

// Throws InvalidParameters unless p is prime and n >= 1.
ClasperFamily family(std::uint32_t p, std::size_t n);

TripleForm lambda3_of(const ClasperFamily& fam, const ParameterVector& v);

// Index of an increasing triple in the family's parameter order.
std::size_t triple_index(const ClasperFamily& fam, const GeneratorTriple& t);

ParameterVector unit_parameter(const ClasperFamily& fam, const GeneratorTriple& t);

struct M0Model {
  ClasperFamily family;
  ParameterVector parameters;
  TripleForm triple;
  // x1, y1, z1, x2, y2, z2, x, y, z, l1, l2, l3.
  std::map<std::string, GroupElement> elements;

  const LinkingForm& form() const { return triple.form(); }
  const GroupElement& operator[](const std::string& name) const { return elements.at(name); }
};

// Family (3, 3) with a single clasper on (x1, y1, z1): the minimal-support
// parameter reproducing lambda_3(x,y,z) = 1/3 and lambda_3(l1,l2,l3) = 0.
M0Model m0_model();

}  // namespace torlink
