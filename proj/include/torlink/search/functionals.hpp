#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torlink/clasper.hpp"

namespace torlink::search {

// For every Lagrangian L of a clasper family and every increasing triple tau
// of L's canonical basis, the linear functional w_{L,tau} on parameter space
// with lambda3_of(v)(tau) = (w_{L,tau} . v) / p. Its coordinate at curve
// triple T is the 3x3 minor of the basis triple at columns T, mod p.
struct LagrangianFunctionalSet {
  std::uint32_t p = 0;
  std::size_t parameter_dimension = 0;
  std::vector<Subgroup> lagrangians;
  std::size_t rows_per_lagrangian = 0;
  // Row (l, tau) lives at l * rows_per_lagrangian + tau; entries in [0, p).
  std::vector<std::vector<std::uint32_t>> rows;

  std::size_t lagrangian_count() const { return lagrangians.size(); }
  const std::vector<std::uint32_t>& row(std::size_t lagrangian, std::size_t tau) const {
    return rows[lagrangian * rows_per_lagrangian + tau];
  }
  // w . v mod p.
  std::uint32_t apply(std::size_t lagrangian, std::size_t tau, const ParameterVector& v) const;
  bool vanishes(std::size_t lagrangian, const ParameterVector& v) const;
};

LagrangianFunctionalSet lagrangian_functionals(const ClasperFamily& fam);

// Test order for check_single. Successful Lagrangians move to the front, so
// a long run of related queries usually hits on the first probe.
class WitnessOrder {
 public:
  explicit WitnessOrder(std::size_t count);
  const std::vector<std::uint32_t>& order() const { return order_; }
  void promote(std::size_t position);

 private:
  std::vector<std::uint32_t> order_;
};

// Index of a Lagrangian on which lambda3_of(v) vanishes, or nullopt (a
// manifold in the family with no vanishing Lagrangian). Without an order the
// first hit in canonical order is returned.
std::optional<std::size_t> check_single(const LagrangianFunctionalSet& fs, const ParameterVector& v,
                                        WitnessOrder* order = nullptr);

}  // namespace torlink::search
