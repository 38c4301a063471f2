#include "torlink/search/functionals.hpp"

#include <numeric>

#include "torlink/errors.hpp"

namespace torlink::search {

std::uint32_t LagrangianFunctionalSet::apply(std::size_t lagrangian, std::size_t tau,
                                             const ParameterVector& v) const {
  if (v.v.size() != parameter_dimension)
    throw DimensionMismatch("parameter vector has length " + std::to_string(v.v.size()) + ", expected " +
                            std::to_string(parameter_dimension));
  const auto& w = row(lagrangian, tau);
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w.size(); ++k) acc = (acc + std::uint64_t{w[k]} * (v.v[k] % p)) % p;
  return static_cast<std::uint32_t>(acc);
}

bool LagrangianFunctionalSet::vanishes(std::size_t lagrangian, const ParameterVector& v) const {
  for (std::size_t tau = 0; tau < rows_per_lagrangian; ++tau)
    if (apply(lagrangian, tau, v) != 0) return false;
  return true;
}

LagrangianFunctionalSet lagrangian_functionals(const ClasperFamily& fam) {
  LagrangianFunctionalSet fs;
  fs.p = fam.p();
  fs.parameter_dimension = fam.parameter_dimension();
  fs.lagrangians = enumerate_lagrangians(fam.base_form());
  const std::size_t h = fam.blocks();
  fs.rows_per_lagrangian = h < 3 ? 0 : h * (h - 1) * (h - 2) / 6;
  const Integer p(fam.p());

  for (const auto& l : fs.lagrangians) {
    const auto& b = l.generators();
    for (std::size_t a = 0; a < b.size(); ++a)
      for (std::size_t c = a + 1; c < b.size(); ++c)
        for (std::size_t e = c + 1; e < b.size(); ++e) {
          const auto& x = b[a].coords;
          const auto& y = b[c].coords;
          const auto& z = b[e].coords;
          std::vector<std::uint32_t> w;
          w.reserve(fs.parameter_dimension);
          for (const auto& [i, j, k] : fam.triples()) {
            Integer det = x[i] * (y[j] * z[k] - y[k] * z[j]) - x[j] * (y[i] * z[k] - y[k] * z[i]) +
                          x[k] * (y[i] * z[j] - y[j] * z[i]);
            w.push_back(static_cast<std::uint32_t>(mod(det, p).get_ui()));
          }
          fs.rows.push_back(std::move(w));
        }
  }
  return fs;
}

WitnessOrder::WitnessOrder(std::size_t count) : order_(count) {
  std::iota(order_.begin(), order_.end(), 0u);
}

void WitnessOrder::promote(std::size_t position) {
  if (position == 0) return;
  const std::uint32_t hit = order_[position];
  std::copy_backward(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(position),
                     order_.begin() + static_cast<std::ptrdiff_t>(position) + 1);
  order_[0] = hit;
}

std::optional<std::size_t> check_single(const LagrangianFunctionalSet& fs, const ParameterVector& v,
                                        WitnessOrder* order) {
  if (v.v.size() != fs.parameter_dimension)
    throw DimensionMismatch("parameter vector has length " + std::to_string(v.v.size()) + ", expected " +
                            std::to_string(fs.parameter_dimension));
  const std::size_t count = fs.lagrangian_count();
  for (std::size_t pos = 0; pos < count; ++pos) {
    const std::size_t l = order ? order->order()[pos] : pos;
    if (fs.vanishes(l, v)) {
      if (order) order->promote(pos);
      return l;
    }
  }
  return std::nullopt;
}

}  // namespace torlink::search
