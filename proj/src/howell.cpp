#include "torlink/howell.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace torlink {
namespace {

bool is_zero(const IntegerRow& row) {
  return std::all_of(row.begin(), row.end(), [](const Integer& v) { return v == 0; });
}

void reduce(IntegerRow& row, const Integer& modulus) {
  for (auto& v : row) v = mod(v, modulus);
}

}  // namespace

std::size_t leading_column(const IntegerRow& row) {
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) return j;
  return row.size();
}

std::vector<IntegerRow> howell_form(std::vector<IntegerRow> rows, std::size_t cols,
                                    const Integer& modulus) {
  std::vector<IntegerRow> pool;
  for (auto& r : rows) {
    reduce(r, modulus);
    if (!is_zero(r)) pool.push_back(std::move(r));
  }

  std::vector<IntegerRow> result;
  for (std::size_t j = 0; j < cols; ++j) {
    std::optional<IntegerRow> pivot;
    for (auto& r : pool) {
      if (r[j] == 0) continue;
      if (!pivot) {
        pivot = std::move(r);
        r.assign(cols, Integer(0));
        continue;
      }
      // Unimodular 2x2 transform putting gcd into the pivot and zero into r.
      const Integer a = (*pivot)[j];
      const Integer b = r[j];
      ExtendedGcd e = extended_gcd(a, b);
      const Integer bg = b / e.g;
      const Integer ag = a / e.g;
      for (std::size_t k = j; k < cols; ++k) {
        Integer p = e.s * (*pivot)[k] + e.t * r[k];
        Integer q = bg * (*pivot)[k] - ag * r[k];
        (*pivot)[k] = mod(p, modulus);
        r[k] = mod(q, modulus);
      }
    }
    std::erase_if(pool, is_zero);
    if (!pivot) continue;
    if ((*pivot)[j] == 0) {
      // gcd collapsed to a multiple of the modulus; the row has moved right.
      if (!is_zero(*pivot)) pool.push_back(std::move(*pivot));
      continue;
    }

    const Integer unit = normalizing_unit((*pivot)[j], modulus);
    for (std::size_t k = j; k < cols; ++k) (*pivot)[k] = mod(unit * (*pivot)[k], modulus);
    const Integer d = (*pivot)[j];

    IntegerRow annihilated(cols, Integer(0));
    const Integer order = modulus / d;
    for (std::size_t k = j; k < cols; ++k) annihilated[k] = mod(order * (*pivot)[k], modulus);
    if (!is_zero(annihilated)) pool.push_back(std::move(annihilated));

    for (auto& h : result) {
      Integer q = floor_div(h[j], d);
      if (q == 0) continue;
      for (std::size_t k = j; k < cols; ++k) h[k] = mod(h[k] - q * (*pivot)[k], modulus);
    }
    result.push_back(std::move(*pivot));
  }
  return result;
}

}  // namespace torlink
