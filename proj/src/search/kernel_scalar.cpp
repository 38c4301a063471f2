#include "torlink/search/kernel.hpp"

namespace torlink::search {
namespace {

// With no rows (Lagrangian rank < 3) every Lagrangian counts as vanishing.
std::uint32_t count_vanishing(const KernelTable& t, const std::uint8_t* vals) {
  std::uint32_t count = 0;
  for (std::size_t j = 0; j < t.lagrangians; ++j) {
    bool zero = true;
    for (std::size_t r = 0; r < t.rows_per_lagrangian && zero; ++r) zero = vals[r * t.block_lanes + j] == 0;
    count += zero;
  }
  return count;
}

void scan(const KernelTable& t, std::uint8_t* vals, std::span<const std::uint16_t> steps, std::uint64_t base,
          ScanAccumulator& acc) {
  const std::uint8_t p = static_cast<std::uint8_t>(t.p);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::uint8_t* col = t.columns.data() + std::size_t{steps[i]} * t.lanes;
    for (std::size_t lane = 0; lane < t.lanes; ++lane) {
      std::uint8_t v = static_cast<std::uint8_t>(vals[lane] + col[lane]);
      vals[lane] = v >= p ? static_cast<std::uint8_t>(v - p) : v;
    }
    const std::uint32_t hits = count_vanishing(t, vals);
    acc.vanishing_pairs += hits;
    if (hits == 0) {
      ++acc.exceptions;
      acc.exception_steps.push_back(base + i + 1);
    }
  }
}

void load(const KernelTable& t, std::span<const std::uint8_t> digits, std::uint8_t* vals) {
  const std::uint8_t p = static_cast<std::uint8_t>(t.p);
  std::copy(t.origin.begin(), t.origin.end(), vals);
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] == 0) continue;
    const std::uint8_t* col = t.multiples.data() + (k * t.p + digits[k]) * t.lanes;
    for (std::size_t lane = 0; lane < t.lanes; ++lane) {
      std::uint8_t v = static_cast<std::uint8_t>(vals[lane] + col[lane]);
      vals[lane] = v >= p ? static_cast<std::uint8_t>(v - p) : v;
    }
  }
}

}  // namespace

const KernelOps& scalar_kernel() {
  static const KernelOps ops{"scalar", &scan, &load, &count_vanishing};
  return ops;
}

}  // namespace torlink::search
