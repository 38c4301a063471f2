// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "torlink/search/kernel.hpp"

namespace torlink::search {
namespace {

inline __m256i add_mod(__m256i a, __m256i b, __m256i p) {
  const __m256i s = _mm256_add_epi8(a, b);
  // s - p wraps above s exactly when s < p.
  return _mm256_min_epu8(s, _mm256_sub_epi8(s, p));
}

inline std::uint32_t zero_count(__m256i v) {
  const __m256i z = _mm256_cmpeq_epi8(v, _mm256_setzero_si256());
  return static_cast<std::uint32_t>(_mm_popcnt_u32(static_cast<std::uint32_t>(_mm256_movemask_epi8(z))));
}

// One functional per Lagrangian: lanes fit in NREG registers held across
// the whole step sequence.
template <int NREG>
void scan_registers(const KernelTable& t, std::uint8_t* vals, std::span<const std::uint16_t> steps,
                    std::uint64_t base, ScanAccumulator& acc) {
  const __m256i p = _mm256_set1_epi8(static_cast<char>(t.p));
  __m256i v[NREG];
  for (int r = 0; r < NREG; ++r) v[r] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals + 32 * r));
  const std::uint8_t* columns = t.columns.data();
  const std::size_t lanes = t.lanes;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::uint8_t* col = columns + std::size_t{steps[i]} * lanes;
    std::uint32_t hits = 0;
    for (int r = 0; r < NREG; ++r) {
      v[r] = add_mod(v[r], _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col + 32 * r)), p);
      hits += zero_count(v[r]);
    }
    pairs += hits;
    if (hits == 0) [[unlikely]] {
      ++acc.exceptions;
      acc.exception_steps.push_back(base + i + 1);
    }
  }
  acc.vanishing_pairs += pairs;
  for (int r = 0; r < NREG; ++r) _mm256_storeu_si256(reinterpret_cast<__m256i*>(vals + 32 * r), v[r]);
}

std::uint32_t count_vanishing(const KernelTable& t, const std::uint8_t* vals) {
  if (t.rows_per_lagrangian == 0) return static_cast<std::uint32_t>(t.lagrangians);
  std::uint32_t count = 0;
  const __m256i zero = _mm256_setzero_si256();
  for (std::size_t q = 0; q < t.block_lanes; q += 32) {
    __m256i all = _mm256_set1_epi8(-1);
    for (std::size_t r = 0; r < t.rows_per_lagrangian; ++r) {
      const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals + r * t.block_lanes + q));
      all = _mm256_and_si256(all, _mm256_cmpeq_epi8(v, zero));
    }
    count += static_cast<std::uint32_t>(_mm_popcnt_u32(static_cast<std::uint32_t>(_mm256_movemask_epi8(all))));
  }
  return count;
}

void scan_memory(const KernelTable& t, std::uint8_t* vals, std::span<const std::uint16_t> steps,
                 std::uint64_t base, ScanAccumulator& acc) {
  const __m256i p = _mm256_set1_epi8(static_cast<char>(t.p));
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::uint8_t* col = t.columns.data() + std::size_t{steps[i]} * t.lanes;
    for (std::size_t lane = 0; lane < t.lanes; lane += 32) {
      auto* dst = reinterpret_cast<__m256i*>(vals + lane);
      _mm256_storeu_si256(dst, add_mod(_mm256_loadu_si256(dst),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col + lane)), p));
    }
    const std::uint32_t hits = count_vanishing(t, vals);
    acc.vanishing_pairs += hits;
    if (hits == 0) {
      ++acc.exceptions;
      acc.exception_steps.push_back(base + i + 1);
    }
  }
}

void scan(const KernelTable& t, std::uint8_t* vals, std::span<const std::uint16_t> steps, std::uint64_t base,
          ScanAccumulator& acc) {
  if (t.rows_per_lagrangian == 0) {
    acc.vanishing_pairs += t.lagrangians * steps.size();
    if (t.lagrangians == 0) {
      for (std::size_t i = 0; i < steps.size(); ++i) acc.exception_steps.push_back(base + i + 1);
      acc.exceptions += steps.size();
    }
    return;
  }
  if (t.rows_per_lagrangian == 1) {
    switch (t.lanes / 32) {
      case 1: return scan_registers<1>(t, vals, steps, base, acc);
      case 2: return scan_registers<2>(t, vals, steps, base, acc);
      case 3: return scan_registers<3>(t, vals, steps, base, acc);
      case 4: return scan_registers<4>(t, vals, steps, base, acc);
      case 5: return scan_registers<5>(t, vals, steps, base, acc);
      case 6: return scan_registers<6>(t, vals, steps, base, acc);
      case 7: return scan_registers<7>(t, vals, steps, base, acc);
      case 8: return scan_registers<8>(t, vals, steps, base, acc);
      default: break;
    }
  }
  scan_memory(t, vals, steps, base, acc);
}

void load(const KernelTable& t, std::span<const std::uint8_t> digits, std::uint8_t* vals) {
  const __m256i p = _mm256_set1_epi8(static_cast<char>(t.p));
  std::copy(t.origin.begin(), t.origin.end(), vals);
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] == 0) continue;
    const std::uint8_t* col = t.multiples.data() + (k * t.p + digits[k]) * t.lanes;
    for (std::size_t lane = 0; lane < t.lanes; lane += 32) {
      auto* dst = reinterpret_cast<__m256i*>(vals + lane);
      _mm256_storeu_si256(dst, add_mod(_mm256_loadu_si256(dst),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col + lane)), p));
    }
  }
}

}  // namespace

const KernelOps& avx2_kernel_impl() {
  static const KernelOps ops{"avx2", &scan, &load, &count_vanishing};
  return ops;
}

}  // namespace torlink::search
