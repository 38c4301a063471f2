#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "torlink/search/functionals.hpp"

namespace torlink::search {

// Byte-lane layout of a functional set for the sweep kernels.
//
// Lane (r, j) = r * block_lanes + j holds row r of Lagrangian j; block_lanes
// is the Lagrangian count rounded up to a multiple of 32 so every block
// fills whole 256-bit registers. Padding lanes start at 1 and have zero
// columns, so they never read as vanishing.
struct KernelTable {
  std::uint32_t p = 0;
  std::size_t parameter_dimension = 0;
  std::size_t lagrangians = 0;
  std::size_t rows_per_lagrangian = 0;
  std::size_t block_lanes = 0;
  std::size_t lanes = 0;
  // columns[k * lanes + lane] = coordinate k of that lane's functional.
  std::vector<std::uint8_t> columns;
  // multiples[(k * p + d) * lanes + lane] = d * columns[k * lanes + lane] mod p.
  std::vector<std::uint8_t> multiples;
  // Lane values at v = 0.
  std::vector<std::uint8_t> origin;
};

// Supports p < 128 (byte lanes) and parameter dimension < 65536.
KernelTable build_kernel_table(const LagrangianFunctionalSet& fs);

struct ScanAccumulator {
  // Sum over visited points of the number of vanishing Lagrangians.
  std::uint64_t vanishing_pairs = 0;
  std::uint64_t exceptions = 0;
  // Step positions (base + i + 1 for step i) at which no Lagrangian vanished.
  std::vector<std::uint64_t> exception_steps;
};

// Kernel entry points. All variants must produce identical results.
struct KernelOps {
  std::string_view name;
  // For each step coordinate k: vals += column k (mod p), then tally the
  // resulting point.
  void (*scan)(const KernelTable& table, std::uint8_t* vals, std::span<const std::uint16_t> steps,
               std::uint64_t base, ScanAccumulator& acc);
  // vals = sum_k digits[k] * column k (mod p).
  void (*load)(const KernelTable& table, std::span<const std::uint8_t> digits, std::uint8_t* vals);
  // Number of Lagrangians whose rows are all zero in vals.
  std::uint32_t (*count_vanishing)(const KernelTable& table, const std::uint8_t* vals);
};

enum class KernelKind { automatic, scalar, avx2 };

const KernelOps& scalar_kernel();
// nullptr when not compiled in or not supported by this CPU.
const KernelOps* avx2_kernel();
// automatic picks AVX2 when available. Throws UnsupportedScope when an
// explicitly requested variant is unavailable.
const KernelOps& select_kernel(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

}  // namespace torlink::search
