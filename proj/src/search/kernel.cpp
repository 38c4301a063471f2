#include "torlink/search/kernel.hpp"

#include "torlink/errors.hpp"

namespace torlink::search {

#if defined(TORLINK_BUILD_AVX2)
const KernelOps& avx2_kernel_impl();
#endif

KernelTable build_kernel_table(const LagrangianFunctionalSet& fs) {
  if (fs.p >= 128) throw UnsupportedScope("sweep kernels support p < 128");
  if (fs.parameter_dimension >= 65536) throw UnsupportedScope("sweep kernels support < 65536 parameters");
  KernelTable t;
  t.p = fs.p;
  t.parameter_dimension = fs.parameter_dimension;
  t.lagrangians = fs.lagrangian_count();
  t.rows_per_lagrangian = fs.rows_per_lagrangian;
  t.block_lanes = (t.lagrangians + 31) / 32 * 32;
  t.lanes = t.block_lanes * t.rows_per_lagrangian;
  const std::size_t m = t.parameter_dimension;

  t.columns.assign(m * t.lanes, 0);
  t.origin.assign(t.lanes, 0);
  for (std::size_t r = 0; r < t.rows_per_lagrangian; ++r)
    for (std::size_t j = 0; j < t.block_lanes; ++j) {
      const std::size_t lane = r * t.block_lanes + j;
      if (j >= t.lagrangians) {
        t.origin[lane] = 1;
        continue;
      }
      const auto& w = fs.row(j, r);
      for (std::size_t k = 0; k < m; ++k) t.columns[k * t.lanes + lane] = static_cast<std::uint8_t>(w[k]);
    }

  t.multiples.assign(m * t.p * t.lanes, 0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::uint32_t d = 0; d < t.p; ++d)
      for (std::size_t lane = 0; lane < t.lanes; ++lane)
        t.multiples[(k * t.p + d) * t.lanes + lane] =
            static_cast<std::uint8_t>((d * t.columns[k * t.lanes + lane]) % t.p);
  return t;
}

const KernelOps* avx2_kernel() {
#if defined(TORLINK_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  if (supported) return &avx2_kernel_impl();
#endif
  return nullptr;
}

const KernelOps& select_kernel(KernelKind kind) {
  switch (kind) {
    case KernelKind::scalar:
      return scalar_kernel();
    case KernelKind::avx2:
      if (const KernelOps* k = avx2_kernel()) return *k;
      throw UnsupportedScope("AVX2 kernel is not available on this build or CPU");
    case KernelKind::automatic:
      break;
  }
  if (const KernelOps* k = avx2_kernel()) return *k;
  return scalar_kernel();
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "auto") return KernelKind::automatic;
  if (name == "scalar") return KernelKind::scalar;
  if (name == "avx2") return KernelKind::avx2;
  throw InvalidParameters("unknown kernel \"" + std::string(name) + "\" (auto, scalar, avx2)");
}

}  // namespace torlink::search
