#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "torlink/search/kernel.hpp"

namespace torlink::search {

enum class SweepMode { exhaustive, sample };

std::string_view to_string(SweepMode mode);
SweepMode parse_sweep_mode(std::string_view text);

// Samples per chunk in sample mode.
inline constexpr std::uint64_t kSampleChunkSize = 1 << 16;

struct SweepOptions {
  SweepMode mode = SweepMode::exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  // Exhaustive mode: at least this many chunks, rounded up to a power of p.
  // 0 picks chunks of at most 2^23 vectors.
  std::uint64_t min_chunks = 0;
  // Half-open range of chunk indices to visit; default is every chunk.
  std::optional<std::uint64_t> first_chunk, last_chunk;
  unsigned workers = 1;
  KernelKind kernel = KernelKind::automatic;
  std::size_t witness_cap = 16;
  // Every exception is written here in full, one line each.
  std::ostream* exception_log = nullptr;
  // Resume file; completed chunks listed there are skipped and new ones appended.
  std::string checkpoint_path;
  // Stop after completing this many new chunks (0 = no limit).
  std::uint64_t max_new_chunks = 0;
  // Polled between chunks.
  const std::atomic<bool>* stop = nullptr;
};

struct ChunkRecord {
  std::uint64_t index = 0;
  // Exhaustive: the fixed leading digits of v. Sample: the decimal chunk index.
  std::string prefix;
  std::uint64_t visited = 0;
  std::uint64_t exceptions = 0;
  std::uint64_t checksum = 0;
  friend bool operator==(const ChunkRecord&, const ChunkRecord&) = default;
};

struct Exception {
  std::uint64_t chunk = 0;
  ParameterVector v;
};

struct SweepReport {
  std::uint32_t p = 0;
  std::size_t n = 0;
  std::size_t parameter_dimension = 0;
  SweepMode mode = SweepMode::exhaustive;
  // Chunk partition this report belongs to.
  std::uint64_t chunk_count = 0;
  unsigned chunk_digits = 0;
  std::uint64_t first_chunk = 0, last_chunk = 0;
  std::uint64_t total_vectors = 0;
  std::uint64_t exception_count = 0;
  // Up to the witness cap: parameter vectors with no vanishing Lagrangian.
  std::vector<Exception> exceptions;
  std::size_t witness_cap = 16;
  // Sorted by index.
  std::vector<ChunkRecord> chunks;
  std::string kernel;
  double wall_seconds = 0;
  bool interrupted = false;

  // Every chunk of [first_chunk, last_chunk) present.
  bool complete() const;
  // Order-independent digest of the chunk checksums (folded in index order).
  std::uint64_t checksum() const;
};

// Chunk partition of parameter space for the given options.
struct ChunkPlan {
  unsigned chunk_digits = 0;
  std::uint64_t chunk_count = 0;
  std::uint64_t chunk_size = 0;
};
ChunkPlan plan_chunks(const ClasperFamily& fam, const SweepOptions& options);

// Merges reports over disjoint chunk sets of the same partition. Throws
// ChunkOverlap if a chunk appears in both or the partitions differ.
SweepReport merge(const SweepReport& a, const SweepReport& b);

SweepReport sweep(const ClasperFamily& fam, const LagrangianFunctionalSet& fs, const SweepOptions& options);

// Parameter vector visited at chunk-local position s of an exhaustive chunk:
// the leading digits are the chunk prefix, the rest is the base-p modular
// Gray code of s (successive positions differ by +1 in one coordinate).
ParameterVector exhaustive_point(const ClasperFamily& fam, unsigned chunk_digits, std::uint64_t chunk,
                                 std::uint64_t s);

// The i-th parameter vector of a seeded sample run.
ParameterVector sample_point(const ClasperFamily& fam, std::uint64_t seed, std::uint64_t i);

std::string format_parameter(const ParameterVector& v);

}  // namespace torlink::search
