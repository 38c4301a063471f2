#include "torlink/search/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "torlink/errors.hpp"
#include "torlink/search/checkpoint.hpp"

namespace torlink::search {
namespace {

constexpr std::uint64_t kAutoChunkSize = std::uint64_t{1} << 23;
constexpr std::uint64_t kInnerBlockLimit = std::uint64_t{1} << 16;

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= b[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

unsigned valuation(std::uint64_t s, std::uint32_t p) {
  unsigned v = 0;
  while (s % p == 0) {
    s /= p;
    ++v;
  }
  return v;
}

std::string chunk_prefix(std::uint64_t chunk, unsigned digits, std::uint32_t p) {
  std::string s(digits, '0');
  for (unsigned i = digits; i-- > 0;) {
    s[i] = static_cast<char>('0' + chunk % p);
    chunk /= p;
  }
  return s;
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (chunk + 1)));
}

void draw(std::mt19937_64& rng, std::uint32_t p, std::vector<std::uint8_t>& digits) {
  for (auto& d : digits) d = static_cast<std::uint8_t>(rng() % p);
}

struct ChunkResult {
  ChunkRecord record;
  std::vector<Exception> exceptions;
};

class SweepRunner {
 public:
  SweepRunner(const ClasperFamily& fam, const LagrangianFunctionalSet& fs, const SweepOptions& options,
              const ChunkPlan& plan)
      : fam_(fam), options_(options), plan_(plan), ops_(select_kernel(options.kernel)),
        table_(build_kernel_table(fs)) {
    if (fs.p != fam.p() || fs.parameter_dimension != fam.parameter_dimension())
      throw DimensionMismatch("functional set does not belong to this family");
    const std::size_t m = fam.parameter_dimension();
    const unsigned low = static_cast<unsigned>(m) - plan.chunk_digits;
    inner_digits_ = 0;
    while (inner_digits_ < low && ipow(fam.p(), inner_digits_ + 1) <= kInnerBlockLimit) ++inner_digits_;
    const std::uint64_t block = ipow(fam.p(), inner_digits_);
    for (std::uint64_t s = 1; s < block; ++s)
      inner_steps_.push_back(static_cast<std::uint16_t>(m - 1 - valuation(s, fam.p())));
  }

  const KernelOps& ops() const { return ops_; }
  std::size_t lanes() const { return table_.lanes; }

  ChunkResult run_chunk(std::uint64_t chunk, std::vector<std::uint8_t>& vals,
                        std::vector<std::uint8_t>& digits) const {
    return options_.mode == SweepMode::exhaustive ? exhaustive_chunk(chunk, vals, digits)
                                                  : sample_chunk(chunk, vals, digits);
  }

 private:
  ChunkResult exhaustive_chunk(std::uint64_t chunk, std::vector<std::uint8_t>& vals,
                               std::vector<std::uint8_t>& digits) const {
    const std::uint32_t p = fam_.p();
    const std::size_t m = fam_.parameter_dimension();
    const unsigned k = plan_.chunk_digits;
    const unsigned low = static_cast<unsigned>(m) - k;

    std::fill(digits.begin(), digits.end(), 0);
    const std::string prefix = chunk_prefix(chunk, k, p);
    for (unsigned i = 0; i < k; ++i) digits[i] = static_cast<std::uint8_t>(prefix[i] - '0');
    ops_.load(table_, digits, vals.data());

    ScanAccumulator acc;
    const std::uint32_t first = ops_.count_vanishing(table_, vals.data());
    acc.vanishing_pairs += first;
    if (first == 0) {
      ++acc.exceptions;
      acc.exception_steps.push_back(0);
    }

    const std::uint64_t block = ipow(p, inner_digits_);
    const std::uint64_t outer = ipow(p, low - inner_digits_);
    for (std::uint64_t q = 0; q < outer; ++q) {
      if (q > 0) {
        const std::uint16_t bridge = static_cast<std::uint16_t>(m - 1 - (inner_digits_ + valuation(q, p)));
        ops_.scan(table_, vals.data(), {&bridge, 1}, q * block - 1, acc);
      }
      ops_.scan(table_, vals.data(), inner_steps_, q * block, acc);
    }

    ChunkResult out;
    out.record.index = chunk;
    out.record.prefix = prefix;
    out.record.visited = ipow(p, low);
    out.record.exceptions = acc.exceptions;
    for (std::uint64_t s : acc.exception_steps)
      out.exceptions.push_back({chunk, exhaustive_point(fam_, k, chunk, s)});
    out.record.checksum = checksum(out.record, acc.vanishing_pairs, acc.exception_steps);
    return out;
  }

  ChunkResult sample_chunk(std::uint64_t chunk, std::vector<std::uint8_t>& vals,
                           std::vector<std::uint8_t>& digits) const {
    const std::uint64_t begin = chunk * kSampleChunkSize;
    const std::uint64_t end = std::min(options_.sample_count, begin + kSampleChunkSize);
    auto rng = sample_rng(options_.seed, chunk);
    ScanAccumulator acc;
    ChunkResult out;
    for (std::uint64_t i = begin; i < end; ++i) {
      draw(rng, fam_.p(), digits);
      ops_.load(table_, digits, vals.data());
      const std::uint32_t hits = ops_.count_vanishing(table_, vals.data());
      acc.vanishing_pairs += hits;
      if (hits == 0) {
        ++acc.exceptions;
        acc.exception_steps.push_back(i);
        out.exceptions.push_back({chunk, ParameterVector{{digits.begin(), digits.end()}}});
      }
    }
    out.record.index = chunk;
    out.record.prefix = std::to_string(chunk);
    out.record.visited = end - begin;
    out.record.exceptions = acc.exceptions;
    out.record.checksum = checksum(out.record, acc.vanishing_pairs, acc.exception_steps);
    return out;
  }

  static std::uint64_t checksum(const ChunkRecord& r, std::uint64_t vanishing_pairs,
                                const std::vector<std::uint64_t>& steps) {
    Fnv1a h;
    h.bytes(r.prefix.data(), r.prefix.size());
    h.u64(r.visited);
    h.u64(r.exceptions);
    h.u64(vanishing_pairs);
    for (std::uint64_t s : steps) h.u64(s);
    return h.value();
  }

  const ClasperFamily& fam_;
  const SweepOptions& options_;
  ChunkPlan plan_;
  const KernelOps& ops_;
  KernelTable table_;
  unsigned inner_digits_ = 0;
  std::vector<std::uint16_t> inner_steps_;
};

std::string checkpoint_header(const ClasperFamily& fam, const SweepOptions& options, const ChunkPlan& plan) {
  std::string h = "# torlink-sweep p=" + std::to_string(fam.p()) + " n=" + std::to_string(fam.blocks()) +
                  " mode=" + std::string(to_string(options.mode));
  if (options.mode == SweepMode::exhaustive)
    h += " chunk_digits=" + std::to_string(plan.chunk_digits);
  else
    h += " count=" + std::to_string(options.sample_count) + " seed=" + std::to_string(options.seed);
  return h;
}

void cap_exceptions(SweepReport& r) {
  std::stable_sort(r.exceptions.begin(), r.exceptions.end(),
                   [](const Exception& a, const Exception& b) { return a.chunk < b.chunk; });
  if (r.exceptions.size() > r.witness_cap) r.exceptions.resize(r.witness_cap);
}

}  // namespace

std::string_view to_string(SweepMode mode) { return mode == SweepMode::exhaustive ? "exhaustive" : "sample"; }

SweepMode parse_sweep_mode(std::string_view text) {
  if (text == "exhaustive") return SweepMode::exhaustive;
  if (text == "sample") return SweepMode::sample;
  throw InvalidParameters("unknown sweep mode \"" + std::string(text) + "\" (exhaustive, sample)");
}

bool SweepReport::complete() const {
  if (chunks.size() != last_chunk - first_chunk) return false;
  for (std::size_t i = 0; i < chunks.size(); ++i)
    if (chunks[i].index != first_chunk + i) return false;
  return true;
}

std::uint64_t SweepReport::checksum() const {
  Fnv1a h;
  for (const auto& c : chunks) {
    h.u64(c.index);
    h.u64(c.checksum);
  }
  return h.value();
}

ChunkPlan plan_chunks(const ClasperFamily& fam, const SweepOptions& options) {
  ChunkPlan plan;
  const std::uint32_t p = fam.p();
  const unsigned m = static_cast<unsigned>(fam.parameter_dimension());
  if (options.mode == SweepMode::sample) {
    plan.chunk_count = (options.sample_count + kSampleChunkSize - 1) / kSampleChunkSize;
    plan.chunk_size = kSampleChunkSize;
    return plan;
  }
  if (p >= 128)
    throw UnsupportedScope("exhaustive sweeps support p < 128");
  Integer space = 1;
  for (unsigned i = 0; i < m; ++i) space *= p;
  if (space >= Integer(std::uint64_t{1} << 62))
    throw UnsupportedScope("parameter space p^" + std::to_string(m) + " is too large for an exhaustive sweep");

  unsigned k = 0;
  if (options.min_chunks == 0) {
    while (k < m && ipow(p, m - k) > kAutoChunkSize) ++k;
  } else {
    while (k < m && ipow(p, k) < options.min_chunks) ++k;
  }
  plan.chunk_digits = k;
  plan.chunk_count = ipow(p, k);
  plan.chunk_size = ipow(p, m - k);
  return plan;
}

ParameterVector exhaustive_point(const ClasperFamily& fam, unsigned chunk_digits, std::uint64_t chunk,
                                 std::uint64_t s) {
  const std::uint32_t p = fam.p();
  const std::size_t m = fam.parameter_dimension();
  ParameterVector v{std::vector<std::uint32_t>(m, 0)};
  for (unsigned i = chunk_digits; i-- > 0;) {
    v.v[i] = static_cast<std::uint32_t>(chunk % p);
    chunk /= p;
  }
  const std::size_t low = m - chunk_digits;
  std::vector<std::uint32_t> d(low + 1, 0);
  for (std::size_t i = 0; i < low; ++i) {
    d[i] = static_cast<std::uint32_t>(s % p);
    s /= p;
  }
  for (std::size_t i = 0; i < low; ++i) v.v[m - 1 - i] = (d[i] + p - d[i + 1]) % p;
  return v;
}

ParameterVector sample_point(const ClasperFamily& fam, std::uint64_t seed, std::uint64_t i) {
  const std::uint64_t chunk = i / kSampleChunkSize;
  auto rng = sample_rng(seed, chunk);
  std::vector<std::uint8_t> digits(fam.parameter_dimension());
  for (std::uint64_t j = chunk * kSampleChunkSize; j <= i; ++j) draw(rng, fam.p(), digits);
  return ParameterVector{{digits.begin(), digits.end()}};
}

std::string format_parameter(const ParameterVector& v) {
  const bool wide = std::any_of(v.v.begin(), v.v.end(), [](std::uint32_t x) { return x >= 10; });
  std::string s;
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    if (wide && i) s += ',';
    s += std::to_string(v.v[i]);
  }
  return s;
}

SweepReport merge(const SweepReport& a, const SweepReport& b) {
  if (a.p != b.p || a.n != b.n || a.mode != b.mode || a.chunk_count != b.chunk_count ||
      a.chunk_digits != b.chunk_digits)
    throw ChunkOverlap("reports belong to different chunk partitions");
  SweepReport r = a;
  r.first_chunk = std::min(a.first_chunk, b.first_chunk);
  r.last_chunk = std::max(a.last_chunk, b.last_chunk);
  r.total_vectors += b.total_vectors;
  r.exception_count += b.exception_count;
  r.wall_seconds += b.wall_seconds;
  r.chunks.clear();
  std::merge(a.chunks.begin(), a.chunks.end(), b.chunks.begin(), b.chunks.end(), std::back_inserter(r.chunks),
             [](const ChunkRecord& x, const ChunkRecord& y) { return x.index < y.index; });
  for (std::size_t i = 1; i < r.chunks.size(); ++i)
    if (r.chunks[i].index == r.chunks[i - 1].index)
      throw ChunkOverlap("chunk " + r.chunks[i].prefix + " appears in both reports");
  r.exceptions.insert(r.exceptions.end(), b.exceptions.begin(), b.exceptions.end());
  r.witness_cap = std::max(a.witness_cap, b.witness_cap);
  cap_exceptions(r);
  r.interrupted = a.interrupted || b.interrupted || !r.complete();
  return r;
}

SweepReport sweep(const ClasperFamily& fam, const LagrangianFunctionalSet& fs, const SweepOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const ChunkPlan plan = plan_chunks(fam, options);
  SweepRunner runner(fam, fs, options, plan);

  SweepReport report;
  report.p = fam.p();
  report.n = fam.blocks();
  report.parameter_dimension = fam.parameter_dimension();
  report.mode = options.mode;
  report.chunk_count = plan.chunk_count;
  report.chunk_digits = plan.chunk_digits;
  report.first_chunk = options.first_chunk.value_or(0);
  report.last_chunk = options.last_chunk.value_or(plan.chunk_count);
  report.witness_cap = options.witness_cap;
  report.kernel = std::string(runner.ops().name);
  if (report.first_chunk > report.last_chunk || report.last_chunk > plan.chunk_count)
    throw InvalidParameters("chunk range [" + std::to_string(report.first_chunk) + ", " +
                            std::to_string(report.last_chunk) + ") is outside 0.." +
                            std::to_string(plan.chunk_count));

  std::map<std::uint64_t, ChunkRecord> done;
  std::unique_ptr<CheckpointFile> checkpoint;
  if (!options.checkpoint_path.empty()) {
    checkpoint = std::make_unique<CheckpointFile>(options.checkpoint_path, checkpoint_header(fam, options, plan));
    for (const auto& rec : checkpoint->records()) {
      std::uint64_t index = 0;
      if (options.mode == SweepMode::exhaustive) {
        if (rec.prefix.size() != plan.chunk_digits)
          throw ChunkOverlap("resume record " + rec.prefix + " does not match the chunk partition");
        for (char c : rec.prefix) {
          if (static_cast<std::uint32_t>(c - '0') >= fam.p())
            throw ChunkOverlap("resume record " + rec.prefix + " has a digit >= p");
          index = index * fam.p() + static_cast<std::uint32_t>(c - '0');
        }
      } else {
        index = std::stoull(rec.prefix);
        if (index >= plan.chunk_count) throw ChunkOverlap("resume record " + rec.prefix + " is out of range");
      }
      if (index < report.first_chunk || index >= report.last_chunk) continue;
      ChunkRecord c{index, rec.prefix, 0, rec.exceptions, rec.checksum};
      if (options.mode == SweepMode::exhaustive)
        c.visited = plan.chunk_size;
      else
        c.visited = std::min(options.sample_count, (index + 1) * kSampleChunkSize) - index * kSampleChunkSize;
      done.emplace(index, std::move(c));
    }
  }

  std::vector<std::uint64_t> todo;
  for (std::uint64_t c = report.first_chunk; c < report.last_chunk; ++c)
    if (!done.contains(c)) todo.push_back(c);

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> started_chunks{0};
  std::vector<Exception> exceptions;
  auto worker = [&] {
    std::vector<std::uint8_t> vals(runner.lanes());
    std::vector<std::uint8_t> digits(fam.parameter_dimension());
    for (;;) {
      if (options.stop && options.stop->load()) return;
      const std::size_t slot = next.fetch_add(1);
      if (slot >= todo.size()) return;
      if (options.max_new_chunks != 0 && started_chunks.fetch_add(1) >= options.max_new_chunks) return;
      ChunkResult res = runner.run_chunk(todo[slot], vals, digits);
      std::lock_guard lock(mutex);
      if (checkpoint) checkpoint->append({res.record.prefix, res.record.exceptions, res.record.checksum});
      if (options.exception_log)
        for (const auto& e : res.exceptions)
          *options.exception_log << "exception p=" << fam.p() << " n=" << fam.blocks() << " chunk=" << res.record.prefix
                                 << " v=" << format_parameter(e.v) << '\n';
      exceptions.insert(exceptions.end(), res.exceptions.begin(), res.exceptions.end());
      done.emplace(res.record.index, std::move(res.record));
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (options.exception_log) options.exception_log->flush();

  for (auto& [index, rec] : done) {
    report.total_vectors += rec.visited;
    report.exception_count += rec.exceptions;
    report.chunks.push_back(std::move(rec));
  }
  report.exceptions = std::move(exceptions);
  cap_exceptions(report);
  report.interrupted = !report.complete();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace torlink::search
