#pragma once

#include <cstdint>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

namespace torlink::search {

// One line per completed chunk:
//   chunk=<prefix digits> exceptions=<count> checksum=<16 hex digits>
// preceded by a '#' header naming the sweep the file belongs to.
struct CheckpointRecord {
  std::string prefix;
  std::uint64_t exceptions = 0;
  std::uint64_t checksum = 0;
  friend bool operator==(const CheckpointRecord&, const CheckpointRecord&) = default;
};

std::string format_record(const CheckpointRecord& r);
// Throws ChunkOverlap on a malformed line.
CheckpointRecord parse_record(const std::string& line);

class CheckpointFile {
 public:
  // Opens (creating if needed) the resume file for a sweep identified by
  // `header`. Existing records are loaded; a header mismatch, a malformed
  // line, or a repeated chunk throws ChunkOverlap.
  CheckpointFile(std::string path, std::string header);

  const std::vector<CheckpointRecord>& records() const { return records_; }
  // Appends and flushes one record. Thread-safe.
  void append(const CheckpointRecord& r);

 private:
  std::string path_;
  std::vector<CheckpointRecord> records_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace torlink::search
