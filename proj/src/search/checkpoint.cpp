#include "torlink/search/checkpoint.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "torlink/errors.hpp"

namespace torlink::search {
namespace {

std::uint64_t parse_u64(std::string_view text, int base, const std::string& line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ChunkOverlap("malformed checkpoint record: " + line);
  return v;
}

}  // namespace

std::string format_record(const CheckpointRecord& r) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(r.checksum));
  return "chunk=" + r.prefix + " exceptions=" + std::to_string(r.exceptions) + " checksum=" + hex;
}

CheckpointRecord parse_record(const std::string& line) {
  std::istringstream in(line);
  std::string a, b, c, extra;
  if (!(in >> a >> b >> c) || (in >> extra)) throw ChunkOverlap("malformed checkpoint record: " + line);
  auto value = [&](const std::string& field, std::string_view key) -> std::string_view {
    if (field.size() < key.size() || field.compare(0, key.size(), key) != 0)
      throw ChunkOverlap("malformed checkpoint record: " + line);
    return std::string_view(field).substr(key.size());
  };
  CheckpointRecord r;
  r.prefix = std::string(value(a, "chunk="));
  if (r.prefix.empty() || r.prefix.find_first_not_of("0123456789") != std::string::npos)
    throw ChunkOverlap("malformed chunk prefix: " + line);
  r.exceptions = parse_u64(value(b, "exceptions="), 10, line);
  r.checksum = parse_u64(value(c, "checksum="), 16, line);
  return r;
}

CheckpointFile::CheckpointFile(std::string path, std::string header) : path_(std::move(path)) {
  bool fresh = true;
  if (std::filesystem::exists(path_)) {
    std::string text;
    {
      std::ifstream file(path_, std::ios::binary);
      std::ostringstream buf;
      buf << file.rdbuf();
      text = buf.str();
    }
    // A line without its newline is a write torn by a crash; that chunk is
    // simply redone.
    if (!text.empty() && text.back() != '\n') {
      text.erase(text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1);
      std::filesystem::resize_file(path_, text.size());
    }
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    bool have_header = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        if (line != header)
          throw ChunkOverlap("resume file " + path_ + " belongs to a different sweep: \"" + line + "\" vs \"" +
                             header + "\"");
        have_header = true;
        continue;
      }
      if (!have_header) throw ChunkOverlap("resume file " + path_ + " has no header");
      CheckpointRecord r = parse_record(line);
      if (!seen.insert(r.prefix).second) throw ChunkOverlap("chunk " + r.prefix + " recorded twice in " + path_);
      records_.push_back(std::move(r));
    }
    fresh = !have_header;
  }
  out_.open(path_, std::ios::app);
  if (!out_) throw InvalidParameters("cannot open resume file " + path_);
  if (fresh) out_ << header << '\n' << std::flush;
}

void CheckpointFile::append(const CheckpointRecord& r) {
  std::lock_guard lock(mutex_);
  out_ << format_record(r) << '\n' << std::flush;
}

}  // namespace torlink::search
