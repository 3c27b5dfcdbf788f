#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace depexplain::zip {

struct Entry {
  std::string name;
  std::uint16_t method = 0;  // 0 = stored, 8 = deflated
  std::uint16_t flags = 0;
  std::uint32_t crc32 = 0;
  std::uint64_t compressed_size = 0;
  std::uint64_t uncompressed_size = 0;
  std::uint64_t local_header_offset = 0;
};

/// Read-only view of a ZIP container, located through its central directory
/// (ZIP64 records supported). Holds the archive bytes in memory.
class Archive {
 public:
  /// Throws UnreadableArchive.
  static Archive open(const std::filesystem::path& path);
  static Archive from_bytes(std::vector<std::uint8_t> bytes, std::string label);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& label() const { return label_; }

  /// Extracts one entry. Throws MalformedZipEntry on corrupt data,
  /// unsupported methods or sizes above `max_size`.
  std::vector<std::uint8_t> read(const Entry& entry, std::uint64_t max_size = kDefaultMaxEntrySize) const;

  static constexpr std::uint64_t kDefaultMaxEntrySize = 64ull << 20;

 private:
  Archive(std::vector<std::uint8_t> bytes, std::string label);
  void index();

  std::vector<std::uint8_t> bytes_;
  std::string label_;
  std::vector<Entry> entries_;
};

}  // namespace depexplain::zip
