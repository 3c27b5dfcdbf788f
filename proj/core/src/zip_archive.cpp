#include "depexplain/zip_archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>

#include "depexplain/errors.hpp"

namespace depexplain::zip {
namespace {

constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kZip64LocatorSig = 0x07064b50;
constexpr std::uint32_t kZip64EocdSig = 0x06064b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::size_t kEocdSize = 22;
constexpr std::size_t kCentralSize = 46;
constexpr std::size_t kLocalSize = 30;

// Little-endian reads over a bounds-checked window; `fail` names the error.
class Cursor {
 public:
  Cursor(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

  bool has(std::size_t n) const { return pos_ <= bytes_.size() && n <= bytes_.size() - pos_; }
  std::uint16_t u2() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u4() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u8() { return get(8); }
  std::string str(std::size_t n) {
    ensure(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void skip(std::size_t n) {
    ensure(n);
    pos_ += n;
  }
  std::size_t pos() const { return pos_; }

 private:
  void ensure(std::size_t n) const {
    if (!has(n)) throw std::out_of_range("zip structure truncated");
  }
  std::uint64_t get(std::size_t n) {
    ensure(n);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += n;
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

std::uint32_t sig_at(std::span<const std::uint8_t> b, std::size_t pos) {
  if (pos + 4 > b.size()) return 0;
  return std::uint32_t{b[pos]} | (std::uint32_t{b[pos + 1]} << 8) | (std::uint32_t{b[pos + 2]} << 16) |
         (std::uint32_t{b[pos + 3]} << 24);
}

void apply_zip64_extra(const std::string& extra, Entry& e, bool need_uncompressed, bool need_compressed,
                       bool need_offset) {
  std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(extra.data()), extra.size());
  Cursor c(bytes, 0);
  while (c.has(4)) {
    auto id = c.u2();
    auto size = c.u2();
    if (!c.has(size)) return;
    if (id != 0x0001) {
      c.skip(size);
      continue;
    }
    Cursor f(bytes.subspan(c.pos(), size), 0);
    if (need_uncompressed && f.has(8)) e.uncompressed_size = f.u8();
    if (need_compressed && f.has(8)) e.compressed_size = f.u8();
    if (need_offset && f.has(8)) e.local_header_offset = f.u8();
    return;
  }
}

}  // namespace

Archive::Archive(std::vector<std::uint8_t> bytes, std::string label) : bytes_(std::move(bytes)), label_(std::move(label)) {}

Archive Archive::open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableArchive(path.string(), "cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw UnreadableArchive(path.string(), "read error");
  return from_bytes(std::move(bytes), path.string());
}

Archive Archive::from_bytes(std::vector<std::uint8_t> bytes, std::string label) {
  Archive archive(std::move(bytes), std::move(label));
  try {
    archive.index();
  } catch (const std::out_of_range& e) {
    throw UnreadableArchive(archive.label_, e.what());
  }
  return archive;
}

void Archive::index() {
  std::span<const std::uint8_t> b = bytes_;
  if (b.size() < kEocdSize) throw UnreadableArchive(label_, "not a ZIP archive (too short)");

  // The end-of-central-directory record sits within the last 64 KiB + 22 bytes.
  std::size_t lowest = b.size() > kEocdSize + 0xFFFF ? b.size() - kEocdSize - 0xFFFF : 0;
  std::optional<std::size_t> eocd;
  for (std::size_t pos = b.size() - kEocdSize + 1; pos-- > lowest;) {
    if (sig_at(b, pos) == kEocdSig) {
      eocd = pos;
      break;
    }
  }
  if (!eocd) throw UnreadableArchive(label_, "not a ZIP archive (no end of central directory)");

  Cursor c(b, *eocd + 4);
  c.skip(4);  // disk numbers
  std::uint64_t disk_entries = c.u2();
  std::uint64_t total_entries = c.u2();
  std::uint64_t cd_size = c.u4();
  std::uint64_t cd_offset = c.u4();

  bool zip64 = total_entries == 0xFFFF || cd_size == 0xFFFFFFFF || cd_offset == 0xFFFFFFFF;
  if (zip64 && *eocd >= 20 && sig_at(b, *eocd - 20) == kZip64LocatorSig) {
    Cursor loc(b, *eocd - 20 + 8);
    auto z64 = loc.u8();
    if (z64 > b.size() || sig_at(b, static_cast<std::size_t>(z64)) != kZip64EocdSig)
      throw UnreadableArchive(label_, "bad ZIP64 end of central directory");
    Cursor z(b, static_cast<std::size_t>(z64) + 4 + 8 + 4 + 8);
    disk_entries = z.u8();
    total_entries = z.u8();
    cd_size = z.u8();
    cd_offset = z.u8();
  }
  (void)disk_entries;

  if (cd_offset > b.size() || cd_size > b.size() - cd_offset)
    throw UnreadableArchive(label_, "central directory out of bounds");
  if (total_entries > cd_size / kCentralSize + 1)
    throw UnreadableArchive(label_, "entry count exceeds central directory size");

  Cursor cd(b.subspan(static_cast<std::size_t>(cd_offset), static_cast<std::size_t>(cd_size)), 0);
  entries_.reserve(static_cast<std::size_t>(total_entries));
  for (std::uint64_t i = 0; i < total_entries; ++i) {
    if (cd.u4() != kCentralSig) throw UnreadableArchive(label_, "bad central directory entry");
    cd.skip(4);  // versions
    Entry e;
    e.flags = cd.u2();
    e.method = cd.u2();
    cd.skip(4);  // time, date
    e.crc32 = cd.u4();
    e.compressed_size = cd.u4();
    e.uncompressed_size = cd.u4();
    auto name_len = cd.u2();
    auto extra_len = cd.u2();
    auto comment_len = cd.u2();
    cd.skip(8);  // disk start, internal and external attributes
    e.local_header_offset = cd.u4();
    e.name = cd.str(name_len);
    auto extra = cd.str(extra_len);
    cd.skip(comment_len);
    apply_zip64_extra(extra, e, e.uncompressed_size == 0xFFFFFFFF, e.compressed_size == 0xFFFFFFFF,
                      e.local_header_offset == 0xFFFFFFFF);
    entries_.push_back(std::move(e));
  }
}

std::vector<std::uint8_t> Archive::read(const Entry& entry, std::uint64_t max_size) const {
  std::span<const std::uint8_t> b = bytes_;
  auto fail = [&](const std::string& what) { return MalformedZipEntry(entry.name + ": " + what); };

  if (entry.flags & 0x1) throw fail("encrypted entries are not supported");
  if (entry.uncompressed_size > max_size) throw fail("entry exceeds size limit");
  if (entry.local_header_offset > b.size() || b.size() - entry.local_header_offset < kLocalSize)
    throw fail("local header out of bounds");
  auto local = static_cast<std::size_t>(entry.local_header_offset);
  if (sig_at(b, local) != kLocalSig) throw fail("bad local header signature");
  Cursor c(b, local + 26);
  std::size_t data = local + kLocalSize + c.u2();
  data += c.u2();
  if (data > b.size() || entry.compressed_size > b.size() - data) throw fail("entry data out of bounds");
  auto src = b.subspan(data, static_cast<std::size_t>(entry.compressed_size));

  std::vector<std::uint8_t> out(static_cast<std::size_t>(entry.uncompressed_size));
  if (entry.method == 0) {
    if (entry.compressed_size != entry.uncompressed_size) throw fail("stored entry size mismatch");
    std::copy(src.begin(), src.end(), out.begin());
  } else if (entry.method == 8) {
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw fail("inflate init failed");
    zs.next_in = const_cast<Bytef*>(src.data());
    zs.avail_in = static_cast<uInt>(std::min<std::size_t>(src.size(), std::numeric_limits<uInt>::max()));
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    // A spare output byte lets us detect streams longer than declared.
    std::uint8_t spare = 0;
    int rc = inflate(&zs, Z_FINISH);
    if (rc == Z_BUF_ERROR && zs.avail_out == 0) {
      zs.next_out = &spare;
      zs.avail_out = 1;
      rc = inflate(&zs, Z_FINISH);
      if (zs.avail_out == 0) rc = Z_DATA_ERROR;
    }
    bool complete = rc == Z_STREAM_END && zs.total_out == out.size();
    inflateEnd(&zs);
    if (!complete) throw fail("corrupt deflate stream");
  } else {
    throw fail("unsupported compression method " + std::to_string(entry.method));
  }

  auto crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, out.data(), static_cast<uInt>(out.size()));
  if (static_cast<std::uint32_t>(crc) != entry.crc32) throw fail("CRC mismatch");
  return out;
}

}  // namespace depexplain::zip
