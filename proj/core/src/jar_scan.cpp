#include <algorithm>

#include "depexplain/classfile.hpp"
#include "depexplain/errors.hpp"
#include "depexplain/zip_archive.hpp"

namespace depexplain::jvm {
namespace {

bool is_base_class_entry(std::string_view name) {
  if (!name.ends_with(".class")) return false;
  if (name.starts_with("META-INF/versions/")) return false;
  if (name == "module-info.class" || name.ends_with("/module-info.class")) return false;
  return true;
}

JarScan scan(const zip::Archive& archive, std::optional<Coordinates> coordinates) {
  JarScan out{ConstructIndex(std::move(coordinates)), {}};

  std::vector<const zip::Entry*> entries;
  for (const auto& e : archive.entries())
    if (is_base_class_entry(e.name)) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->name < b->name; });

  for (const auto* entry : entries) {
    try {
      auto bytes = archive.read(*entry);
      for (auto& construct : parse_class(bytes)) {
        auto key = construct.key();
        if (!out.index.insert(std::move(construct)))
          out.warnings.push_back({entry->name, "duplicate construct " + key.owner + "#" + key.name + key.descriptor});
      }
    } catch (const MalformedClassFile& e) {
      out.warnings.push_back({entry->name, e.what()});
    } catch (const MalformedZipEntry& e) {
      out.warnings.push_back({entry->name, e.what()});
    }
  }
  std::sort(out.warnings.begin(), out.warnings.end());
  return out;
}

}  // namespace

JarScan scan_jar(const std::filesystem::path& archive, std::optional<Coordinates> coordinates) {
  return scan(zip::Archive::open(archive), std::move(coordinates));
}

JarScan scan_jar_bytes(std::span<const std::uint8_t> archive, const std::string& label,
                       std::optional<Coordinates> coordinates) {
  return scan(zip::Archive::from_bytes({archive.begin(), archive.end()}, label), std::move(coordinates));
}

}  // namespace depexplain::jvm
