#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/coordinates.hpp"

namespace depexplain::jvm {

// Access flags as stored in class files. Several bits are shared between
// targets (0x0020 is ACC_SUPER on classes and ACC_SYNCHRONIZED on methods).
namespace access {
inline constexpr std::uint16_t kPublic = 0x0001;
inline constexpr std::uint16_t kPrivate = 0x0002;
inline constexpr std::uint16_t kProtected = 0x0004;
inline constexpr std::uint16_t kStatic = 0x0008;
inline constexpr std::uint16_t kFinal = 0x0010;
inline constexpr std::uint16_t kSuper = 0x0020;
inline constexpr std::uint16_t kSynchronized = 0x0020;
inline constexpr std::uint16_t kVolatile = 0x0040;
inline constexpr std::uint16_t kBridge = 0x0040;
inline constexpr std::uint16_t kTransient = 0x0080;
inline constexpr std::uint16_t kVarargs = 0x0080;
inline constexpr std::uint16_t kNative = 0x0100;
inline constexpr std::uint16_t kInterface = 0x0200;
inline constexpr std::uint16_t kAbstract = 0x0400;
inline constexpr std::uint16_t kStrict = 0x0800;
inline constexpr std::uint16_t kSynthetic = 0x1000;
inline constexpr std::uint16_t kAnnotation = 0x2000;
inline constexpr std::uint16_t kEnum = 0x4000;
}  // namespace access

enum class ConstructKind { Class, Interface, Enum, Annotation, Method, Constructor, Field };

constexpr bool is_class_like(ConstructKind kind) {
  return kind == ConstructKind::Class || kind == ConstructKind::Interface || kind == ConstructKind::Enum ||
         kind == ConstructKind::Annotation;
}

enum class Visibility { Private, Package, Protected, Public };

struct ConstructKey {
  ConstructKind kind = ConstructKind::Class;
  std::string owner;
  std::string name;
  std::string descriptor;

  auto operator<=>(const ConstructKey&) const = default;
};

/// A class, method, constructor or field declared by an artifact.
///
/// `owner` is the dot-separated binary name of the declaring class (for
/// class-like kinds, the class itself). `descriptor` is the raw JVM
/// descriptor; it is empty for class-like kinds.
struct Construct {
  ConstructKind kind = ConstructKind::Class;
  std::string owner;
  std::string name;
  std::string descriptor;
  std::uint16_t access_flags = 0;
  bool deprecated = false;
  int class_file_major = 0;

  ConstructKey key() const { return {kind, owner, name, descriptor}; }
  Visibility visibility() const;
  bool is_synthetic() const;
  /// Access-flag names valid for this kind, in declaration order.
  std::vector<std::string> modifiers() const;
  /// Package of the owner ("" for the default package).
  std::string package_name() const;
  /// Name a client would write: the class simple name for class-like kinds
  /// and constructors, the member name otherwise.
  std::string source_name() const;

  bool operator==(const Construct&) const = default;
};

/// Parses one class file into its class-like construct followed by one
/// construct per declared method, constructor and field (static
/// initializers excluded). Throws MalformedClassFile.
std::vector<Construct> parse_class(std::span<const std::uint8_t> bytes);

/// Maps a class-file major version to the Java release that emits it
/// (52 -> 8, 55 -> 11, 61 -> 17). Majors 45..48 map to the legacy "1.N"
/// digit (45 -> 1, 48 -> 4). Throws UnknownMajor below 45.
int major_to_java_release(int major);

/// Inverse of major_to_java_release for releases >= 5.
int java_release_to_major(int release);

struct ScanWarning {
  std::string entry;
  std::string message;
  auto operator<=>(const ScanWarning&) const = default;
};

/// The constructs of one artifact keyed by (kind, owner, name, descriptor).
class ConstructIndex {
 public:
  ConstructIndex() = default;
  explicit ConstructIndex(std::optional<Coordinates> coordinates) : coordinates_(std::move(coordinates)) {}

  /// Returns false (and keeps the existing construct) on a duplicate key.
  bool insert(Construct construct);

  const std::optional<Coordinates>& coordinates() const { return coordinates_; }
  const std::map<ConstructKey, Construct>& constructs() const { return constructs_; }
  int max_class_file_major() const { return max_major_; }
  const Construct* find(const ConstructKey& key) const;
  std::size_t size() const { return constructs_.size(); }
  bool empty() const { return constructs_.empty(); }

  /// Fully-qualified names of the class-like constructs.
  std::set<std::string> class_names() const;
  std::set<std::string> packages() const;

 private:
  std::optional<Coordinates> coordinates_;
  std::map<ConstructKey, Construct> constructs_;
  int max_major_ = 0;
};

struct JarScan {
  ConstructIndex index;
  std::vector<ScanWarning> warnings;  // sorted by entry name
};

/// Parses every base-version ".class" entry of a JAR. module-info and
/// META-INF/versions/* entries are skipped. Per-entry failures become
/// warnings; an unreadable container throws UnreadableArchive.
JarScan scan_jar(const std::filesystem::path& archive, std::optional<Coordinates> coordinates = std::nullopt);

/// Same as scan_jar, over an in-memory archive.
JarScan scan_jar_bytes(std::span<const std::uint8_t> archive, const std::string& label,
                       std::optional<Coordinates> coordinates = std::nullopt);

std::string_view to_string(ConstructKind kind);

}  // namespace depexplain::jvm
