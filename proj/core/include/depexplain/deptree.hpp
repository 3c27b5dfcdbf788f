#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/classfile.hpp"
#include "depexplain/coordinates.hpp"

namespace depexplain::deptree {

struct DependencyNode {
  std::string group;
  std::string artifact;
  std::string packaging;
  std::optional<std::string> classifier;
  std::string version;
  std::optional<std::string> scope;
  std::vector<DependencyNode> children;

  Coordinates coordinates() const { return {group, artifact, version}; }
  DependencyKey key() const { return {group, artifact}; }
  bool operator==(const DependencyNode&) const = default;
};

/// Parses `mvn dependency:tree` output. Lines may carry an "[INFO] " prefix;
/// nodes are `group:artifact:packaging[:classifier]:version[:scope]` behind
/// `+- `, `\- ` and `|  ` connectors, three columns per level. Throws
/// MalformedTreeLine with the 1-based line number.
DependencyNode parse_tree(std::string_view text);

/// Inverse of parse_tree (without the "[INFO] " prefix).
std::string render_tree(const DependencyNode& root);

enum class DeltaStatus { Unchanged, Removed, Added, Updated };

struct DeltaEntry {
  DependencyKey key;
  DeltaStatus status = DeltaStatus::Unchanged;
  std::optional<std::string> old_version;
  std::optional<std::string> new_version;
  std::optional<std::vector<Coordinates>> old_path;  // root first, this node last
  std::optional<std::vector<Coordinates>> new_path;
  std::optional<std::string> old_scope;
  std::optional<std::string> new_scope;

  /// test/provided dependencies cannot break compilation of main sources.
  bool compile_reachable() const;
  bool operator==(const DeltaEntry&) const = default;
};

struct TreeDelta {
  std::vector<DeltaEntry> entries;  // sorted by key, keys unique

  const DeltaEntry* find(const DependencyKey& key) const;
  std::vector<const DeltaEntry*> with_status(DeltaStatus status) const;
};

/// Compares the descendants of two roots by (group, artifact), keeping the
/// shallowest occurrence of each key. Versions compare as plain strings.
TreeDelta diff_trees(const DependencyNode& old_root, const DependencyNode& new_root);

/// Class names declared by both indexes.
std::set<std::string> class_overlap(const jvm::ConstructIndex& added, const jvm::ConstructIndex& existing);

/// Draws a root-to-node path with dependency:tree connectors, one node per line.
std::string render_path(const std::vector<Coordinates>& path);

std::string_view to_string(DeltaStatus status);

}  // namespace depexplain::deptree
