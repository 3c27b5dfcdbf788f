#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/classfile.hpp"
#include "depexplain/coordinates.hpp"

namespace depexplain::apidiff {

enum class ChangeKind { Added, Removed, Modified };

enum class ChangeDetail {
  ParameterTypesChanged,
  ReturnTypeChanged,
  FieldTypeChanged,
  ModifiersChanged,
  LessAccessible,
  DeprecatedAdded,
};

/// `construct` is the old side for REMOVED and MODIFIED and the new side for
/// ADDED. `details` and `counterpart` are set only for MODIFIED.
struct ConstructChange {
  jvm::Construct construct;
  ChangeKind change = ChangeKind::Added;
  std::set<ChangeDetail> details;
  std::optional<jvm::Construct> counterpart;

  bool operator==(const ConstructChange&) const = default;
};

struct ApiDiff {
  std::optional<Coordinates> old_coordinates;
  std::optional<Coordinates> new_coordinates;
  std::vector<ConstructChange> changes;  // sorted by construct key

  bool is_empty() const { return changes.empty(); }
  std::size_t count(ChangeKind kind) const;
};

struct DiffOptions {
  /// Also compare private and package-private constructs.
  bool include_private = false;
  bool include_synthetic = false;
};

/// Structural difference between two versions of one artifact.
///
/// A REMOVED and an ADDED member sharing kind, owner and name are fused into
/// one MODIFIED change. Overloads pair up greedily by smallest descriptor edit
/// distance, ties going to the lexicographically smaller descriptor pair.
ApiDiff diff(const jvm::ConstructIndex& old_index, const jvm::ConstructIndex& new_index,
             const DiffOptions& options = {});

/// Replacement candidates for a culprit: ADDED constructs and MODIFIED
/// counterparts with the culprit's owner and name, nearest descriptor first.
/// The culprit's own signature is never returned.
std::vector<jvm::Construct> suggestions_for(const jvm::Construct& culprit, const ApiDiff& diff);

/// Levenshtein distance over characters.
std::size_t edit_distance(std::string_view a, std::string_view b);

std::string_view to_string(ChangeKind kind);
std::string_view to_string(ChangeDetail detail);

}  // namespace depexplain::apidiff
