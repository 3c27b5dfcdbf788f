#include "depexplain/apidiff.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "depexplain/descriptor.hpp"

namespace depexplain::apidiff {
namespace {

using jvm::Construct;
using jvm::ConstructIndex;
using jvm::ConstructKey;
using jvm::ConstructKind;

// Source-visible modifiers; ACC_SUPER, ACC_SYNCHRONIZED and friends are noise.
constexpr std::uint16_t kModifierMask = jvm::access::kPublic | jvm::access::kPrivate | jvm::access::kProtected |
                                        jvm::access::kStatic | jvm::access::kFinal | jvm::access::kAbstract;

bool is_exposed(const Construct& c, const DiffOptions& options) {
  if (options.include_private) return true;
  auto v = c.visibility();
  return v == jvm::Visibility::Public || v == jvm::Visibility::Protected;
}

std::string class_segment(const std::string& owner) {
  auto dot = owner.rfind('.');
  return dot == std::string::npos ? owner : owner.substr(dot + 1);
}

bool eligible(const Construct& c, const ConstructIndex& index, const DiffOptions& options) {
  if (c.is_synthetic() && !options.include_synthetic) return false;
  if (!is_exposed(c, options)) return false;
  if (jvm::is_class_like(c.kind)) return true;
  for (auto kind : {ConstructKind::Class, ConstructKind::Interface, ConstructKind::Enum, ConstructKind::Annotation}) {
    auto* owner = index.find({kind, c.owner, class_segment(c.owner), ""});
    if (owner) return is_exposed(*owner, options) && (options.include_synthetic || !owner->is_synthetic());
  }
  return true;
}

std::set<ChangeDetail> flag_details(const Construct& before, const Construct& after) {
  std::set<ChangeDetail> out;
  if ((before.access_flags & kModifierMask) != (after.access_flags & kModifierMask))
    out.insert(ChangeDetail::ModifiersChanged);
  if (after.visibility() < before.visibility()) out.insert(ChangeDetail::LessAccessible);
  if (!before.deprecated && after.deprecated) out.insert(ChangeDetail::DeprecatedAdded);
  return out;
}

std::set<ChangeDetail> signature_details(const Construct& before, const Construct& after) {
  std::set<ChangeDetail> out;
  if (before.kind == ConstructKind::Field) {
    out.insert(ChangeDetail::FieldTypeChanged);
    return out;
  }
  auto b = jvm::parse_method_descriptor(before.descriptor);
  auto a = jvm::parse_method_descriptor(after.descriptor);
  if (!b || !a) {
    out.insert(ChangeDetail::ParameterTypesChanged);
    return out;
  }
  if (b->parameters != a->parameters) out.insert(ChangeDetail::ParameterTypesChanged);
  if (b->return_type != a->return_type) out.insert(ChangeDetail::ReturnTypeChanged);
  return out;
}

bool fusible(ConstructKind kind) {
  return kind == ConstructKind::Method || kind == ConstructKind::Constructor || kind == ConstructKind::Field;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t ApiDiff::count(ChangeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(changes.begin(), changes.end(), [&](const ConstructChange& c) { return c.change == kind; }));
}

ApiDiff diff(const ConstructIndex& old_index, const ConstructIndex& new_index, const DiffOptions& options) {
  ApiDiff out;
  out.old_coordinates = old_index.coordinates();
  out.new_coordinates = new_index.coordinates();

  using Group = std::tuple<ConstructKind, std::string, std::string>;
  std::map<Group, std::vector<const Construct*>> removed, added;
  std::vector<ConstructChange> changes;

  for (const auto& [key, before] : old_index.constructs()) {
    const Construct* after = new_index.find(key);
    bool old_ok = eligible(before, old_index, options);
    if (!after) {
      if (old_ok) removed[{key.kind, key.owner, key.name}].push_back(&before);
      continue;
    }
    if (!old_ok && !eligible(*after, new_index, options)) continue;
    auto details = flag_details(before, *after);
    if (!details.empty()) changes.push_back({before, ChangeKind::Modified, std::move(details), *after});
  }
  for (const auto& [key, after] : new_index.constructs()) {
    if (old_index.find(key) || !eligible(after, new_index, options)) continue;
    added[{key.kind, key.owner, key.name}].push_back(&after);
  }

  for (auto& [group, gone] : removed) {
    auto it = added.find(group);
    if (it == added.end() || !fusible(std::get<0>(group))) {
      for (auto* c : gone) changes.push_back({*c, ChangeKind::Removed, {}, std::nullopt});
      continue;
    }
    auto& fresh = it->second;
    // Symmetric in (old, new) so that swapping the arguments pairs the same overloads.
    struct Pair {
      std::size_t distance;
      const std::string* low;
      const std::string* high;
      std::size_t r, a;
    };
    std::vector<Pair> pairs;
    for (std::size_t r = 0; r < gone.size(); ++r)
      for (std::size_t a = 0; a < fresh.size(); ++a) {
        const auto& x = gone[r]->descriptor;
        const auto& y = fresh[a]->descriptor;
        pairs.push_back({edit_distance(x, y), x < y ? &x : &y, x < y ? &y : &x, r, a});
      }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
      return std::tie(p.distance, *p.low, *p.high) < std::tie(q.distance, *q.low, *q.high);
    });
    std::vector<bool> used_r(gone.size()), used_a(fresh.size());
    for (const auto& p : pairs) {
      if (used_r[p.r] || used_a[p.a]) continue;
      used_r[p.r] = used_a[p.a] = true;
      const auto& before = *gone[p.r];
      const auto& after = *fresh[p.a];
      auto details = signature_details(before, after);
      details.merge(flag_details(before, after));
      changes.push_back({before, ChangeKind::Modified, std::move(details), after});
    }
    for (std::size_t r = 0; r < gone.size(); ++r)
      if (!used_r[r]) changes.push_back({*gone[r], ChangeKind::Removed, {}, std::nullopt});
    std::vector<const Construct*> rest;
    for (std::size_t a = 0; a < fresh.size(); ++a)
      if (!used_a[a]) rest.push_back(fresh[a]);
    fresh = std::move(rest);
  }
  for (const auto& [group, fresh] : added)
    for (auto* c : fresh) changes.push_back({*c, ChangeKind::Added, {}, std::nullopt});

  std::sort(changes.begin(), changes.end(), [](const ConstructChange& a, const ConstructChange& b) {
    return std::tie(a.construct.kind, a.construct.owner, a.construct.name, a.construct.descriptor, a.change) <
           std::tie(b.construct.kind, b.construct.owner, b.construct.name, b.construct.descriptor, b.change);
  });
  out.changes = std::move(changes);
  return out;
}

std::vector<Construct> suggestions_for(const Construct& culprit, const ApiDiff& diff) {
  std::vector<Construct> out;
  auto consider = [&](const Construct& c) {
    if (c.owner != culprit.owner || c.name != culprit.name) return;
    if (c.kind == culprit.kind && c.descriptor == culprit.descriptor) return;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto& change : diff.changes) {
    if (change.change == ChangeKind::Added) consider(change.construct);
    if (change.change == ChangeKind::Modified && change.counterpart) consider(*change.counterpart);
  }
  std::sort(out.begin(), out.end(), [&](const Construct& a, const Construct& b) {
    auto da = edit_distance(a.descriptor, culprit.descriptor);
    auto db = edit_distance(b.descriptor, culprit.descriptor);
    return std::tie(da, a.descriptor, a.kind) < std::tie(db, b.descriptor, b.kind);
  });
  return out;
}

std::string_view to_string(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::Added: return "ADDED";
    case ChangeKind::Removed: return "REMOVED";
    case ChangeKind::Modified: return "MODIFIED";
  }
  return "MODIFIED";
}

std::string_view to_string(ChangeDetail detail) {
  switch (detail) {
    case ChangeDetail::ParameterTypesChanged: return "PARAMETER_TYPES_CHANGED";
    case ChangeDetail::ReturnTypeChanged: return "RETURN_TYPE_CHANGED";
    case ChangeDetail::FieldTypeChanged: return "FIELD_TYPE_CHANGED";
    case ChangeDetail::ModifiersChanged: return "MODIFIERS_CHANGED";
    case ChangeDetail::LessAccessible: return "LESS_ACCESSIBLE";
    case ChangeDetail::DeprecatedAdded: return "DEPRECATED_ADDED";
  }
  return "MODIFIERS_CHANGED";
}

}  // namespace depexplain::apidiff
