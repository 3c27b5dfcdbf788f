#include "depexplain/categorize.hpp"

#include <algorithm>
#include <cmath>

#include "depexplain/descriptor.hpp"
#include "depexplain/errors.hpp"

namespace depexplain::categorize {
namespace {

using apidiff::ChangeDetail;
using apidiff::ChangeKind;
using apidiff::ConstructChange;
using logscan::MarkerKind;

bool breaks_compilation(const ConstructChange& c) {
  if (c.change == ChangeKind::Removed) return true;
  if (c.change != ChangeKind::Modified) return false;
  return std::any_of(c.details.begin(), c.details.end(), [](ChangeDetail d) { return d != ChangeDetail::DeprecatedAdded; });
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

bool mentions(std::string_view text, std::string_view word) {
  for (auto pos = text.find(word); pos != std::string_view::npos; pos = text.find(word, pos + 1)) {
    bool left = pos == 0 || !ident_char(text[pos - 1]);
    bool right = pos + word.size() == text.size() || !ident_char(text[pos + word.size()]);
    if (left && right) return true;
  }
  return false;
}

bool is_deprecation_warning(const logscan::CompilerDiagnostic& d) {
  return d.message.find("[deprecation]") != std::string::npos || d.message.find("has been deprecated") != std::string::npos;
}

bool is_escalated_warning(const logscan::CompilerDiagnostic& d) {
  if (!d.file_path) return false;
  if (d.severity == logscan::Severity::Warning) return true;
  return d.severity == logscan::Severity::Error &&
         (is_deprecation_warning(d) || d.message.starts_with("warning:"));
}

Confidence confidence_for(const client::ClientErrorSite& site, const jvm::Construct& c) {
  return site.imports_owner(c.owner) ? Confidence::Exact : Confidence::NameOnly;
}

std::optional<JavaVersionInfo> java_rule(const logscan::LogReport& report, const client::ProjectConfigScan& config,
                                         int new_jar_max_major) {
  auto markers = report.markers_of(MarkerKind::WrongClassFileVersion);
  if (markers.empty()) return std::nullopt;
  JavaVersionInfo info;
  int required = new_jar_max_major;
  std::optional<int> expected;
  std::set<double> found;
  for (const auto& m : markers) {
    if (m.found_major) {
      found.insert(*m.found_major);
      required = std::max(required, static_cast<int>(std::floor(*m.found_major)));
    }
    if (m.expected_major) {
      int e = static_cast<int>(std::floor(*m.expected_major));
      expected = expected ? std::min(*expected, e) : e;
    }
  }
  info.required_major = required;
  info.required_release = jvm::major_to_java_release(required);
  info.mismatched_majors.assign(found.begin(), found.end());

  for (const auto& w : config.workflow_java) {
    if (!w.releases.empty()) {
      int low = w.releases.front();
      info.used_release = info.used_release ? std::min(*info.used_release, low) : low;
      info.used_release_source = "workflow";
    }
    if (!w.releases.empty() && w.releases.front() < info.required_release) info.outdated_workflows.push_back(w);
  }
  if (!info.used_release && config.build_java && config.build_java->effective()) {
    info.used_release = config.build_java->effective();
    info.used_release_source = "build configuration";
  }
  if (!info.used_release && expected) {
    info.used_release = jvm::major_to_java_release(*expected);
    info.used_release_source = "build log";
  }
  return info;
}

std::optional<WerrorInfo> werror_rule(const logscan::LogReport& report, const apidiff::ApiDiff& direct_diff,
                                      const client::ProjectConfigScan& config) {
  WerrorInfo info;
  info.escalation_marker = report.has(MarkerKind::WerrorEscalation);
  bool deprecations = false;
  for (const auto& d : report.diagnostics) {
    if (!is_escalated_warning(d)) continue;
    info.escalated_warnings.push_back(d);
    deprecations = deprecations || is_deprecation_warning(d);
  }
  if (!info.escalation_marker && !(deprecations && !config.werror_files.empty())) return std::nullopt;
  info.files = config.werror_files;
  for (const auto& change : direct_diff.changes) {
    if (!change.details.contains(ChangeDetail::DeprecatedAdded)) continue;
    auto name = change.construct.source_name();
    bool seen = std::any_of(info.escalated_warnings.begin(), info.escalated_warnings.end(),
                            [&](const auto& d) { return mentions(d.message, name); });
    if (seen) info.deprecated_changes.push_back(change);
  }
  return info;
}

class CulpritSet {
 public:
  void add(Culprit c) {
    auto id = identity(c);
    if (std::find(ids_.begin(), ids_.end(), id) != ids_.end()) return;
    ids_.push_back(std::move(id));
    items_.push_back(std::move(c));
  }
  std::vector<Culprit> take() { return std::move(items_); }
  bool empty() const { return items_.empty(); }

 private:
  static std::string identity(const Culprit& c) {
    std::string id = logscan::render_diagnostic_line(c.site.diagnostic) + "|" + c.matched_name;
    if (c.change) {
      auto k = c.change->construct.key();
      id += "|" + std::string(jvm::to_string(k.kind)) + k.owner + "#" + k.name + k.descriptor;
    }
    if (c.indirect_entry) id += "|" + c.indirect_entry->key.to_string();
    return id;
  }
  std::vector<std::string> ids_;
  std::vector<Culprit> items_;
};

void match_changes(const std::vector<client::ClientErrorSite>& sites, const std::vector<ConstructChange>& changes,
                   Origin origin, const std::optional<deptree::DeltaEntry>& entry, Evidence evidence,
                   const std::set<std::string>* owners, CulpritSet& out) {
  for (const auto& site : sites) {
    for (const auto& candidate : site.candidates) {
      for (const auto& change : changes) {
        if (!breaks_compilation(change) || change.construct.source_name() != candidate) continue;
        if (owners && !owners->contains(change.construct.owner)) continue;
        Culprit c;
        c.site = site;
        c.change = change;
        c.origin = origin;
        c.indirect_entry = entry;
        c.confidence = confidence_for(site, change.construct);
        c.evidence = evidence;
        c.matched_name = candidate;
        out.add(std::move(c));
      }
    }
  }
}

client::ClientErrorSite site_for(const logscan::CompilerDiagnostic& d, const std::vector<client::ClientErrorSite>& sites) {
  for (const auto& s : sites)
    if (s.diagnostic == d) return s;
  client::ClientErrorSite s;
  s.diagnostic = d;
  return s;
}

std::vector<Culprit> indirect_rule(const logscan::LogReport& report, const deptree::TreeDelta& delta,
                                   const IndirectEvidence& indirect, const std::vector<client::ClientErrorSite>& sites,
                                   bool compile_scope) {
  CulpritSet out;
  for (const auto& entry : delta.entries) {
    if (entry.compile_reachable() != compile_scope) continue;
    switch (entry.status) {
      case deptree::DeltaStatus::Removed: {
        auto idx = indirect.removed_indexes.find(entry.key);
        if (idx != indirect.removed_indexes.end()) {
          std::vector<ConstructChange> gone;
          for (const auto& [key, c] : idx->second.constructs()) gone.push_back({c, ChangeKind::Removed, {}, std::nullopt});
          match_changes(sites, gone, Origin::Indirect, entry, Evidence::ConstructMatch, nullptr, out);
        }
        for (const auto& d : report.diagnostics) {
          if (d.severity != logscan::Severity::Error) continue;
          if (logscan::classify_diagnostic(d) != logscan::DiagnosticCause::PackageDoesNotExist) continue;
          auto pkg = logscan::missing_package(d);
          if (!pkg) continue;
          bool in_index = idx != indirect.removed_indexes.end() && idx->second.packages().contains(*pkg);
          bool by_group = *pkg == entry.key.group || pkg->starts_with(entry.key.group + ".");
          if (!in_index && !by_group) continue;
          Culprit c;
          c.site = site_for(d, sites);
          c.origin = Origin::Indirect;
          c.indirect_entry = entry;
          c.confidence = in_index ? Confidence::Exact : Confidence::NameOnly;
          c.evidence = Evidence::PackageMatch;
          c.matched_name = *pkg;
          out.add(std::move(c));
        }
        break;
      }
      case deptree::DeltaStatus::Updated: {
        auto it = indirect.updated_diffs.find(entry.key);
        if (it != indirect.updated_diffs.end())
          match_changes(sites, it->second.changes, Origin::Indirect, entry, Evidence::ConstructMatch, nullptr, out);
        break;
      }
      case deptree::DeltaStatus::Added: {
        auto it = indirect.added_shadowing.find(entry.key);
        if (it == indirect.added_shadowing.end() || it->second.overlapping_classes.empty()) break;
        const auto& shadow = it->second;
        CulpritSet found;
        if (shadow.shadow_diff)
          match_changes(sites, shadow.shadow_diff->changes, Origin::Indirect, entry, Evidence::ClassOverlap,
                        &shadow.overlapping_classes, found);
        auto matched = found.take();
        if (matched.empty()) {
          for (const auto& site : sites)
            for (const auto& candidate : site.candidates)
              for (const auto& cls : shadow.overlapping_classes) {
                if (jvm::simple_class_name(cls) != candidate) continue;
                Culprit c;
                c.site = site;
                c.origin = Origin::Indirect;
                c.indirect_entry = entry;
                c.confidence = site.imports_owner(cls) ? Confidence::Exact : Confidence::NameOnly;
                c.evidence = Evidence::ClassOverlap;
                c.matched_name = candidate;
                matched.push_back(std::move(c));
              }
        }
        for (auto& c : matched) {
          c.shadowed_artifact = shadow.existing_artifact;
          out.add(std::move(c));
        }
        break;
      }
      case deptree::DeltaStatus::Unchanged:
        break;
    }
  }
  return out.take();
}

Confidence lowest(const std::vector<Culprit>& culprits) {
  bool all_exact = std::all_of(culprits.begin(), culprits.end(), [](const Culprit& c) { return c.confidence == Confidence::Exact; });
  return all_exact ? Confidence::Exact : Confidence::NameOnly;
}

}  // namespace

CategorizedBreakage categorize(const logscan::LogReport& report, const apidiff::ApiDiff& direct_diff,
                               const deptree::TreeDelta& delta, const IndirectEvidence& indirect,
                               const std::vector<client::ClientErrorSite>& sites,
                               const client::ProjectConfigScan& config, int new_jar_max_major) {
  CategorizedBreakage out;

  if (auto java = java_rule(report, config, new_jar_max_major)) {
    out.category = BreakageCategory::JavaVersionIncompatibility;
    out.java_versions = std::move(java);
    return out;
  }
  if (auto werror = werror_rule(report, direct_diff, config)) {
    out.category = BreakageCategory::WerrorFailure;
    out.werror = std::move(werror);
    return out;
  }

  bool banner = report.has(MarkerKind::CompilationErrorBanner);
  if (banner) {
    CulpritSet direct;
    match_changes(sites, direct_diff.changes, Origin::Direct, std::nullopt, Evidence::ConstructMatch, nullptr, direct);
    if (!direct.empty()) {
      out.category = BreakageCategory::DirectCompilationFailure;
      out.culprits = direct.take();
      out.confidence = lowest(out.culprits);
      return out;
    }
    auto culprits = indirect_rule(report, delta, indirect, sites, true);
    if (culprits.empty()) culprits = indirect_rule(report, delta, indirect, sites, false);
    if (!culprits.empty()) {
      out.category = BreakageCategory::IndirectCompilationFailure;
      out.culprits = std::move(culprits);
      out.confidence = lowest(out.culprits);
      return out;
    }
  }

  out.category = BreakageCategory::Unexplained;
  bool tree_changed = std::any_of(delta.entries.begin(), delta.entries.end(),
                                  [](const auto& e) { return e.status != deptree::DeltaStatus::Unchanged; });
  if (report.markers.empty())
    out.reason = UnexplainedReason::NoSignal;
  else if (direct_diff.is_empty() && !tree_changed)
    out.reason = UnexplainedReason::EmptyDiffs;
  else
    out.reason = UnexplainedReason::NoMatches;
  return out;
}

std::string_view to_string(BreakageCategory category) {
  switch (category) {
    case BreakageCategory::JavaVersionIncompatibility: return "JAVA_VERSION_INCOMPATIBILITY";
    case BreakageCategory::WerrorFailure: return "WERROR_FAILURE";
    case BreakageCategory::DirectCompilationFailure: return "DIRECT_COMPILATION_FAILURE";
    case BreakageCategory::IndirectCompilationFailure: return "INDIRECT_COMPILATION_FAILURE";
    case BreakageCategory::Unexplained: return "UNEXPLAINED";
  }
  return "UNEXPLAINED";
}

std::string_view to_string(Origin origin) { return origin == Origin::Direct ? "DIRECT" : "INDIRECT"; }

std::string_view to_string(Confidence confidence) {
  return confidence == Confidence::Exact ? "EXACT" : "NAME_ONLY";
}

std::string_view to_string(Evidence evidence) {
  switch (evidence) {
    case Evidence::ConstructMatch: return "CONSTRUCT_MATCH";
    case Evidence::PackageMatch: return "PACKAGE_MATCH";
    case Evidence::ClassOverlap: return "CLASS_OVERLAP";
  }
  return "CONSTRUCT_MATCH";
}

std::string_view to_string(UnexplainedReason reason) {
  switch (reason) {
    case UnexplainedReason::NoSignal: return "NO_SIGNAL";
    case UnexplainedReason::EmptyDiffs: return "EMPTY_DIFFS";
    case UnexplainedReason::NoMatches: return "NO_MATCHES";
  }
  return "NO_MATCHES";
}

std::string_view describe(UnexplainedReason reason) {
  switch (reason) {
    case UnexplainedReason::NoSignal: return "no markers and no compilation banner";
    case UnexplainedReason::EmptyDiffs: return "the dependency diffs are empty";
    case UnexplainedReason::NoMatches: return "no client error site matches a changed construct";
  }
  return "";
}

}  // namespace depexplain::categorize
