#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/apidiff.hpp"
#include "depexplain/client.hpp"
#include "depexplain/deptree.hpp"
#include "depexplain/logscan.hpp"

namespace depexplain::categorize {

enum class BreakageCategory {
  JavaVersionIncompatibility,
  WerrorFailure,
  DirectCompilationFailure,
  IndirectCompilationFailure,
  Unexplained,
};

enum class Origin { Direct, Indirect };

/// EXACT: the site imports (or shares a package with) the culprit's owner.
/// NAME_ONLY: the match rests on a simple name alone.
enum class Confidence { Exact, NameOnly };

enum class Evidence {
  ConstructMatch,  // a site candidate names a changed construct
  PackageMatch,    // "package X does not exist" names a package of a removed dependency
  ClassOverlap,    // an added dependency redeclares classes of another one
};

struct Culprit {
  client::ClientErrorSite site;
  /// Absent for package-level evidence, which names no single construct.
  std::optional<apidiff::ConstructChange> change;
  Origin origin = Origin::Direct;
  std::optional<deptree::DeltaEntry> indirect_entry;
  Confidence confidence = Confidence::NameOnly;
  Evidence evidence = Evidence::ConstructMatch;
  std::string matched_name;                      // site candidate or package
  std::optional<std::string> shadowed_artifact;  // for ClassOverlap
};

struct JavaVersionInfo {
  int required_release = 0;
  int required_major = 0;
  std::optional<int> used_release;
  std::string used_release_source;  // "workflow", "build configuration" or "build log"
  std::vector<double> mismatched_majors;
  std::vector<client::WorkflowJava> outdated_workflows;  // declaring a release below the required one
};

struct WerrorInfo {
  std::vector<std::string> files;
  std::vector<logscan::CompilerDiagnostic> escalated_warnings;
  std::vector<apidiff::ConstructChange> deprecated_changes;
  bool escalation_marker = false;
};

enum class UnexplainedReason { NoSignal, EmptyDiffs, NoMatches };

struct CategorizedBreakage {
  BreakageCategory category = BreakageCategory::Unexplained;
  std::vector<Culprit> culprits;
  std::optional<JavaVersionInfo> java_versions;
  std::optional<WerrorInfo> werror;
  std::optional<Confidence> confidence;  // lowest culprit confidence
  std::optional<UnexplainedReason> reason;
};

struct ShadowingEvidence {
  std::string existing_artifact;  // JAR file name without ".jar"
  std::set<std::string> overlapping_classes;
  /// Diff from the existing artifact to the added one.
  std::optional<apidiff::ApiDiff> shadow_diff;
};

/// Artifact-level evidence for indirect dependencies, keyed like the tree delta.
/// Every map may be partial when JARs were not supplied.
struct IndirectEvidence {
  std::map<DependencyKey, apidiff::ApiDiff> updated_diffs;
  std::map<DependencyKey, jvm::ConstructIndex> removed_indexes;
  std::map<DependencyKey, ShadowingEvidence> added_shadowing;
};

/// Applies the rules in fixed order: Java version, Werror, direct, indirect,
/// then UNEXPLAINED. Never fails.
CategorizedBreakage categorize(const logscan::LogReport& report, const apidiff::ApiDiff& direct_diff,
                               const deptree::TreeDelta& delta, const IndirectEvidence& indirect,
                               const std::vector<client::ClientErrorSite>& sites,
                               const client::ProjectConfigScan& config, int new_jar_max_major = 0);

std::string_view to_string(BreakageCategory category);
std::string_view to_string(Origin origin);
std::string_view to_string(Confidence confidence);
std::string_view to_string(Evidence evidence);
std::string_view to_string(UnexplainedReason reason);
/// Human-readable form, e.g. "no markers and no compilation banner".
std::string_view describe(UnexplainedReason reason);

}  // namespace depexplain::categorize
