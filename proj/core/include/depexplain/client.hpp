#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/logscan.hpp"

namespace depexplain::client {

/// Simple names that are never construct candidates. Java reserved words
/// (keywords plus true/false/null) are filtered regardless of the list.
class StopList {
 public:
  StopList() = default;
  /// One name per line; '#' starts a comment.
  static StopList parse(std::string_view text);
  /// Throws InputError when the file cannot be read.
  static StopList from_file(const std::filesystem::path& path);
  /// The list shipped in core/data/stoplist.txt.
  static const StopList& defaults();

  bool contains(std::string_view name) const { return names_.contains(std::string(name)); }
  const std::set<std::string>& names() const { return names_; }

 private:
  std::set<std::string> names_;
};

bool is_reserved_word(std::string_view word);

/// Java identifiers of one source line, in order of appearance. String and
/// character literals, comments and numeric literals are skipped.
std::vector<std::string> tokenize_identifiers(std::string_view line);

struct ClientErrorSite {
  logscan::CompilerDiagnostic diagnostic;
  /// Project-relative path of the source file when it was found.
  std::optional<std::string> resolved_path;
  std::string source_line;
  std::vector<std::string> candidates;  // unique, first occurrence first
  std::set<std::string> imports;        // as written, e.g. "java.util.*", "static a.B.c"
  std::optional<std::string> package_name;

  bool source_found() const { return resolved_path.has_value(); }
  /// Whether `owner` (a binary name such as "a.b.Outer$Inner") is reachable
  /// through an import, a wildcard import or the file's own package.
  bool imports_owner(std::string_view owner) const;
};

struct SiteOptions {
  const StopList* stoplist = nullptr;  // nullptr selects StopList::defaults()
  int context_lines = 0;               // extra lines read on each side
};

/// Maps a log path onto a file under `project_root`. Absolute CI paths are
/// tried suffix by suffix ("/home/runner/work/p/p/src/A.java" -> "src/A.java").
std::optional<std::string> resolve_source_path(const std::filesystem::path& project_root, std::string_view log_path);

/// Candidate construct names at a diagnostic's source line, plus names from
/// "symbol:" continuation lines. A missing file degrades to the latter only.
ClientErrorSite extract_constructs_at(const std::filesystem::path& project_root,
                                      const logscan::CompilerDiagnostic& diagnostic, const SiteOptions& options = {});

struct WorkflowJava {
  std::string path;
  std::vector<int> releases;  // sorted, unique
  bool operator==(const WorkflowJava&) const = default;
};

struct BuildJava {
  std::string path;
  std::optional<int> source;
  std::optional<int> target;
  std::optional<int> release;

  /// release, else target, else source.
  std::optional<int> effective() const;
  bool operator==(const BuildJava&) const = default;
};

struct ProjectConfigScan {
  std::vector<std::string> werror_files;  // pom.xml files passing -Werror to the compiler
  std::vector<WorkflowJava> workflow_java;
  std::optional<BuildJava> build_java;
  std::vector<std::string> warnings;  // unreadable or unparsable files
};

/// Parses "11", "1.8", "17.0.2" or "21-ea" into a Java release number.
std::optional<int> parse_java_release(std::string_view text);

ProjectConfigScan scan_config(const std::filesystem::path& project_root);

}  // namespace depexplain::client
