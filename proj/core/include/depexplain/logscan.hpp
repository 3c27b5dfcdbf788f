#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace depexplain::logscan {

enum class Severity { Error, Warning, Info };

struct SourcePosition {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  auto operator<=>(const SourcePosition&) const = default;
};

/// One compiler diagnostic extracted from a Maven build log.
///
/// `message` is the text after the location; javac continuation lines
/// ("symbol:", "location:", caret lines, "bad class file" details) are folded
/// into it, one per line. `raw` holds the ANSI-stripped source lines the
/// diagnostic was built from, so it always contains `message`.
struct CompilerDiagnostic {
  Severity severity = Severity::Error;
  std::optional<std::string> file_path;
  std::optional<SourcePosition> position;
  std::string message;
  std::string raw;

  /// First line of the message.
  std::string_view headline() const;
  bool operator==(const CompilerDiagnostic&) const = default;
};

enum class MarkerKind { CompilationErrorBanner, WrongClassFileVersion, WerrorEscalation };

/// A category signal found anywhere in the log. The version fields are set
/// only for WrongClassFileVersion and are always >= 45.0 there.
struct LogMarker {
  MarkerKind kind = MarkerKind::CompilationErrorBanner;
  std::optional<double> found_major;
  std::optional<double> expected_major;

  auto operator<=>(const LogMarker&) const = default;
};

struct LogReport {
  std::vector<CompilerDiagnostic> diagnostics;  // log order
  std::set<LogMarker> markers;

  bool has(MarkerKind kind) const;
  std::vector<LogMarker> markers_of(MarkerKind kind) const;
  std::vector<CompilerDiagnostic> with_severity(Severity severity) const;
};

/// Compiler error causes observed in breaking dependency updates.
enum class DiagnosticCause {
  CannotFindSymbol,
  ConstructorNotApplicable,
  PackageDoesNotExist,
  CannotAccess,
  StaticImportOnlyFromClasses,
  ExceptionNeverThrown,
  Other,
};

struct ParseOptions {
  /// When non-empty and a diagnostic path starts with it, the prefix is
  /// removed so the path becomes project-relative.
  std::string project_prefix;
};

/// Parses a Maven build log. Never fails: unparseable lines are skipped.
LogReport parse_build_log(std::string_view raw_log, const ParseOptions& options = {});

/// Returns the first cause whose canonical message fragment occurs in the
/// diagnostic's message, or Other.
DiagnosticCause classify_diagnostic(const CompilerDiagnostic& diagnostic);

/// Renders `[SEVERITY] path:[line,col] headline`, the normalized form of the
/// line the diagnostic was parsed from.
std::string render_diagnostic_line(const CompilerDiagnostic& diagnostic);

/// For PACKAGE_DOES_NOT_EXIST diagnostics, the package the compiler names.
std::optional<std::string> missing_package(const CompilerDiagnostic& diagnostic);

std::string strip_ansi(std::string_view text);

/// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view text);

std::string_view to_string(Severity severity);
std::string_view to_string(MarkerKind kind);
std::string_view to_string(DiagnosticCause cause);

}  // namespace depexplain::logscan
