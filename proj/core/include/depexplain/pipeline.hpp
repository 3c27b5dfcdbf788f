#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "depexplain/categorize.hpp"
#include "depexplain/explain.hpp"

namespace depexplain::pipeline {

enum class OutputFormat { Markdown, Structured, Both };

struct AnalysisOptions {
  bool include_private = false;
  std::size_t excerpt_cap = 10;
  std::optional<std::filesystem::path> stoplist_path;
  explain::Glyphs glyphs;
};

struct AnalysisRequest {
  std::filesystem::path log_path;
  std::filesystem::path project_root;
  std::filesystem::path old_jar;
  std::filesystem::path new_jar;
  std::filesystem::path old_tree;
  std::filesystem::path new_tree;
  /// Resolved indirect dependencies, named `<artifact>-<version>.jar`.
  std::optional<std::filesystem::path> old_jars_dir;
  std::optional<std::filesystem::path> new_jars_dir;
  /// JARs of the client's other dependencies, checked for classes an added
  /// indirect dependency redeclares.
  std::optional<std::filesystem::path> client_jars_dir;
  std::filesystem::path output_dir;
  OutputFormat format = OutputFormat::Both;
  AnalysisOptions options;
};

struct AnalysisResult {
  categorize::CategorizedBreakage breakage;
  std::string markdown;
  std::string report_json;
};

/// Runs the whole analysis in memory. Throws depexplain::Error subclasses
/// (InputError, UnreadableArchive, MalformedTreeLine) for bad inputs.
AnalysisResult analyze(const AnalysisRequest& request);

/// analyze() plus writing explanation.md and/or report.json into
/// output_dir. Returns 0 when explained, 2 for UNEXPLAINED and 1 on input
/// errors, which are reported on `err`.
int run(const AnalysisRequest& request, std::ostream& err);

/// Prints the structured diff of two JARs. Returns 0, or 1 on input errors.
int dump_diff(const std::filesystem::path& old_jar, const std::filesystem::path& new_jar, bool include_private,
              std::ostream& out, std::ostream& err);

std::string tool_version();

}  // namespace depexplain::pipeline
