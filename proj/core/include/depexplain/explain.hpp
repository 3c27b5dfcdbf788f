#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depexplain/apidiff.hpp"
#include "depexplain/categorize.hpp"
#include "depexplain/coordinates.hpp"
#include "depexplain/logscan.hpp"

namespace depexplain::explain {

/// Section markers. The defaults are GitHub emoji shortcodes; use plain
/// ASCII (or empty strings) for other renderers.
struct Glyphs {
  std::string error = ":x:";
  std::string warning = ":warning:";
  std::string suggestion = ":bulb:";
  std::string construct = ":wrench:";
  std::string file = ":page_facing_up:";
  std::string tree = ":deciduous_tree:";
  std::string java = ":coffee:";

  static Glyphs plain();
};

struct ExplainContext {
  std::optional<Coordinates> old_coordinates;
  std::optional<Coordinates> new_coordinates;
  logscan::LogReport report;
  apidiff::ApiDiff direct_diff;
  std::map<DependencyKey, apidiff::ApiDiff> indirect_diffs;
  std::size_t excerpt_cap = 10;  // log lines per excerpt
  Glyphs glyphs;
  std::string tool_version;
  /// When set, warning locations are printed relative to it, or marked external.
  std::optional<std::filesystem::path> project_root;
};

struct Section {
  std::string heading;
  int level = 3;
  std::vector<std::string> blocks;  // Markdown blocks, joined by blank lines
};

struct Explanation {
  categorize::BreakageCategory category = categorize::BreakageCategory::Unexplained;
  std::string title;
  std::string summary;
  std::vector<Section> sections;
  std::vector<std::string> suggestions;  // rendered, also present as a section
  std::vector<std::string> log_excerpt;
  std::map<std::string, std::string> metadata;
};

/// Instantiates the template for the breakage's category (a stub for
/// UNEXPLAINED). Throws TemplateDataMissing when the breakage lacks the data
/// its category requires.
Explanation build_explanation(const categorize::CategorizedBreakage& breakage, const ExplainContext& context);

std::string render_markdown(const Explanation& explanation);

inline std::string render_markdown(const categorize::CategorizedBreakage& breakage, const ExplainContext& context) {
  return render_markdown(build_explanation(breakage, context));
}

}  // namespace depexplain::explain
