#include "depexplain/pipeline.hpp"

#include <fstream>
#include <future>
#include <iterator>
#include <ostream>
#include <sstream>

#include "depexplain/apidiff.hpp"
#include "depexplain/client.hpp"
#include "depexplain/deptree.hpp"
#include "depexplain/errors.hpp"
#include "depexplain/logscan.hpp"
#include "depexplain/report.hpp"

namespace depexplain::pipeline {
namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path, std::string_view what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(path.string(), std::string(what) + " not found");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot read " + std::string(what));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void require_file(const fs::path& path, std::string_view what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(path.string(), std::string(what) + " not found");
}

deptree::DependencyNode read_tree(const fs::path& path) {
  auto text = read_text(path, "dependency tree");
  try {
    return deptree::parse_tree(text);
  } catch (const MalformedTreeLine& e) {
    throw InputError(path.string(), e.what());
  }
}

std::optional<fs::path> jar_in(const std::optional<fs::path>& dir, const std::string& artifact,
                               const std::optional<std::string>& version) {
  if (!dir || !version) return std::nullopt;
  auto p = *dir / (artifact + "-" + *version + ".jar");
  std::error_code ec;
  if (fs::is_regular_file(p, ec)) return p;
  return std::nullopt;
}

void collect_warnings(const std::string& label, const jvm::JarScan& scan, std::vector<std::string>& out) {
  for (const auto& w : scan.warnings) out.push_back(label + ": " + w.entry + ": " + w.message);
}

std::vector<fs::path> jars_under(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.path().extension() == ".jar" && entry.is_regular_file(ec)) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

categorize::IndirectEvidence gather_indirect(const AnalysisRequest& req, const deptree::TreeDelta& delta,
                                             const apidiff::DiffOptions& diff_options, std::vector<std::string>& warnings) {
  categorize::IndirectEvidence ev;
  std::vector<std::pair<std::string, jvm::ConstructIndex>> client_jars;
  bool client_loaded = false;

  for (const auto& e : delta.entries) {
    auto coords = [&](const std::optional<std::string>& v) { return Coordinates{e.key.group, e.key.artifact, v.value_or("")}; };
    switch (e.status) {
      case deptree::DeltaStatus::Updated: {
        auto before = jar_in(req.old_jars_dir, e.key.artifact, e.old_version);
        auto after = jar_in(req.new_jars_dir, e.key.artifact, e.new_version);
        if (!before || !after) {
          if (req.old_jars_dir || req.new_jars_dir)
            warnings.push_back("no JAR pair for updated dependency " + e.key.to_string() + "; using version evidence only");
          break;
        }
        auto old_scan = jvm::scan_jar(*before, coords(e.old_version));
        auto new_scan = jvm::scan_jar(*after, coords(e.new_version));
        collect_warnings(before->filename().string(), old_scan, warnings);
        collect_warnings(after->filename().string(), new_scan, warnings);
        ev.updated_diffs.emplace(e.key, apidiff::diff(old_scan.index, new_scan.index, diff_options));
        break;
      }
      case deptree::DeltaStatus::Removed: {
        if (auto jar = jar_in(req.old_jars_dir, e.key.artifact, e.old_version)) {
          auto scan = jvm::scan_jar(*jar, coords(e.old_version));
          collect_warnings(jar->filename().string(), scan, warnings);
          ev.removed_indexes.emplace(e.key, std::move(scan.index));
        }
        break;
      }
      case deptree::DeltaStatus::Added: {
        auto jar = jar_in(req.new_jars_dir, e.key.artifact, e.new_version);
        if (!jar || !req.client_jars_dir) break;
        if (!client_loaded) {
          for (const auto& p : jars_under(*req.client_jars_dir)) {
            auto scan = jvm::scan_jar(p);
            collect_warnings(p.filename().string(), scan, warnings);
            client_jars.emplace_back(p.stem().string(), std::move(scan.index));
          }
          client_loaded = true;
        }
        auto added = jvm::scan_jar(*jar, coords(e.new_version));
        collect_warnings(jar->filename().string(), added, warnings);
        for (const auto& [name, existing] : client_jars) {
          auto overlap = deptree::class_overlap(added.index, existing);
          if (overlap.empty()) continue;
          categorize::ShadowingEvidence shadow;
          shadow.existing_artifact = name;
          shadow.overlapping_classes = std::move(overlap);
          shadow.shadow_diff = apidiff::diff(existing, added.index, diff_options);
          ev.added_shadowing.emplace(e.key, std::move(shadow));
          break;
        }
        break;
      }
      case deptree::DeltaStatus::Unchanged:
        break;
    }
  }
  return ev;
}

}  // namespace

std::string tool_version() { return DEPEXPLAIN_VERSION; }

AnalysisResult analyze(const AnalysisRequest& req) {
  auto log_text = read_text(req.log_path, "build log");
  std::error_code ec;
  if (!fs::is_directory(req.project_root, ec)) throw InputError(req.project_root.string(), "project directory not found");
  require_file(req.old_jar, "old JAR");
  require_file(req.new_jar, "new JAR");
  for (const auto* dir : {&req.old_jars_dir, &req.new_jars_dir, &req.client_jars_dir})
    if (*dir && !fs::is_directory(**dir, ec)) throw InputError((*dir)->string(), "JAR directory not found");

  auto old_root = read_tree(req.old_tree);
  auto new_root = read_tree(req.new_tree);
  auto old_coords = old_root.coordinates();
  auto new_coords = new_root.coordinates();

  auto old_future = std::async(std::launch::async, [&] { return jvm::scan_jar(req.old_jar, old_coords); });
  auto new_scan = jvm::scan_jar(req.new_jar, new_coords);
  auto old_scan = old_future.get();

  auto log = logscan::parse_build_log(log_text);
  auto delta = deptree::diff_trees(old_root, new_root);

  apidiff::DiffOptions diff_options;
  diff_options.include_private = req.options.include_private;
  auto direct = apidiff::diff(old_scan.index, new_scan.index, diff_options);

  std::vector<std::string> warnings;
  collect_warnings("old JAR", old_scan, warnings);
  collect_warnings("new JAR", new_scan, warnings);
  auto indirect = gather_indirect(req, delta, diff_options, warnings);

  std::optional<client::StopList> custom;
  if (req.options.stoplist_path) custom = client::StopList::from_file(*req.options.stoplist_path);
  client::SiteOptions site_options;
  site_options.stoplist = custom ? &*custom : nullptr;
  std::vector<client::ClientErrorSite> sites;
  for (const auto& d : log.diagnostics)
    if (d.severity == logscan::Severity::Error && d.file_path)
      sites.push_back(client::extract_constructs_at(req.project_root, d, site_options));
  auto config = client::scan_config(req.project_root);
  warnings.insert(warnings.end(), config.warnings.begin(), config.warnings.end());

  AnalysisResult result;
  result.breakage =
      categorize::categorize(log, direct, delta, indirect, sites, config, new_scan.index.max_class_file_major());

  explain::ExplainContext ctx;
  ctx.old_coordinates = old_coords;
  ctx.new_coordinates = new_coords;
  ctx.report = log;
  ctx.direct_diff = direct;
  ctx.indirect_diffs = indirect.updated_diffs;
  for (const auto& [key, shadow] : indirect.added_shadowing)
    if (shadow.shadow_diff) ctx.indirect_diffs.emplace(key, *shadow.shadow_diff);
  ctx.excerpt_cap = req.options.excerpt_cap;
  ctx.glyphs = req.options.glyphs;
  ctx.tool_version = tool_version();
  ctx.project_root = req.project_root;
  result.markdown = explain::render_markdown(result.breakage, ctx);

  report::ReportInputs in;
  in.old_coordinates = old_coords;
  in.new_coordinates = new_coords;
  in.log = std::move(log);
  in.direct_diff = std::move(direct);
  in.indirect_diffs = std::move(indirect.updated_diffs);
  in.delta = std::move(delta);
  in.tool_version = tool_version();
  in.input_digests = {{"log", report::file_digest(req.log_path)},
                      {"new_jar", report::file_digest(req.new_jar)},
                      {"new_tree", report::file_digest(req.new_tree)},
                      {"old_jar", report::file_digest(req.old_jar)},
                      {"old_tree", report::file_digest(req.old_tree)}};
  in.notes = {
      "Categories are decided in fixed order: Java version, Werror, direct, indirect.",
      "Dependency trees are used as provided; whether they are pre- or post-mediation is not checked.",
      "Construct matching is name-based; confidence NAME_ONLY marks matches without import evidence.",
      "Only API signature and modifier changes are analyzed; behavioral changes are not detected.",
  };
  in.warnings = std::move(warnings);
  result.report_json = report::build_report(result.breakage, in);
  return result;
}

int run(const AnalysisRequest& req, std::ostream& err) {
  try {
    auto result = analyze(req);
    fs::create_directories(req.output_dir);
    auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream out(req.output_dir / name, std::ios::binary);
      out << text;
      if (!out) throw InputError((req.output_dir / name).string(), "cannot write output");
    };
    if (req.format != OutputFormat::Structured) write("explanation.md", result.markdown);
    if (req.format != OutputFormat::Markdown) write("report.json", result.report_json);
    return result.breakage.category == categorize::BreakageCategory::Unexplained ? 2 : 0;
  } catch (const Error& e) {
    err << "depexplain: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "depexplain: " << e.path1().string() << ": " << e.code().message() << "\n";
  }
  return 1;
}

int dump_diff(const fs::path& old_jar, const fs::path& new_jar, bool include_private, std::ostream& out,
              std::ostream& err) {
  try {
    require_file(old_jar, "old JAR");
    require_file(new_jar, "new JAR");
    auto before = jvm::scan_jar(old_jar);
    auto after = jvm::scan_jar(new_jar);
    for (const auto* scan : {&before, &after})
      for (const auto& w : scan->warnings) err << "depexplain: warning: " << w.entry << ": " << w.message << "\n";
    apidiff::DiffOptions options;
    options.include_private = include_private;
    out << report::diff_to_json(apidiff::diff(before.index, after.index, options));
    return 0;
  } catch (const Error& e) {
    err << "depexplain: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace depexplain::pipeline
