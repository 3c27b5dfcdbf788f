#include "depexplain/explain.hpp"

#include <algorithm>
#include <set>

#include "depexplain/descriptor.hpp"
#include "depexplain/errors.hpp"

namespace depexplain::explain {
namespace {

using categorize::BreakageCategory;
using categorize::Culprit;

std::string code(std::string_view s) { return "`" + std::string(s) + "`"; }

std::string plural(std::size_t n, std::string_view one, std::string_view many) {
  return std::to_string(n) + " " + std::string(n == 1 ? one : many);
}

std::string heading(const std::string& glyph, const std::string& text) {
  return glyph.empty() ? text : glyph + " " + text;
}

std::string fenced(const std::vector<std::string>& lines) {
  std::string fence = "```";
  for (const auto& l : lines)
    while (l.find(fence) != std::string::npos) fence += '`';
  std::string out = fence + "\n";
  for (const auto& l : lines) out += l + "\n";
  return out + fence;
}

std::string bullets(const std::vector<std::string>& items, int indent = 0) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += "\n";
    out += std::string(static_cast<std::size_t>(indent), ' ') + "- " + item;
  }
  return out;
}

struct Excerpt {
  std::vector<std::string> lines;
  std::size_t omitted = 0;
};

Excerpt excerpt(const std::vector<logscan::CompilerDiagnostic>& diagnostics, std::size_t cap) {
  Excerpt out;
  std::set<std::string> seen;
  for (const auto& d : diagnostics) {
    std::size_t start = 0;
    while (start <= d.raw.size()) {
      auto end = d.raw.find('\n', start);
      if (end == std::string::npos) end = d.raw.size();
      auto line = d.raw.substr(start, end - start);
      start = end + 1;
      if (line.empty() || !seen.insert(line).second) continue;
      if (out.lines.size() < cap)
        out.lines.push_back(std::move(line));
      else
        ++out.omitted;
    }
  }
  return out;
}

void add_excerpt_blocks(const Excerpt& e, std::vector<std::string>& blocks) {
  if (e.lines.empty()) return;
  blocks.push_back(fenced(e.lines));
  if (e.omitted) blocks.push_back("_" + plural(e.omitted, "more log line", "more log lines") + " not shown._");
}

std::string dependency_name(const ExplainContext& ctx) {
  const auto& c = ctx.new_coordinates ? ctx.new_coordinates : ctx.old_coordinates;
  return c ? code(c->group + ":" + c->artifact) : std::string("the updated dependency");
}

std::string version_change(const ExplainContext& ctx) {
  if (!ctx.old_coordinates || !ctx.new_coordinates) return {};
  return " from " + code(ctx.old_coordinates->version) + " to " + code(ctx.new_coordinates->version);
}

std::string title_for(BreakageCategory category, const ExplainContext& ctx) {
  std::string what;
  switch (category) {
    case BreakageCategory::JavaVersionIncompatibility: what = "Java version incompatibility"; break;
    case BreakageCategory::WerrorFailure: what = "Werror failure"; break;
    case BreakageCategory::DirectCompilationFailure: what = "Direct compilation failure"; break;
    case BreakageCategory::IndirectCompilationFailure: what = "Indirect compilation failure"; break;
    case BreakageCategory::Unexplained: what = "Unexplained failure"; break;
  }
  std::string dep;
  if (ctx.old_coordinates && ctx.new_coordinates)
    dep = " after updating " + code(ctx.new_coordinates->group + ":" + ctx.new_coordinates->artifact) + " " +
          ctx.old_coordinates->version + " → " + ctx.new_coordinates->version;
  return what + dep;
}

std::string describe_change(const apidiff::ConstructChange& change) {
  if (change.change != apidiff::ChangeKind::Modified) {
    std::string s(apidiff::to_string(change.change));
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  }
  std::vector<std::string> parts;
  for (auto d : change.details) {
    switch (d) {
      case apidiff::ChangeDetail::ParameterTypesChanged: parts.push_back("parameter types changed"); break;
      case apidiff::ChangeDetail::ReturnTypeChanged: parts.push_back("return type changed"); break;
      case apidiff::ChangeDetail::FieldTypeChanged: parts.push_back("field type changed"); break;
      case apidiff::ChangeDetail::ModifiersChanged: parts.push_back("modifiers changed"); break;
      case apidiff::ChangeDetail::LessAccessible: parts.push_back("less accessible"); break;
      case apidiff::ChangeDetail::DeprecatedAdded: parts.push_back("deprecated"); break;
    }
  }
  std::string out = "modified (";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + ")";
}

std::string kind_label(jvm::ConstructKind kind) {
  std::string s(jvm::to_string(kind));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string location(const client::ClientErrorSite& site) {
  const auto& d = site.diagnostic;
  std::string line = d.position ? ":" + std::to_string(d.position->line) : std::string{};
  if (site.resolved_path) return code(*site.resolved_path + line);
  if (d.file_path) return code(*d.file_path + line) + " (external)";
  return "(no source location)";
}

std::string group_key(const Culprit& c) {
  std::string key = c.indirect_entry ? c.indirect_entry->key.to_string() + "|" : "|";
  if (c.change) {
    auto k = c.change->construct.key();
    return key + std::string(jvm::to_string(k.kind)) + "|" + k.owner + "|" + k.name + "|" + k.descriptor;
  }
  return key + std::string(categorize::to_string(c.evidence)) + "|" + c.matched_name;
}

struct ConstructGroup {
  std::vector<const Culprit*> culprits;
};

// Groups culprits by construct, keeping first-appearance order.
std::vector<ConstructGroup> group_culprits(const std::vector<const Culprit*>& culprits) {
  std::vector<std::string> keys;
  std::vector<ConstructGroup> out;
  for (const auto* c : culprits) {
    auto key = group_key(*c);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      out.push_back({{c}});
    } else {
      out[static_cast<std::size_t>(it - keys.begin())].culprits.push_back(c);
    }
  }
  return out;
}

Section construct_section(const ConstructGroup& group, const ExplainContext& ctx, int level) {
  const Culprit& first = *group.culprits.front();
  Section s;
  s.level = level;
  std::vector<std::string> facts;
  if (first.change) {
    const auto& c = first.change->construct;
    s.heading = heading(ctx.glyphs.construct, code(jvm::pretty_signature(c)));
    facts.push_back("Kind: " + kind_label(c.kind));
    facts.push_back("Owner: " + code(c.owner));
    facts.push_back("Change: " + describe_change(*first.change));
    if (first.change->counterpart) {
      auto now = jvm::pretty_signature(*first.change->counterpart);
      if (now != jvm::pretty_signature(c)) facts.push_back("New signature: " + code(now));
    }
  } else if (first.evidence == categorize::Evidence::PackageMatch) {
    s.heading = heading(ctx.glyphs.construct, "Package " + code(first.matched_name));
    facts.push_back("The compiler reports that package " + code(first.matched_name) +
                    " does not exist; it was provided by the removed dependency.");
  } else {
    s.heading = heading(ctx.glyphs.construct, "Class " + code(first.matched_name));
    facts.push_back("The class is declared by more than one dependency on the classpath.");
  }
  if (first.shadowed_artifact) facts.push_back("Also declared by: " + code(*first.shadowed_artifact));

  std::vector<std::string> places;
  std::vector<logscan::CompilerDiagnostic> diags;
  bool exact = true;
  for (const auto* c : group.culprits) {
    auto where = location(c->site);
    if (std::find(places.begin(), places.end(), where) == places.end()) places.push_back(where);
    if (std::find(diags.begin(), diags.end(), c->site.diagnostic) == diags.end()) diags.push_back(c->site.diagnostic);
    exact = exact && c->confidence == categorize::Confidence::Exact;
  }
  facts.push_back("Used in:\n" + bullets(places, 2));
  facts.push_back(std::string("Match: ") + (exact ? "exact (the client imports the owner)" : "by name only"));
  s.blocks.push_back(bullets(facts));
  Excerpt e = excerpt(diags, ctx.excerpt_cap);
  if (!e.lines.empty()) {
    s.blocks.push_back("Related log lines:");
    add_excerpt_blocks(e, s.blocks);
  }
  return s;
}

std::vector<std::string> suggestions(const std::vector<Culprit>& culprits, const ExplainContext& ctx) {
  std::vector<std::string> out;
  for (const auto& c : culprits) {
    if (!c.change || c.evidence != categorize::Evidence::ConstructMatch) continue;
    const apidiff::ApiDiff* diff = &ctx.direct_diff;
    if (c.origin == categorize::Origin::Indirect) {
      if (!c.indirect_entry) continue;
      auto it = ctx.indirect_diffs.find(c.indirect_entry->key);
      if (it == ctx.indirect_diffs.end()) continue;
      diff = &it->second;
    }
    const auto& old = c.change->construct;
    for (const auto& s : apidiff::suggestions_for(old, *diff)) {
      auto line = "Replace " + code(jvm::pretty_signature(old)) + " with " + code(jvm::pretty_signature(s)) +
                  " in " + code(jvm::simple_class_name(s.owner));
      if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(std::move(line));
    }
  }
  return out;
}

// Compiler errors only; Maven's own "[ERROR]" chatter carries no source location.
std::vector<logscan::CompilerDiagnostic> errors_of(const logscan::LogReport& report) {
  std::vector<logscan::CompilerDiagnostic> out;
  for (const auto& d : report.diagnostics)
    if (d.severity == logscan::Severity::Error && d.file_path) out.push_back(d);
  return out;
}

void add_unmatched_errors(Explanation& ex, const std::vector<Culprit>& culprits, const ExplainContext& ctx) {
  std::vector<logscan::CompilerDiagnostic> rest;
  for (const auto& d : errors_of(ctx.report)) {
    bool matched = std::any_of(culprits.begin(), culprits.end(), [&](const Culprit& c) { return c.site.diagnostic == d; });
    if (!matched) rest.push_back(d);
  }
  Excerpt e = excerpt(rest, ctx.excerpt_cap);
  if (e.lines.empty()) return;
  Section s{heading(ctx.glyphs.file, "Other errors in the build log"), 3, {}};
  add_excerpt_blocks(e, s.blocks);
  ex.log_excerpt = e.lines;
  ex.sections.push_back(std::move(s));
}

void add_suggestions(Explanation& ex, const std::vector<Culprit>& culprits, const ExplainContext& ctx) {
  ex.suggestions = suggestions(culprits, ctx);
  if (ex.suggestions.empty()) return;
  ex.sections.push_back({heading(ctx.glyphs.suggestion, "Suggestions"), 3, {bullets(ex.suggestions)}});
}

void direct_template(Explanation& ex, const categorize::CategorizedBreakage& b, const ExplainContext& ctx) {
  std::vector<const Culprit*> all;
  for (const auto& c : b.culprits) {
    if (!c.change) throw TemplateDataMissing("direct culprit without a construct change");
    all.push_back(&c);
  }
  auto groups = group_culprits(all);
  ex.summary = "The update of " + dependency_name(ctx) + version_change(ctx) + " changes **" +
               plural(groups.size(), "construct**", "constructs**") + " used by the client, causing the compilation failure.";
  for (const auto& g : groups) ex.sections.push_back(construct_section(g, ctx, 3));
  add_suggestions(ex, b.culprits, ctx);
  add_unmatched_errors(ex, b.culprits, ctx);
}

std::string describe_status(const deptree::DeltaEntry& e) {
  switch (e.status) {
    case deptree::DeltaStatus::Removed: return "removed (was " + code(e.old_version.value_or("?")) + ")";
    case deptree::DeltaStatus::Added: return "added at " + code(e.new_version.value_or("?"));
    case deptree::DeltaStatus::Updated:
      return "updated from " + code(e.old_version.value_or("?")) + " to " + code(e.new_version.value_or("?"));
    case deptree::DeltaStatus::Unchanged: return "unchanged at " + code(e.new_version.value_or("?"));
  }
  return {};
}

void indirect_template(Explanation& ex, const categorize::CategorizedBreakage& b, const ExplainContext& ctx) {
  std::vector<DependencyKey> order;
  std::map<DependencyKey, std::vector<const Culprit*>> by_dep;
  std::map<DependencyKey, const deptree::DeltaEntry*> entries;
  for (const auto& c : b.culprits) {
    if (!c.indirect_entry) throw TemplateDataMissing("indirect culprit without a tree delta entry");
    const auto& key = c.indirect_entry->key;
    if (!by_dep.contains(key)) order.push_back(key);
    by_dep[key].push_back(&c);
    entries.emplace(key, &*c.indirect_entry);
  }
  std::size_t constructs = 0;
  for (const auto& key : order) constructs += group_culprits(by_dep[key]).size();
  ex.summary = "The update of " + dependency_name(ctx) + version_change(ctx) + " changes " +
               plural(order.size(), "indirect dependency", "indirect dependencies") + ". **" +
               plural(constructs, "construct**", "constructs**") + " from " + (order.size() == 1 ? "it" : "them") +
               (constructs == 1 ? " causes" : " cause") + " the compilation failure.";
  for (const auto& key : order) {
    const auto& entry = *entries[key];
    Section dep{heading(ctx.glyphs.tree, "Indirect dependency " + code(key.to_string())), 3, {}};
    std::vector<std::string> facts{"Status: " + describe_status(entry)};
    auto scope = entry.new_scope ? entry.new_scope : entry.old_scope;
    if (scope) facts.push_back("Scope: " + *scope);
    dep.blocks.push_back(bullets(facts));
    const auto& path = entry.status == deptree::DeltaStatus::Removed ? entry.old_path : entry.new_path;
    if (path && !path->empty()) {
      auto drawn = deptree::render_path(*path);
      if (!drawn.empty() && drawn.back() == '\n') drawn.pop_back();
      dep.blocks.push_back(std::string("Position in the dependency tree") +
                           (entry.status == deptree::DeltaStatus::Removed ? " of the old version:" : ":"));
      std::vector<std::string> lines;
      std::size_t start = 0;
      while (start <= drawn.size()) {
        auto end = drawn.find('\n', start);
        if (end == std::string::npos) end = drawn.size();
        lines.push_back(drawn.substr(start, end - start));
        start = end + 1;
      }
      dep.blocks.push_back(fenced(lines));
    }
    ex.sections.push_back(std::move(dep));
    for (const auto& g : group_culprits(by_dep[key])) ex.sections.push_back(construct_section(g, ctx, 4));
  }
  add_suggestions(ex, b.culprits, ctx);
  add_unmatched_errors(ex, b.culprits, ctx);
}

void java_template(Explanation& ex, const categorize::CategorizedBreakage& b, const ExplainContext& ctx) {
  if (!b.java_versions) throw TemplateDataMissing("Java version category without version data");
  const auto& j = *b.java_versions;
  std::string used = j.used_release ? "Java " + std::to_string(*j.used_release) : std::string("an older Java release");
  ex.summary = "The new version of " + dependency_name(ctx) + " requires **Java " + std::to_string(j.required_release) +
               "** (class-file major " + std::to_string(j.required_major) + "), but the build uses **" + used + "**.";

  std::string who = ctx.new_coordinates ? code(ctx.new_coordinates->artifact + " " + ctx.new_coordinates->version)
                                        : std::string("the new dependency");
  std::string table = "| | Java release | Class-file major |\n|---|---|---|\n";
  table += "| Required by " + who + " | " + std::to_string(j.required_release) + " | " + std::to_string(j.required_major) + " |\n";
  table += "| Used by the build";
  if (!j.used_release_source.empty()) table += " (" + j.used_release_source + ")";
  if (j.used_release)
    table += " | " + std::to_string(*j.used_release) + " | " +
             (*j.used_release >= 5 ? std::to_string(jvm::java_release_to_major(*j.used_release)) : std::string("?")) + " |";
  else
    table += " | unknown | unknown |";
  ex.sections.push_back({heading(ctx.glyphs.java, "Java versions"), 3, {table}});

  if (!j.outdated_workflows.empty()) {
    std::vector<std::string> items;
    for (const auto& w : j.outdated_workflows) {
      std::string releases;
      for (std::size_t i = 0; i < w.releases.size(); ++i) releases += (i ? ", " : "") + std::to_string(w.releases[i]);
      items.push_back(code(w.path) + " declares Java " + releases);
    }
    ex.sections.push_back({heading(ctx.glyphs.file, "Workflow files to update"), 3,
                           {"These workflow files need to be updated to Java " + std::to_string(j.required_release) +
                                " or later:",
                            bullets(items)}});
  }

  Excerpt e = excerpt(errors_of(ctx.report), ctx.excerpt_cap);
  if (!e.lines.empty()) {
    Section s{heading(ctx.glyphs.error, "Errors in the build log"), 3, {}};
    add_excerpt_blocks(e, s.blocks);
    ex.log_excerpt = e.lines;
    ex.sections.push_back(std::move(s));
  }
}

std::string warning_item(const logscan::CompilerDiagnostic& d, const ExplainContext& ctx) {
  std::string where;
  if (d.file_path) {
    std::optional<std::string> resolved;
    if (ctx.project_root) resolved = client::resolve_source_path(*ctx.project_root, *d.file_path);
    std::string line = d.position ? ":" + std::to_string(d.position->line) : std::string{};
    where = resolved ? code(*resolved + line) : code(*d.file_path + line) + (ctx.project_root ? " (external)" : "");
  }
  return where + (where.empty() ? "" : " ") + std::string(d.headline());
}

void werror_template(Explanation& ex, const categorize::CategorizedBreakage& b, const ExplainContext& ctx) {
  if (!b.werror) throw TemplateDataMissing("Werror category without Werror data");
  const auto& w = *b.werror;
  ex.summary = "The compiler treats warnings as errors (`-Werror`), and the new version of " + dependency_name(ctx) +
               " introduces warnings in the client code.";

  std::vector<std::string> deprecations, others;
  for (const auto& d : w.escalated_warnings) {
    bool dep = d.message.find("[deprecation]") != std::string::npos ||
               d.message.find("has been deprecated") != std::string::npos;
    auto item = warning_item(d, ctx);
    auto& list = dep ? deprecations : others;
    if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(std::move(item));
  }
  auto capped = [&](std::vector<std::string> items) {
    std::vector<std::string> blocks;
    std::size_t omitted = items.size() > ctx.excerpt_cap ? items.size() - ctx.excerpt_cap : 0;
    items.resize(std::min(items.size(), ctx.excerpt_cap));
    blocks.push_back(bullets(items));
    if (omitted) blocks.push_back("_" + plural(omitted, "more warning", "more warnings") + " not shown._");
    return blocks;
  };
  if (!deprecations.empty())
    ex.sections.push_back({heading(ctx.glyphs.warning, "Deprecation warnings escalated to errors"), 3, capped(deprecations)});
  if (!others.empty())
    ex.sections.push_back({heading(ctx.glyphs.warning, "Other warnings escalated to errors"), 3, capped(others)});

  if (!w.deprecated_changes.empty()) {
    std::vector<std::string> items;
    for (const auto& c : w.deprecated_changes)
      items.push_back(code(jvm::pretty_signature(c.construct)) + " in " + code(c.construct.owner));
    ex.sections.push_back({heading(ctx.glyphs.construct, "Constructs deprecated in the new version"), 3, {bullets(items)}});
  }
  if (!w.files.empty()) {
    std::vector<std::string> items;
    for (const auto& f : w.files) items.push_back(code(f));
    ex.sections.push_back({heading(ctx.glyphs.file, "Build configuration files enabling -Werror"), 3,
                           {plural(w.files.size(), "configuration file contains", "configuration files contain") +
                                " the enabled option:",
                            bullets(items)}});
  }
}

void unexplained_template(Explanation& ex, const categorize::CategorizedBreakage& b, const ExplainContext& ctx) {
  auto reason = b.reason.value_or(categorize::UnexplainedReason::NoMatches);
  ex.summary = "No explanation could be generated for the update of " + dependency_name(ctx) + version_change(ctx) +
               ": " + std::string(categorize::describe(reason)) + ".";
  Excerpt e = excerpt(errors_of(ctx.report), ctx.excerpt_cap);
  if (!e.lines.empty()) {
    Section s{heading(ctx.glyphs.error, "Errors in the build log"), 3, {}};
    add_excerpt_blocks(e, s.blocks);
    ex.log_excerpt = e.lines;
    ex.sections.push_back(std::move(s));
  }
}

}  // namespace

Glyphs Glyphs::plain() { return {"[x]", "[!]", "[i]", "[*]", "[f]", "[t]", "[j]"}; }

Explanation build_explanation(const categorize::CategorizedBreakage& breakage, const ExplainContext& context) {
  Explanation ex;
  ex.category = breakage.category;
  ex.title = title_for(breakage.category, context);
  ex.metadata["tool"] = "depexplain";
  ex.metadata["version"] = context.tool_version;
  bool needs_culprits = breakage.category == BreakageCategory::DirectCompilationFailure ||
                        breakage.category == BreakageCategory::IndirectCompilationFailure;
  if (needs_culprits == breakage.culprits.empty())
    throw TemplateDataMissing(needs_culprits ? "category requires culprits" : "culprits given for a category without them");
  switch (breakage.category) {
    case BreakageCategory::JavaVersionIncompatibility: java_template(ex, breakage, context); break;
    case BreakageCategory::WerrorFailure: werror_template(ex, breakage, context); break;
    case BreakageCategory::DirectCompilationFailure: direct_template(ex, breakage, context); break;
    case BreakageCategory::IndirectCompilationFailure: indirect_template(ex, breakage, context); break;
    case BreakageCategory::Unexplained: unexplained_template(ex, breakage, context); break;
  }
  return ex;
}

std::string render_markdown(const Explanation& ex) {
  std::string out = "## " + ex.title + "\n\n";
  std::string category(categorize::to_string(ex.category));
  out += "**Category:** " + category + "\n\n";
  out += ex.summary + "\n";
  for (const auto& s : ex.sections) {
    out += "\n" + std::string(static_cast<std::size_t>(s.level), '#') + " " + s.heading + "\n";
    for (const auto& b : s.blocks) out += "\n" + b + "\n";
  }
  out += "\n---\n";
  if (ex.category == BreakageCategory::DirectCompilationFailure ||
      ex.category == BreakageCategory::IndirectCompilationFailure)
    out += "Only API signature and modifier changes are analyzed; behavioral changes are not detected.\n";
  auto v = ex.metadata.find("version");
  out += "<sub>Generated by depexplain " + (v == ex.metadata.end() ? std::string{} : v->second) + "</sub>\n";
  return out;
}

}  // namespace depexplain::explain
