#include "depexplain/report.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>

#include "depexplain/descriptor.hpp"
#include "depexplain/errors.hpp"

namespace depexplain::detail {
extern const std::string_view kReportSchema;
}

namespace depexplain::report {
namespace {

using json = nlohmann::ordered_json;

template <typename T>
json or_null(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json coordinates(const std::optional<Coordinates>& c) {
  if (!c) return nullptr;
  return json{{"group", c->group}, {"artifact", c->artifact}, {"version", c->version}};
}

json coordinates_text(const std::optional<Coordinates>& c) { return c ? json(c->to_string()) : json(nullptr); }

json diagnostic(const logscan::CompilerDiagnostic& d) {
  json j;
  j["severity"] = logscan::to_string(d.severity);
  j["file"] = or_null(d.file_path);
  j["line"] = d.position ? json(d.position->line) : json(nullptr);
  j["column"] = d.position ? json(d.position->column) : json(nullptr);
  j["message"] = d.message;
  j["cause"] = d.severity == logscan::Severity::Error ? json(logscan::to_string(logscan::classify_diagnostic(d)))
                                                      : json(nullptr);
  return j;
}

json change(const apidiff::ConstructChange& c) {
  json j;
  j["kind"] = jvm::to_string(c.construct.kind);
  j["owner"] = c.construct.owner;
  j["name"] = c.construct.name;
  j["descriptor"] = c.construct.descriptor;
  j["signature"] = jvm::pretty_signature(c.construct, jvm::NameStyle::Qualified);
  j["modifiers"] = c.construct.modifiers();
  j["deprecated"] = c.construct.deprecated;
  j["change"] = apidiff::to_string(c.change);
  json details = json::array();
  for (auto d : c.details) details.push_back(apidiff::to_string(d));
  j["details"] = details;
  if (c.counterpart)
    j["counterpart"] = json{{"descriptor", c.counterpart->descriptor},
                            {"signature", jvm::pretty_signature(*c.counterpart, jvm::NameStyle::Qualified)},
                            {"modifiers", c.counterpart->modifiers()},
                            {"deprecated", c.counterpart->deprecated}};
  else
    j["counterpart"] = nullptr;
  return j;
}

json delta_entry(const deptree::DeltaEntry& e) {
  json j;
  j["dependency"] = e.key.to_string();
  j["status"] = deptree::to_string(e.status);
  j["old_version"] = or_null(e.old_version);
  j["new_version"] = or_null(e.new_version);
  j["scope"] = or_null(e.new_scope ? e.new_scope : e.old_scope);
  j["compile_reachable"] = e.compile_reachable();
  json path = json::array();
  const auto& p = e.new_path ? e.new_path : e.old_path;
  if (p)
    for (const auto& c : *p) path.push_back(c.to_string());
  j["path"] = path;
  return j;
}

json diff_summary(const std::optional<std::string>& dependency, const apidiff::ApiDiff& d) {
  json j;
  j["dependency"] = or_null(dependency);
  j["old"] = coordinates_text(d.old_coordinates);
  j["new"] = coordinates_text(d.new_coordinates);
  j["added"] = d.count(apidiff::ChangeKind::Added);
  j["removed"] = d.count(apidiff::ChangeKind::Removed);
  j["modified"] = d.count(apidiff::ChangeKind::Modified);
  return j;
}

json site(const client::ClientErrorSite& s) {
  json j;
  j["file"] = s.resolved_path ? json(*s.resolved_path) : or_null(s.diagnostic.file_path);
  j["resolved"] = s.source_found();
  j["line"] = s.diagnostic.position ? json(s.diagnostic.position->line) : json(nullptr);
  j["column"] = s.diagnostic.position ? json(s.diagnostic.position->column) : json(nullptr);
  j["message"] = s.diagnostic.message;
  j["source_line"] = s.source_line;
  j["candidates"] = s.candidates;
  return j;
}

}  // namespace

std::string build_report(const categorize::CategorizedBreakage& b, const ReportInputs& in) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = json{{"name", "depexplain"}, {"version", in.tool_version}};
  j["category"] = categorize::to_string(b.category);
  j["confidence"] = b.confidence ? json(categorize::to_string(*b.confidence)) : json(nullptr);
  if (b.reason)
    j["reason"] = json{{"code", categorize::to_string(*b.reason)}, {"message", categorize::describe(*b.reason)}};
  else
    j["reason"] = nullptr;
  j["dependency"] = json{{"old", coordinates(in.old_coordinates)}, {"new", coordinates(in.new_coordinates)}};

  json culprits = json::array();
  for (const auto& c : b.culprits) {
    json cj;
    cj["origin"] = categorize::to_string(c.origin);
    cj["evidence"] = categorize::to_string(c.evidence);
    cj["confidence"] = categorize::to_string(c.confidence);
    cj["matched_name"] = c.matched_name;
    cj["site"] = site(c.site);
    cj["change"] = c.change ? change(*c.change) : json(nullptr);
    cj["indirect"] = c.indirect_entry ? delta_entry(*c.indirect_entry) : json(nullptr);
    cj["shadowed_artifact"] = or_null(c.shadowed_artifact);
    culprits.push_back(std::move(cj));
  }
  j["culprits"] = culprits;

  if (b.java_versions) {
    const auto& v = *b.java_versions;
    json workflows = json::array();
    for (const auto& w : v.outdated_workflows) workflows.push_back(json{{"path", w.path}, {"releases", w.releases}});
    j["java_versions"] = json{{"required_release", v.required_release},
                              {"required_major", v.required_major},
                              {"used_release", or_null(v.used_release)},
                              {"used_release_source", v.used_release_source},
                              {"mismatched_majors", v.mismatched_majors},
                              {"outdated_workflows", workflows}};
  } else {
    j["java_versions"] = nullptr;
  }

  if (b.werror) {
    json warnings = json::array();
    for (const auto& d : b.werror->escalated_warnings) warnings.push_back(diagnostic(d));
    json deprecated = json::array();
    for (const auto& c : b.werror->deprecated_changes) deprecated.push_back(change(c));
    j["werror"] = json{{"files", b.werror->files},
                       {"escalation_marker", b.werror->escalation_marker},
                       {"escalated_warnings", warnings},
                       {"deprecated_constructs", deprecated}};
  } else {
    j["werror"] = nullptr;
  }

  json indirect = json::array();
  for (const auto& [key, d] : in.indirect_diffs) indirect.push_back(diff_summary(key.to_string(), d));
  std::optional<std::string> direct_name;
  if (in.new_coordinates) direct_name = in.new_coordinates->group + ":" + in.new_coordinates->artifact;
  j["diffs"] = json{{"direct", diff_summary(direct_name, in.direct_diff)}, {"indirect", indirect}};

  json delta = json::array();
  for (const auto& e : in.delta.entries) delta.push_back(delta_entry(e));
  j["tree_delta"] = delta;

  json diags = json::array();
  for (const auto& d : in.log.diagnostics) diags.push_back(diagnostic(d));
  j["diagnostics"] = diags;

  json digests = json::object();
  for (const auto& [name, digest] : in.input_digests) digests[name] = digest;
  j["inputs"] = json{{"digests", digests}};
  j["notes"] = in.notes;
  j["warnings"] = in.warnings;
  return j.dump(2) + "\n";
}

std::string diff_to_json(const apidiff::ApiDiff& d) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["old"] = coordinates_text(d.old_coordinates);
  j["new"] = coordinates_text(d.new_coordinates);
  j["is_empty"] = d.is_empty();
  json changes = json::array();
  for (const auto& c : d.changes) changes.push_back(change(c));
  j["changes"] = changes;
  return j.dump(2) + "\n";
}

std::string_view report_schema() { return detail::kReportSchema; }

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot read file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return "sha256:" + sha256_hex(bytes);
}

}  // namespace depexplain::report
