#include "depexplain/client.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "depexplain/errors.hpp"

namespace depexplain::detail {
extern const std::string_view kDefaultStopList;
}

namespace depexplain::client {
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

constexpr std::array<std::string_view, 54> kReserved = {
    "abstract", "assert",     "boolean",   "break",     "byte",         "case",      "catch",
    "char",     "class",      "const",     "continue",  "default",      "do",        "double",
    "else",     "enum",       "extends",   "final",     "finally",      "float",     "for",
    "goto",     "if",         "implements", "import",   "instanceof",   "int",       "interface",
    "long",     "native",     "new",       "package",   "private",      "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",        "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",          "void",      "volatile",
    "while",    "true",       "false",     "null",      "_",
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return ident_part(static_cast<unsigned char>(c)); });
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
  }
  return out;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Names from javac's "symbol:" continuation lines ("symbol:   method getInstance()").
std::vector<std::string> symbol_hints(std::string_view message) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= message.size()) {
    auto end = message.find('\n', start);
    if (end == std::string_view::npos) end = message.size();
    auto line = trim(message.substr(start, end - start));
    start = end + 1;
    if (!line.starts_with("symbol:")) continue;
    auto rest = trim(line.substr(7));
    auto space = rest.find(' ');
    auto name = space == std::string_view::npos ? rest : trim(rest.substr(space + 1));
    name = name.substr(0, name.find_first_of("(< "));
    if (is_identifier(name)) out.emplace_back(name);
  }
  return out;
}

bool skip_dir(const fs::path& p) {
  auto name = p.filename().string();
  return name == ".git" || name == "target" || name == "node_modules";
}

std::vector<fs::path> find_files(const fs::path& root, std::string_view file_name) {
  std::vector<fs::path> out;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec), end;
  for (; !ec && it != end; it.increment(ec)) {
    if (it->is_directory(ec)) {
      if (skip_dir(it->path())) it.disable_recursion_pending();
      continue;
    }
    if (it->path().filename() == file_name) out.push_back(it->path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string project_relative(const fs::path& p, const fs::path& root) { return p.lexically_relative(root).generic_string(); }

bool passes_werror(const pt::ptree& tree) {
  for (const auto& [key, child] : tree) {
    if (key == "arg" || key == "compilerArgument" || key == "compilerArg") {
      std::istringstream words(child.data());
      std::string w;
      while (words >> w)
        if (w == "-Werror") return true;
    }
    if (passes_werror(child)) return true;
  }
  return false;
}

void collect_matrix(const YAML::Node& node, std::map<std::string, std::vector<std::string>>& matrix) {
  auto add_scalar = [&](const std::string& key, const YAML::Node& v) {
    if (v.IsScalar()) matrix[key].push_back(v.Scalar());
    if (v.IsSequence())
      for (const auto& item : v)
        if (item.IsScalar()) matrix[key].push_back(item.Scalar());
  };
  if (node.IsMap()) {
    for (const auto& kv : node) {
      auto key = kv.first.IsScalar() ? kv.first.Scalar() : std::string{};
      if (key == "matrix" && kv.second.IsMap()) {
        for (const auto& entry : kv.second) {
          auto name = entry.first.Scalar();
          if (name == "include" && entry.second.IsSequence()) {
            for (const auto& inc : entry.second)
              if (inc.IsMap())
                for (const auto& f : inc) add_scalar(f.first.Scalar(), f.second);
          } else if (name != "exclude") {
            add_scalar(name, entry.second);
          }
        }
      }
      collect_matrix(kv.second, matrix);
    }
  } else if (node.IsSequence()) {
    for (const auto& item : node) collect_matrix(item, matrix);
  }
}

void collect_java_versions(const YAML::Node& node, const std::map<std::string, std::vector<std::string>>& matrix,
                           std::set<int>& out) {
  auto take = [&](const std::string& text) {
    std::string s = text;
    for (auto& c : s)
      if (c == ',' || c == '\n') c = ' ';
    std::istringstream words(s);
    std::string w;
    while (words >> w) {
      if (auto r = parse_java_release(w)) out.insert(*r);
    }
  };
  auto value = [&](const YAML::Node& v) {
    if (!v.IsScalar()) return;
    auto s = v.Scalar();
    auto open = s.find("${{");
    if (open == std::string::npos) return take(s);
    auto close = s.find("}}", open);
    auto expr = std::string(trim(std::string_view(s).substr(open + 3, close == std::string::npos ? std::string::npos : close - open - 3)));
    if (expr.starts_with("matrix.")) {
      auto it = matrix.find(expr.substr(7));
      if (it != matrix.end())
        for (const auto& m : it->second) take(m);
    }
  };
  if (node.IsMap()) {
    for (const auto& kv : node) {
      if (kv.first.IsScalar() && kv.first.Scalar() == "java-version") {
        if (kv.second.IsSequence())
          for (const auto& item : kv.second) value(item);
        else
          value(kv.second);
      } else {
        collect_java_versions(kv.second, matrix, out);
      }
    }
  } else if (node.IsSequence()) {
    for (const auto& item : node) collect_java_versions(item, matrix, out);
  }
}

std::optional<int> resolved_release(std::string value, const std::map<std::string, std::string>& properties) {
  for (int hops = 0; hops < 8; ++hops) {
    auto t = std::string(trim(value));
    if (!(t.starts_with("${") && t.ends_with("}"))) return parse_java_release(t);
    auto it = properties.find(t.substr(2, t.size() - 3));
    if (it == properties.end()) return std::nullopt;
    value = it->second;
  }
  return std::nullopt;
}

std::optional<BuildJava> read_build_java(const pt::ptree& tree, std::string path) {
  auto project = tree.get_child_optional("project");
  if (!project) return std::nullopt;

  std::map<std::string, std::string> properties;
  if (auto props = project->get_child_optional("properties"))
    for (const auto& [key, child] : *props) properties[key] = child.data();

  BuildJava out;
  out.path = std::move(path);
  auto set = [&](std::optional<int>& slot, const std::string& raw) {
    if (auto r = resolved_release(raw, properties)) slot = r;
  };
  if (auto it = properties.find("maven.compiler.source"); it != properties.end()) set(out.source, it->second);
  if (auto it = properties.find("maven.compiler.target"); it != properties.end()) set(out.target, it->second);
  if (auto it = properties.find("maven.compiler.release"); it != properties.end()) set(out.release, it->second);

  auto scan_plugins = [&](const pt::ptree* plugins) {
    if (!plugins) return;
    for (const auto& [key, plugin] : *plugins) {
      if (key != "plugin" || plugin.get("artifactId", "") != "maven-compiler-plugin") continue;
      auto conf = plugin.get_child_optional("configuration");
      if (!conf) continue;
      if (auto v = conf->get_optional<std::string>("source")) set(out.source, *v);
      if (auto v = conf->get_optional<std::string>("target")) set(out.target, *v);
      if (auto v = conf->get_optional<std::string>("release")) set(out.release, *v);
    }
  };
  if (auto build = project->get_child_optional("build")) {
    if (auto pm = build->get_child_optional("pluginManagement.plugins")) scan_plugins(&*pm);
    if (auto p = build->get_child_optional("plugins")) scan_plugins(&*p);
  }
  if (!out.source && !out.target && !out.release) return std::nullopt;
  return out;
}

}  // namespace

StopList StopList::parse(std::string_view text) {
  StopList out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.names_.emplace(line);
  }
  return out;
}

StopList StopList::from_file(const fs::path& path) {
  auto text = read_file(path);
  if (!text) throw InputError(path.string(), "cannot read stop-list");
  return parse(*text);
}

const StopList& StopList::defaults() {
  static const StopList list = parse(detail::kDefaultStopList);
  return list;
}

bool is_reserved_word(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

std::vector<std::string> tokenize_identifiers(std::string_view line) {
  std::vector<std::string> out;
  auto t = trim(line);
  if (t == "*" || t.starts_with("* ") || t.starts_with("*/")) return out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(line[i]);
    if (c == '/' && i + 1 < n && line[i + 1] == '/') break;
    if (c == '/' && i + 1 < n && line[i + 1] == '*') {
      auto close = line.find("*/", i + 2);
      i = close == std::string_view::npos ? n : close + 2;
    } else if (c == '"' || c == '\'') {
      ++i;
      while (i < n && static_cast<unsigned char>(line[i]) != c) i += line[i] == '\\' ? 2 : 1;
      ++i;
    } else if (std::isdigit(c)) {
      while (i < n && (ident_part(static_cast<unsigned char>(line[i])) || line[i] == '.')) ++i;
    } else if (ident_start(c)) {
      auto b = i;
      while (i < n && ident_part(static_cast<unsigned char>(line[i]))) ++i;
      out.emplace_back(line.substr(b, i - b));
    } else {
      ++i;
    }
  }
  return out;
}

bool ClientErrorSite::imports_owner(std::string_view owner) const {
  std::string name(owner);
  std::replace(name.begin(), name.end(), '$', '.');
  std::string binary_package;
  if (auto dot = owner.rfind('.'); dot != std::string_view::npos) binary_package = owner.substr(0, dot);
  if (package_name && *package_name == binary_package) return true;

  auto parent = [](std::string_view s) {
    auto dot = s.rfind('.');
    return dot == std::string_view::npos ? std::string{} : std::string(s.substr(0, dot));
  };
  for (const auto& entry : imports) {
    std::string e = entry.starts_with("static ") ? parent(trim(std::string_view(entry).substr(7))) : entry;
    if (e.ends_with(".*")) {
      if (parent(name) == e.substr(0, e.size() - 2)) return true;
    } else if (name == e || name.starts_with(e + ".")) {
      return true;
    }
  }
  return false;
}

std::optional<std::string> resolve_source_path(const fs::path& project_root, std::string_view log_path) {
  std::string p(log_path);
  std::replace(p.begin(), p.end(), '\\', '/');
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= p.size()) {
    auto end = p.find('/', start);
    if (end == std::string::npos) end = p.size();
    if (end > start) parts.push_back(p.substr(start, end - start));
    start = end + 1;
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string candidate;
    for (std::size_t k = i; k < parts.size(); ++k) candidate += (k > i ? "/" : "") + parts[k];
    if (candidate.find("..") != std::string::npos) continue;
    std::error_code ec;
    if (fs::is_regular_file(project_root / candidate, ec)) return candidate;
  }
  return std::nullopt;
}

ClientErrorSite extract_constructs_at(const fs::path& project_root, const logscan::CompilerDiagnostic& diagnostic,
                                      const SiteOptions& options) {
  const StopList& stoplist = options.stoplist ? *options.stoplist : StopList::defaults();
  ClientErrorSite site;
  site.diagnostic = diagnostic;

  std::vector<std::string> tokens;
  if (diagnostic.file_path) site.resolved_path = resolve_source_path(project_root, *diagnostic.file_path);
  if (site.resolved_path) {
    auto lines = read_lines(project_root / *site.resolved_path);
    for (const auto& l : lines) {
      auto t = trim(l);
      if (t.starts_with("import ") && t.ends_with(";")) {
        site.imports.emplace(trim(t.substr(7, t.size() - 8)));
      } else if (t.starts_with("package ") && t.ends_with(";") && !site.package_name) {
        site.package_name = std::string(trim(t.substr(8, t.size() - 9)));
      }
    }
    if (diagnostic.position) {
      long line = diagnostic.position->line;
      long first = std::max<long>(1, line - options.context_lines);
      long last = std::min<long>(static_cast<long>(lines.size()), line + options.context_lines);
      for (long k = first; k <= last; ++k) {
        if (!site.source_line.empty()) site.source_line += '\n';
        site.source_line += lines[static_cast<std::size_t>(k - 1)];
        auto more = tokenize_identifiers(lines[static_cast<std::size_t>(k - 1)]);
        tokens.insert(tokens.end(), more.begin(), more.end());
      }
    }
  }
  auto hints = symbol_hints(diagnostic.message);
  tokens.insert(tokens.end(), hints.begin(), hints.end());

  std::set<std::string> seen;
  for (auto& t : tokens) {
    if (t.empty() || is_reserved_word(t) || stoplist.contains(t) || !seen.insert(t).second) continue;
    site.candidates.push_back(std::move(t));
  }
  return site;
}

std::optional<int> BuildJava::effective() const {
  if (release) return release;
  if (target) return target;
  return source;
}

std::optional<int> parse_java_release(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && (text.front() == '\'' || text.front() == '"') && text.back() == text.front())
    text = text.substr(1, text.size() - 2);
  if (text.starts_with("1.") && text.size() > 2) text.remove_prefix(2);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr == text.data() || value <= 0) return std::nullopt;
  if (ptr != text.data() + text.size() && *ptr != '.' && *ptr != '-' && *ptr != '+') return std::nullopt;
  return value;
}

ProjectConfigScan scan_config(const fs::path& project_root) {
  ProjectConfigScan out;

  // Parsed poms by project-relative path; unparsable ones are absent.
  std::map<std::string, pt::ptree> parsed;
  std::vector<std::string> pom_paths;
  for (const auto& pom : find_files(project_root, "pom.xml")) {
    auto rel = project_relative(pom, project_root);
    pom_paths.push_back(rel);
    pt::ptree tree;
    try {
      pt::read_xml(pom.string(), tree, pt::xml_parser::no_comments | pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
      out.warnings.push_back(rel + ": " + e.message());
      continue;
    }
    if (passes_werror(tree)) out.werror_files.push_back(rel);
    parsed.emplace(rel, std::move(tree));
  }
  if (!pom_paths.empty()) {
    bool has_root = std::find(pom_paths.begin(), pom_paths.end(), "pom.xml") != pom_paths.end();
    auto main_pom = has_root ? std::string("pom.xml") : pom_paths.front();
    if (auto it = parsed.find(main_pom); it != parsed.end()) out.build_java = read_build_java(it->second, main_pom);
  }

  std::error_code ec;
  auto workflows = project_root / ".github" / "workflows";
  std::vector<fs::path> files;
  if (fs::is_directory(workflows, ec)) {
    for (const auto& entry : fs::directory_iterator(workflows, ec)) {
      auto ext = entry.path().extension();
      if (entry.is_regular_file(ec) && (ext == ".yml" || ext == ".yaml")) files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    YAML::Node doc;
    try {
      doc = YAML::LoadFile(file.string());
    } catch (const YAML::Exception& e) {
      out.warnings.push_back(project_relative(file, project_root) + ": " + e.what());
      continue;
    }
    std::map<std::string, std::vector<std::string>> matrix;
    collect_matrix(doc, matrix);
    std::set<int> releases;
    collect_java_versions(doc, matrix, releases);
    if (!releases.empty())
      out.workflow_java.push_back({project_relative(file, project_root), {releases.begin(), releases.end()}});
  }
  return out;
}

}  // namespace depexplain::client
