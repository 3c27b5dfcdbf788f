#include "support/fixtures.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <stdexcept>

#include "depexplain/zip_archive.hpp"

namespace dxtest {

fs::path fixture_dir() { return DEPEXPLAIN_FIXTURE_DIR; }
fs::path fixture(std::string_view relative) { return fixture_dir() / relative; }
fs::path jar(std::string_view stem) { return fixture_dir() / "jars" / (std::string(stem) + ".jar"); }
fs::path listing(std::string_view stem) { return fixture_dir() / "listings" / (std::string(stem) + ".listing"); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  auto text = read_text(path);
  return {text.begin(), text.end()};
}

void write_text(const fs::path& path, std::string_view text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::vector<std::uint8_t> jar_entry(const fs::path& jar_path, std::string_view entry) {
  auto archive = depexplain::zip::Archive::open(jar_path);
  for (const auto& e : archive.entries())
    if (e.name == entry) return archive.read(e);
  throw std::runtime_error(jar_path.string() + " has no entry " + std::string(entry));
}

TempDir::TempDir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = fs::temp_directory_path() / ("depexplain-test-" + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_ini(const fs::path& path) {
  std::map<std::string, std::string> out;
  auto text = read_text(path);
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    auto line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error(path.string() + ": bad line " + line);
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(fixture("scenarios")))
    if (fs::exists(entry.path() / "scenario.ini")) out.push_back(entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

Scenario load_scenario(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  s.dir = fixture("scenarios") / s.name;
  auto ini = read_ini(s.dir / "scenario.ini");
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = ini.find(key);
    return (s.dir / (it == ini.end() ? fallback : it->second)).lexically_normal();
  };
  auto& r = s.request;
  r.log_path = get("log", "build.log");
  r.project_root = get("project", "project");
  r.old_jar = get("old_jar", "");
  r.new_jar = get("new_jar", "");
  r.old_tree = get("old_tree", "old-tree.txt");
  r.new_tree = get("new_tree", "new-tree.txt");
  if (ini.contains("old_jars_dir")) r.old_jars_dir = get("old_jars_dir", "");
  if (ini.contains("new_jars_dir")) r.new_jars_dir = get("new_jars_dir", "");
  if (ini.contains("client_jars_dir")) r.client_jars_dir = get("client_jars_dir", "");
  s.category = ini.at("category");
  s.exit_code = std::stoi(ini.at("exit"));
  return s;
}

std::vector<std::string> Scenario::cli_args() const {
  const auto& r = request;
  std::vector<std::string> args{"explain",
                                "--log", r.log_path.string(),
                                "--project", r.project_root.string(),
                                "--old-jar", r.old_jar.string(),
                                "--new-jar", r.new_jar.string(),
                                "--old-tree", r.old_tree.string(),
                                "--new-tree", r.new_tree.string()};
  if (r.old_jars_dir) args.insert(args.end(), {"--old-jars-dir", r.old_jars_dir->string()});
  if (r.new_jars_dir) args.insert(args.end(), {"--new-jars-dir", r.new_jars_dir->string()});
  if (r.client_jars_dir) args.insert(args.end(), {"--client-jars-dir", r.client_jars_dir->string()});
  return args;
}

CommandResult run_cli(const std::vector<std::string>& args) {
  TempDir tmp;
  auto err_file = tmp.path() / "stderr";
  std::string cmd = shell_quote(DEPEXPLAIN_CLI_PATH);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>" + shell_quote(err_file.string());
  CommandResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(err_file)) result.err = read_text(err_file);
  return result;
}

}  // namespace dxtest
