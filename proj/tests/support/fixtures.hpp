#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/pipeline.hpp"

namespace dxtest {

namespace fs = std::filesystem;

fs::path fixture_dir();
fs::path fixture(std::string_view relative);
fs::path jar(std::string_view stem);
fs::path listing(std::string_view stem);

std::string read_text(const fs::path& path);
std::vector<std::uint8_t> read_bytes(const fs::path& path);
void write_text(const fs::path& path, std::string_view text);

/// Bytes of one entry of a fixture JAR.
std::vector<std::uint8_t> jar_entry(const fs::path& jar, std::string_view entry);

/// A directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

/// One directory under fixtures/scenarios, described by its scenario.ini.
struct Scenario {
  std::string name;
  fs::path dir;
  depexplain::pipeline::AnalysisRequest request;
  std::string category;  // expected category name
  int exit_code = 0;     // expected CLI exit status

  fs::path golden() const { return dir / "expected.md"; }
  /// CLI arguments for `depexplain explain`, excluding --out.
  std::vector<std::string> cli_args() const;
};

std::vector<std::string> scenario_names();
Scenario load_scenario(std::string_view name);

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs the depexplain executable with `args`.
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace dxtest
