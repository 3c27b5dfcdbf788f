#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/apidiff.hpp"
#include "depexplain/categorize.hpp"
#include "depexplain/deptree.hpp"
#include "depexplain/logscan.hpp"

namespace depexplain::report {

inline constexpr std::string_view kSchemaVersion = "1.0.0";

struct ReportInputs {
  std::optional<Coordinates> old_coordinates;
  std::optional<Coordinates> new_coordinates;
  logscan::LogReport log;
  apidiff::ApiDiff direct_diff;
  std::map<DependencyKey, apidiff::ApiDiff> indirect_diffs;
  deptree::TreeDelta delta;
  std::string tool_version;
  std::map<std::string, std::string> input_digests;  // input name -> "sha256:<hex>"
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
};

/// The structured report as pretty-printed JSON with a fixed key order.
std::string build_report(const categorize::CategorizedBreakage& breakage, const ReportInputs& inputs);

/// Structured form of one API diff, as printed by `depexplain diff`.
std::string diff_to_json(const apidiff::ApiDiff& diff);

/// The JSON schema the report validates against.
std::string_view report_schema();

std::string sha256_hex(std::span<const std::uint8_t> bytes);
/// "sha256:<hex>" of a file's contents. Throws InputError.
std::string file_digest(const std::filesystem::path& path);

}  // namespace depexplain::report
