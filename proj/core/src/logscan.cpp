#include "depexplain/logscan.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>

namespace depexplain::logscan {
namespace {

constexpr std::string_view kBanner = "COMPILATION ERROR";
constexpr std::string_view kWrongVersion = "class file has wrong version ";
constexpr std::string_view kShouldBe = ", should be ";
constexpr std::string_view kWerror = "warnings found and -Werror specified";

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (is_space(s.back()) || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  s = rtrim(s);
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// GitHub Actions raw logs prefix every line with an ISO-8601 timestamp.
std::string_view drop_ci_timestamp(std::string_view line) {
  if (line.size() < 21 || !all_digits(line.substr(0, 4)) || line[4] != '-' || line[10] != 'T') return line;
  auto space = line.find(' ');
  if (space == std::string_view::npos || line[space - 1] != 'Z') return line;
  return line.substr(space + 1);
}

struct SeverityToken {
  Severity severity;
  std::string_view body;  // text after the token and one separating space
};

std::optional<SeverityToken> severity_token(std::string_view line) {
  static constexpr std::pair<std::string_view, Severity> kTokens[] = {
      {"[ERROR]", Severity::Error},
      {"[WARNING]", Severity::Warning},
      {"[WARN]", Severity::Warning},
      {"[INFO]", Severity::Info},
  };
  for (const auto& [token, severity] : kTokens) {
    if (line.starts_with(token)) {
      auto body = line.substr(token.size());
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      return SeverityToken{severity, body};
    }
  }
  return std::nullopt;
}

struct Location {
  std::string_view path;
  std::optional<SourcePosition> position;
  std::string_view message;
};

std::optional<int> to_int(std::string_view digits) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

bool plausible_path(std::string_view path) {
  return !path.empty() && !is_space(path.front()) && path.find(": ") == std::string_view::npos;
}

// Matches `<path>:[<line>,<col>] <message>`, or `<path>.java: <message>`.
std::optional<Location> match_location(std::string_view body) {
  for (std::size_t pos = body.find(":["); pos != std::string_view::npos; pos = body.find(":[", pos + 1)) {
    auto close = body.find(']', pos);
    if (close == std::string_view::npos) break;
    auto inside = body.substr(pos + 2, close - pos - 2);
    auto comma = inside.find(',');
    if (comma == std::string_view::npos) continue;
    auto line = to_int(inside.substr(0, comma));
    auto column = to_int(inside.substr(comma + 1));
    if (!line || !column || !all_digits(inside.substr(0, comma)) || !all_digits(inside.substr(comma + 1))) continue;
    if (*line < 1 || *column < 1) continue;
    auto path = body.substr(0, pos);
    if (!plausible_path(path)) return std::nullopt;
    auto message = body.substr(close + 1);
    if (!message.empty() && message.front() == ' ') message.remove_prefix(1);
    return Location{path, SourcePosition{*line, *column}, message};
  }
  auto java = body.find(".java: ");
  if (java != std::string_view::npos) {
    auto path = body.substr(0, java + 5);
    if (!plausible_path(path)) return std::nullopt;
    return Location{path, std::nullopt, body.substr(java + 7)};
  }
  return std::nullopt;
}

std::string normalize_path(std::string_view path, const ParseOptions& options) {
  std::string out(path);
  std::replace(out.begin(), out.end(), '\\', '/');
  if (!options.project_prefix.empty()) {
    std::string prefix = options.project_prefix;
    std::replace(prefix.begin(), prefix.end(), '\\', '/');
    if (!prefix.ends_with('/')) prefix.push_back('/');
    if (out.starts_with(prefix) && out.size() > prefix.size()) out.erase(0, prefix.size());
  }
  return out;
}

std::optional<double> parse_decimal(std::string_view text, std::size_t& consumed) {
  std::size_t end = 0;
  while (end < text.size() && (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.')) ++end;
  if (end == 0) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + end, value);
  if (ec != std::errc{}) return std::nullopt;
  consumed = static_cast<std::size_t>(ptr - text.data());
  return value;
}

void detect_markers(std::string_view line, std::set<LogMarker>& markers) {
  if (line.find(kBanner) != std::string_view::npos) markers.insert({MarkerKind::CompilationErrorBanner, {}, {}});
  if (line.find(kWerror) != std::string_view::npos) markers.insert({MarkerKind::WerrorEscalation, {}, {}});
  for (auto at = line.find(kWrongVersion); at != std::string_view::npos; at = line.find(kWrongVersion, at + 1)) {
    auto rest = line.substr(at + kWrongVersion.size());
    std::size_t used = 0;
    auto found = parse_decimal(rest, used);
    if (!found || !rest.substr(used).starts_with(kShouldBe)) continue;
    rest = rest.substr(used + kShouldBe.size());
    auto expected = parse_decimal(rest, used);
    if (!expected || *found < 45.0 || *expected < 45.0) continue;
    markers.insert({MarkerKind::WrongClassFileVersion, found, expected});
  }
}

bool is_caret_line(std::string_view text) {
  auto t = trim(text);
  return t == "^";
}

bool looks_like_continuation_body(std::string_view body) {
  if (body.size() >= 2 && is_space(body[0]) && is_space(body[1])) return !trim(body).empty();
  auto t = trim(body);
  return t.starts_with("symbol:") || t.starts_with("location:") || t == "^";
}

void fold(CompilerDiagnostic& diag, std::string_view text) {
  diag.message.push_back('\n');
  diag.message.append(text);
  diag.raw.push_back('\n');
  diag.raw.append(text);
}

}  // namespace

std::string_view CompilerDiagnostic::headline() const {
  std::string_view m = message;
  return m.substr(0, m.find('\n'));
}

bool LogReport::has(MarkerKind kind) const {
  return std::any_of(markers.begin(), markers.end(), [kind](const LogMarker& m) { return m.kind == kind; });
}

std::vector<LogMarker> LogReport::markers_of(MarkerKind kind) const {
  std::vector<LogMarker> out;
  for (const auto& m : markers)
    if (m.kind == kind) out.push_back(m);
  return out;
}

std::vector<CompilerDiagnostic> LogReport::with_severity(Severity severity) const {
  std::vector<CompilerDiagnostic> out;
  for (const auto& d : diagnostics)
    if (d.severity == severity) out.push_back(d);
  return out;
}

std::string strip_ansi(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\x1b') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 1 >= text.size()) break;
    char next = text[i + 1];
    if (next == '[') {
      // CSI: parameters and intermediates, then one final byte in 0x40..0x7e.
      std::size_t j = i + 2;
      while (j < text.size() && !(text[j] >= 0x40 && text[j] <= 0x7e)) ++j;
      i = j;
    } else if (next == ']') {
      // OSC: terminated by BEL or ESC '\'.
      std::size_t j = i + 2;
      while (j < text.size() && text[j] != '\a' && !(text[j] == '\x1b' && j + 1 < text.size() && text[j + 1] == '\\')) ++j;
      i = (j < text.size() && text[j] == '\x1b') ? j + 1 : j;
    } else {
      i += 1;
    }
  }
  return out;
}

std::string sanitize_utf8(std::string_view text) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2, min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3, min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4, min = 0x10000;
    }
    bool ok = len != 0 && i + len <= text.size();
    std::uint32_t cp = ok ? (c & (0xFF >> (len + 1))) : 0;
    for (std::size_t k = 1; ok && k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
    if (ok) {
      out.append(text.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      ++i;
    }
  }
  return out;
}

LogReport parse_build_log(std::string_view raw_log, const ParseOptions& options) {
  LogReport report;
  const std::string text = strip_ansi(sanitize_utf8(raw_log));
  std::string_view rest = text;

  // Index of the diagnostic that continuation lines fold into, if any.
  std::optional<std::size_t> open;

  while (!rest.empty()) {
    auto nl = rest.find('\n');
    std::string_view line = rtrim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);

    detect_markers(line, report.markers);
    line = drop_ci_timestamp(line);
    auto token = severity_token(line);

    if (!token) {
      if (open && !trim(line).empty() && (is_space(line.front()) || is_caret_line(line))) {
        fold(report.diagnostics[*open], line);
      } else {
        open.reset();
      }
      continue;
    }

    if (open && token->severity == report.diagnostics[*open].severity && looks_like_continuation_body(token->body)) {
      fold(report.diagnostics[*open], token->body);
      continue;
    }
    open.reset();

    auto location = match_location(token->body);
    if (token->severity == Severity::Info && !location) continue;
    if (trim(token->body).empty()) continue;

    CompilerDiagnostic diag;
    diag.severity = token->severity;
    diag.raw = std::string(line);
    if (location) {
      diag.file_path = normalize_path(location->path, options);
      diag.position = location->position;
      diag.message = std::string(location->message);
    } else {
      diag.message = std::string(token->body);
    }
    report.diagnostics.push_back(std::move(diag));
    if (location) open = report.diagnostics.size() - 1;
  }
  return report;
}

DiagnosticCause classify_diagnostic(const CompilerDiagnostic& diagnostic) {
  std::string_view m = diagnostic.message;
  auto has = [m](std::string_view fragment) { return m.find(fragment) != std::string_view::npos; };
  if (has("cannot find symbol")) return DiagnosticCause::CannotFindSymbol;
  if (has("constructor") && has("cannot be applied to given types")) return DiagnosticCause::ConstructorNotApplicable;
  if (auto p = m.find("package"); p != std::string_view::npos && m.find("does not exist", p) != std::string_view::npos)
    return DiagnosticCause::PackageDoesNotExist;
  if (has("cannot access")) return DiagnosticCause::CannotAccess;
  if (has("static import only from classes and interfaces")) return DiagnosticCause::StaticImportOnlyFromClasses;
  if (has("is never thrown in body of corresponding try statement")) return DiagnosticCause::ExceptionNeverThrown;
  return DiagnosticCause::Other;
}

std::optional<std::string> missing_package(const CompilerDiagnostic& diagnostic) {
  std::string_view m = diagnostic.headline();
  constexpr std::string_view kPackage = "package ";
  constexpr std::string_view kSuffix = " does not exist";
  auto p = m.find(kPackage);
  if (p == std::string_view::npos) return std::nullopt;
  auto name = m.substr(p + kPackage.size());
  auto end = name.find(kSuffix);
  if (end == std::string_view::npos || end == 0) return std::nullopt;
  name = name.substr(0, end);
  if (name.find(' ') != std::string_view::npos) return std::nullopt;
  return std::string(name);
}

std::string render_diagnostic_line(const CompilerDiagnostic& diagnostic) {
  std::string out = "[";
  out += to_string(diagnostic.severity);
  out += "]";
  if (diagnostic.file_path) {
    out += " " + *diagnostic.file_path;
    if (diagnostic.position) {
      out += ":[" + std::to_string(diagnostic.position->line) + "," + std::to_string(diagnostic.position->column) + "]";
    } else {
      out += ":";
    }
  }
  out += " ";
  out += diagnostic.headline();
  return out;
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Error: return "ERROR";
    case Severity::Warning: return "WARNING";
    case Severity::Info: return "INFO";
  }
  return "ERROR";
}

std::string_view to_string(MarkerKind kind) {
  switch (kind) {
    case MarkerKind::CompilationErrorBanner: return "COMPILATION_ERROR_BANNER";
    case MarkerKind::WrongClassFileVersion: return "WRONG_CLASS_FILE_VERSION";
    case MarkerKind::WerrorEscalation: return "WERROR_ESCALATION";
  }
  return "COMPILATION_ERROR_BANNER";
}

std::string_view to_string(DiagnosticCause cause) {
  switch (cause) {
    case DiagnosticCause::CannotFindSymbol: return "CANNOT_FIND_SYMBOL";
    case DiagnosticCause::ConstructorNotApplicable: return "CONSTRUCTOR_NOT_APPLICABLE";
    case DiagnosticCause::PackageDoesNotExist: return "PACKAGE_DOES_NOT_EXIST";
    case DiagnosticCause::CannotAccess: return "CANNOT_ACCESS";
    case DiagnosticCause::StaticImportOnlyFromClasses: return "STATIC_IMPORT_ONLY_FROM_CLASSES";
    case DiagnosticCause::ExceptionNeverThrown: return "EXCEPTION_NEVER_THROWN";
    case DiagnosticCause::Other: return "OTHER";
  }
  return "OTHER";
}

}  // namespace depexplain::logscan
