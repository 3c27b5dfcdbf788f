#include "depexplain/logscan.hpp"

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

namespace {

using namespace depexplain::logscan;

constexpr std::string_view kDateTimeLine =
    "[ERROR] /flink-faker/src/main/java/com/github/knaufk/flink/faker/DateTime.java:[45,40] incompatible types: "
    "java.util.Date cannot be converted to java.sql.Timestamp";

CompilerDiagnostic error_with(std::string message) {
  CompilerDiagnostic d;
  d.message = std::move(message);
  return d;
}

TEST(ParseBuildLog, ExtractsLocatedError) {
  auto r = parse_build_log(kDateTimeLine);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  const auto& d = r.diagnostics[0];
  EXPECT_EQ(d.severity, Severity::Error);
  EXPECT_EQ(d.file_path, "/flink-faker/src/main/java/com/github/knaufk/flink/faker/DateTime.java");
  ASSERT_TRUE(d.position);
  EXPECT_EQ(d.position->line, 45);
  EXPECT_EQ(d.position->column, 40);
  EXPECT_EQ(d.message, "incompatible types: java.util.Date cannot be converted to java.sql.Timestamp");
  EXPECT_EQ(d.raw, kDateTimeLine);
}

TEST(ParseBuildLog, EmptyLog) {
  auto r = parse_build_log("");
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_TRUE(r.markers.empty());
}

TEST(ParseBuildLog, WrongVersionMarker) {
  auto r = parse_build_log("    class file has wrong version 61.0, should be 55.0\n");
  auto m = r.markers_of(MarkerKind::WrongClassFileVersion);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].found_major, 61.0);
  EXPECT_EQ(m[0].expected_major, 55.0);
}

TEST(ParseBuildLog, IgnoresImplausibleMajors) {
  auto r = parse_build_log("class file has wrong version 12.0, should be 55.0");
  EXPECT_FALSE(r.has(MarkerKind::WrongClassFileVersion));
}

TEST(ParseBuildLog, BannerAndWerrorMarkers) {
  auto r = parse_build_log("[ERROR] COMPILATION ERROR : \n[ERROR] warnings found and -Werror specified\n");
  EXPECT_TRUE(r.has(MarkerKind::CompilationErrorBanner));
  EXPECT_TRUE(r.has(MarkerKind::WerrorEscalation));
  EXPECT_EQ(r.diagnostics.size(), 2u);
  EXPECT_FALSE(r.diagnostics[1].file_path);
}

TEST(ParseBuildLog, FoldsSymbolAndLocationLines) {
  auto r = parse_build_log(
      "[ERROR] /p/src/A.java:[3,5] cannot find symbol\n"
      "  symbol:   method getInstance()\n"
      "  location: class x.Y\n"
      "[INFO] 1 error\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].message, "cannot find symbol\n  symbol:   method getInstance()\n  location: class x.Y");
  EXPECT_EQ(r.diagnostics[0].headline(), "cannot find symbol");
}

TEST(ParseBuildLog, FoldsPrefixedContinuationLines) {
  auto r = parse_build_log(
      "[ERROR] /p/src/A.java:[3,5] cannot find symbol\n"
      "[ERROR]   symbol:   class TextOf\n"
      "[ERROR]   location: class a.B\n"
      "[ERROR] -> [Help 1]\n");
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].message, "cannot find symbol\n  symbol:   class TextOf\n  location: class a.B");
  EXPECT_EQ(r.diagnostics[1].message, "-> [Help 1]");
}

TEST(ParseBuildLog, WarningsAreKept) {
  auto r = parse_build_log("[WARNING] /p/A.java:[14,49] [deprecation] createQuery(java.lang.String) in org.hibernate.Session has been deprecated");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].severity, Severity::Warning);
  EXPECT_EQ(r.with_severity(Severity::Error).size(), 0u);
}

TEST(ParseBuildLog, InfoLinesWithoutLocationAreSkipped) {
  auto r = parse_build_log("[INFO] Compiling 14 source files to /x/target/classes\n[INFO] BUILD FAILURE\n");
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(ParseBuildLog, StripsAnsiAndCiTimestamps) {
  auto r = parse_build_log(
      "2022-10-03T11:42:19.9014206Z \x1b[1;31m[ERROR]\x1b[m /p/src/A.java:[1,2] cannot access a.B\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].file_path, "/p/src/A.java");
  EXPECT_EQ(r.diagnostics[0].message, "cannot access a.B");
}

TEST(ParseBuildLog, ProjectPrefixIsRemoved) {
  ParseOptions o;
  o.project_prefix = "/home/runner/work/p/p";
  auto r = parse_build_log("[ERROR] /home/runner/work/p/p/src/A.java:[1,2] boom", o);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].file_path, "src/A.java");
}

TEST(ParseBuildLog, WindowsPathsAreNormalized) {
  auto r = parse_build_log("[ERROR] C:\\work\\p\\src\\A.java:[7,1] boom");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].file_path, "C:/work/p/src/A.java");
}

TEST(ParseBuildLog, LocationWithoutPosition) {
  auto r = parse_build_log("[ERROR] /p/src/A.java: warnings found and -Werror specified");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].file_path, "/p/src/A.java");
  EXPECT_FALSE(r.diagnostics[0].position);
}

TEST(ParseBuildLog, InvalidUtf8IsReplaced) {
  auto r = parse_build_log("[ERROR] /p/A.java:[1,1] bad \xff byte");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].message, "bad \xEF\xBF\xBD byte");
}

TEST(ParseBuildLog, ScenarioLogs) {
  auto r = parse_build_log(dxtest::read_text(dxtest::fixture("scenarios/camunda-mockito/build.log")));
  EXPECT_TRUE(r.has(MarkerKind::CompilationErrorBanner));
  auto m = r.markers_of(MarkerKind::WrongClassFileVersion);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(*m[0].found_major, 61.0);
  EXPECT_EQ(*m[0].expected_major, 55.0);
  std::size_t located = 0;
  for (const auto& d : r.diagnostics) located += d.file_path.has_value();
  EXPECT_EQ(located, 2u);
}

TEST(Classify, CanonicalMessages) {
  EXPECT_EQ(classify_diagnostic(error_with("cannot find symbol")), DiagnosticCause::CannotFindSymbol);
  EXPECT_EQ(classify_diagnostic(error_with("package org.cactoos does not exist")), DiagnosticCause::PackageDoesNotExist);
  EXPECT_EQ(classify_diagnostic(error_with("incompatible types: java.util.Date cannot be converted to java.sql.Timestamp")),
            DiagnosticCause::Other);
  EXPECT_EQ(classify_diagnostic(error_with("constructor StringContainer in class org.example.StringContainer cannot be "
                                           "applied to given types;")),
            DiagnosticCause::ConstructorNotApplicable);
  EXPECT_EQ(classify_diagnostic(error_with("cannot access org.springframework.context.ApplicationContext")),
            DiagnosticCause::CannotAccess);
  EXPECT_EQ(classify_diagnostic(error_with("static import only from classes and interfaces")),
            DiagnosticCause::StaticImportOnlyFromClasses);
  EXPECT_EQ(classify_diagnostic(error_with("exception java.io.IOException is never thrown in body of corresponding try "
                                           "statement")),
            DiagnosticCause::ExceptionNeverThrown);
}

TEST(MissingPackage, Extracts) {
  EXPECT_EQ(missing_package(error_with("package org.cactoos.text does not exist")), "org.cactoos.text");
  EXPECT_FALSE(missing_package(error_with("cannot find symbol")));
}

TEST(RenderDiagnosticLine, ReproducesSource) {
  auto r = parse_build_log(kDateTimeLine);
  EXPECT_EQ(render_diagnostic_line(r.diagnostics.at(0)), kDateTimeLine);
}

TEST(StripAnsi, RemovesCsiAndOsc) {
  EXPECT_EQ(strip_ansi("\x1b[1;31mred\x1b[m \x1b]0;title\x07ok"), "red ok");
  EXPECT_EQ(strip_ansi("trailing\x1b"), "trailing");
}

}  // namespace
