#include "depexplain/explain.hpp"

#include <gtest/gtest.h>

#include <regex>

#include "depexplain/client.hpp"
#include "depexplain/errors.hpp"
#include "depexplain/pipeline.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace depexplain;
using namespace depexplain::explain;
using categorize::BreakageCategory;
using categorize::CategorizedBreakage;

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

ExplainContext base_context() {
  ExplainContext ctx;
  ctx.old_coordinates = Coordinates{"org.example", "lib", "1.0"};
  ctx.new_coordinates = Coordinates{"org.example", "lib", "2.0"};
  ctx.tool_version = "test";
  return ctx;
}

TEST(Explain, DatafakerDirect) {
  auto md = pipeline::analyze(dxtest::load_scenario("flink-faker").request).markdown;
  EXPECT_NE(md.find("**1 construct**"), std::string::npos);
  EXPECT_NE(md.find("`Date between(Date, Date)`"), std::string::npos);
  EXPECT_NE(md.find("DateTime.java:45"), std::string::npos);
  EXPECT_EQ(count_of(md, "- Replace "), 1u);
  EXPECT_NE(md.find("Suggestions"), std::string::npos);
}

TEST(Explain, JavaVersion) {
  CategorizedBreakage cb;
  cb.category = BreakageCategory::JavaVersionIncompatibility;
  categorize::JavaVersionInfo info;
  info.required_release = 17;
  info.required_major = 61;
  info.used_release = 11;
  info.used_release_source = "workflow";
  info.mismatched_majors = {61.0};
  info.outdated_workflows = {{".github/workflows/build.yml", {11}}};
  cb.java_versions = info;
  auto md = render_markdown(cb, base_context());
  EXPECT_NE(md.find("Java 17"), std::string::npos);
  EXPECT_NE(md.find("Java 11"), std::string::npos);
  EXPECT_NE(md.find(".github/workflows/build.yml"), std::string::npos);
  EXPECT_EQ(md.find("Suggestions"), std::string::npos);
}

TEST(Explain, WerrorListsEveryFile) {
  CategorizedBreakage cb;
  cb.category = BreakageCategory::WerrorFailure;
  categorize::WerrorInfo info;
  info.files = {"a/pom.xml", "b/pom.xml", "c/pom.xml", "pom.xml"};
  info.escalation_marker = true;
  cb.werror = info;
  auto md = render_markdown(cb, base_context());
  for (const auto& f : info.files) EXPECT_NE(md.find("`" + f + "`"), std::string::npos) << f;
  EXPECT_NE(md.find("4 configuration files"), std::string::npos);
}

TEST(Explain, NoSuggestionsNoHeading) {
  auto md = pipeline::analyze(dxtest::load_scenario("flacoco").request).markdown;
  EXPECT_NE(md.find("getInstance"), std::string::npos);
  EXPECT_EQ(md.find("Suggestions"), std::string::npos);
}

TEST(Explain, UnexplainedStub) {
  CategorizedBreakage cb;
  cb.reason = categorize::UnexplainedReason::NoSignal;
  auto ex = build_explanation(cb, base_context());
  EXPECT_EQ(ex.category, BreakageCategory::Unexplained);
  EXPECT_NE(render_markdown(ex).find("no markers and no compilation banner"), std::string::npos);
}

TEST(Explain, InvariantViolationsThrow) {
  auto ctx = base_context();
  CategorizedBreakage direct;
  direct.category = BreakageCategory::DirectCompilationFailure;
  EXPECT_THROW(build_explanation(direct, ctx), TemplateDataMissing);
  CategorizedBreakage java;
  java.category = BreakageCategory::JavaVersionIncompatibility;
  EXPECT_THROW(build_explanation(java, ctx), TemplateDataMissing);
  CategorizedBreakage werror;
  werror.category = BreakageCategory::WerrorFailure;
  EXPECT_THROW(build_explanation(werror, ctx), TemplateDataMissing);
  CategorizedBreakage indirect;
  indirect.category = BreakageCategory::IndirectCompilationFailure;
  indirect.culprits.emplace_back();
  EXPECT_THROW(build_explanation(indirect, ctx), TemplateDataMissing);
}

class EveryScenario : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryScenario, NoEmptySections) {
  auto result = pipeline::analyze(dxtest::load_scenario(GetParam()).request);
  for (const auto& line : std::vector<std::string>{"### \n", "#### \n"}) EXPECT_EQ(result.markdown.find(line), std::string::npos);
  static const std::regex empty_section("\n#{2,4} [^\n]*\n\n(#{2,4} |---)");
  EXPECT_FALSE(std::regex_search(result.markdown, empty_section)) << result.markdown;
  EXPECT_EQ(result.markdown.find("\n\n\n"), std::string::npos);
  EXPECT_EQ(result.markdown.back(), '\n');
}

TEST_P(EveryScenario, RenderingIsIdempotent) {
  auto s = dxtest::load_scenario(GetParam());
  EXPECT_EQ(pipeline::analyze(s.request).markdown, pipeline::analyze(s.request).markdown);
}

TEST_P(EveryScenario, PrintedPathsExistOrAreExternal) {
  auto s = dxtest::load_scenario(GetParam());
  auto md = pipeline::analyze(s.request).markdown;
  static const std::regex located("`([^`\\s]+\\.(java|xml|yml|yaml))(:[0-9]+)?`( \\(external\\))?");
  for (std::sregex_iterator it(md.begin(), md.end(), located), end; it != end; ++it) {
    if ((*it)[4].matched) continue;
    EXPECT_TRUE(std::filesystem::is_regular_file(s.request.project_root / (*it)[1].str())) << (*it)[1].str();
  }
}

TEST_P(EveryScenario, EachCulpritInOneSection) {
  auto s = dxtest::load_scenario(GetParam());
  auto result = pipeline::analyze(s.request);
  for (const auto& c : result.breakage.culprits) {
    if (!c.site.resolved_path || !c.site.diagnostic.position) continue;
    auto use = "`" + *c.site.resolved_path + ":" + std::to_string(c.site.diagnostic.position->line) + "`";
    EXPECT_GE(count_of(result.markdown, use), 1u) << use;
  }
}

INSTANTIATE_TEST_SUITE_P(Scenarios, EveryScenario, ::testing::ValuesIn(dxtest::scenario_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST(Explain, PlainGlyphs) {
  auto s = dxtest::load_scenario("flink-faker");
  s.request.options.glyphs = Glyphs::plain();
  auto md = pipeline::analyze(s.request).markdown;
  EXPECT_EQ(md.find(":wrench:"), std::string::npos);
  EXPECT_NE(md.find("### [*] `Date between(Date, Date)`"), std::string::npos);
}

TEST(Explain, ExcerptCap) {
  auto s = dxtest::load_scenario("flacoco");
  s.request.options.excerpt_cap = 1;
  auto ex = pipeline::analyze(s.request);
  auto start = ex.markdown.find("```\n[ERROR]");
  ASSERT_NE(start, std::string::npos);
  auto end = ex.markdown.find("```", start + 3);
  auto block = ex.markdown.substr(start + 4, end - start - 4);
  EXPECT_EQ(std::count(block.begin(), block.end(), '\n'), 1);
  EXPECT_NE(ex.markdown.find("more log lines not shown"), std::string::npos);
}

}  // namespace
