// depexplain: explain a failed dependency-update build.
//
//   depexplain explain --log build.log --project client/ --old-jar a-1.jar --new-jar a-2.jar
//                      --old-tree old.txt --new-tree new.txt --out out/
//   depexplain diff a-1.jar a-2.jar

#include <CLI11.hpp>
#include <iostream>

#include "depexplain/pipeline.hpp"


int main(int argc, char** argv) {
  CLI::App app{"Explain breaking dependency updates from a failed Maven build", "depexplain"};
  app.set_version_flag("--version", depexplain::pipeline::tool_version());
  app.require_subcommand(1);

  depexplain::pipeline::AnalysisRequest req;
  std::string format = "both";
  std::string old_jars, new_jars, client_jars, stoplist;
  bool plain = false;

  auto* explain = app.add_subcommand("explain", "Categorize the breakage and write explanation.md / report.json");
  explain->add_option("--log", req.log_path, "Maven build log of the failed build")->required();
  explain->add_option("--project", req.project_root, "Client project directory")->required();
  explain->add_option("--old-jar", req.old_jar, "Previous version of the updated dependency")->required();
  explain->add_option("--new-jar", req.new_jar, "New version of the updated dependency")->required();
  explain->add_option("--old-tree", req.old_tree, "dependency:tree output for the previous version")->required();
  explain->add_option("--new-tree", req.new_tree, "dependency:tree output for the new version")->required();
  explain->add_option("--old-jars-dir", old_jars, "Indirect dependency JARs of the previous version");
  explain->add_option("--new-jars-dir", new_jars, "Indirect dependency JARs of the new version");
  explain->add_option("--client-jars-dir", client_jars, "JARs of the client's other dependencies");
  explain->add_option("--out", req.output_dir, "Output directory")->required();
  explain->add_option("--format", format, "md, structured or both")
      ->check(CLI::IsMember({"md", "structured", "both"}))
      ->capture_default_str();
  explain->add_flag("--include-private", req.options.include_private, "Diff private and package-private constructs");
  explain->add_option("--excerpt-cap", req.options.excerpt_cap, "Maximum log lines per excerpt")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  explain->add_option("--stoplist", stoplist, "Replacement identifier stop-list");
  explain->add_flag("--plain-glyphs", plain, "Use ASCII section markers instead of emoji shortcodes");

  std::string diff_old, diff_new;
  bool diff_private = false;
  auto* diff = app.add_subcommand("diff", "Print the structured API diff of two JARs");
  diff->add_option("old", diff_old, "Old JAR")->required();
  diff->add_option("new", diff_new, "New JAR")->required();
  diff->add_flag("--include-private", diff_private, "Diff private and package-private constructs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*diff) return depexplain::pipeline::dump_diff(diff_old, diff_new, diff_private, std::cout, std::cerr);

  if (format == "md") req.format = depexplain::pipeline::OutputFormat::Markdown;
  else if (format == "structured") req.format = depexplain::pipeline::OutputFormat::Structured;
  if (!old_jars.empty()) req.old_jars_dir = old_jars;
  if (!new_jars.empty()) req.new_jars_dir = new_jars;
  if (!client_jars.empty()) req.client_jars_dir = client_jars;
  if (!stoplist.empty()) req.options.stoplist_path = stoplist;
  if (plain) req.options.glyphs = depexplain::explain::Glyphs::plain();
  return depexplain::pipeline::run(req, std::cerr);
}
