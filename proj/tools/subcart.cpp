#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include "subcart/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"subcart: tangent spaces, stratification and local frames of presented subsets of R^n"};
  app.require_subcommand(1);

  subcart::cli::RunConfig cfg;
  std::string radius, epsilon, point, out;

  const std::pair<const char*, const char*> commands[] = {
      {"classify", "structural dimension and label of one point (needs --point)"},
      {"stratify", "sample, classify every point, report strata and verdicts"},
      {"frame", "pivot-normalized tangent frame around --point, or a frame fixture"},
      {"verify", "all verdicts for a space, or usc/open/dense for a records file"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.input, "space file (or fixture file for frame/verify)")->required();
    sub->add_option("--point", point, "comma separated rational coordinates");
    sub->add_option("--radius", radius, "adjacency radius, rational");
    sub->add_option("--epsilon", epsilon, "density epsilon, rational");
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--seed", cfg.seed, "reserved");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!point.empty()) cfg.point = point;
    if (!radius.empty()) cfg.radius = subcart::parse_rational(radius);
    if (!epsilon.empty()) cfg.epsilon = subcart::parse_rational(epsilon);
  } catch (const subcart::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!out.empty()) cfg.out = out;

  const subcart::cli::RunResult result = subcart::cli::run(cfg);
  if (!result.message.empty()) std::cerr << result.message << "\n";
  if (!cfg.out) std::cout << result.output;
  return result.exit_code;
}
