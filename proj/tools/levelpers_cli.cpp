// Command-line front end: levelpers <subcommand> --input PATH [options]
//
// Exit codes: 0 success, 1 input or usage error, 2 a check failed.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "levelpers/error.hpp"
#include "levelpers/report.hpp"

namespace {

using namespace levelpers;
using nlohmann::json;

constexpr int kRandomInstances = 25;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  int max_degree = -1;
  std::string svg;
  std::optional<std::uint64_t> seed;
  bool with_checks = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw Error("cannot open " + opt.output + " for writing");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const report::ResultDocument& doc) {
  json crit = json::array();
  for (double t : doc.criticals) crit.push_back(report::format_decimal(t));
  return {{"criticals", crit}, {"max_degree", doc.max_degree}};
}

int run(const std::string& command, const Options& opt) {
  const auto parsed = report::parse_input(read_file(opt.input));
  const bool csv = opt.format == "csv";

  if (command == "check") {
    auto checks = run_checks(parsed.map, opt.max_degree);
    if (opt.seed) {
      const auto extra = run_random_suite(*opt.seed, kRandomInstances);
      checks.insert(checks.end(), extra.begin(), extra.end());
    }
    emit(opt, csv ? report::checks_csv(checks) : dump({{"checks", report::checks_json(checks)}}));
    return all_passed(checks) ? 0 : 2;
  }

  report::AnalyzeOptions aopt;
  aopt.max_degree = opt.max_degree;
  aopt.with_checks = command == "analyze" && opt.with_checks;
  const auto doc = report::analyze(parsed.map, aopt);

  if (command == "analyze") {
    emit(opt, csv ? report::bars_csv(doc) : dump(report::to_json(doc)));
    if (!opt.svg.empty()) report::write_svg(doc, opt.svg);
  } else if (command == "sublevel") {
    json j = header(doc);
    j["sublevel"] = report::sublevel_json(doc);
    emit(opt, csv ? report::bars_csv(doc, false, true) : dump(j));
  } else if (command == "level") {
    json j = header(doc);
    j["level"] = report::level_json(doc);
    emit(opt, csv ? report::bars_csv(doc, true, false) : dump(j));
  } else if (command == "numbers") {
    json j = header(doc);
    j["numbers"] = report::numbers_json(doc);
    emit(opt, csv ? report::numbers_csv(doc) : dump(j));
  } else if (command == "svg") {
    if (!opt.svg.empty()) {
      report::write_svg(doc, opt.svg);
    } else {
      emit(opt, report::render_svg(doc));
    }
  }
  return doc.checks && !all_passed(*doc.checks) ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level and sub-level persistence of piecewise-linear maps"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "Input JSON document")->required();
    sub->add_option("--output", opt.output, "Output file (default stdout)");
    sub->add_option("--max-degree", opt.max_degree, "Highest homology degree (default dim X)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* analyze = app.add_subcommand("analyze", "Bars, relevant numbers and optional checks");
  add_common(analyze);
  add_format(analyze);
  analyze->add_option("--svg", opt.svg, "Also write an SVG bar code");
  analyze->add_flag("--checks", opt.with_checks, "Include the check report");

  for (const char* name : {"sublevel", "level", "numbers"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " output only");
    add_common(sub);
    add_format(sub);
  }

  auto* check = app.add_subcommand("check", "Run every invariant; exit 2 on failure");
  add_common(check);
  add_format(check);
  check->add_option("--seed", opt.seed, "Also run a randomized suite with this seed");

  auto* svg = app.add_subcommand("svg", "Render the bar codes as SVG");
  add_common(svg);
  svg->add_option("--svg", opt.svg, "SVG path (default --output or stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const InputError& e) {
    std::cerr << "levelpers: input error: " << e.what() << "\n";
    return 1;
  } catch (const UnrealizableNumbers& e) {
    std::cerr << "levelpers: check failed: " << e.what() << "\n";
    return 2;
  } catch (const MalformedComplex& e) {
    std::cerr << "levelpers: check failed: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "levelpers: " << e.what() << "\n";
    return 1;
  }
}
