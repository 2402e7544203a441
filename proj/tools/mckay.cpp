// mckay: class groups of terminalizations of C^n/G from a job file.
//
//   mckay analyze --input job.json [--format text|json] [--twist t]
//   mckay age | invariant | check | sweep ...

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "mckay/cli.hpp"

namespace {

struct Flags {
  std::string input = "-";
  std::string format = "text";
  std::string output;
  std::size_t max_group_size = mckay::kDefaultMaxGroupSize;
  long degree_bound = 0;
  long twist = 1;
};

void add_common(CLI::App* sub, Flags& flags) {
  sub->add_option("-i,--input", flags.input, "job file (JSON), '-' for stdin");
  sub->add_option("-f,--format", flags.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("-o,--output", flags.output, "write the report here instead of stdout");
  sub->add_option("--max-group-size", flags.max_group_size, "abort enumeration beyond this many elements");
  sub->add_option("--degree-bound", flags.degree_bound, "relative invariant search bound (default |G|)");
  sub->add_option("--twist", flags.twist, "Galois twist t, coprime to the working conductor");
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw mckay::cli::JobError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mckay::cli;
  CLI::App app{"Class groups of crepant terminalizations of quotient singularities"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> subcommands[] = {
      {"analyze", "Cl(V/G), junior classes and Cl(X) with push-forward images"},
      {"age", "age, multiplicities and weights of each conjugacy class"},
      {"invariant", "a relative invariant for the job's character (trivial if absent)"},
      {"check", "self-checks, twist invariance and valuation checks per character"},
      {"sweep", "junior classes and torsion for every Galois twist"},
  };
  for (const auto& [name, help] : subcommands) add_common(app.add_subcommand(name, help), flags);
  CLI11_PARSE(app, argc, argv);
  const Mode mode = mode_from_string(app.get_subcommands().front()->get_name());

  JobOptions options;
  options.max_group_size = flags.max_group_size;
  if (flags.degree_bound > 0) options.degree_bound = flags.degree_bound;
  options.twist = flags.twist;

  RunResult result;
  try {
    result = run(parse_job(read_input(flags.input), mode, options));
  } catch (const mckay::Error& e) {
    result.report = error_report("input", e.what());
    result.exit_code = 2;
  }

  const std::string text = flags.format == "json" ? result.report.dump(2) + "\n" : render_text(result.report);
  if (flags.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.output);
    if (!out) {
      std::cerr << "mckay: cannot write " << flags.output << "\n";
      return 2;
    }
    out << text;
  }
  if (result.report.contains("error")) std::cerr << "mckay: " << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
