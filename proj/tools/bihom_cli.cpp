#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bihom/pipeline.hpp"

namespace {

int input_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check and build BiHom-Lie superalgebra structures from a JSON description."};
  std::string command, input, output, format = "human", weight, parity = "even";
  bihom::PipelineOptions opts;

  app.add_option("command", command, "Pipeline command")
      ->required()
      ->check(CLI::IsMember(bihom::pipeline_commands()));
  app.add_option("input", input, "Algebra description file ('-' for stdin)")->required();
  app.add_option("--weight", weight, "Rota-Baxter weight as p/q (default: scalars.lambda, else 0)");
  app.add_option("--s", opts.s, "Power of alpha");
  app.add_option("--r", opts.r, "Power of beta");
  app.add_option("--parity", parity, "Parity of the sought maps")
      ->check(CLI::IsMember({"even", "odd", "0", "1"}));
  app.add_flag("--fail-fast", opts.fail_fast, "Stop each check at its first violation");
  app.add_option("--output", output, "Write the machine report to this file");
  app.add_option("--format", format, "Report on standard output")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_flag("--override-tau-conditions", opts.override_tau_conditions,
               "Build the induced bracket even if tau fails its conditions");
  app.add_option("--map", opts.map, "Name of the operator in the maps section");
  app.add_option("--map2", opts.map2, "Name of the second operator (twist3: beta, rb-nijenhuis: R)");
  app.add_option("--tau", opts.tau, "Name of the linear form in the maps section");
  std::string emit;
  app.add_option("--emit", emit, "Write the derived algebra document to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opts.parity = (parity == "odd" || parity == "1") ? bihom::Parity::odd : bihom::Parity::even;
  if (!weight.empty()) {
    try {
      opts.weight = bihom::parse_scalar(weight);
    } catch (const std::invalid_argument& e) {
      return input_error(std::string("--weight: ") + e.what());
    }
  }

  std::stringstream text;
  if (input == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(input);
    if (!in) return input_error("cannot read " + input);
    text << in.rdbuf();
  }

  std::optional<bihom::AlgebraDocument> doc;
  try {
    doc = bihom::parse_document(text.str());
  } catch (const bihom::document_error& e) {
    return input_error(input + ": " + e.what());
  }

  const auto report = bihom::run_pipeline(*doc, command, opts);
  const auto machine = bihom::report_to_json(report).dump(2) + "\n";
  if (format == "machine") {
    std::cout << machine;
  } else {
    std::cout << bihom::report_to_text(report);
  }
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) return input_error("cannot write " + output);
    out << machine;
  }
  if (!emit.empty() && report.derived) {
    std::ofstream out(emit);
    if (!out) return input_error("cannot write " + emit);
    out << bihom::serialize_document(*report.derived);
  }
  return report.exit_code();
}
