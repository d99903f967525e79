#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mtqcl/cli/commands.hpp"

namespace {

int emit(const mtqcl::cli::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mtqcl::cli;

  CLI::App app{"Multi-target quantum computational logic: circuit probabilities and checks"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::string fault_name = "none";
  std::string file;
  VerifyConfig verify_config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opts.json, "Machine-readable output");
    sub->add_option("--cap", opts.cap, "Maximum number of wires for dense composition")
        ->capture_default_str()
        ->check(CLI::Range(1, 14));
    sub->add_option("--tol", opts.tol, "Numerical tolerance")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "Print the target/control profile of a circuit");
  analyze->add_option("file", file, "Circuit file")->required();
  add_common(analyze);

  auto* prob = app.add_subcommand("prob", "Evaluate the MT-QCL probability with every applicable evaluator");
  prob->add_option("file", file, "Circuit file")->required();
  prob->add_option("--fault", fault_name, "Inject a known defect (transposed-fredkin-lambda)");
  add_common(prob);

  auto* matrix = app.add_subcommand("matrix", "Print the composed 2^k x 2^k unitary");
  matrix->add_option("file", file, "Circuit file")->required();
  matrix->add_flag("--oracle", opts.oracle, "Compare against the adjacent-swap reference composition");
  add_common(matrix);

  auto* verify = app.add_subcommand("verify", "Run the randomized property suites");
  verify->add_option("--seed", verify_config.seed, "Random seed")->capture_default_str();
  verify->add_option("--kmax", verify_config.kmax, "Largest register size")->capture_default_str();
  verify->add_option("--suite", verify_config.only, "Run only the named suite (repeatable)");
  verify->add_option("--fault", fault_name, "Inject a known defect (transposed-fredkin-lambda)");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  const auto fault = parse_fault(fault_name);
  if (!fault) {
    std::cerr << "unknown fault '" << fault_name << "'\n";
    return exit_code::kUsage;
  }
  opts.fault = *fault;

  if (verify->parsed()) {
    verify_config.tol = opts.tol;
    verify_config.fault = opts.fault;
    return emit(cmd_verify(verify_config, opts));
  }
  for (auto* sub : {analyze, prob, matrix}) {
    if (sub->parsed()) return emit(run_file_command(sub->get_name(), file, opts));
  }
  return exit_code::kUsage;
}
