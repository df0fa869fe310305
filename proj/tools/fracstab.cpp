// fracstab: stability of incommensurate linear fractional-order systems.
//
//   fracstab check    <problem.json> [--format json|text] [tolerance flags]
//   fracstab zeros    <problem.json> [--format text|json]
//   fracstab oracle   <problem.json> [--radius R] [--oracle-tol T]
//   fracstab simulate <problem.json> [--x0 ...] [--T T] [--h H] [--out FILE]
//
// Exit codes: 0 stable (or success), 1 unstable, 2 input or solver error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracstab/report.hpp"

namespace {

constexpr int kStable = 0;
constexpr int kUnstable = 1;
constexpr int kError = 2;

struct Flags {
  std::string problem;
  std::string format;
  std::string out;
  std::optional<double> epsilon;
  std::optional<double> residual_tol;
  std::optional<double> chi_tol;
  std::optional<double> zero_tol;
  std::optional<std::string> backend;
  std::optional<double> radius;
  double oracle_tol = 1e-6;
  std::vector<double> x0;
  std::optional<double> horizon;
  std::optional<double> step;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("problem", f.problem, "Problem file (JSON)")->required();
  cmd->add_option("--epsilon", f.epsilon, "Safety margin epsilon >= 0");
  cmd->add_option("--residual-tol", f.residual_tol, "Eigenvalue residual tolerance");
  cmd->add_option("--chi-tol", f.chi_tol, "Tolerance on |chi| at reported zeros");
  cmd->add_option("--zero-tol", f.zero_tol, "Magnitude below which mu counts as zero");
  cmd->add_option("--backend", f.backend, "Eigensolver backend")->check(CLI::IsMember({"dense", "krylov"}));
  cmd->add_option("--out", f.out, "Write output to FILE instead of stdout");
}

fracstab::ProblemFile load(const Flags& f) {
  fracstab::ProblemFile p = fracstab::load_problem(f.problem);
  if (f.epsilon) {
    if (!(*f.epsilon >= 0.0)) throw fracstab::InputError("--epsilon must be non-negative");
    p.epsilon = *f.epsilon;
  }
  if (f.residual_tol) p.tolerances.residual = *f.residual_tol;
  if (f.chi_tol) p.tolerances.chi = *f.chi_tol;
  if (f.zero_tol) p.tolerances.zero = *f.zero_tol;
  if (f.backend) p.backend = fracstab::backend_from_string(*f.backend);
  return p;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw fracstab::InputError("cannot write " + f.out);
  file << text;
}

int verdict_code(const fracstab::CheckOutcome& o) { return o.report.stable ? kStable : kUnstable; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic stability of incommensurate fractional-order linear systems"};
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "Full stability report");
  add_common(check, f);
  check->add_option("--format", f.format, "json (default) or text")->check(CLI::IsMember({"json", "text"}));

  auto* zeros = app.add_subcommand("zeros", "Zeros of the characteristic function");
  add_common(zeros, f);
  zeros->add_option("--format", f.format, "text (default) or json")->check(CLI::IsMember({"json", "text"}));

  auto* oracle = app.add_subcommand("oracle", "Cross-check against the scalar determinant polynomial");
  add_common(oracle, f);
  oracle->add_option("--format", f.format, "text (default) or json")->check(CLI::IsMember({"json", "text"}));
  oracle->add_option("--radius", f.radius, "Interpolation radius override");
  oracle->add_option("--oracle-tol", f.oracle_tol, "Allowed matched distance");

  auto* sim = app.add_subcommand("simulate", "Time-domain trajectory as CSV");
  sim->set_help_flag("--help", "Print this help message and exit");
  add_common(sim, f);
  sim->add_option("--x0", f.x0, "Initial condition")->delimiter(',');
  sim->add_option("--T", f.horizon, "Horizon");
  sim->add_option("--h", f.step, "Step size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    const fracstab::ProblemFile problem = load(f);
    if (*check) {
      const auto outcome = fracstab::run_check(problem);
      emit(f, f.format == "text" ? fracstab::render_check_text(outcome) : fracstab::render_check_json(outcome));
      if (!outcome.chi_residuals_ok) std::cerr << "warning: |chi| exceeds the tolerance at a reported zero\n";
      return verdict_code(outcome);
    }
    if (*zeros) {
      const auto outcome = fracstab::run_check(problem);
      emit(f, f.format == "json" ? fracstab::render_zeros_json(outcome) : fracstab::render_zeros_text(outcome));
      return verdict_code(outcome);
    }
    if (*oracle) {
      const auto outcome = fracstab::run_oracle(problem, f.radius);
      emit(f, f.format == "json" ? fracstab::render_oracle_json(outcome, f.oracle_tol)
                                 : fracstab::render_oracle_text(outcome, f.oracle_tol));
      if (!(outcome.distance <= f.oracle_tol)) {
        std::cerr << "error: pencil eigenvalues and oracle roots differ by " << outcome.distance << "\n";
        return kError;
      }
      return kStable;
    }
    fracstab::SimulateBlock block = problem.simulate.value_or(fracstab::SimulateBlock{});
    if (!f.x0.empty()) block.x0 = f.x0;
    if (f.horizon) block.T = *f.horizon;
    if (f.step) block.h = *f.step;
    const fracstab::Trajectory traj = fracstab::run_simulation(problem, block);
    std::ostringstream csv;
    fracstab::write_trajectory_csv(csv, traj);
    emit(f, csv.str());
    return kStable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
