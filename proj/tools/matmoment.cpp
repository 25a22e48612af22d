// Command-line front end: JSON problem documents in, result documents out.
// Exit codes: 0 satisfied, 1 refuted, 2 input or numeric error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "matmoment/matmoment.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw matmoment::ParseError("cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

struct ToleranceFlags {
  std::optional<double> psd, root, residual;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-psd", psd, "Relative eigenvalue floor for PSD tests");
    cmd->add_option("--tol-root", root, "Clustering radius for polynomial roots");
    cmd->add_option("--tol-residual", residual, "Recurrence/reconstruction residual bound");
  }

  matmoment::ToleranceOverrides overrides() const {
    matmoment::ToleranceOverrides o;
    o.psd_eps = psd;
    o.root_eps = root;
    o.residual_eps = residual;
    return o;
  }
};

int emit(const matmoment::RunResult& result) {
  std::cout << result.document.dump(2) << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated matrix moment problem decision tool"};
  app.require_subcommand(1);

  std::string kind_name;
  std::string path = "-";
  int reconstruct_order = 0;
  ToleranceFlags check_tols, solve_tols, reconstruct_tols, riesz_tols;

  CLI::App* check = app.add_subcommand(
      "check", "Decide one truncated moment problem from block Hankel positivity");
  check->add_option("--kind", kind_name, "hamburger, stieltjes or hausdorff")->required();
  check->add_option("input", path, "Problem document path, or - for standard input");
  check_tols.attach(check);

  CLI::App* solve = app.add_subcommand(
      "solve", "Minimal polynomial, atomic measure recovery and positivity decision");
  solve->add_option("input", path, "Problem document path, or - for standard input");
  solve_tols.attach(solve);

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Emit the moments S_0..S_n of a measure document");
  reconstruct->add_option("--order", reconstruct_order, "Highest moment index n")->required();
  reconstruct->add_option("input", path, "Measure document path, or - for standard input");
  reconstruct_tols.attach(reconstruct);

  CLI::App* riesz =
      app.add_subcommand("riesz", "Evaluate the Riesz functional on the document's polynomial");
  riesz->add_option("input", path, "Problem document path, or - for standard input");
  riesz_tols.attach(riesz);

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string text = read_input(path);
    if (check->parsed()) {
      matmoment::ProblemKind kind;
      if (kind_name == "hamburger") {
        kind = matmoment::ProblemKind::Hamburger;
      } else if (kind_name == "stieltjes") {
        kind = matmoment::ProblemKind::Stieltjes;
      } else if (kind_name == "hausdorff") {
        kind = matmoment::ProblemKind::Hausdorff;
      } else {
        throw matmoment::SchemaError("--kind must be hamburger, stieltjes or hausdorff");
      }
      const auto doc = matmoment::parse_document(text);
      const auto tol = matmoment::resolve_tolerances(doc.tolerances, check_tols.overrides());
      return emit(matmoment::run_check(doc, kind, tol));
    }
    if (solve->parsed()) {
      const auto doc = matmoment::parse_document(text);
      const auto tol = matmoment::resolve_tolerances(doc.tolerances, solve_tols.overrides());
      return emit(matmoment::run_solve(doc, tol));
    }
    if (reconstruct->parsed()) {
      const auto measure = matmoment::parse_measure_document(text);
      return emit(matmoment::run_reconstruct(measure, reconstruct_order));
    }
    const auto doc = matmoment::parse_document(text);
    const auto tol = matmoment::resolve_tolerances(doc.tolerances, riesz_tols.overrides());
    return emit(matmoment::run_riesz(doc, tol));
  } catch (const matmoment::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << matmoment::error_to_json(e).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    nlohmann::json out;
    out["error"] = {{"code", "Internal"}, {"message", e.what()}};
    std::cout << out.dump(2) << "\n";
    return 2;
  }
}
