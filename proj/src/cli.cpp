#include "wavebound/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "wavebound/pipeline.hpp"
#include "wavebound/scene.hpp"

namespace wavebound::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitSchema = 2;
constexpr int kExitIo = 3;
constexpr int kExitSolver = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

// rows x cols, comma-separated, row-major top-to-bottom.
std::string matrix_csv(const Eigen::VectorXd& values, int rows, int cols) {
  std::string text;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c) text += ',';
      text += fmt17(values[r * cols + c]);
    }
    text += '\n';
  }
  return text;
}

Eigen::VectorXd read_csv_matrix(const std::string& path, int rows, int cols) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read: " + path);
  std::vector<double> values;
  std::string line;
  int nrows = 0;
  int ncols = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError(path + ": non-numeric cell '" + cell + "'");
      }
      ++c;
    }
    if (ncols < 0) ncols = c;
    if (c != ncols) throw IoError(path + ": ragged rows");
    ++nrows;
  }
  if (nrows != rows || ncols != cols) {
    throw IoError(path + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                  ", got " + std::to_string(nrows) + "x" + std::to_string(ncols < 0 ? 0 : ncols));
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
}

struct CommonArgs {
  std::string scene_path;
  std::string out_dir;
  std::string offdiag;  // optional override
  int max_iters = -1;
  double eps = -1.0;
};

scene::BuiltScene load_scene(const CommonArgs& args) {
  scene::SceneFile file = scene::parse_scene_file(args.scene_path);
  if (!args.offdiag.empty()) file.offdiag_weight = args.offdiag;
  if (args.max_iters > 0) file.solver.max_iters = args.max_iters;
  if (args.eps > 0) {
    file.solver.eps_abs = args.eps;
    file.solver.eps_rel = args.eps;
  }
  return scene::build_scene(file);
}

fs::path prepare_out(const CommonArgs& args) {
  fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir.string());
  return dir;
}

int design_iters(const CommonArgs& args) { return args.max_iters > 0 ? args.max_iters : 200; }

int cmd_simulate(const CommonArgs& args, const std::string& theta_path) {
  const scene::BuiltScene built = load_scene(args);
  const fs::path out = prepare_out(args);
  const auto& g = built.scene.grid;

  Eigen::VectorXd theta_full = Eigen::VectorXd::Zero(g.pixels());
  if (!theta_path.empty()) {
    if (!built.file.has_design_region) throw IoError("--theta given but scene has no design region");
    const Eigen::VectorXd theta =
        read_csv_matrix(theta_path, built.design.rows, built.design.cols);
    theta_full = pipeline::embed_design(built, theta);
  }
  const Eigen::VectorXcd z = helmholtz::simulate(built.scene, theta_full);
  write_text(out / "field_re.csv", matrix_csv(z.real(), g.ny, g.nx));
  write_text(out / "field_im.csv", matrix_csv(z.imag(), g.ny, g.nx));
  return 0;
}

const char* status_name(sdp::SolveStatus s) {
  switch (s) {
    case sdp::SolveStatus::optimal: return "optimal";
    case sdp::SolveStatus::max_iters: return "max_iters";
    case sdp::SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

int cmd_bound(const CommonArgs& args) {
  const scene::BuiltScene built = load_scene(args);
  const fs::path out = prepare_out(args);
  const pipeline::BoundOutcome outcome = pipeline::run_bound(built);
  const relax::BoundReport& rep = outcome.report;

  json j;
  j["bound"] = rep.d_star;
  j["certificate_valid"] = rep.certificate_valid;
  j["residuals"] = {{"primal", rep.residuals.primal},
                    {"dual", rep.residuals.dual},
                    {"gap", rep.residuals.gap}};
  j["iterations"] = rep.iterations;
  j["rank1_gap"] = rep.rank1_gap;
  j["metric"] = built.file.metric;
  j["reduction"] = {{"free_pixels", outcome.free_pixels}, {"fixed_pixels", outcome.fixed_pixels}};
  j["cert_slack_min"] = rep.cert_slack_min;
  j["status"] = status_name(rep.status);
  write_text(out / "report.json", j.dump(2) + "\n");

  if (!rep.certificate_valid) {
    std::cerr << "bound: certificate validation failed (status " << status_name(rep.status)
              << ", primal " << rep.residuals.primal << ", dual " << rep.residuals.dual << ")\n";
    return kExitSolver;
  }
  return 0;
}

int cmd_optimize(const CommonArgs& args, const std::string& objective) {
  const scene::BuiltScene built = load_scene(args);
  const fs::path out = prepare_out(args);
  const auto obj = objective == "numerator" ? heuristics::DesignObjective::numerator
                                            : heuristics::DesignObjective::ratio;
  const pipeline::OptimizeOutcome outcome = pipeline::run_optimize(built, obj, design_iters(args));

  write_text(out / "design.csv", matrix_csv(outcome.theta, built.design.rows, built.design.cols));
  json j;
  j["purity"] = outcome.purity;
  j["power_numerator"] = outcome.power_numerator;
  j["power_selector"] = outcome.power_selector;
  write_text(out / "summary.json", j.dump(2) + "\n");
  return 0;
}

int cmd_pareto(const CommonArgs& args, int points) {
  const scene::BuiltScene built = load_scene(args);
  const fs::path out = prepare_out(args);
  const pipeline::ParetoOutcome outcome = pipeline::run_pareto(built, points, design_iters(args));

  std::string csv = "mu,purity,power\n";
  for (size_t i = 0; i < outcome.frontier.size(); ++i) {
    const auto& p = outcome.frontier[i];
    csv += fmt17(p.mu) + "," + fmt17(p.purity) + "," + fmt17(p.power) + "\n";
    write_text(out / ("design_" + std::to_string(i) + ".csv"),
               matrix_csv(p.theta_prime, built.design.rows, built.design.cols));
  }
  write_text(out / "frontier.csv", csv);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"bounds and heuristic designs for photonic efficiency metrics"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string theta_path;
  std::string objective = "ratio";
  int points = 5;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scene", args.scene_path, "scene JSON file")->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--max-iters", args.max_iters, "iteration override");
    cmd->add_option("--eps", args.eps, "solver tolerance override");
    cmd->add_option("--offdiag", args.offdiag, "off-diagonal weight override")
        ->check(CLI::IsMember({"h", "h2"}));
  };

  CLI::App* sim = app.add_subcommand("simulate", "solve the scattering problem, write fields");
  add_common(sim);
  sim->add_option("--theta", theta_path, "design CSV over the design region");

  CLI::App* bound = app.add_subcommand("bound", "certified efficiency upper bound");
  add_common(bound);

  CLI::App* optimize = app.add_subcommand("optimize", "heuristic design optimization");
  add_common(optimize);
  optimize->add_option("--objective", objective, "ratio | numerator")
      ->check(CLI::IsMember({"ratio", "numerator"}));

  CLI::App* pareto = app.add_subcommand("pareto", "purity/power Pareto frontier");
  add_common(pareto);
  pareto->add_option("--points", points, "number of sweep points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed()) return cmd_simulate(args, theta_path);
    if (bound->parsed()) return cmd_bound(args);
    if (optimize->parsed()) return cmd_optimize(args, objective);
    if (pareto->parsed()) return cmd_pareto(args, points);
  } catch (const scene::SchemaError& e) {
    std::cerr << "scene error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}

}  // namespace wavebound::cli
