// disp: point sets, largest empty boxes, cover-free families and the
// bound catalog, from the command line.
//
// Exit codes (stable contract for scripting):
//   0 success, 2 usage, 3 parse, 4 validity, 5 budget exhausted.
// Standard output carries data, standard error carries diagnostics.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "disp/bounds.hpp"
#include "disp/cff.hpp"
#include "disp/emptybox.hpp"
#include "disp/geometry.hpp"
#include "disp/reduction.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitValidity = 4;
constexpr int kExitBudget = 5;

struct GenArgs {
  std::string kind;
  std::uint64_t n = 0;
  int dim = 1;
  int m = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct DispArgs {
  std::string input;
  long long budget = disp::kDefaultNodeBudget;
};

struct CffVerifyArgs {
  std::string family;
  int k = 1, r = 1;
};

struct CffSearchArgs {
  int k = 1, r = 1, d = 2;
  long long budget = 50'000'000;
};

struct ReduceArgs {
  std::string input;
  double eps = 0.0;
  int k = 1;
};

struct BoundsArgs {
  double eps = 0.0;
  int dim = 2;
  double c = 1.0;
  double big_c = 1.0;
};

struct RegionsArgs {
  int dim = 2;
  double eps_min = 0.0, eps_max = 0.0;
  int steps = 2;
  std::string format = "csv";
};

int run_gen(const GenArgs& a) {
  auto kind = disp::generator_from_name(a.kind);
  disp::PointSet pts = disp::generate_points(kind, a.n, a.dim, a.m, a.seed);
  disp::write_point_set_file(a.out, pts);
  nlohmann::ordered_json j;
  j["kind"] = a.kind;
  j["dim"] = pts.dim();
  j["points"] = pts.size();
  j["out"] = a.out;
  std::cout << j.dump() << "\n";
  return 0;
}

int run_disp(const DispArgs& a) {
  disp::PointSet pts = disp::read_point_set_file(a.input);
  disp::DispersionResult result = disp::largest_empty_box(pts, a.budget);
  std::cout << result.to_json() << "\n";
  return 0;
}

int run_cff_verify(const CffVerifyArgs& a) {
  disp::SetFamily family = disp::read_set_family_file(a.family);
  disp::CoverFreeResult result = disp::verify_cover_free(family, a.k, a.r);
  std::cout << result.to_json() << "\n";
  return 0;
}

int run_cff_search(const CffSearchArgs& a) {
  disp::MinGroundResult result = disp::min_ground_size(a.k, a.r, a.d, a.budget);
  std::cout << result.to_json() << "\n";
  if (result.budget_exhausted) {
    std::cerr << "budget exhausted after " << result.nodes << " nodes; bracket ["
              << result.lower_bound << ", "
              << (result.upper_bound ? std::to_string(*result.upper_bound) : "?") << "]\n";
    return kExitBudget;
  }
  return 0;
}

int run_reduce(const ReduceArgs& a) {
  disp::PointSet pts = disp::read_point_set_file(a.input);
  disp::ReductionReport report = disp::reduction_consistency(pts, a.eps, a.k);
  std::cout << report.to_json() << "\n";
  return 0;
}

int run_bounds(const BoundsArgs& a) {
  disp::BoundConstants constants;
  constants.logd_eps2_c = a.c;
  constants.upper_bc_c = a.c;
  constants.upper_eps2_C = a.big_c;
  std::vector<disp::BoundReport> reports = disp::lower_bound_catalog(a.eps, a.dim, constants);
  if (a.dim >= 2) {
    reports.push_back(disp::best_main_bound(a.eps, a.dim));
    for (auto& r : disp::upper_bound_catalog(a.eps, a.dim, constants))
      reports.push_back(std::move(r));
  }
  std::cout << disp::bound_reports_to_json(reports) << "\n";
  return 0;
}

int run_regions(const RegionsArgs& a) {
  auto rows = disp::region_scan(a.dim, a.eps_min, a.eps_max, a.steps);
  if (a.format == "svg")
    std::cout << disp::region_svg(rows, a.dim);
  else
    std::cout << disp::region_csv(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersion, empty boxes, cover-free families and bound tables"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a point set file");
  cmd_gen->add_option("--kind", gen.kind, "uniform-random | equispaced-1d | centered-grid | van-der-corput")
      ->required();
  cmd_gen->add_option("--n", gen.n, "number of points (ignored by centered-grid)");
  cmd_gen->add_option("--dim", gen.dim, "dimension d >= 1")->required();
  cmd_gen->add_option("--m", gen.m, "per-axis count (centered-grid only)");
  cmd_gen->add_option("--seed", gen.seed, "64-bit seed (default 0)");
  cmd_gen->add_option("--out", gen.out, "output path")->required();

  DispArgs dsp;
  auto* cmd_disp = app.add_subcommand("disp", "exact dispersion of a point-set file");
  cmd_disp->add_option("--input", dsp.input, "point-set file")->required();
  cmd_disp->add_option("--budget", dsp.budget, "search node budget");

  auto* cmd_cff = app.add_subcommand("cff", "cover-free family tools");
  cmd_cff->require_subcommand(1);
  CffVerifyArgs cffv;
  auto* cmd_cffv = cmd_cff->add_subcommand("verify", "verify a family file is (k,r)-cover-free");
  cmd_cffv->add_option("--family", cffv.family, "set-family file")->required();
  cmd_cffv->add_option("--k", cffv.k, "intersection arity")->required();
  cmd_cffv->add_option("--r", cffv.r, "union arity")->required();
  CffSearchArgs cffs;
  auto* cmd_cffs = cmd_cff->add_subcommand("search", "exact C(k,r,d) by canonical search");
  cmd_cffs->add_option("--k", cffs.k, "intersection arity")->required();
  cmd_cffs->add_option("--r", cffs.r, "union arity")->required();
  cmd_cffs->add_option("--d", cffs.d, "family size")->required();
  cmd_cffs->add_option("--budget", cffs.budget, "search node budget");

  ReduceArgs red;
  auto* cmd_reduce = app.add_subcommand("reduce", "dispersion <-> cover-free consistency report");
  cmd_reduce->add_option("--input", red.input, "point-set file")->required();
  cmd_reduce->add_option("--eps", red.eps, "epsilon in (0, 2^-(k+2))")->required();
  cmd_reduce->add_option("--k", red.k, "number of (0,u) sides")->required();

  BoundsArgs bnd;
  auto* cmd_bounds = app.add_subcommand("bounds", "evaluate the bound catalog at (eps, d)");
  cmd_bounds->add_option("--eps", bnd.eps, "epsilon in (0,1)")->required();
  cmd_bounds->add_option("--dim", bnd.dim, "dimension d >= 1")->required();
  cmd_bounds->add_option("--c", bnd.c, "stand-in for the unknown lower-case constants (default 1)");
  cmd_bounds->add_option("--big-c", bnd.big_c, "stand-in for the unknown constant C (default 1)");

  RegionsArgs reg;
  auto* cmd_regions = app.add_subcommand("regions", "winning-bound table/chart over an eps range");
  cmd_regions->add_option("--dim", reg.dim, "dimension d >= 1")->required();
  cmd_regions->add_option("--eps-min", reg.eps_min, "lower end of the eps range")->required();
  cmd_regions->add_option("--eps-max", reg.eps_max, "upper end of the eps range")->required();
  cmd_regions->add_option("--steps", reg.steps, "grid size (>= 2)")
      ->required()
      ->check(CLI::Range(2, 1000000));
  cmd_regions->add_option("--format", reg.format, "csv | svg")
      ->check(CLI::IsMember({"csv", "svg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_disp->parsed()) return run_disp(dsp);
    if (cmd_cffv->parsed()) return run_cff_verify(cffv);
    if (cmd_cffs->parsed()) return run_cff_search(cffs);
    if (cmd_reduce->parsed()) return run_reduce(red);
    if (cmd_bounds->parsed()) return run_bounds(bnd);
    if (cmd_regions->parsed()) return run_regions(reg);
  } catch (const disp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const disp::BudgetExceededError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const disp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidity;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
