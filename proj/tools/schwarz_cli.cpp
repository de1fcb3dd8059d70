#include "schwarz/bounds.hpp"
#include "schwarz/error.hpp"
#include "schwarz/experiments.hpp"
#include "schwarz/format.hpp"
#include "schwarz/io.hpp"
#include "schwarz/iteration.hpp"
#include "schwarz/krylov.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"
#include "schwarz/problems.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace {

using namespace schwarz;

// Writes to --out when given, stdout otherwise.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw SchwarzError(ErrorCode::InvalidParameter, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

Ordering parse_ordering(const std::string& s) {
  if (s == "t12") return Ordering::T12;
  if (s == "t21") return Ordering::T21;
  throw SchwarzError(ErrorCode::InvalidParameter, "ordering must be t12 or t21");
}

int cmd_table(const std::string& grid, const std::string& out) {
  const std::vector<GridCell> cells =
      grid == "default" ? default_table_grid() : grid_from_json(io::read_json_file(grid));
  const auto start = std::chrono::steady_clock::now();
  const std::vector<TableRow> rows = compute_table(cells);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Output o(out);
  write_table_csv(o.stream(), rows);
  std::cerr << "evaluated " << rows.size() << " cells in " << secs << " s\n";
  if (grid == "default") {
    const auto mismatches = table_mismatches(rows);
    for (const std::string& m : mismatches) std::cerr << "mismatch: " << m << '\n';
    return mismatches.empty() ? 0 : 1;
  }
  return 0;
}

int cmd_converge(std::size_t nx, std::size_t my, double eps, const std::string& ordering,
                 std::size_t max_iter, const std::string& out) {
  const ShishkinProblem p = build_shishkin(eps, 0.0, nx, my);
  std::vector<Ordering> runs;
  if (ordering.empty()) {
    runs = {Ordering::T12, Ordering::T21};
  } else {
    runs = {parse_ordering(ordering)};
  }
  Output o(out);
  bool header = true;
  for (Ordering ord : runs) {
    const IterationTrace t = run_converge(p, ord, max_iter);
    write_converge_csv(o.stream(), ord, t, header);
    header = false;
  }
  return 0;
}

int cmd_verify(const std::string& scale, bool inject_fault, std::optional<std::uint64_t> seed,
               const std::string& out) {
  if (scale != "quick" && scale != "full") {
    throw SchwarzError(ErrorCode::InvalidParameter, "scale must be quick or full");
  }
  const VerifyReport r = run_verify(scale == "full" ? VerifyScale::Full : VerifyScale::Quick,
                                    seed.value_or(seed_from_env()), inject_fault);
  Output o(out);
  o.stream() << r.to_json().dump(2) << '\n';
  return r.passed() ? 0 : 1;
}

int cmd_poisson(std::size_t m, const std::string& out) {
  const PoissonProblem p = build_poisson(m);
  const DenseMatrix w = p.system.center();
  nlohmann::json j;
  j["m"] = m;
  j["block_dim"] = p.block_dim();
  j["h"] = p.h();
  j["w_inverse_inf"] = inf_norm(inverse(w));
  j["rho12_inf"] = rho_exact(p.system, Ordering::T12, NormKind::Inf);
  j["rho12_two"] = rho_exact(p.system, Ordering::T12, NormKind::Two);
  j["rho_bound_two"] = p.two_norm_rho_bound();
  j["dominance"] = bounds_report(p.system, NormKind::Inf);
  Output o(out);
  o.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_gmres(std::size_t nx, std::size_t my, double eps, double tol, const std::string& out) {
  const ShishkinProblem p = build_shishkin(eps, 0.0, nx, my);
  const auto [b, exact] = shishkin_rhs_and_exact(p);
  const GmresResult g = gmres_schwarz(p.system, b, Ordering::T12, tol, p.block_dim() + 1);
  Output o(out);
  write_residual_csv(o.stream(), g);
  std::cerr << "GMRES: " << g.iterations << " iterations, block dim " << p.block_dim() << '\n';
  return 0;
}

int cmd_custom(const std::string& system_path, const std::string& rhs_path, std::size_t max_iter,
               const std::string& out) {
  const BlockArrowSystem sys = io::system_from_json(io::read_json_file(system_path));
  const Vector b = io::vector_from_json(io::read_json_file(rhs_path));
  nlohmann::json j;
  j["n"] = sys.block_dim();
  j["m"] = sys.wing_length();
  j["dominance"] = bounds_report(sys, NormKind::Inf);
  for (Ordering ord : {Ordering::T12, Ordering::T21}) {
    IterationOptions opts;
    opts.ordering = ord;
    opts.max_iter = max_iter;
    const IterationTrace t = iterate(sys, b, Vector(sys.dim(), 0.0), opts);
    j[to_string(ord)] = {{"rho_exact_inf", rho_exact(sys, ord, NormKind::Inf)},
                         {"iterations", t.iterations_run},
                         {"converged", t.converged},
                         {"diverged", t.diverged},
                         {"error_norms", t.error_norms}};
  }
  Output o(out);
  o.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_export(const std::string& problem_path, const std::string& out) {
  const ProblemSpec p = problem_from_json(io::read_json_file(problem_path));
  Output o(out);
  o.stream() << io::system_to_json(system_of(p)).dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative Schwarz for block-arrow systems"};
  app.require_subcommand(1);
  std::string out;

  std::string grid = "default";
  auto* table = app.add_subcommand("table", "convergence factors over an (N, M, eps) grid");
  table->add_option("--grid", grid, "'default' or a JSON file with [{N, M, epsilon}, ...]");
  table->add_option("--out", out);

  std::size_t nx = 30, my = 40, max_iter = 50, pm = 1;
  double eps = 1e-4, tol = 1e-10;
  std::string ordering;
  auto* converge = app.add_subcommand("converge", "error history of the iteration from x0 = 0");
  converge->add_option("--N", nx, "x-intervals")->required()->check(CLI::Range(3, 100000));
  converge->add_option("--M", my, "y-intervals (even)")->required()->check(CLI::Range(4, 100000));
  converge->add_option("--eps", eps, "diffusion coefficient")->required()->check(CLI::PositiveNumber);
  converge->add_option("--ordering", ordering, "t12 or t21 (both when omitted)")
      ->check(CLI::IsMember({"t12", "t21"}));
  converge->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  converge->add_option("--out", out);

  std::string scale = "quick";
  bool inject = false;
  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--scale", scale)->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--inject-fault", inject, "perturb a stencil entry; the report must fail");
  verify->add_option("--seed", seed, "random seed (overrides SCHWARZ_SEED)");
  verify->add_option("--out", out);

  auto* poisson = app.add_subcommand("poisson", "Poisson block-arrow example");
  poisson->add_option("--m", pm)->required()->check(CLI::PositiveNumber);
  poisson->add_option("--out", out);

  auto* gmres = app.add_subcommand("gmres", "Schwarz-preconditioned GMRES residual history");
  gmres->add_option("--N", nx)->required()->check(CLI::Range(3, 100000));
  gmres->add_option("--M", my)->required()->check(CLI::Range(4, 100000));
  gmres->add_option("--eps", eps)->required()->check(CLI::PositiveNumber);
  gmres->add_option("--tol", tol)->check(CLI::PositiveNumber);
  gmres->add_option("--out", out);

  std::string system_path, rhs_path;
  auto* custom = app.add_subcommand("custom", "iterate on a system read from JSON");
  custom->add_option("--system", system_path)->required()->check(CLI::ExistingFile);
  custom->add_option("--rhs", rhs_path)->required()->check(CLI::ExistingFile);
  custom->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  custom->add_option("--out", out);

  std::string problem_path;
  auto* exporter = app.add_subcommand("export", "write a generated problem as a system JSON");
  exporter->add_option("--problem", problem_path)->required()->check(CLI::ExistingFile);
  exporter->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table) return cmd_table(grid, out);
    if (*converge) return cmd_converge(nx, my, eps, ordering, max_iter, out);
    if (*verify) return cmd_verify(scale, inject, seed, out);
    if (*poisson) return cmd_poisson(pm, out);
    if (*gmres) return cmd_gmres(nx, my, eps, tol, out);
    if (*custom) return cmd_custom(system_path, rhs_path, max_iter, out);
    if (*exporter) return cmd_export(problem_path, out);
  } catch (const SchwarzError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
