#pragma once

#include "schwarz/block.hpp"
#include "schwarz/iteration.hpp"
#include "schwarz/problems.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace schwarz {

struct GridCell {
  std::size_t nx = 0;
  std::size_t my = 0;
  double epsilon = 0.0;
};

/// Eight (N, M) blocks times eps in {1e-8, 1e-6, 1e-4, 1e-2}.
std::vector<GridCell> default_table_grid();
/// Array of {N, M, epsilon} objects.
std::vector<GridCell> grid_from_json(const nlohmann::json& j);

struct PublishedCell {
  GridCell cell;
  const char* rho12;  // two significant digits, "%.1e" style
  const char* rho;
};
const std::vector<PublishedCell>& published_table();

struct TableRow {
  GridCell cell;
  std::size_t dim = 0;
  double rho12 = 0.0;  // exact, infinity norm
  double rho = 0.0;    // eps / (eps + H_y)
};

/// Evaluates the grid cells in parallel; rows come back in grid order.
std::vector<TableRow> compute_table(const std::vector<GridCell>& grid);
void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);
/// Descriptions of the published cells whose rounded values differ.
std::vector<std::string> table_mismatches(const std::vector<TableRow>& rows);

/// Error trace from x0 = 0 with the closed-form curve rho^k ||T||-bound attached.
IterationTrace run_converge(const ShishkinProblem& p, Ordering ordering, std::size_t max_iter,
                            double rel_tol = 1e-12);
/// CSV with header ordering,k,relative_error_inf,theorem_bound.
void write_converge_csv(std::ostream& out, Ordering ordering, const IterationTrace& trace,
                        bool header = true);

/// Row block dominant system with Toeplitz wings and random n x n blocks:
/// every row sum is drawn from [0.3, 0.95]. With column_dominant the column
/// sums obey the same limit.
BlockArrowSystem random_toeplitz_system(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                        bool column_dominant = false);

/// SCHWARZ_SEED when set and parseable, otherwise the default seed.
std::uint64_t seed_from_env();

enum class VerifyScale { Quick, Full };

struct VerifyGroup {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  VerifyScale scale = VerifyScale::Quick;
  std::uint64_t seed = 0;
  bool inject_fault = false;
  std::vector<VerifyGroup> groups;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Runs the invariant suites. With inject_fault one stencil entry of the
/// Shishkin instances is perturbed, which the dominance group must catch.
VerifyReport run_verify(VerifyScale scale, std::uint64_t seed, bool inject_fault = false);

}  // namespace schwarz
