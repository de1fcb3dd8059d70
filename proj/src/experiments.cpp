#include "schwarz/experiments.hpp"

#include "schwarz/bounds.hpp"
#include "schwarz/error.hpp"
#include "schwarz/format.hpp"
#include "schwarz/io.hpp"
#include "schwarz/krylov.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>

namespace schwarz {

namespace {

constexpr double kEpsilons[] = {1e-8, 1e-6, 1e-4, 1e-2};
constexpr std::pair<std::size_t, std::size_t> kMeshes[] = {
    {20, 20}, {30, 30}, {40, 40}, {50, 50}, {20, 30}, {30, 40}, {40, 50}, {50, 60}};

}  // namespace

std::vector<GridCell> default_table_grid() {
  std::vector<GridCell> grid;
  for (const auto& [nx, my] : kMeshes) {
    for (double eps : kEpsilons) grid.push_back({nx, my, eps});
  }
  return grid;
}

std::vector<GridCell> grid_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw SchwarzError(ErrorCode::InvalidParameter, "grid must be a JSON array");
  std::vector<GridCell> grid;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("N") || !e.contains("M") || !e.contains("epsilon") ||
        !io::is_count(e["N"]) || !io::is_count(e["M"]) || !e["epsilon"].is_number()) {
      throw SchwarzError(ErrorCode::InvalidParameter,
                         "grid entries need integer N, M and numeric epsilon");
    }
    grid.push_back({e["N"].get<std::size_t>(), e["M"].get<std::size_t>(), e["epsilon"].get<double>()});
  }
  return grid;
}

const std::vector<PublishedCell>& published_table() {
  static const std::vector<PublishedCell> table = [] {
    // rho12 and rho per mesh, eps = 1e-8, 1e-6, 1e-4, 1e-2.
    const char* values[8][4][2] = {
        {{"7.5e-08", "1.0e-07"}, {"7.5e-06", "1.0e-05"}, {"7.5e-04", "1.0e-03"}, {"7.0e-02", "9.6e-02"}},
        {{"1.2e-07", "1.5e-07"}, {"1.2e-05", "1.5e-05"}, {"1.2e-03", "1.5e-03"}, {"1.1e-01", "1.4e-01"}},
        {{"1.7e-07", "2.0e-07"}, {"1.7e-05", "2.0e-05"}, {"1.7e-03", "2.0e-03"}, {"1.4e-01", "1.8e-01"}},
        {{"2.2e-07", "2.5e-07"}, {"2.2e-05", "2.5e-05"}, {"2.2e-03", "2.5e-03"}, {"1.8e-01", "2.1e-01"}},
        {{"1.2e-07", "1.5e-07"}, {"1.2e-05", "1.5e-05"}, {"1.2e-03", "1.5e-03"}, {"1.1e-01", "1.4e-01"}},
        {{"1.7e-07", "2.0e-07"}, {"1.7e-05", "2.0e-05"}, {"1.7e-03", "2.0e-03"}, {"1.4e-01", "1.8e-01"}},
        {{"2.2e-07", "2.5e-07"}, {"2.2e-05", "2.5e-05"}, {"2.2e-03", "2.5e-03"}, {"1.8e-01", "2.1e-01"}},
        {{"2.6e-07", "3.0e-07"}, {"2.6e-05", "3.0e-05"}, {"2.6e-03", "3.0e-03"}, {"2.1e-01", "2.5e-01"}},
    };
    std::vector<PublishedCell> out;
    for (std::size_t b = 0; b < 8; ++b) {
      for (std::size_t e = 0; e < 4; ++e) {
        out.push_back({{kMeshes[b].first, kMeshes[b].second, kEpsilons[e]}, values[b][e][0], values[b][e][1]});
      }
    }
    return out;
  }();
  return table;
}

std::vector<TableRow> compute_table(const std::vector<GridCell>& grid) {
  std::vector<TableRow> rows(grid.size());
  std::exception_ptr failure;
  const long count = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      const GridCell& c = grid[static_cast<std::size_t>(i)];
      const ShishkinProblem p = build_shishkin(c.epsilon, 0.0, c.nx, c.my);
      rows[static_cast<std::size_t>(i)] = {c, p.system.dim(),
                                           rho_exact(p.system, Ordering::T12, NormKind::Inf),
                                           p.mesh_rho()};
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "N,M,epsilon,dim,rho12_exact_inf,rho_bound\n";
  for (const TableRow& r : rows) {
    out << r.cell.nx << ',' << r.cell.my << ',' << format_sci(r.cell.epsilon) << ',' << r.dim << ','
        << format_sci(r.rho12) << ',' << format_sci(r.rho) << '\n';
  }
}

std::vector<std::string> table_mismatches(const std::vector<TableRow>& rows) {
  std::vector<std::string> out;
  for (const PublishedCell& pub : published_table()) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) {
      return r.cell.nx == pub.cell.nx && r.cell.my == pub.cell.my && r.cell.epsilon == pub.cell.epsilon;
    });
    std::ostringstream where;
    where << "N=" << pub.cell.nx << " M=" << pub.cell.my << " eps=" << format_2sig(pub.cell.epsilon);
    if (it == rows.end()) {
      out.push_back(where.str() + ": missing");
      continue;
    }
    const std::string got12 = format_2sig(it->rho12);
    const std::string got = format_2sig(it->rho);
    if (got12 != pub.rho12) out.push_back(where.str() + ": rho12 " + got12 + " != " + pub.rho12);
    if (got != pub.rho) out.push_back(where.str() + ": rho " + got + " != " + pub.rho);
  }
  return out;
}

IterationTrace run_converge(const ShishkinProblem& p, Ordering ordering, std::size_t max_iter,
                            double rel_tol) {
  const auto [b, exact] = shishkin_rhs_and_exact(p);
  const Vector x0(b.size(), 0.0);
  IterationOptions opts;
  opts.ordering = ordering;
  opts.max_iter = max_iter;
  opts.rel_tol = rel_tol;
  IterationTrace trace = iterate(p.system, b, x0, opts);
  const std::vector<double> curve =
      error_bound_curve(p.mesh_rho(), p.mesh_t_bound(ordering), trace.error_norms.size());
  attach_bound(trace, curve);
  return trace;
}

void write_converge_csv(std::ostream& out, Ordering ordering, const IterationTrace& trace, bool header) {
  if (header) out << "ordering,k,relative_error_inf,theorem_bound\n";
  for (std::size_t k = 0; k < trace.error_norms.size(); ++k) {
    out << to_string(ordering) << ',' << k << ',' << format_sci(trace.error_norms[k]) << ',';
    if (k < trace.bound_curve.size()) out << format_sci(trace.bound_curve[k]);
    out << '\n';
  }
}

BlockArrowSystem random_toeplitz_system(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                        bool column_dominant) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> target(0.3, 0.95);
  const auto random_block = [&](double diag_shift) {
    DenseMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) b(i, j) = entry(rng);
      b(i, i) += diag_shift;
    }
    return b;
  };
  struct Row {
    DenseMatrix diag, sub, super;
  };
  const auto dominant_row = [&] {
    Row r{random_block(static_cast<double>(n) + 1.0), random_block(0.0), random_block(0.0)};
    const DenseMatrix inv = inverse(r.diag);
    double s = inf_norm(inv * r.sub) + inf_norm(inv * r.super);
    if (column_dominant) s = std::max(s, inf_norm(r.sub * inv) + inf_norm(r.super * inv));
    const double scale = target(rng) / s;
    r.sub *= scale;
    r.super *= scale;
    return r;
  };
  const Row top = dominant_row();
  const Row center = dominant_row();
  const Row bottom = dominant_row();
  return BlockArrowSystem::assemble(n, m, BlockTridiagonal::toeplitz(m, top.sub, top.diag, top.super),
                                    BlockTridiagonal::toeplitz(m, bottom.sub, bottom.diag, bottom.super),
                                    center.diag, center.super, center.sub, top.super, bottom.sub);
}

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("SCHWARZ_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 0);
    if (end != s && *end == '\0') return v;
  }
  return kDefaultSeed;
}

namespace {

struct GroupResult {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

using Check = std::function<void(GroupResult&)>;

VerifyGroup run_group(const std::string& name, const Check& check) {
  GroupResult r;
  try {
    check(r);
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  return {name, r.ok, r.ok ? "ok" : r.detail.str()};
}

struct Sizes {
  std::size_t instances;
  std::size_t max_n;
  std::size_t max_m;
};

template <class F>
void for_random_instances(std::mt19937_64& rng, const Sizes& s, bool column_dominant, F&& f) {
  std::uniform_int_distribution<std::size_t> pick_n(1, s.max_n);
  std::uniform_int_distribution<std::size_t> pick_m(1, s.max_m);
  for (std::size_t i = 0; i < s.instances; ++i) {
    const std::size_t n = pick_n(rng);
    const std::size_t m = pick_m(rng);
    f(random_toeplitz_system(rng, n, m, column_dominant), i);
  }
}

std::string tag(std::size_t i, const char* what) {
  return "instance " + std::to_string(i) + ": " + what;
}

void check_structure(GroupResult& r, const BlockArrowSystem& sys, std::size_t i) {
  const SchwarzCore core = compute_core(sys);
  for (Ordering o : {Ordering::T12, Ordering::T21}) {
    const LowRankT t = build_lowrank(core, o);
    const DenseMatrix dense = materialize_T(sys, o);
    if (max_abs_diff(t.materialize_power(1), dense) > 1e-10) r.fail(tag(i, "low-rank T differs from dense T"));
    DenseMatrix power = dense;
    for (std::size_t k = 1; k <= 5; ++k) {
      power = power * dense;
      if (max_abs_diff(t.materialize_power(k + 1), power) > 1e-10) r.fail(tag(i, "power formula mismatch"));
    }
    const std::vector<double> sv = singular_values(dense);
    const auto rank = std::count_if(sv.begin(), sv.end(), [&](double s) { return s > 1e-10 * sv[0]; });
    if (static_cast<std::size_t>(rank) > sys.block_dim()) r.fail(tag(i, "numerical rank of T exceeds n"));
  }
  const SchwarzCore schur = compute_core_schur(sys);
  if (max_abs_diff(core.pi1, schur.pi1) > 1e-10 || max_abs_diff(core.pi2, schur.pi2) > 1e-10) {
    r.fail(tag(i, "Schur route disagrees with the direct core"));
  }
}

void check_bounds(GroupResult& r, const BlockArrowSystem& sys, std::size_t i) {
  const double exact = rho_exact(sys, Ordering::T12, NormKind::Inf);
  const double exact21 = rho_exact(sys, Ordering::T21, NormKind::Inf);
  const double product = product_bound(sys, NormKind::Inf);
  const EtaFactors e = eta_factors(sys, NormKind::Inf);
  const RhoBound rb = rho_bound_factors(e, sys);
  if (std::max(exact, exact21) > product + 1e-12) r.fail(tag(i, "rho exceeds the product bound"));
  if (product > rb.value + 1e-12) r.fail(tag(i, "product bound exceeds the eta bound"));
  for (double f : {e.eta_h, e.eta_H, e.eta_h_min, e.eta_H_min, rb.pi1_factor, rb.pi2_factor}) {
    if (f < 0.0 || f > 1.0 + 1e-12) r.fail(tag(i, "factor outside [0, 1]"));
  }
  if (e.eta_h_min > e.eta_h || e.eta_H_min > e.eta_H) r.fail(tag(i, "min variant exceeds plain eta"));
  const std::size_t m = sys.wing_length();
  const ZBlocks first = extract_z_strip(sys.wing_bottom(), WingSide::First);
  const ZBlocks last = extract_z_strip(sys.wing_top(), WingSide::Last);
  const double z11 = inf_norm(first.strip[0] * sys.coupling_ch());
  const double zmm = inf_norm(last.strip[m - 1] * sys.coupling_bh());
  for (std::size_t j = 0; j < m; ++j) {
    if (inf_norm(first.strip[j] * sys.coupling_ch()) > z11 * (1 + 1e-12) ||
        inf_norm(last.strip[j] * sys.coupling_bh()) > zmm * (1 + 1e-12)) {
      r.fail(tag(i, "strip decay violated"));
    }
  }
  if (z11 > e.eta_h_min * (1 + 1e-12) || zmm > e.eta_H_min * (1 + 1e-12)) {
    r.fail(tag(i, "Z block exceeds its eta bound"));
  }
}

void check_consistency(GroupResult& r, const BlockArrowSystem& sys, std::size_t i, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  Vector b(sys.dim());
  for (double& x : b) x = entry(rng);
  const Vector x = solve(lu_factor(materialize_dense(sys)), b);
  const LocalSolvers solvers(sys);
  const SchwarzCore core = compute_core(sys);
  for (Ordering o : {Ordering::T12, Ordering::T21}) {
    const LowRankT t = build_lowrank(core, o);
    const Vector v = consistency_vector(solvers, b, o);
    Vector fixed = apply_T(t, x);
    axpy(1.0, v, fixed);
    if (inf_norm(subtract(x, fixed)) >= 1e-10 * inf_norm(x)) r.fail(tag(i, "solution is not a fixed point"));
    Vector xk(sys.dim(), 0.0);
    for (std::size_t k = 0; k < 4; ++k) {
      const Vector ek = subtract(x, xk);
      Vector next = apply_T(t, xk);
      axpy(1.0, v, next);
      const Vector predicted = apply_T(t, ek);
      const Vector measured = subtract(x, next);
      if (inf_norm(subtract(measured, predicted)) > 1e-12 * std::max(1.0, inf_norm(ek))) {
        r.fail(tag(i, "error recurrence violated"));
      }
      xk = std::move(next);
    }
  }
}

void check_shishkin(GroupResult& r, const ShishkinProblem& p) {
  std::ostringstream where;
  where << "N=" << p.nx << " M=" << p.my << " eps=" << format_2sig(p.epsilon) << " beta=" << p.beta << ": ";
  const auto fail = [&](const char* what) { r.fail(where.str() + what); };
  for (const Stencil* s : {&p.stencils.coarse, &p.stencils.transition, &p.stencils.fine}) {
    if (std::abs(s->sum() - p.beta) > 1e-12 * std::max(1.0, std::abs(s->diag))) fail("stencil sum differs from beta");
    if (!(s->diag > 0.0) || !(s->west < 0.0) || !(s->east < 0.0) || !(s->south < 0.0) || !(s->north < 0.0)) {
      fail("stencil sign pattern violated");
    }
  }
  if (!check_row_dominance(p.system, NormKind::Inf).weak) fail("not row block dominant");
  if (!check_column_dominance(p.system.wing_top(), NormKind::Inf).weak ||
      !check_column_dominance(p.system.wing_bottom(), NormKind::Inf).weak) {
    fail("wing not column block dominant");
  }
}

ShishkinProblem with_fault(ShishkinProblem p) {
  p.stencils.coarse.diag *= 0.5;
  p.system = assemble_from_stencils(p.block_dim(), p.my / 2 - 1, p.stencils);
  return p;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(groups.begin(), groups.end(), [](const VerifyGroup& g) { return g.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["scale"] = scale == VerifyScale::Quick ? "quick" : "full";
  j["seed"] = seed;
  j["inject_fault"] = inject_fault;
  j["groups"] = nlohmann::json::array();
  for (const VerifyGroup& g : groups) j["groups"].push_back({{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}});
  j["passed"] = passed();
  return j;
}

VerifyReport run_verify(VerifyScale scale, std::uint64_t seed, bool inject_fault) {
  VerifyReport report;
  report.scale = scale;
  report.seed = seed;
  report.inject_fault = inject_fault;
  const bool full = scale == VerifyScale::Full;
  const Sizes sizes = full ? Sizes{100, 5, 6} : Sizes{20, 4, 4};
  std::mt19937_64 rng(seed);

  report.groups.push_back(run_group("structure", [&](GroupResult& r) {
    for_random_instances(rng, sizes, false, [&](const BlockArrowSystem& s, std::size_t i) { check_structure(r, s, i); });
  }));
  report.groups.push_back(run_group("bounds", [&](GroupResult& r) {
    for_random_instances(rng, sizes, true, [&](const BlockArrowSystem& s, std::size_t i) { check_bounds(r, s, i); });
  }));
  report.groups.push_back(run_group("consistency", [&](GroupResult& r) {
    for_random_instances(rng, sizes, false,
                         [&](const BlockArrowSystem& s, std::size_t i) { check_consistency(r, s, i, rng); });
  }));
  report.groups.push_back(run_group("shishkin_dominance", [&](GroupResult& r) {
    std::vector<GridCell> cells = full ? default_table_grid() : std::vector<GridCell>{{10, 8, 1e-2}, {20, 20, 1e-8}};
    for (const GridCell& c : cells) {
      for (double beta : {0.0, 1.0}) {
        ShishkinProblem p = build_shishkin(c.epsilon, beta, c.nx, c.my);
        check_shishkin(r, inject_fault ? with_fault(std::move(p)) : p);
      }
    }
  }));
  report.groups.push_back(run_group("gmres", [&](GroupResult& r) {
    const ShishkinProblem p = build_shishkin(1e-4, 0.0, 10, 8);
    const auto [b, exact] = shishkin_rhs_and_exact(p);
    const GmresResult g = gmres_schwarz(p.system, b, Ordering::T12, 1e-10, p.block_dim() + 1);
    if (g.iterations > p.block_dim() + 1) r.fail("too many GMRES iterations");
  }));
  if (full) {
    report.groups.push_back(run_group("table", [&](GroupResult& r) {
      for (const std::string& m : table_mismatches(compute_table(default_table_grid()))) r.fail(m);
    }));
    report.groups.push_back(run_group("convergence", [&](GroupResult& r) {
      for (double eps : {1e-4, 1e-8}) {
        const ShishkinProblem p = build_shishkin(eps, 0.0, 30, 40);
        for (Ordering o : {Ordering::T12, Ordering::T21}) {
          const IterationTrace t = run_converge(p, o, 50);
          if (!t.converged) r.fail("iteration did not converge");
          for (std::size_t k = 0; k < t.error_norms.size(); ++k) {
            if (t.error_norms[k] > t.bound_curve[k] * (1 + 1e-12)) r.fail("error above the closed-form bound");
          }
        }
      }
    }));
  }
  return report;
}

}  // namespace schwarz
