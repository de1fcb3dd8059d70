#include "schwarz/bounds.hpp"

#include "schwarz/error.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"

#include <algorithm>
#include <string>

namespace schwarz {

namespace {

DenseMatrix named_inverse(const DenseMatrix& m, const std::string& name) {
  try {
    return inverse(m);
  } catch (const SchwarzError& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw SchwarzError(ErrorCode::SingularMatrix, "block " + name + " is singular");
  }
}

std::string indexed(const char* base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

void classify(DominanceReport& r) {
  r.weak = std::all_of(r.sums.begin(), r.sums.end(), [](double s) { return s <= 1.0 + kDominanceTol; });
  r.strict = std::all_of(r.sums.begin(), r.sums.end(), [](double s) { return s < 1.0 - kDominanceTol; });
}

// ||A^{-1} X|| with A^{-1} given; zero for an absent block.
double left_term(const DenseMatrix& ainv, const DenseMatrix* x, NormKind norm) {
  return x ? schwarz::norm(ainv * *x, norm) : 0.0;
}

double right_term(const DenseMatrix& ainv, const DenseMatrix* x, NormKind norm) {
  return x ? schwarz::norm(*x * ainv, norm) : 0.0;
}

double positive_quotient(double num, double den, const char* what) {
  if (!(den > 0.0)) {
    throw SchwarzError(ErrorCode::DominanceViolated,
                       std::string(what) + ": denominator " + std::to_string(den) + " is not positive");
  }
  return num / den;
}

struct CenterNorms {
  double inv_b;  // ||A^{-1} B||
  double inv_c;  // ||A^{-1} C||
};

CenterNorms center_norms(const BlockArrowSystem& sys, NormKind norm) {
  const DenseMatrix ainv = named_inverse(sys.center(), "A");
  return {schwarz::norm(ainv * sys.coupling_b(), norm), schwarz::norm(ainv * sys.coupling_c(), norm)};
}

}  // namespace

DominanceReport check_row_dominance(const BlockArrowSystem& sys, NormKind norm) {
  DominanceReport r;
  r.kind = DominanceKind::Row;
  r.norm = norm;
  if (!sys.is_toeplitz()) {
    const BlockTridiagonal full = sys.as_block_tridiagonal();
    r.sums = check_row_dominance(full, norm).sums;
    classify(r);
    return r;
  }
  const std::size_t m = sys.wing_length();
  const DenseMatrix* ch_wing = m >= 2 ? &sys.wing_top().sub()[0] : nullptr;
  const DenseMatrix* bh_wing = m >= 2 ? &sys.wing_bottom().super()[0] : nullptr;
  const DenseMatrix ah_inv = named_inverse(sys.wing_top().diag()[0], "A_H");
  const DenseMatrix al_inv = named_inverse(sys.wing_bottom().diag()[0], "A_h");
  const CenterNorms c = center_norms(sys, norm);
  r.sums = {left_term(ah_inv, &sys.coupling_bh(), norm) + left_term(ah_inv, ch_wing, norm),
            c.inv_b + c.inv_c,
            left_term(al_inv, bh_wing, norm) + left_term(al_inv, &sys.coupling_ch(), norm)};
  classify(r);
  return r;
}

DominanceReport check_row_dominance(const BlockTridiagonal& wing, NormKind norm) {
  DominanceReport r;
  r.kind = DominanceKind::Row;
  r.norm = norm;
  const std::size_t m = wing.block_rows();
  for (std::size_t i = 0; i < m; ++i) {
    const DenseMatrix inv = named_inverse(wing.diag()[i], indexed("diag", i));
    double s = 0.0;
    if (i > 0) s += schwarz::norm(inv * wing.sub()[i - 1], norm);
    if (i + 1 < m) s += schwarz::norm(inv * wing.super()[i], norm);
    r.sums.push_back(s);
  }
  classify(r);
  return r;
}

DominanceReport check_column_dominance(const BlockTridiagonal& wing, NormKind norm) {
  DominanceReport r;
  r.kind = DominanceKind::Column;
  r.norm = norm;
  const std::size_t m = wing.block_rows();
  for (std::size_t j = 0; j < m; ++j) {
    const DenseMatrix inv = named_inverse(wing.diag()[j], indexed("diag", j));
    double s = 0.0;
    if (j > 0) s += schwarz::norm(wing.super()[j - 1] * inv, norm);
    if (j + 1 < m) s += schwarz::norm(wing.sub()[j] * inv, norm);
    r.sums.push_back(s);
  }
  classify(r);
  return r;
}

EtaFactors eta_factors(const BlockArrowSystem& sys, NormKind norm) {
  if (!sys.is_toeplitz()) {
    throw SchwarzError(ErrorCode::PreconditionFailed, "eta factors need Toeplitz wings");
  }
  const std::size_t m = sys.wing_length();
  const DenseMatrix* c_H = m >= 2 ? &sys.wing_top().sub()[0] : nullptr;
  const DenseMatrix* b_h = m >= 2 ? &sys.wing_bottom().super()[0] : nullptr;
  const DenseMatrix& b_H = sys.coupling_bh();
  const DenseMatrix& c_h = sys.coupling_ch();
  const DenseMatrix aH_inv = named_inverse(sys.wing_top().diag()[0], "A_H");
  const DenseMatrix ah_inv = named_inverse(sys.wing_bottom().diag()[0], "A_h");

  EtaFactors e;
  e.norm = norm;
  e.eta_h = positive_quotient(left_term(ah_inv, &c_h, norm), 1.0 - left_term(ah_inv, b_h, norm), "eta_h");
  e.eta_H = positive_quotient(left_term(aH_inv, &b_H, norm), 1.0 - left_term(aH_inv, c_H, norm), "eta_H");
  e.eta_h_min = e.eta_h;
  e.eta_H_min = e.eta_H;
  e.column_dominant = check_column_dominance(sys.wing_top(), norm).weak &&
                      check_column_dominance(sys.wing_bottom(), norm).weak;
  if (e.column_dominant) {
    const double den_h = 1.0 - right_term(ah_inv, &c_h, norm);
    const double den_H = 1.0 - right_term(aH_inv, &b_H, norm);
    if (den_h > 0.0) {
      e.eta_h_min = std::min(e.eta_h, schwarz::norm(ah_inv, norm) * schwarz::norm(c_h, norm) / den_h);
    }
    if (den_H > 0.0) {
      e.eta_H_min = std::min(e.eta_H, schwarz::norm(aH_inv, norm) * schwarz::norm(b_H, norm) / den_H);
    }
  }
  return e;
}

RhoBound rho_bound_factors(const EtaFactors& etas, const BlockArrowSystem& sys, EtaVariant variant) {
  const CenterNorms c = center_norms(sys, etas.norm);
  const double eh = variant == EtaVariant::Min ? etas.eta_h_min : etas.eta_h;
  const double eH = variant == EtaVariant::Min ? etas.eta_H_min : etas.eta_H;
  RhoBound r;
  r.pi2_factor = positive_quotient(eh * c.inv_c, 1.0 - eh * c.inv_b, "Pi2 factor");
  r.pi1_factor = positive_quotient(eH * c.inv_b, 1.0 - eH * c.inv_c, "Pi1 factor");
  r.value = r.pi2_factor * r.pi1_factor;
  return r;
}

double rho_bound(const EtaFactors& etas, const BlockArrowSystem& sys, EtaVariant variant) {
  return rho_bound_factors(etas, sys, variant).value;
}

double product_bound(const BlockArrowSystem& sys, NormKind norm) {
  const SchwarzCore core = compute_core_schur(sys);
  const std::size_t m = sys.wing_length();
  const DenseMatrix z11 = extract_z_strip(sys.wing_bottom(), WingSide::First).strip[0];
  const DenseMatrix zmm = extract_z_strip(sys.wing_top(), WingSide::Last).strip[m - 1];
  return schwarz::norm(z11 * sys.coupling_ch(), norm) * schwarz::norm(zmm * sys.coupling_bh(), norm) *
         schwarz::norm(core.pi1, norm) * schwarz::norm(core.pi2, norm);
}

double t_norm_bound(const EtaFactors& etas, const BlockArrowSystem& sys, Ordering ordering,
                    EtaVariant variant, double c) {
  if (!(c > 0.0)) throw SchwarzError(ErrorCode::InvalidParameter, "norm constant c must be positive");
  const RhoBound r = rho_bound_factors(etas, sys, variant);
  return c * (ordering == Ordering::T12 ? r.pi1_factor : r.pi2_factor);
}

std::vector<double> error_bound_curve(double rho, double t_bound, std::size_t k_max) {
  std::vector<double> curve(k_max + 1);
  double value = t_bound;
  for (std::size_t k = 0; k <= k_max; ++k) {
    curve[k] = value;
    value *= rho;
  }
  return curve;
}

std::vector<double> error_bound_curve(const EtaFactors& etas, const BlockArrowSystem& sys,
                                      Ordering ordering, std::size_t k_max, EtaVariant variant,
                                      double c) {
  return error_bound_curve(rho_bound(etas, sys, variant),
                           t_norm_bound(etas, sys, ordering, variant, c), k_max);
}

double DecayProfile::offdiag_factor(std::size_t i, std::size_t j) const {
  double f = 1.0;
  if (i < j) {
    for (std::size_t k = i + 1; k <= j; ++k) f *= omega[k];
  } else {
    for (std::size_t k = j; k < i; ++k) f *= tau[k];
  }
  return f;
}

DecayProfile decay_profile(const BlockTridiagonal& wing, NormKind norm) {
  const std::size_t m = wing.block_rows();
  // With 0-based i: C_i = sub[i] (below diag[i]), B_{i-1} = super[i-1] (above diag[i]).
  std::vector<double> c_term(m, 0.0);  // ||C_i A_i^{-1}||
  std::vector<double> b_term(m, 0.0);  // ||B_{i-1} A_i^{-1}||
  std::vector<DenseMatrix> inv;
  for (std::size_t i = 0; i < m; ++i) {
    inv.push_back(named_inverse(wing.diag()[i], indexed("diag", i)));
    if (i + 1 < m) c_term[i] = schwarz::norm(wing.sub()[i] * inv[i], norm);
    if (i > 0) b_term[i] = schwarz::norm(wing.super()[i - 1] * inv[i], norm);
  }
  if (c_term[0] >= 1.0 || b_term[m - 1] >= 1.0) {
    throw SchwarzError(ErrorCode::PreconditionFailed,
                       "end conditions ||C_1 A_1^{-1}|| < 1 and ||B_{m-1} A_m^{-1}|| < 1 violated");
  }
  DecayProfile p;
  for (std::size_t i = 0; i < m; ++i) {
    p.tau.push_back(positive_quotient(c_term[i], 1.0 - b_term[i], "tau~"));
    p.omega.push_back(positive_quotient(b_term[i], 1.0 - c_term[i], "omega~"));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double tau_prev = i > 0 ? p.tau[i - 1] : 0.0;
    const double omega_next = i + 1 < m ? p.omega[i + 1] : 0.0;
    const double b_prev = i > 0 ? schwarz::norm(wing.super()[i - 1], norm) : 0.0;
    const double c_here = i + 1 < m ? schwarz::norm(wing.sub()[i], norm) : 0.0;
    const double spread = tau_prev * b_prev + omega_next * c_here;
    p.diag_lower.push_back(1.0 / (schwarz::norm(wing.diag()[i], norm) + spread));
    const double den = 1.0 / schwarz::norm(inv[i], norm) - spread;
    p.diag_upper.push_back(den > 0.0 ? std::optional<double>(1.0 / den) : std::nullopt);
  }
  return p;
}

double toeplitz_inverse_bound(double a, double b, double c) {
  if (!(a > 0.0) || b > 0.0 || c > 0.0 || !(a + b + c > 0.0)) {
    throw SchwarzError(ErrorCode::PreconditionFailed,
                       "need a > 0, b, c <= 0 and a + b + c > 0");
  }
  return 1.0 / (a + b + c);
}

nlohmann::json bounds_report(const BlockArrowSystem& sys, NormKind norm) {
  const DominanceReport r = check_row_dominance(sys, norm);
  nlohmann::json j;
  j["kind"] = "row";
  j["norm"] = norm == NormKind::Inf ? "inf" : "two";
  j["sums"] = r.sums;
  j["weak"] = r.weak;
  j["strict"] = r.strict;
  try {
    const EtaFactors e = eta_factors(sys, norm);
    j["eta"] = {{"eta_H", e.eta_H}, {"eta_h", e.eta_h}, {"eta_H_min", e.eta_H_min},
                {"eta_h_min", e.eta_h_min}, {"column_dominant", e.column_dominant}};
    const EtaVariant v = e.column_dominant ? EtaVariant::Min : EtaVariant::Plain;
    j["rho_bound"] = rho_bound(e, sys, v);
    j["t_bound"] = {{"t12", t_norm_bound(e, sys, Ordering::T12, v)},
                    {"t21", t_norm_bound(e, sys, Ordering::T21, v)}};
  } catch (const SchwarzError& err) {
    j["eta"] = nullptr;
    j["rho_bound"] = nullptr;
    j["t_bound"] = nullptr;
    j["error"] = err.what();
  }
  return j;
}

}  // namespace schwarz
