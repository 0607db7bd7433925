#pragma once

#include <map>
#include <string>

#include "ncfa/operators.hpp"
#include "ncfa/rng.hpp"

namespace ncfa {

enum class Verdict { pass, fail, flagged };

// One verified claim: the computed quantities, an equality residual and/or
// an inequality slack, and the verdict at the tolerance used. Equality
// residuals are relative with a floor of 1 in the denominator; inequality
// verdicts require slack >= -tolerance. `flagged` marks inputs outside the
// hypotheses (the zero function) and is never a failure.
struct UncertaintyReport {
  std::string check;
  std::map<std::string, double> quantities;
  double residual = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::fail;
  std::string flag;

  bool passed() const { return verdict != Verdict::fail; }
};

const char* verdict_name(Verdict v);

// Exact Hilbert-Schmidt identity: ||P_f R||_2^2 = ||f||_2^2 sum_rho d_rho
// ||R_rho||_2^2, for any f and any blocks R. The left side is computed from
// the materialized |G| x |G| operator, the right side in closed form.
UncertaintyReport hs_identity_check(const GroupFunction& f, const BandLimiter& r,
                                    Side side = Side::left, double tol = 1e-9);

// Operator-norm bound ||P_f R|| <= ||f||_2 (sum_rho d_rho ||R_rho||_2^2)^(1/2).
UncertaintyReport op_norm_bound_check(const GroupFunction& f, const BandLimiter& r,
                                      Side side = Side::left, double tol = 1e-9);

// Support-rank uncertainty principle mu(supp f) sum_rho d_rho rank fhat(rho)
// >= 1, reported alongside the coarser products built from sum d_rho^2 and
// sum d_rho over the spectral support.
UncertaintyReport support_rank_check(const GroupFunction& f, const IrrepCatalog& cat,
                                     double rel_tol = 1e-9, double tol = 1e-9);

// ||P_S R||^2 <= |S| sum_rho d_rho rank R_rho / |G| for projector blocks R.
UncertaintyReport projection_uncertainty_check(const FiniteGroup& g, const IrrepCatalog& cat,
                                               const std::vector<int>& s, const BandLimiter& r,
                                               double tol = 1e-9);

// Same bound for R_T, where it reads ||P_S R_T||^2 <= |S| sum_{rho in T}
// d_rho^2 / |G|.
UncertaintyReport projection_uncertainty_check(const FiniteGroup& g, const IrrepCatalog& cat,
                                               const std::vector<int>& s, const std::vector<int>& t,
                                               double tol = 1e-9);

// sum_x tr(R1 rho1(x)) conj tr(R2 rho2(x)) for projector blocks: 0 for
// distinct irreps, rank(R) |G| / d_rho on the diagonal (with R1 = R2; for
// distinct projectors on the same irrep the value is |G|/d tr(R1 R2)).
UncertaintyReport trace_orthogonality_check(const IrrepCatalog& cat, int rho1, int rho2,
                                            const ComplexMatrix& r1, const ComplexMatrix& r2,
                                            double tol = 1e-9);

// Profile of a subgroup indicator: the support-rank product (always exactly
// 1), per-irrep spectral ranks, and whether every rank is full or zero --
// which must coincide with normality of the subgroup.
UncertaintyReport subgroup_profile(const FiniteGroup& g, const IrrepCatalog& cat, const Subgroup& h,
                                   double rel_tol = 1e-9, double tol = 1e-9);

// The two inequality links behind the support-rank principle, evaluated at
// an argmax of |f| (f is scaled to sup norm 1 first; both links are scale
// invariant):
//   ||f||_2^2 <= mu(supp f) ||f||_inf^2
//   ||f||_inf^2 <= (sum d_rho rank fhat) (sum d_rho ||fhat(rho)||_2^2)
UncertaintyReport cauchy_schwarz_chain_check(const GroupFunction& f, const IrrepCatalog& cat,
                                             double rel_tol = 1e-9, double tol = 1e-9);

// ---- seeded samplers used by sweeps ----

GroupFunction random_function(const FiniteGroup& g, Rng& rng);         // i.i.d. complex Gaussian
GroupFunction random_sparse_function(const FiniteGroup& g, Rng& rng);  // Gaussian on a random nonempty subset
ComplexMatrix random_gaussian_matrix(int rows, int cols, Rng& rng);
ComplexMatrix random_projector(int dim, int rank, Rng& rng);  // orthogonal projector of the given rank
BandLimiter random_band_limiter(const IrrepCatalog& cat, Rng& rng);            // Gaussian blocks
BandLimiter random_projector_band_limiter(const IrrepCatalog& cat, Rng& rng);  // uniform-rank projectors
std::vector<int> random_subset(int n, Rng& rng);           // each element with probability 1/2
std::vector<int> random_nonempty_subset(int n, Rng& rng);

}  // namespace ncfa
