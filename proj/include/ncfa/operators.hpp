#pragma once

#include <cstdint>
#include <vector>

#include "ncfa/fourier.hpp"

namespace ncfa {

// A band-limiting operator is a collection {R_rho} of blocks, one square
// d_rho x d_rho matrix per irrep. Acting from the left on the spectrum
// (blocks multiply fhat(rho) on the left) yields an operator commuting with
// left translations; the mirrored right action commutes with right
// translations. Its Hilbert-Schmidt norm satisfies
// ||R||_2^2 = sum_rho d_rho ||R_rho||_2^2.
struct BandLimiter {
  IrrepCatalog catalog;
  std::vector<ComplexMatrix> blocks;

  const ComplexMatrix& block(int i) const { return blocks[i]; }
  int count() const { return static_cast<int>(blocks.size()); }
};

enum class Side { left, right };

BandLimiter identity_band_limiter(const IrrepCatalog& cat);
BandLimiter zero_band_limiter(const IrrepCatalog& cat);
// R_T: identity block on the irreps listed in T, zero elsewhere.
BandLimiter subset_band_limiter(const IrrepCatalog& cat, const std::vector<int>& t);

double band_hs_sq(const BandLimiter& r);  // sum d_rho ||R_rho||_2^2
// sum d_rho rank R_rho; the rank of the operator on L^2(G) when the blocks
// are projectors.
long band_rank_sum(const BandLimiter& r, double rel_tol = 1e-9);
// max over blocks of ||R_rho^2 - R_rho||_F and ||R_rho - R_rho^dagger||_F.
double projector_residual(const BandLimiter& r);

// (P_m g)(x) = m(x) g(x)
GroupFunction apply_time_limiter(const GroupFunction& m, const GroupFunction& g);

// Transform, multiply each block by R_rho (on the chosen side), invert.
GroupFunction apply_band_limiter(const BandLimiter& r, const GroupFunction& g,
                                 Side side = Side::left);

// Description of an operator on L^2(G) that can be materialized as a
// |G| x |G| matrix acting in the delta basis: (Op g)(x) = sum_y M[x,y] g(y).
// Because the delta basis is a uniform rescaling of an orthonormal basis,
// Hilbert-Schmidt and operator norms of M equal those of the abstract
// operator (tested, not assumed).
struct OperatorDesc {
  enum class Kind { time, band, translate, isotypic, compose };

  Kind kind = Kind::time;
  GroupFunction mask;                // time
  BandLimiter band;                  // band
  Side side = Side::left;            // band
  int element = 0;                   // translate: L_{x0}
  int irrep = 0;                     // isotypic: Pi_rho
  std::vector<OperatorDesc> parts;   // compose: product, rightmost acts first

  static OperatorDesc time_limiter(GroupFunction mask);
  static OperatorDesc band_limiter(BandLimiter band, Side side = Side::left);
  static OperatorDesc left_translation(int element);
  static OperatorDesc isotypic(int irrep);
  static OperatorDesc compose(std::vector<OperatorDesc> parts);
};

// Materialized entries:
//   time-limiter        diagonal m(x)
//   left-translation    permutation, M[x, x0^-1 x] = 1
//   band (left side)    M[x,y] = sum_rho (d_rho/|G|) tr[R_rho rho(y^-1 x)]
//   band (right side)   M[x,y] = sum_rho (d_rho/|G|) tr[R_rho rho(x y^-1)]
//   isotypic rho        band limiter with the single identity block at rho
//   compose             matrix product of the parts, left to right
ComplexMatrix materialize(const OperatorDesc& desc, const FiniteGroup& g, const IrrepCatalog& cat);

// Apply a materialized operator to a function.
GroupFunction apply_operator(const ComplexMatrix& m, const GroupFunction& g);

// Orthogonal projector blocks onto the column spaces of the spectrum's
// blocks; the rank threshold is relative to the largest singular value
// across all blocks, matching support_metrics.
BandLimiter image_band_limiter(const Spectrum& s, double rel_tol = 1e-9);

struct CommutationReport {
  double left_translation_residual = 0.0;   // max_x || M L_x - L_x M ||
  double right_translation_residual = 0.0;  // max_y || M R_y - R_y M ||
  double subset_projection_residual = 0.0;  // max over sampled S of || M P_S - P_S M ||
};

// Left/right translation residuals are exhaustive over the group; the
// subset-projection residual is the max over `subsets` seeded random subsets.
CommutationReport commutation_report(const OperatorDesc& desc, const FiniteGroup& g,
                                     const IrrepCatalog& cat, std::uint64_t seed,
                                     int subsets = 64);

// max-entry residual of (1/|G|) sum_x L_{x^-1} P_{|f|^2} L_x = ||f||_2^2 I,
// the finite form of the averaged conjugation identity.
double averaging_identity_residual(const GroupFunction& f);

}  // namespace ncfa
