#pragma once

#include <vector>

#include "ncfa/group.hpp"
#include "ncfa/irreps.hpp"
#include "ncfa/matrix.hpp"

namespace ncfa {

// A complex-valued function on a finite group, one value per element in
// canonical order. The group carries normalized Haar measure: each element
// has mass 1/|G|, so ||f||_2^2 = (1/|G|) sum |f(x)|^2.
struct GroupFunction {
  FiniteGroup group;
  std::vector<cplx> values;

  int size() const { return static_cast<int>(values.size()); }
};

GroupFunction make_function(FiniteGroup g, std::vector<cplx> values);
GroupFunction constant_one(const FiniteGroup& g);                       // chi_G
GroupFunction delta(const FiniteGroup& g, int element);                 // indicator of {element}
GroupFunction indicator(const FiniteGroup& g, const std::vector<int>& subset);
GroupFunction subgroup_indicator(const FiniteGroup& g, const Subgroup& h);  // chi_H

double l2_norm_sq(const GroupFunction& f);  // (1/|G|) sum |f|^2
double sup_norm(const GroupFunction& f);    // max |f(x)|

// (L_y f)(x) = f(y^-1 x)
GroupFunction left_translate(const GroupFunction& f, int y);

// The operator-valued Fourier transform of f: one block per irrep,
//   fhat(rho) = (1/|G|) sum_x f(x) rho(x)^dagger.
struct Spectrum {
  IrrepCatalog catalog;
  std::vector<ComplexMatrix> blocks;

  const ComplexMatrix& block(int i) const { return blocks[i]; }
  int count() const { return static_cast<int>(blocks.size()); }
};

Spectrum fourier_transform(const GroupFunction& f, const IrrepCatalog& cat);

// Inversion: f(x) = sum_rho d_rho tr[ fhat(rho) rho(x) ]. Together with the
// 1/|G| in the forward transform this matches the normalized Haar measure,
// and Plancherel reads ||f||_2^2 = sum_rho d_rho ||fhat(rho)||_2^2.
GroupFunction inverse_transform(const Spectrum& s);

double plancherel_residual(const GroupFunction& f, const Spectrum& s);

// The three spectral-support measures of a spectrum, plus the time-side
// support fraction. Support on the time side counts entries with
// |f(x)| > 1e-12 * max|f|; a spectral block counts as nonzero when one of
// its singular values exceeds rel_tol times the largest singular value
// across all blocks (the same threshold used for the per-block ranks, so
// d1_sum <= rank_sum <= dsq_sum holds by construction).
struct SupportMetrics {
  double mu_supp = 0.0;  // |supp f| / |G|
  long rank_sum = 0;     // sum d_rho * rank fhat(rho)
  long dsq_sum = 0;      // sum over nonzero blocks of d_rho^2
  long d1_sum = 0;       // sum over nonzero blocks of d_rho
  bool zero_function = false;
};

SupportMetrics support_metrics(const GroupFunction& f, const Spectrum& s, double rel_tol = 1e-9);

// Largest singular value across all blocks of a spectrum.
double global_sigma_max(const Spectrum& s);

}  // namespace ncfa
