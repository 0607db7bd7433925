#include "ncfa/operators.hpp"

#include <algorithm>
#include <cmath>

#include "ncfa/errors.hpp"
#include "ncfa/rng.hpp"

namespace ncfa {

namespace {

void check_band(const BandLimiter& r) {
  if (!r.catalog.valid()) throw InvalidArgument("band limiter has no catalog");
  if (r.count() != r.catalog.count())
    throw InvalidArgument("band limiter block count does not match catalog");
  for (int i = 0; i < r.count(); ++i)
    if (r.block(i).rows() != r.catalog.dim(i) || r.block(i).cols() != r.catalog.dim(i))
      throw InvalidArgument("band limiter block dimension mismatch");
}

}  // namespace

BandLimiter identity_band_limiter(const IrrepCatalog& cat) {
  BandLimiter r;
  r.catalog = cat;
  r.blocks.reserve(cat.count());
  for (int i = 0; i < cat.count(); ++i) r.blocks.push_back(ComplexMatrix::identity(cat.dim(i)));
  return r;
}

BandLimiter zero_band_limiter(const IrrepCatalog& cat) {
  BandLimiter r;
  r.catalog = cat;
  r.blocks.reserve(cat.count());
  for (int i = 0; i < cat.count(); ++i) r.blocks.push_back(ComplexMatrix(cat.dim(i), cat.dim(i)));
  return r;
}

BandLimiter subset_band_limiter(const IrrepCatalog& cat, const std::vector<int>& t) {
  BandLimiter r = zero_band_limiter(cat);
  for (int i : t) {
    if (i < 0 || i >= cat.count()) throw InvalidArgument("subset_band_limiter: irrep index out of range");
    r.blocks[i] = ComplexMatrix::identity(cat.dim(i));
  }
  return r;
}

double band_hs_sq(const BandLimiter& r) {
  check_band(r);
  double s = 0.0;
  for (int i = 0; i < r.count(); ++i) {
    const double fro = frobenius_norm(r.block(i));
    s += static_cast<double>(r.catalog.dim(i)) * fro * fro;
  }
  return s;
}

long band_rank_sum(const BandLimiter& r, double rel_tol) {
  check_band(r);
  long s = 0;
  for (int i = 0; i < r.count(); ++i)
    s += static_cast<long>(r.catalog.dim(i)) * numeric_rank(r.block(i), rel_tol);
  return s;
}

double projector_residual(const BandLimiter& r) {
  check_band(r);
  double resid = 0.0;
  for (int i = 0; i < r.count(); ++i) {
    const ComplexMatrix& b = r.block(i);
    resid = std::max(resid, frobenius_norm(b * b - b));
    resid = std::max(resid, frobenius_norm(b - b.adjoint()));
  }
  return resid;
}

GroupFunction apply_time_limiter(const GroupFunction& m, const GroupFunction& g) {
  if (!m.group.same_group(g.group)) throw InvalidArgument("apply_time_limiter: group mismatch");
  GroupFunction out{g.group, std::vector<cplx>(g.values.size())};
  for (std::size_t i = 0; i < g.values.size(); ++i) out.values[i] = m.values[i] * g.values[i];
  return out;
}

GroupFunction apply_band_limiter(const BandLimiter& r, const GroupFunction& g, Side side) {
  check_band(r);
  if (!r.catalog.group().same_group(g.group))
    throw InvalidArgument("apply_band_limiter: group mismatch");
  Spectrum s = fourier_transform(g, r.catalog);
  for (int i = 0; i < s.count(); ++i)
    s.blocks[i] = (side == Side::left) ? r.block(i) * s.blocks[i] : s.blocks[i] * r.block(i);
  return inverse_transform(s);
}

OperatorDesc OperatorDesc::time_limiter(GroupFunction mask) {
  OperatorDesc d;
  d.kind = Kind::time;
  d.mask = std::move(mask);
  return d;
}

OperatorDesc OperatorDesc::band_limiter(BandLimiter band, Side side) {
  OperatorDesc d;
  d.kind = Kind::band;
  d.band = std::move(band);
  d.side = side;
  return d;
}

OperatorDesc OperatorDesc::left_translation(int element) {
  OperatorDesc d;
  d.kind = Kind::translate;
  d.element = element;
  return d;
}

OperatorDesc OperatorDesc::isotypic(int irrep) {
  OperatorDesc d;
  d.kind = Kind::isotypic;
  d.irrep = irrep;
  return d;
}

OperatorDesc OperatorDesc::compose(std::vector<OperatorDesc> parts) {
  OperatorDesc d;
  d.kind = Kind::compose;
  d.parts = std::move(parts);
  return d;
}

namespace {

// Shared kernel of both band-limiter materializations:
//   k(g) = sum_rho (d_rho / |G|) tr[R_rho rho(g)].
// Left action gives M[x,y] = k(y^-1 x), right action M[x,y] = k(x y^-1).
ComplexMatrix band_matrix(const BandLimiter& r, const FiniteGroup& g, Side side) {
  const int order = g.order();
  std::vector<cplx> kernel(order, cplx{0.0, 0.0});
  for (int i = 0; i < r.count(); ++i) {
    if (r.block(i).is_zero()) continue;
    const Irrep& rho = r.catalog.at(i);
    const double scale = static_cast<double>(rho.dim) / static_cast<double>(order);
    for (int x = 0; x < order; ++x) kernel[x] += scale * trace_product(r.block(i), rho.at(x));
  }
  ComplexMatrix m(order, order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const int arg = (side == Side::left) ? g.mul(g.inverse(y), x) : g.mul(x, g.inverse(y));
      m.at(x, y) = kernel[arg];
    }
  return m;
}

}  // namespace

ComplexMatrix materialize(const OperatorDesc& desc, const FiniteGroup& g, const IrrepCatalog& cat) {
  const int order = g.order();
  switch (desc.kind) {
    case OperatorDesc::Kind::time: {
      if (!desc.mask.group.valid() || !desc.mask.group.same_group(g))
        throw InvalidArgument("materialize: time-limiter mask on a different group");
      ComplexMatrix m(order, order);
      for (int x = 0; x < order; ++x) m.at(x, x) = desc.mask.values[x];
      return m;
    }
    case OperatorDesc::Kind::translate: {
      if (desc.element < 0 || desc.element >= order)
        throw InvalidArgument("materialize: translation element out of range");
      ComplexMatrix m(order, order);
      const int xi = g.inverse(desc.element);
      for (int x = 0; x < order; ++x) m.at(x, g.mul(xi, x)) = 1.0;
      return m;
    }
    case OperatorDesc::Kind::band: {
      check_band(desc.band);
      if (!desc.band.catalog.same_catalog(cat))
        throw InvalidArgument("materialize: band limiter uses a different catalog");
      return band_matrix(desc.band, g, desc.side);
    }
    case OperatorDesc::Kind::isotypic: {
      if (desc.irrep < 0 || desc.irrep >= cat.count())
        throw InvalidArgument("materialize: isotypic irrep index out of range");
      return band_matrix(subset_band_limiter(cat, {desc.irrep}), g, Side::left);
    }
    case OperatorDesc::Kind::compose: {
      ComplexMatrix m = ComplexMatrix::identity(order);
      for (const OperatorDesc& part : desc.parts) m = m * materialize(part, g, cat);
      return m;
    }
  }
  throw InvalidArgument("materialize: unknown operator description");
}

GroupFunction apply_operator(const ComplexMatrix& m, const GroupFunction& g) {
  const int order = g.group.order();
  if (m.rows() != order || m.cols() != order)
    throw InvalidArgument("apply_operator: matrix does not match group order");
  GroupFunction out{g.group, std::vector<cplx>(order, cplx{0.0, 0.0})};
  for (int x = 0; x < order; ++x) {
    cplx v{0.0, 0.0};
    for (int y = 0; y < order; ++y) v += m.at(x, y) * g.values[y];
    out.values[x] = v;
  }
  return out;
}

BandLimiter image_band_limiter(const Spectrum& s, double rel_tol) {
  BandLimiter r;
  r.catalog = s.catalog;
  r.blocks.reserve(s.count());
  const double sigma_ref = global_sigma_max(s);
  for (int i = 0; i < s.count(); ++i) {
    if (sigma_ref == 0.0) {
      r.blocks.push_back(ComplexMatrix(s.catalog.dim(i), s.catalog.dim(i)));
    } else {
      r.blocks.push_back(column_space_projector(s.block(i), rel_tol, sigma_ref));
    }
  }
  return r;
}

CommutationReport commutation_report(const OperatorDesc& desc, const FiniteGroup& g,
                                     const IrrepCatalog& cat, std::uint64_t seed, int subsets) {
  const ComplexMatrix m = materialize(desc, g, cat);
  const int order = g.order();
  CommutationReport report;

  // Products with translation (permutation) matrices are index remappings:
  //   (M L_x)[i,j] = M[i, x j],  (L_x M)[i,j] = M[x^-1 i, j]
  //   (M R_y)[i,j] = M[i, j y^-1],  (R_y M)[i,j] = M[i y, j]
  ComplexMatrix diff(order, order);
  for (int x = 0; x < order; ++x) {
    const int xi = g.inverse(x);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        diff.at(i, j) = m.at(i, g.mul(x, j)) - m.at(g.mul(xi, i), j);
    report.left_translation_residual = std::max(report.left_translation_residual, norms(diff).op);

    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        diff.at(i, j) = m.at(i, g.mul(j, xi)) - m.at(g.mul(i, x), j);
    report.right_translation_residual = std::max(report.right_translation_residual, norms(diff).op);
  }

  // (M P_S - P_S M)[i,j] = M[i,j] (chi_S(j) - chi_S(i))
  Rng rng(seed);
  std::vector<char> in_subset(order);
  for (int trial = 0; trial < subsets; ++trial) {
    for (int x = 0; x < order; ++x) in_subset[x] = rng.coin() ? 1 : 0;
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        diff.at(i, j) = m.at(i, j) * static_cast<double>(in_subset[j] - in_subset[i]);
    report.subset_projection_residual =
        std::max(report.subset_projection_residual, norms(diff).op);
  }
  return report;
}

double averaging_identity_residual(const GroupFunction& f) {
  const FiniteGroup& g = f.group;
  const int order = g.order();

  GroupFunction abs_sq{g, std::vector<cplx>(order)};
  for (int x = 0; x < order; ++x) abs_sq.values[x] = std::norm(f.values[x]);
  const ComplexMatrix p = [&] {
    ComplexMatrix diag(order, order);
    for (int x = 0; x < order; ++x) diag.at(x, x) = abs_sq.values[x];
    return diag;
  }();

  ComplexMatrix acc(order, order);
  for (int x = 0; x < order; ++x) {
    ComplexMatrix lx(order, order), lxi(order, order);
    const int xi = g.inverse(x);
    for (int z = 0; z < order; ++z) {
      lx.at(z, g.mul(xi, z)) = 1.0;       // L_x
      lxi.at(z, g.mul(x, z)) = 1.0;       // L_{x^-1}
    }
    acc += lxi * p * lx;
  }
  acc *= cplx(1.0 / static_cast<double>(order), 0.0);

  ComplexMatrix expected = ComplexMatrix::identity(order);
  expected *= cplx(l2_norm_sq(f), 0.0);
  return max_abs_diff(acc, expected);
}

}  // namespace ncfa
