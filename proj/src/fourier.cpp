#include "ncfa/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "ncfa/errors.hpp"

namespace ncfa {

GroupFunction make_function(FiniteGroup g, std::vector<cplx> values) {
  if (!g.valid()) throw InvalidArgument("make_function: invalid group");
  if (static_cast<int>(values.size()) != g.order())
    throw InvalidArgument("make_function: expected " + std::to_string(g.order()) + " values, got " +
                          std::to_string(values.size()));
  for (const cplx& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("make_function: non-finite value");
  return GroupFunction{std::move(g), std::move(values)};
}

GroupFunction constant_one(const FiniteGroup& g) {
  return GroupFunction{g, std::vector<cplx>(g.order(), cplx{1.0, 0.0})};
}

GroupFunction delta(const FiniteGroup& g, int element) {
  if (element < 0 || element >= g.order()) throw InvalidArgument("delta: element out of range");
  GroupFunction f{g, std::vector<cplx>(g.order(), cplx{0.0, 0.0})};
  f.values[element] = 1.0;
  return f;
}

GroupFunction indicator(const FiniteGroup& g, const std::vector<int>& subset) {
  GroupFunction f{g, std::vector<cplx>(g.order(), cplx{0.0, 0.0})};
  for (int x : subset) {
    if (x < 0 || x >= g.order()) throw InvalidArgument("indicator: element out of range");
    f.values[x] = 1.0;
  }
  return f;
}

GroupFunction subgroup_indicator(const FiniteGroup& g, const Subgroup& h) {
  return indicator(g, h.members);
}

double l2_norm_sq(const GroupFunction& f) {
  double s = 0.0;
  for (const cplx& z : f.values) s += std::norm(z);
  return s / static_cast<double>(f.group.order());
}

double sup_norm(const GroupFunction& f) {
  double m = 0.0;
  for (const cplx& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

GroupFunction left_translate(const GroupFunction& f, int y) {
  const FiniteGroup& g = f.group;
  if (y < 0 || y >= g.order()) throw InvalidArgument("left_translate: element out of range");
  GroupFunction out{g, std::vector<cplx>(g.order())};
  const int yi = g.inverse(y);
  for (int x = 0; x < g.order(); ++x) out.values[x] = f.values[g.mul(yi, x)];
  return out;
}

Spectrum fourier_transform(const GroupFunction& f, const IrrepCatalog& cat) {
  if (!cat.valid() || !f.group.same_group(cat.group()))
    throw InvalidArgument("fourier_transform: function and catalog live on different groups");
  const int order = f.group.order();
  const double inv_order = 1.0 / static_cast<double>(order);

  Spectrum s;
  s.catalog = cat;
  s.blocks.reserve(cat.count());
  for (int i = 0; i < cat.count(); ++i) {
    const Irrep& rho = cat.at(i);
    ComplexMatrix block(rho.dim, rho.dim);
    // Fixed summation order x = 0..|G|-1 keeps results bit-identical no
    // matter how callers parallelize across blocks.
    for (int x = 0; x < order; ++x) {
      const cplx fx = f.values[x];
      if (fx == cplx{0.0, 0.0}) continue;
      const ComplexMatrix& m = rho.at(x);
      for (int r = 0; r < rho.dim; ++r)
        for (int c = 0; c < rho.dim; ++c) block.at(r, c) += fx * std::conj(m.at(c, r));
    }
    block *= inv_order;
    s.blocks.push_back(std::move(block));
  }
  return s;
}

GroupFunction inverse_transform(const Spectrum& s) {
  const IrrepCatalog& cat = s.catalog;
  if (!cat.valid()) throw InvalidArgument("inverse_transform: spectrum has no catalog");
  if (s.count() != cat.count())
    throw InvalidArgument("inverse_transform: block count does not match catalog");
  for (int i = 0; i < s.count(); ++i)
    if (s.block(i).rows() != cat.dim(i) || s.block(i).cols() != cat.dim(i))
      throw InvalidArgument("inverse_transform: block dimension mismatch");

  const FiniteGroup& g = cat.group();
  GroupFunction f{g, std::vector<cplx>(g.order())};
  for (int x = 0; x < g.order(); ++x) {
    cplx v{0.0, 0.0};
    for (int i = 0; i < cat.count(); ++i)
      v += static_cast<double>(cat.dim(i)) * trace_product(s.block(i), cat.at(i).at(x));
    f.values[x] = v;
  }
  return f;
}

double plancherel_residual(const GroupFunction& f, const Spectrum& s) {
  if (!f.group.same_group(s.catalog.group()))
    throw InvalidArgument("plancherel_residual: group mismatch");
  double rhs = 0.0;
  for (int i = 0; i < s.count(); ++i) {
    const double fro = frobenius_norm(s.block(i));
    rhs += static_cast<double>(s.catalog.dim(i)) * fro * fro;
  }
  return std::abs(l2_norm_sq(f) - rhs);
}

double global_sigma_max(const Spectrum& s) {
  double m = 0.0;
  for (const ComplexMatrix& block : s.blocks) {
    const std::vector<double> sv = singular_values(block);
    if (!sv.empty()) m = std::max(m, sv.front());
  }
  return m;
}

SupportMetrics support_metrics(const GroupFunction& f, const Spectrum& s, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidArgument("support_metrics: rel_tol must be in (0,1)");
  if (!f.group.same_group(s.catalog.group()))
    throw InvalidArgument("support_metrics: group mismatch");

  SupportMetrics out;
  const double fmax = sup_norm(f);
  if (fmax == 0.0) {
    out.zero_function = true;
    return out;
  }

  int supp = 0;
  for (const cplx& z : f.values)
    if (std::abs(z) > 1e-12 * fmax) ++supp;
  out.mu_supp = static_cast<double>(supp) / static_cast<double>(f.group.order());

  const double sigma_ref = global_sigma_max(s);
  for (int i = 0; i < s.count(); ++i) {
    const int d = s.catalog.dim(i);
    const std::vector<double> sv = singular_values(s.block(i));
    const int rank = rank_from_singular_values(sv, 1, rel_tol, sigma_ref);
    out.rank_sum += static_cast<long>(d) * rank;
    if (rank > 0) {
      out.dsq_sum += static_cast<long>(d) * d;
      out.d1_sum += d;
    }
  }
  return out;
}

}  // namespace ncfa
