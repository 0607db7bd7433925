#include "ncfa/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "ncfa/errors.hpp"

namespace ncfa {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::flagged: return "flagged";
  }
  return "fail";
}

namespace {

double rel_residual(double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

void require_projectors(const BandLimiter& r) {
  if (projector_residual(r) > 1e-10)
    throw InvalidArgument("band limiter blocks must be orthogonal projectors here");
}

}  // namespace

UncertaintyReport hs_identity_check(const GroupFunction& f, const BandLimiter& r, Side side,
                                    double tol) {
  if (!f.group.same_group(r.catalog.group()))
    throw InvalidArgument("hs_identity_check: group mismatch");

  const OperatorDesc pr = OperatorDesc::compose(
      {OperatorDesc::time_limiter(f), OperatorDesc::band_limiter(r, side)});
  const ComplexMatrix m = materialize(pr, f.group, r.catalog);
  const double hs = frobenius_norm(m);
  const double lhs = hs * hs;
  const double rhs = l2_norm_sq(f) * band_hs_sq(r);

  UncertaintyReport rep;
  rep.check = "hs_identity";
  rep.tolerance = tol;
  rep.quantities = {{"lhs_hs_sq", lhs},
                    {"rhs_product", rhs},
                    {"f_l2_sq", l2_norm_sq(f)},
                    {"band_hs_sq", band_hs_sq(r)}};
  rep.residual = rel_residual(lhs, rhs);
  rep.verdict = rep.residual <= tol ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport op_norm_bound_check(const GroupFunction& f, const BandLimiter& r, Side side,
                                      double tol) {
  if (!f.group.same_group(r.catalog.group()))
    throw InvalidArgument("op_norm_bound_check: group mismatch");

  const OperatorDesc pr = OperatorDesc::compose(
      {OperatorDesc::time_limiter(f), OperatorDesc::band_limiter(r, side)});
  const Norms nm = norms(materialize(pr, f.group, r.catalog));
  const double bound = std::sqrt(l2_norm_sq(f)) * std::sqrt(band_hs_sq(r));

  UncertaintyReport rep;
  rep.check = "op_norm_bound";
  rep.tolerance = tol;
  rep.quantities = {{"op_norm", nm.op}, {"hs_norm", nm.hs}, {"bound", bound}};
  rep.slack = bound - nm.op;
  rep.verdict = rep.slack >= -tol ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport support_rank_check(const GroupFunction& f, const IrrepCatalog& cat,
                                     double rel_tol, double tol) {
  UncertaintyReport rep;
  rep.check = "support_rank";
  rep.tolerance = tol;

  const Spectrum s = fourier_transform(f, cat);
  const SupportMetrics m = support_metrics(f, s, rel_tol);
  if (m.zero_function) {
    rep.verdict = Verdict::flagged;
    rep.flag = "zero function: the principle assumes f != 0";
    return rep;
  }

  const double rank_product = m.mu_supp * static_cast<double>(m.rank_sum);
  const double matolcsi_product = m.mu_supp * static_cast<double>(m.dsq_sum);
  const double kutyniok_product = m.mu_supp * static_cast<double>(m.d1_sum);
  rep.quantities = {{"mu_supp", m.mu_supp},
                    {"rank_sum", static_cast<double>(m.rank_sum)},
                    {"dsq_sum", static_cast<double>(m.dsq_sum)},
                    {"d1_sum", static_cast<double>(m.d1_sum)},
                    {"rank_product", rank_product},
                    {"matolcsi_product", matolcsi_product},
                    {"kutyniok_product", kutyniok_product}};
  rep.slack = rank_product - 1.0;
  rep.verdict = rank_product >= 1.0 - tol ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport projection_uncertainty_check(const FiniteGroup& g, const IrrepCatalog& cat,
                                               const std::vector<int>& s, const BandLimiter& r,
                                               double tol) {
  for (int x : s)
    if (x < 0 || x >= g.order()) throw InvalidArgument("projection_uncertainty_check: S out of range");
  require_projectors(r);

  const OperatorDesc pr = OperatorDesc::compose(
      {OperatorDesc::time_limiter(indicator(g, s)), OperatorDesc::band_limiter(r)});
  const Norms nm = norms(materialize(pr, g, cat));
  const double value = nm.op * nm.op;
  const long rank_sum = band_rank_sum(r);
  const double bound_rank = static_cast<double>(s.size()) * static_cast<double>(rank_sum) /
                            static_cast<double>(g.order());

  UncertaintyReport rep;
  rep.check = "projection_uncertainty";
  rep.tolerance = tol;
  rep.quantities = {{"value_op_sq", value},
                    {"bound_rank", bound_rank},
                    {"s_size", static_cast<double>(s.size())},
                    {"band_rank_sum", static_cast<double>(rank_sum)}};
  rep.slack = bound_rank - value;
  rep.verdict = rep.slack >= -tol ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport projection_uncertainty_check(const FiniteGroup& g, const IrrepCatalog& cat,
                                               const std::vector<int>& s, const std::vector<int>& t,
                                               double tol) {
  UncertaintyReport rep = projection_uncertainty_check(g, cat, s, subset_band_limiter(cat, t), tol);
  long dsq = 0;
  for (int i : t) dsq += static_cast<long>(cat.dim(i)) * cat.dim(i);
  const double bound_dsq =
      static_cast<double>(s.size()) * static_cast<double>(dsq) / static_cast<double>(g.order());
  rep.quantities["bound_dsq"] = bound_dsq;
  rep.quantities["slack_dsq"] = bound_dsq - rep.quantities["value_op_sq"];
  rep.slack = std::min(rep.slack, rep.quantities["slack_dsq"]);
  rep.verdict = rep.slack >= -tol ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport trace_orthogonality_check(const IrrepCatalog& cat, int rho1, int rho2,
                                            const ComplexMatrix& r1, const ComplexMatrix& r2,
                                            double tol) {
  if (rho1 < 0 || rho1 >= cat.count() || rho2 < 0 || rho2 >= cat.count())
    throw InvalidArgument("trace_orthogonality_check: irrep index out of range");
  auto check_projector = [&](const ComplexMatrix& p, int rho) {
    if (p.rows() != cat.dim(rho) || p.cols() != cat.dim(rho))
      throw InvalidArgument("trace_orthogonality_check: block dimension mismatch");
    if (frobenius_norm(p * p - p) > 1e-10 || frobenius_norm(p - p.adjoint()) > 1e-10)
      throw InvalidArgument("trace_orthogonality_check: blocks must be orthogonal projectors");
  };
  check_projector(r1, rho1);
  check_projector(r2, rho2);

  const FiniteGroup& g = cat.group();
  cplx value{0.0, 0.0};
  for (int x = 0; x < g.order(); ++x)
    value += trace_product(r1, cat.at(rho1).at(x)) *
             std::conj(trace_product(r2, cat.at(rho2).at(x)));

  const double rank1 = std::round(trace(r1).real());
  double expected = 0.0;
  if (rho1 == rho2)
    expected = static_cast<double>(g.order()) / static_cast<double>(cat.dim(rho1)) *
               trace_product(r1, r2).real();

  UncertaintyReport rep;
  rep.check = "trace_orthogonality";
  rep.tolerance = tol;
  rep.quantities = {{"value_re", value.real()},
                    {"value_im", value.imag()},
                    {"expected", expected},
                    {"rank_r1", rank1},
                    {"diagonal", rho1 == rho2 ? 1.0 : 0.0}};
  const double abs_residual = std::abs(value - cplx{expected, 0.0});
  rep.quantities["abs_residual"] = abs_residual;
  rep.residual = abs_residual / std::max(1.0, std::abs(expected));
  // Pass threshold scales with |G|: the value itself is a |G|-term sum.
  rep.verdict = abs_residual <= tol * static_cast<double>(g.order()) ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport subgroup_profile(const FiniteGroup& g, const IrrepCatalog& cat, const Subgroup& h,
                                   double rel_tol, double tol) {
  if (!is_subgroup(g, h)) throw InvalidArgument("subgroup_profile: not a subgroup");

  const GroupFunction chi = subgroup_indicator(g, h);
  const Spectrum s = fourier_transform(chi, cat);
  const SupportMetrics m = support_metrics(chi, s, rel_tol);
  const double rank_product = m.mu_supp * static_cast<double>(m.rank_sum);

  const double sigma_ref = global_sigma_max(s);
  bool all_full_or_zero = true;
  UncertaintyReport rep;
  rep.check = "subgroup_profile";
  rep.tolerance = tol;
  for (int i = 0; i < cat.count(); ++i) {
    const std::vector<double> sv = singular_values(s.block(i));
    const int rank = rank_from_singular_values(sv, 1, rel_tol, sigma_ref);
    rep.quantities["rank_" + std::to_string(i)] = rank;
    if (rank != 0 && rank != cat.dim(i)) all_full_or_zero = false;
  }

  const bool normal = is_normal(g, h);
  rep.quantities["h_size"] = static_cast<double>(h.size());
  rep.quantities["rank_product"] = rank_product;
  rep.quantities["matolcsi_product"] = m.mu_supp * static_cast<double>(m.dsq_sum);
  rep.quantities["is_normal"] = normal ? 1.0 : 0.0;
  rep.quantities["all_full_or_zero"] = all_full_or_zero ? 1.0 : 0.0;
  rep.residual = std::abs(rank_product - 1.0);
  rep.verdict = (rep.residual <= tol && all_full_or_zero == normal) ? Verdict::pass : Verdict::fail;
  return rep;
}

UncertaintyReport cauchy_schwarz_chain_check(const GroupFunction& f, const IrrepCatalog& cat,
                                             double rel_tol, double tol) {
  UncertaintyReport rep;
  rep.check = "cauchy_schwarz_chain";
  rep.tolerance = tol;

  const double fmax = sup_norm(f);
  if (fmax == 0.0) {
    rep.verdict = Verdict::flagged;
    rep.flag = "zero function: the chain assumes f != 0";
    return rep;
  }

  // Both links are invariant under scaling f, so normalize to ||f||_inf = 1;
  // the quantities then stay O(|G| sum d^2) and absolute slacks are meaningful.
  GroupFunction fn = f;
  for (cplx& z : fn.values) z /= fmax;

  const Spectrum s = fourier_transform(fn, cat);
  const SupportMetrics m = support_metrics(fn, s, rel_tol);
  double plancherel_sum = 0.0;
  for (int i = 0; i < s.count(); ++i) {
    const double fro = frobenius_norm(s.block(i));
    plancherel_sum += static_cast<double>(cat.dim(i)) * fro * fro;
  }

  const double l2sq = l2_norm_sq(fn);
  const double link1_rhs = m.mu_supp * 1.0;  // mu(supp f) ||f||_inf^2
  const double link2_rhs = static_cast<double>(m.rank_sum) * plancherel_sum;

  rep.quantities = {{"f_l2_sq", l2sq},
                    {"mu_supp", m.mu_supp},
                    {"f_inf_sq", 1.0},
                    {"rank_sum", static_cast<double>(m.rank_sum)},
                    {"plancherel_sum", plancherel_sum},
                    {"link1_slack", link1_rhs - l2sq},
                    {"link2_slack", link2_rhs - 1.0}};
  rep.slack = std::min(link1_rhs - l2sq, link2_rhs - 1.0);
  rep.verdict = rep.slack >= -tol ? Verdict::pass : Verdict::fail;
  return rep;
}

GroupFunction random_function(const FiniteGroup& g, Rng& rng) {
  GroupFunction f{g, std::vector<cplx>(g.order())};
  for (cplx& z : f.values) z = rng.complex_gaussian();
  return f;
}

GroupFunction random_sparse_function(const FiniteGroup& g, Rng& rng) {
  const std::vector<int> support = random_nonempty_subset(g.order(), rng);
  GroupFunction f{g, std::vector<cplx>(g.order(), cplx{0.0, 0.0})};
  for (int x : support) f.values[x] = rng.complex_gaussian();
  return f;
}

ComplexMatrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.complex_gaussian();
  return m;
}

ComplexMatrix random_projector(int dim, int rank, Rng& rng) {
  if (rank < 0 || rank > dim) throw InvalidArgument("random_projector: rank out of range");
  ComplexMatrix p(dim, dim);
  if (rank == 0) return p;

  // Modified Gram-Schmidt on a Gaussian dim x rank matrix, two passes.
  ComplexMatrix q = random_gaussian_matrix(dim, rank, rng);
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < rank; ++j) {
      for (int k = 0; k < j; ++k) {
        cplx proj{0.0, 0.0};
        for (int i = 0; i < dim; ++i) proj += std::conj(q.at(i, k)) * q.at(i, j);
        for (int i = 0; i < dim; ++i) q.at(i, j) -= proj * q.at(i, k);
      }
      double norm_sq = 0.0;
      for (int i = 0; i < dim; ++i) norm_sq += std::norm(q.at(i, j));
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (int i = 0; i < dim; ++i) q.at(i, j) *= inv;
    }
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      cplx v{0.0, 0.0};
      for (int k = 0; k < rank; ++k) v += q.at(i, k) * std::conj(q.at(j, k));
      p.at(i, j) = v;
    }
  return p;
}

BandLimiter random_band_limiter(const IrrepCatalog& cat, Rng& rng) {
  BandLimiter r;
  r.catalog = cat;
  for (int i = 0; i < cat.count(); ++i)
    r.blocks.push_back(random_gaussian_matrix(cat.dim(i), cat.dim(i), rng));
  return r;
}

BandLimiter random_projector_band_limiter(const IrrepCatalog& cat, Rng& rng) {
  BandLimiter r;
  r.catalog = cat;
  for (int i = 0; i < cat.count(); ++i) {
    const int d = cat.dim(i);
    r.blocks.push_back(random_projector(d, rng.uniform_int(0, d), rng));
  }
  return r;
}

std::vector<int> random_subset(int n, Rng& rng) {
  std::vector<int> s;
  for (int x = 0; x < n; ++x)
    if (rng.coin()) s.push_back(x);
  return s;
}

std::vector<int> random_nonempty_subset(int n, Rng& rng) {
  for (;;) {
    std::vector<int> s = random_subset(n, rng);
    if (!s.empty()) return s;
  }
}

}  // namespace ncfa
