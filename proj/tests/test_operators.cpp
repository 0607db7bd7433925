#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncfa/errors.hpp"
#include "ncfa/operators.hpp"
#include "ncfa/rng.hpp"
#include "ncfa/uncertainty.hpp"

using namespace ncfa;

namespace {

double max_value_diff(const GroupFunction& a, const GroupFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST_CASE("time limiter is pointwise multiplication") {
  const FiniteGroup c2 = make_cyclic(2);
  GroupFunction mask = delta(c2, 0);
  mask.values[0] = 2.0;
  const GroupFunction out = apply_time_limiter(mask, constant_one(c2));
  CHECK(out.values[0] == cplx{2.0, 0.0});
  CHECK(out.values[1] == cplx{0.0, 0.0});

  const FiniteGroup s3 = make_symmetric(3);
  Rng rng(7);
  const GroupFunction g = random_function(s3, rng);
  const GroupFunction restricted = apply_time_limiter(indicator(s3, {0, 2, 4}), g);
  for (int x : {0, 2, 4}) CHECK(restricted.values[x] == g.values[x]);
  for (int x : {1, 3, 5}) CHECK(restricted.values[x] == cplx{0.0, 0.0});

  CHECK(max_value_diff(apply_time_limiter(constant_one(s3), g), g) == 0.0);
}

TEST_CASE("band limiter special cases") {
  const FiniteGroup d4 = make_dihedral(4);
  const IrrepCatalog cat = irreps(d4);
  Rng rng(42);
  const GroupFunction g = random_function(d4, rng);

  CHECK(max_value_diff(apply_band_limiter(identity_band_limiter(cat), g), g) < 1e-10);

  const GroupFunction zero = apply_band_limiter(zero_band_limiter(cat), g);
  for (const cplx& z : zero.values) CHECK(std::abs(z) < 1e-14);

  // keeping only the trivial irrep yields the constant mean
  cplx mean{0.0, 0.0};
  for (const cplx& z : g.values) mean += z;
  mean /= static_cast<double>(d4.order());
  const GroupFunction avg = apply_band_limiter(subset_band_limiter(cat, {0}), g);
  for (const cplx& z : avg.values) CHECK(std::abs(z - mean) < 1e-12);
}

TEST_CASE("materialized time limiter is diagonal with rank |S|") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  const std::vector<int> subset = {1, 4};
  const ComplexMatrix m =
      materialize(OperatorDesc::time_limiter(indicator(s3, subset)), s3, cat);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      const double expected = (x == y && (x == 1 || x == 4)) ? 1.0 : 0.0;
      CHECK(std::abs(m.at(x, y) - cplx{expected, 0.0}) < 1e-14);
    }
  CHECK(numeric_rank(m) == 2);
}

TEST_CASE("materialized all-identity band limiter resolves the identity") {
  const FiniteGroup c2 = make_cyclic(2);
  const IrrepCatalog cat = irreps(c2);
  const ComplexMatrix m =
      materialize(OperatorDesc::band_limiter(identity_band_limiter(cat)), c2, cat);
  CHECK(max_abs_diff(m, ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("composition P_e R_trivial on a cyclic group") {
  const int n = 5;
  const FiniteGroup cn = make_cyclic(n);
  const IrrepCatalog cat = irreps(cn);
  const OperatorDesc desc = OperatorDesc::compose(
      {OperatorDesc::time_limiter(delta(cn, 0)),
       OperatorDesc::band_limiter(subset_band_limiter(cat, {0}))});
  const ComplexMatrix m = materialize(desc, cn, cat);

  // single nonzero row of constant 1/n
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const double expected = (x == 0) ? 1.0 / n : 0.0;
      CHECK(std::abs(m.at(x, y) - cplx{expected, 0.0}) < 1e-14);
    }
  CHECK(norms(m).op == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));
}

TEST_CASE("left translation materializes as a permutation matrix") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  Rng rng(3);
  const GroupFunction f = random_function(s3, rng);
  for (int x0 = 0; x0 < s3.order(); ++x0) {
    const ComplexMatrix l = materialize(OperatorDesc::left_translation(x0), s3, cat);
    CHECK(max_value_diff(apply_operator(l, f), left_translate(f, x0)) < 1e-14);
    CHECK(norms(l).op == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("materialize matches apply for band limiters, both sides") {
  for (const char* spec : {"S3", "D4", "C12"}) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    const IrrepCatalog cat = irreps(g);
    Rng rng(555);
    for (int trial = 0; trial < 10; ++trial) {
      const BandLimiter r = random_band_limiter(cat, rng);
      const GroupFunction f = random_function(g, rng);
      for (Side side : {Side::left, Side::right}) {
        const ComplexMatrix m = materialize(OperatorDesc::band_limiter(r, side), g, cat);
        CHECK(max_value_diff(apply_operator(m, f), apply_band_limiter(r, f, side)) < 1e-10);
      }
    }
  }
}

TEST_CASE("hilbert-schmidt accounting of band limiters") {
  // || materialize(R) ||_HS^2 = sum_rho d_rho ||R_rho||_2^2
  for (const char* spec : {"S3", "D4", "C12"}) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    const IrrepCatalog cat = irreps(g);
    Rng rng(666);
    for (int trial = 0; trial < 10; ++trial) {
      const BandLimiter r = random_band_limiter(cat, rng);
      for (Side side : {Side::left, Side::right}) {
        const ComplexMatrix m = materialize(OperatorDesc::band_limiter(r, side), g, cat);
        const double hs = norms(m).hs;
        CHECK(std::abs(hs * hs - band_hs_sq(r)) <= 1e-9 * std::max(1.0, band_hs_sq(r)));
      }
    }
  }
}

TEST_CASE("isotypic projections resolve the identity and are orthogonal") {
  for (const char* spec : {"S3", "D4"}) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    const IrrepCatalog cat = irreps(g);
    std::vector<ComplexMatrix> projections;
    for (int i = 0; i < cat.count(); ++i)
      projections.push_back(materialize(OperatorDesc::isotypic(i), g, cat));

    ComplexMatrix sum(g.order(), g.order());
    for (const ComplexMatrix& p : projections) {
      sum += p;
      CHECK(max_abs_diff(p * p, p) < 1e-10);           // idempotent
      CHECK(max_abs_diff(p, p.adjoint()) < 1e-10);     // self-adjoint
    }
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(g.order())) < 1e-10);

    for (std::size_t i = 0; i < projections.size(); ++i)
      for (std::size_t j = i + 1; j < projections.size(); ++j) {
        const ComplexMatrix prod = projections[i] * projections[j];
        CHECK(frobenius_norm(prod) < 1e-10);
      }
  }
}

TEST_CASE("image band limiter") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);

  const Spectrum sd = fourier_transform(delta(s3, 0), cat);
  const BandLimiter rd = image_band_limiter(sd);
  for (int i = 0; i < cat.count(); ++i)
    CHECK(max_abs_diff(rd.block(i), ComplexMatrix::identity(cat.dim(i))) < 1e-10);

  GroupFunction zero{s3, std::vector<cplx>(6, cplx{0.0, 0.0})};
  const BandLimiter rz = image_band_limiter(fourier_transform(zero, cat));
  for (int i = 0; i < cat.count(); ++i) CHECK(rz.block(i).is_zero());

  const Subgroup h = subgroup_from_generators(s3, {perm_rank(std::vector<int>{1, 0, 2})});
  const GroupFunction chi = subgroup_indicator(s3, h);
  const BandLimiter rc = image_band_limiter(fourier_transform(chi, cat));
  CHECK(projector_residual(rc) < 1e-10);
  const double fro = frobenius_norm(rc.block(1));  // standard irrep: rank-1 projector
  CHECK(fro * fro == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(numeric_rank(rc.block(1)) == 1);
}

TEST_CASE("commutation of band limiters with translations") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  Rng rng(888);
  const BandLimiter r = random_band_limiter(cat, rng);

  const CommutationReport left =
      commutation_report(OperatorDesc::band_limiter(r, Side::left), s3, cat, 99);
  CHECK(left.left_translation_residual < 1e-10);
  CHECK(left.right_translation_residual > 0.1);  // generic blocks do not commute on the right

  const CommutationReport right =
      commutation_report(OperatorDesc::band_limiter(r, Side::right), s3, cat, 99);
  CHECK(right.right_translation_residual < 1e-10);
  CHECK(right.left_translation_residual > 0.1);
}

TEST_CASE("commutation of time limiters with subset projections") {
  const FiniteGroup d4 = make_dihedral(4);
  const IrrepCatalog cat = irreps(d4);
  Rng rng(31);
  const GroupFunction m = random_function(d4, rng);
  const CommutationReport rep =
      commutation_report(OperatorDesc::time_limiter(m), d4, cat, 77);
  CHECK(rep.subset_projection_residual < 1e-12);
}

TEST_CASE("translations do not commute with point masses") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  const int x0 = perm_rank(std::vector<int>{1, 0, 2});  // non-central

  // direct witness: || L_{x0} P_{e} - P_{e} L_{x0} || > 0.5
  const ComplexMatrix l = materialize(OperatorDesc::left_translation(x0), s3, cat);
  const ComplexMatrix p = materialize(OperatorDesc::time_limiter(delta(s3, 0)), s3, cat);
  CHECK(norms(l * p - p * l).op > 0.5);

  const CommutationReport rep =
      commutation_report(OperatorDesc::left_translation(x0), s3, cat, 123);
  CHECK(rep.subset_projection_residual > 0.5);
}

TEST_CASE("averaged conjugation identity") {
  for (const char* spec : {"S3", "D4"}) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    Rng rng(246);
    for (int trial = 0; trial < 20; ++trial)
      CHECK(averaging_identity_residual(random_function(g, rng)) < 1e-10);
  }
}

TEST_CASE("materialize rejects mismatched descriptions") {
  const FiniteGroup c3 = make_cyclic(3);
  const FiniteGroup c4 = make_cyclic(4);
  const IrrepCatalog cat3 = irreps(c3);
  const IrrepCatalog cat4 = irreps(c4);

  CHECK_THROWS_AS(materialize(OperatorDesc::time_limiter(constant_one(c4)), c3, cat3),
                  InvalidArgument);
  CHECK_THROWS_AS(materialize(OperatorDesc::left_translation(9), c3, cat3), InvalidArgument);
  CHECK_THROWS_AS(materialize(OperatorDesc::isotypic(7), c3, cat3), InvalidArgument);
  CHECK_THROWS_AS(
      materialize(OperatorDesc::band_limiter(identity_band_limiter(cat4)), c3, cat3),
      InvalidArgument);
}
