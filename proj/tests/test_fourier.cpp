#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncfa/errors.hpp"
#include "ncfa/fourier.hpp"
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

TEST_CASE("transform of the constant function") {
  const FiniteGroup c2 = make_cyclic(2);
  const IrrepCatalog cat = irreps(c2);
  const Spectrum s = fourier_transform(constant_one(c2), cat);
  CHECK(std::abs(s.block(0).at(0, 0) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(s.block(1).at(0, 0)) < 1e-14);
}

TEST_CASE("transform of a delta at the identity") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  const Spectrum s = fourier_transform(delta(s3, s3.identity()), cat);
  for (int i = 0; i < s.count(); ++i) {
    ComplexMatrix expected = ComplexMatrix::identity(cat.dim(i));
    expected *= cplx(1.0 / 6.0, 0.0);
    CHECK(max_abs_diff(s.block(i), expected) < 1e-14);
  }
}

TEST_CASE("transform of a subgroup indicator on S3, against direct summation") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  const int t12 = perm_rank(std::vector<int>{1, 0, 2});
  const Subgroup h = subgroup_from_generators(s3, {t12});
  REQUIRE(h.members == std::vector<int>{0, 2});

  const Spectrum s = fourier_transform(subgroup_indicator(s3, h), cat);

  // Oracle: two-term summation (1/6)(rho(e)^+ + rho(t12)^+) straight from
  // the catalog matrices.
  for (int i = 0; i < cat.count(); ++i) {
    ComplexMatrix oracle = cat.at(i).at(0).adjoint() + cat.at(i).at(t12).adjoint();
    oracle *= cplx(1.0 / 6.0, 0.0);
    CHECK(max_abs_diff(s.block(i), oracle) < 1e-14);
  }

  // Frozen values: trivial block 1/3, sign block 0, standard block rank 1
  // with nonzero singular value 1/3.
  CHECK(std::abs(s.block(0).at(0, 0) - cplx{1.0 / 3.0, 0.0}) < 1e-14);
  CHECK(std::abs(s.block(2).at(0, 0)) < 1e-14);
  const std::vector<double> sv = singular_values(s.block(1));
  CHECK(sv[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(sv[1] == doctest::Approx(0.0));
  CHECK(numeric_rank(s.block(1)) == 1);
}

TEST_CASE("inverse transform") {
  const FiniteGroup c2 = make_cyclic(2);
  const IrrepCatalog cat = irreps(c2);

  const GroupFunction back = inverse_transform(fourier_transform(constant_one(c2), cat));
  CHECK(std::abs(back.values[0] - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(back.values[1] - cplx{1.0, 0.0}) < 1e-12);

  Spectrum zero;
  zero.catalog = cat;
  zero.blocks = {ComplexMatrix(1, 1), ComplexMatrix(1, 1)};
  const GroupFunction z = inverse_transform(zero);
  CHECK(std::abs(z.values[0]) == 0.0);
  CHECK(std::abs(z.values[1]) == 0.0);
}

TEST_CASE("round trips and Plancherel on seeded random functions") {
  for (const char* spec : {"S3", "D4", "C12", "C2xS3"}) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    const IrrepCatalog cat = irreps(g);
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      const GroupFunction f = random_function(g, rng);
      const Spectrum s = fourier_transform(f, cat);
      CHECK(max_value_diff(inverse_transform(s), f) < 1e-10);
      CHECK(plancherel_residual(f, s) < 1e-10);
    }
  }
}

TEST_CASE("plancherel closed forms") {
  const FiniteGroup c4 = make_cyclic(4);
  const IrrepCatalog cat4 = irreps(c4);
  const GroupFunction one = constant_one(c4);
  CHECK(plancherel_residual(one, fourier_transform(one, cat4)) < 1e-14);
  CHECK(l2_norm_sq(one) == doctest::Approx(1.0));

  const FiniteGroup c3 = make_cyclic(3);
  const IrrepCatalog cat3 = irreps(c3);
  const GroupFunction d = delta(c3, 0);
  CHECK(l2_norm_sq(d) == doctest::Approx(1.0 / 3.0));
  CHECK(plancherel_residual(d, fourier_transform(d, cat3)) < 1e-12);
}

TEST_CASE("linearity of the transform") {
  const FiniteGroup d4 = make_dihedral(4);
  const IrrepCatalog cat = irreps(d4);
  Rng rng(404);
  const GroupFunction f = random_function(d4, rng);
  const GroupFunction g = random_function(d4, rng);
  const cplx a{0.7, -1.3}, b{-2.1, 0.4};

  GroupFunction combo{d4, std::vector<cplx>(d4.order())};
  for (int x = 0; x < d4.order(); ++x) combo.values[x] = a * f.values[x] + b * g.values[x];

  const Spectrum sf = fourier_transform(f, cat);
  const Spectrum sg = fourier_transform(g, cat);
  const Spectrum sc = fourier_transform(combo, cat);
  for (int i = 0; i < cat.count(); ++i) {
    ComplexMatrix expected = sf.block(i);
    expected *= a;
    ComplexMatrix gb = sg.block(i);
    gb *= b;
    expected += gb;
    CHECK(max_abs_diff(sc.block(i), expected) < 1e-10);
  }
}

TEST_CASE("translation law") {
  // fourier(L_y f)(rho) = fhat(rho) rho(y^-1)
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat = irreps(s3);
  Rng rng(808);
  const GroupFunction f = random_function(s3, rng);
  const Spectrum s = fourier_transform(f, cat);
  for (int y = 0; y < s3.order(); ++y) {
    const Spectrum st = fourier_transform(left_translate(f, y), cat);
    for (int i = 0; i < cat.count(); ++i) {
      const ComplexMatrix expected = s.block(i) * cat.at(i).at(s3.inverse(y));
      CHECK(max_abs_diff(st.block(i), expected) < 1e-10);
    }
  }
}

TEST_CASE("support metrics closed forms") {
  const FiniteGroup c5 = make_cyclic(5);
  const IrrepCatalog cat5 = irreps(c5);
  const GroupFunction d = delta(c5, 0);
  const SupportMetrics md = support_metrics(d, fourier_transform(d, cat5));
  CHECK(md.mu_supp == doctest::Approx(0.2));
  CHECK(md.rank_sum == 5);
  CHECK(md.dsq_sum == 5);
  CHECK(md.d1_sum == 5);

  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog cat3 = irreps(s3);
  const Subgroup h = subgroup_from_generators(s3, {perm_rank(std::vector<int>{1, 0, 2})});
  const GroupFunction chi = subgroup_indicator(s3, h);
  const SupportMetrics mh = support_metrics(chi, fourier_transform(chi, cat3));
  CHECK(mh.mu_supp == doctest::Approx(1.0 / 3.0));
  CHECK(mh.rank_sum == 3);
  CHECK(mh.dsq_sum == 5);
  CHECK(mh.d1_sum == 3);

  const GroupFunction one = constant_one(s3);
  const SupportMetrics mo = support_metrics(one, fourier_transform(one, cat3));
  CHECK(mo.mu_supp == doctest::Approx(1.0));
  CHECK(mo.rank_sum == 1);
}

TEST_CASE("support metric ordering holds for random sparse functions") {
  for (const char* spec : {"S3", "D4"}) {
    const FiniteGroup g = make_group(spec);
    const IrrepCatalog cat = irreps(g);
    Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
      const GroupFunction f = random_sparse_function(g, rng);
      const SupportMetrics m = support_metrics(f, fourier_transform(f, cat));
      REQUIRE_FALSE(m.zero_function);
      CHECK(m.d1_sum <= m.rank_sum);
      CHECK(m.rank_sum <= m.dsq_sum);
    }
  }
}

TEST_CASE("zero function is flagged, not an error") {
  const FiniteGroup c3 = make_cyclic(3);
  const IrrepCatalog cat = irreps(c3);
  GroupFunction zero{c3, std::vector<cplx>(3, cplx{0.0, 0.0})};
  const SupportMetrics m = support_metrics(zero, fourier_transform(zero, cat));
  CHECK(m.zero_function);
  CHECK(m.rank_sum == 0);
}

TEST_CASE("group mismatch is rejected") {
  const FiniteGroup c3 = make_cyclic(3);
  const FiniteGroup c4 = make_cyclic(4);
  CHECK_THROWS_AS(fourier_transform(constant_one(c3), irreps(c4)), InvalidArgument);
  CHECK_THROWS_AS(make_function(c3, std::vector<cplx>(4)), InvalidArgument);
}
