#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>

#include "ncfa/errors.hpp"
#include "ncfa/group.hpp"
#include "ncfa/irreps.hpp"

using namespace ncfa;

namespace {

std::vector<int> dims_of(const IrrepCatalog& cat) {
  std::vector<int> d;
  for (int i = 0; i < cat.count(); ++i) d.push_back(cat.dim(i));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("cyclic catalogs are the discrete characters") {
  const FiniteGroup c4 = make_cyclic(4);
  const IrrepCatalog cat = irreps(c4);
  REQUIRE(cat.count() == 4);
  for (int k = 0; k < 4; ++k) CHECK(cat.dim(k) == 1);

  // chi_k(x) = exp(2 pi i k x / 4)
  for (int k = 0; k < 4; ++k)
    for (int x = 0; x < 4; ++x) {
      const cplx expected = std::polar(1.0, 2.0 * 3.14159265358979323846 * ((k * x) % 4) / 4.0);
      CHECK(std::abs(cat.at(k).at(x).at(0, 0) - expected) < 1e-12);
    }
}

TEST_CASE("dimension multisets forced by class counts") {
  CHECK(dims_of(irreps(make_symmetric(3))) == std::vector<int>{1, 1, 2});
  CHECK(dims_of(irreps(make_dihedral(4))) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(dims_of(irreps(make_dihedral(3))) == std::vector<int>{1, 1, 2});
  CHECK(dims_of(irreps(make_symmetric(4))) == std::vector<int>{1, 1, 2, 3, 3});
}

TEST_CASE("index 0 is the trivial irrep") {
  for (const char* spec : {"C6", "D4", "S4", "C2xS3"}) {
    CAPTURE(spec);
    const IrrepCatalog cat = irreps(make_group(spec));
    REQUIRE(cat.dim(0) == 1);
    for (int x = 0; x < cat.group().order(); ++x)
      CHECK(std::abs(cat.at(0).at(x).at(0, 0) - cplx{1.0, 0.0}) < 1e-14);
  }
}

TEST_CASE("built-in catalogs pass verification") {
  for (const char* spec :
       {"C1", "C2", "C3", "C12", "D1", "D2", "D3", "D4", "D6", "S1", "S2", "S3", "S4", "S5",
        "C2xS3", "C2xC2", "C3xD4"}) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    const IrrepCatalog cat = irreps(g);
    const CatalogReport report = verify_catalog(g, cat);
    CHECK(report.pass);
    CHECK(report.completeness);
    CHECK(report.dim_sq_sum == g.order());
    for (const IrrepCheckReport& c : report.irrep_checks) {
      CAPTURE(c.name);
      CHECK(c.hom_residual < 1e-10);
      CHECK(c.unitarity_residual < 1e-10);
      CHECK(c.irreducibility_residual < 1e-9);
    }
    CHECK(report.max_char_inner < 1e-9);
  }
}

TEST_CASE("tensor catalogs of products are complete") {
  const FiniteGroup g = make_group("C2xS3");
  const IrrepCatalog cat = irreps(g);
  CHECK(cat.count() == 6);
  CHECK(cat.dim_sq_sum() == 12);
  CHECK(dims_of(cat) == std::vector<int>{1, 1, 1, 1, 2, 2});
}

TEST_CASE("duplicated irrep fails inequivalence") {
  const FiniteGroup s3 = make_symmetric(3);
  const IrrepCatalog good = irreps(s3);
  // replace the sign irrep with a second copy of the trivial one
  std::vector<Irrep> tampered = {good.at(0), good.at(1), good.at(0)};
  const IrrepCatalog bad = assemble_catalog(s3, std::move(tampered));
  const CatalogReport report = verify_catalog(s3, bad);
  CHECK(report.completeness);  // dims still 1+4+1
  CHECK_FALSE(report.inequivalence);
  CHECK(report.max_char_inner == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(report.pass);
}

TEST_CASE("missing irrep fails completeness") {
  const FiniteGroup c3 = make_cyclic(3);
  const IrrepCatalog good = irreps(c3);
  const IrrepCatalog bad = assemble_catalog(c3, {good.at(0), good.at(1)});
  const CatalogReport report = verify_catalog(c3, bad);
  CHECK(report.dim_sq_sum == 2);
  CHECK_FALSE(report.completeness);
  CHECK_FALSE(report.pass);
}

TEST_CASE("non-unitary matrix fails its irrep check") {
  const FiniteGroup c2 = make_cyclic(2);
  const IrrepCatalog good = irreps(c2);
  std::vector<Irrep> tampered = {good.at(0), good.at(1)};
  tampered[1].matrices[1].at(0, 0) = cplx{2.0, 0.0};  // no longer unitary
  const CatalogReport report = verify_catalog(c2, assemble_catalog(c2, std::move(tampered)));
  CHECK_FALSE(report.irrep_checks[1].pass);
  CHECK_FALSE(report.pass);
}

TEST_CASE("catalog with wrong matrix count is rejected up front") {
  const FiniteGroup c2 = make_cyclic(2);
  const IrrepCatalog good = irreps(c2);
  std::vector<Irrep> tampered = {good.at(0), good.at(1)};
  tampered[0].matrices.pop_back();
  const IrrepCatalog bad = assemble_catalog(c2, std::move(tampered));
  CHECK_THROWS_AS(verify_catalog(c2, bad), InvalidArgument);
}

TEST_CASE("character orthonormality") {
  const FiniteGroup d6 = make_dihedral(6);
  const IrrepCatalog cat = irreps(d6);
  const int order = d6.order();
  for (int i = 0; i < cat.count(); ++i) {
    for (int j = 0; j < cat.count(); ++j) {
      cplx inner{0.0, 0.0};
      for (int x = 0; x < order; ++x)
        inner += trace(cat.at(i).at(x)) * std::conj(trace(cat.at(j).at(x)));
      inner /= static_cast<double>(order);
      const double expected = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(inner - cplx{expected, 0.0}) < 1e-9);
    }
  }
}

TEST_CASE("verify_catalog rejects a catalog for a different group") {
  const IrrepCatalog cat = irreps(make_cyclic(3));
  CHECK_THROWS_AS(verify_catalog(make_cyclic(4), cat), InvalidArgument);
}
