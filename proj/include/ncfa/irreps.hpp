#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncfa/group.hpp"
#include "ncfa/matrix.hpp"

namespace ncfa {

// A unitary irreducible representation given explicitly: one dim x dim
// matrix per group element, indexed in the group's canonical element order.
struct Irrep {
  std::string name;
  int dim = 0;
  std::vector<ComplexMatrix> matrices;

  const ComplexMatrix& at(int element) const { return matrices[element]; }
};

// A complete system of pairwise inequivalent unitary irreps. Index 0 is
// always the trivial representation. Immutable and cheap to copy (handle).
class IrrepCatalog {
 public:
  IrrepCatalog() = default;

  const FiniteGroup& group() const { return d_->group; }
  int count() const { return static_cast<int>(d_->irreps.size()); }
  const Irrep& at(int i) const { return d_->irreps[i]; }
  int dim(int i) const { return d_->irreps[i].dim; }
  long dim_sq_sum() const;
  bool valid() const { return static_cast<bool>(d_); }

  bool same_catalog(const IrrepCatalog& other) const;

  struct Data {
    FiniteGroup group;
    std::vector<Irrep> irreps;
  };
  explicit IrrepCatalog(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

 private:
  std::shared_ptr<const Data> d_;
};

// Builds the complete catalog for a supported group:
//   C<n>  characters x -> exp(2 pi i k x / n)
//   D<n>  two (n odd) or four (n even) one-dimensional irreps plus
//         two-dimensional rotation/reflection blocks
//   S<n>  Young's orthogonal form, one irrep per partition of n
//   products: all tensor products of the factor catalogs
// Throws InvalidArgument for groups not built by a supported constructor.
IrrepCatalog irreps(const FiniteGroup& g);

// Wraps externally supplied irreps (e.g. parsed from a file) without any
// verification; run verify_catalog before trusting the result.
IrrepCatalog assemble_catalog(const FiniteGroup& g, std::vector<Irrep> irreps);

struct IrrepCheckReport {
  std::string name;
  int dim = 0;
  double hom_residual = 0.0;             // max entrywise |rho(xy) - rho(x) rho(y)|, includes |rho(e) - I|
  double unitarity_residual = 0.0;       // max over x of || rho(x) rho(x)^+ - I ||_F
  double irreducibility_residual = 0.0;  // | (1/|G|) sum |tr rho(x)|^2 - 1 |
  bool pass = false;
};

struct CatalogReport {
  std::vector<IrrepCheckReport> irrep_checks;
  long dim_sq_sum = 0;
  bool completeness = false;         // sum of dim^2 equals |G| exactly
  double max_char_inner = 0.0;       // max over pairs of |(1/|G|) sum tr rho1 conj tr rho2|
  bool inequivalence = false;
  bool pass = false;
  double hom_tol = 1e-10;
  double unitarity_tol = 1e-10;
  double char_tol = 1e-9;
};

// Checks every defining property of a catalog: per-irrep homomorphism,
// unitarity and irreducibility residuals, catalog-level completeness and
// pairwise inequivalence. The homomorphism check is exhaustive over element
// pairs for |G| <= 48 and uses >= 10^4 seeded random pairs beyond that.
CatalogReport verify_catalog(const FiniteGroup& g, const IrrepCatalog& cat,
                             std::uint64_t seed = 0x6E636661ULL);

}  // namespace ncfa
