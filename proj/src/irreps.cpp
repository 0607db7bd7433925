#include "ncfa/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "ncfa/errors.hpp"
#include "ncfa/rng.hpp"

namespace ncfa {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx unit_root(int numerator, int n) {
  // exp(2 pi i numerator / n) with the exponent reduced first, so exact
  // symmetries like omega^n = 1 survive in floating point.
  int r = numerator % n;
  if (r < 0) r += n;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

std::vector<Irrep> cyclic_irreps(int n) {
  std::vector<Irrep> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    Irrep rho;
    rho.name = "chi_" + std::to_string(k);
    rho.dim = 1;
    rho.matrices.reserve(n);
    for (int x = 0; x < n; ++x) rho.matrices.push_back(ComplexMatrix(1, 1, {unit_root(k * x, n)}));
    out.push_back(std::move(rho));
  }
  return out;
}

std::vector<Irrep> dihedral_irreps(int n) {
  const int order = 2 * n;
  std::vector<Irrep> out;

  auto one_dim = [&](const std::string& name, auto value) {
    Irrep rho;
    rho.name = name;
    rho.dim = 1;
    rho.matrices.reserve(order);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < n; ++k) rho.matrices.push_back(ComplexMatrix(1, 1, {cplx(value(j, k), 0.0)}));
    out.push_back(std::move(rho));
  };

  one_dim("triv", [](int, int) { return 1.0; });
  one_dim("sgn_s", [](int j, int) { return j ? -1.0 : 1.0; });
  if (n % 2 == 0) {
    one_dim("sgn_r", [](int, int k) { return (k % 2) ? -1.0 : 1.0; });
    one_dim("sgn_sr", [](int j, int k) { return ((j + k) % 2) ? -1.0 : 1.0; });
  }

  // rho_h(s^j r^k) = S^j diag(w^{hk}, w^{-hk}) with S the swap matrix.
  const int two_dim_count = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
  for (int h = 1; h <= two_dim_count; ++h) {
    Irrep rho;
    rho.name = "rot_" + std::to_string(h);
    rho.dim = 2;
    rho.matrices.reserve(order);
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < n; ++k) {
        const cplx a = unit_root(h * k, n);
        const cplx b = unit_root(-h * k, n);
        ComplexMatrix m(2, 2);
        if (j == 0) {
          m.at(0, 0) = a;
          m.at(1, 1) = b;
        } else {
          m.at(0, 1) = b;
          m.at(1, 0) = a;
        }
        rho.matrices.push_back(std::move(m));
      }
    }
    out.push_back(std::move(rho));
  }
  return out;
}

// ---- Symmetric groups: Young's orthogonal form ----

// Partitions of n with weakly decreasing parts, in reverse-lexicographic
// order: [n] first (trivial irrep), [1,...,1] last (sign irrep).
std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// A standard tableau stored as the (row, col) of each value 0..n-1.
struct Tableau {
  std::vector<int> row;
  std::vector<int> col;
};

// All standard Young tableaux of the given shape, by removing the largest
// value from a corner and recursing; sorted by row word for a canonical
// basis order.
std::vector<Tableau> standard_tableaux(const std::vector<int>& shape, int n) {
  std::vector<Tableau> out;
  std::vector<int> rows = shape;
  Tableau work{std::vector<int>(n, -1), std::vector<int>(n, -1)};
  auto rec = [&](auto&& self, int value) -> void {
    if (value < 0) {
      out.push_back(work);
      return;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const bool corner =
          rows[r] > 0 && (r + 1 == rows.size() || rows[r + 1] < rows[r]);
      if (!corner) continue;
      work.row[value] = static_cast<int>(r);
      work.col[value] = rows[r] - 1;
      --rows[r];
      self(self, value - 1);
      ++rows[r];
    }
  };
  rec(rec, n - 1);
  std::sort(out.begin(), out.end(),
            [](const Tableau& a, const Tableau& b) { return a.row < b.row; });
  return out;
}

// Matrix of the adjacent transposition (j, j+1) in Young's orthogonal form:
// for each tableau t, with axial distance d between values j and j+1,
//   rho(s_j) v_t = (1/d) v_t + sqrt(1 - 1/d^2) v_{t'}
// where t' swaps the two values (standard exactly when |d| >= 2).
ComplexMatrix yor_generator(const std::vector<Tableau>& tabs,
                            const std::map<std::vector<int>, int>& index_of, int j) {
  const int dim = static_cast<int>(tabs.size());
  ComplexMatrix m(dim, dim);
  for (int t = 0; t < dim; ++t) {
    const Tableau& tab = tabs[t];
    const int d = (tab.col[j + 1] - tab.row[j + 1]) - (tab.col[j] - tab.row[j]);
    const double inv_d = 1.0 / static_cast<double>(d);
    m.at(t, t) = inv_d;
    if (d == 1 || d == -1) continue;  // same row / same column
    std::vector<int> swapped_rows;
    swapped_rows.reserve(tab.row.size());
    for (std::size_t v = 0; v < tab.row.size(); ++v) swapped_rows.push_back(tab.row[v]);
    std::swap(swapped_rows[j], swapped_rows[j + 1]);
    const int t2 = index_of.at(swapped_rows);
    m.at(t2, t) = std::sqrt(1.0 - inv_d * inv_d);
  }
  return m;
}

std::vector<Irrep> symmetric_irreps(const FiniteGroup& g, int n) {
  const int order = g.order();

  // Element indices of the adjacent transpositions (j, j+1).
  std::vector<int> gen_index;
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::swap(p[j], p[j + 1]);
    gen_index.push_back(perm_rank(p));
  }

  std::vector<Irrep> out;
  for (const std::vector<int>& shape : partitions(n)) {
    const std::vector<Tableau> tabs = standard_tableaux(shape, n);
    std::map<std::vector<int>, int> index_of;
    for (std::size_t t = 0; t < tabs.size(); ++t) index_of[tabs[t].row] = static_cast<int>(t);
    const int dim = static_cast<int>(tabs.size());

    std::vector<ComplexMatrix> gens;
    gens.reserve(gen_index.size());
    for (int j = 0; j + 1 < n; ++j) gens.push_back(yor_generator(tabs, index_of, j));

    // Breadth-first over the Cayley graph: rho(s_j g) = rho(s_j) rho(g).
    // One matrix product per element keeps round-off flat across the group.
    std::vector<ComplexMatrix> mats(order);
    std::vector<char> known(order, 0);
    mats[g.identity()] = ComplexMatrix::identity(dim);
    known[g.identity()] = 1;
    std::deque<int> queue{g.identity()};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < gen_index.size(); ++j) {
        const int y = g.mul(gen_index[j], x);
        if (known[y]) continue;
        mats[y] = gens[j] * mats[x];
        known[y] = 1;
        queue.push_back(y);
      }
    }

    std::string name = "yor[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (i) name += ',';
      name += std::to_string(shape[i]);
    }
    name += ']';
    out.push_back(Irrep{std::move(name), dim, std::move(mats)});
  }
  return out;
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a.at(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          m.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
    }
  return m;
}

std::vector<Irrep> tensor_irreps(const std::vector<Irrep>& first, int order1,
                                 const std::vector<Irrep>& second, int order2) {
  std::vector<Irrep> out;
  out.reserve(first.size() * second.size());
  for (const Irrep& r1 : first) {
    for (const Irrep& r2 : second) {
      Irrep rho;
      rho.name = r1.name + "*" + r2.name;
      rho.dim = r1.dim * r2.dim;
      rho.matrices.reserve(static_cast<std::size_t>(order1) * order2);
      for (int a = 0; a < order1; ++a)
        for (int b = 0; b < order2; ++b)
          rho.matrices.push_back(kronecker(r1.matrices[a], r2.matrices[b]));
      out.push_back(std::move(rho));
    }
  }
  return out;
}

std::vector<Irrep> atom_irreps(const GroupSpec::Atom& atom, const FiniteGroup& atom_group) {
  switch (atom.family) {
    case 'C': return cyclic_irreps(atom.n);
    case 'D': return dihedral_irreps(atom.n);
    case 'S': return symmetric_irreps(atom_group, atom.n);
    default: throw InvalidArgument("unsupported group origin for irreps()");
  }
}

}  // namespace

long IrrepCatalog::dim_sq_sum() const {
  long s = 0;
  for (const Irrep& rho : d_->irreps) s += static_cast<long>(rho.dim) * rho.dim;
  return s;
}

bool IrrepCatalog::same_catalog(const IrrepCatalog& other) const {
  if (d_ == other.d_) return true;
  if (!group().same_group(other.group()) || count() != other.count()) return false;
  for (int i = 0; i < count(); ++i)
    if (dim(i) != other.dim(i)) return false;
  return true;
}

IrrepCatalog irreps(const FiniteGroup& g) {
  const auto& factors = g.spec().factors;
  if (factors.empty()) throw InvalidArgument("irreps(): group has no recorded constructor origin");

  FiniteGroup left = make_group(GroupSpec{{factors[0]}});
  std::vector<Irrep> acc = atom_irreps(factors[0], left);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const FiniteGroup right = make_group(GroupSpec{{factors[i]}});
    acc = tensor_irreps(acc, left.order(), atom_irreps(factors[i], right), right.order());
    left = direct_product(left, right);
  }
  if (!left.same_group(g))
    throw InvalidArgument("irreps(): group spec does not reproduce the group");

  auto data = std::make_shared<IrrepCatalog::Data>();
  data->group = g;
  data->irreps = std::move(acc);
  return IrrepCatalog{std::move(data)};
}

IrrepCatalog assemble_catalog(const FiniteGroup& g, std::vector<Irrep> irreps) {
  auto data = std::make_shared<IrrepCatalog::Data>();
  data->group = g;
  data->irreps = std::move(irreps);
  return IrrepCatalog{std::move(data)};
}

CatalogReport verify_catalog(const FiniteGroup& g, const IrrepCatalog& cat, std::uint64_t seed) {
  if (!cat.valid() || !cat.group().same_group(g))
    throw InvalidArgument("verify_catalog: catalog does not belong to this group");
  const int order = g.order();
  for (int i = 0; i < cat.count(); ++i) {
    const Irrep& rho = cat.at(i);
    if (static_cast<int>(rho.matrices.size()) != order)
      throw InvalidArgument("verify_catalog: irrep '" + rho.name + "' has " +
                            std::to_string(rho.matrices.size()) + " matrices for group order " +
                            std::to_string(order));
    for (const ComplexMatrix& m : rho.matrices)
      if (m.rows() != rho.dim || m.cols() != rho.dim)
        throw InvalidArgument("verify_catalog: matrix dimension mismatch in '" + rho.name + "'");
  }

  CatalogReport report;
  for (int i = 0; i < cat.count(); ++i) {
    const Irrep& rho = cat.at(i);
    IrrepCheckReport check;
    check.name = rho.name;
    check.dim = rho.dim;

    const ComplexMatrix eye = ComplexMatrix::identity(rho.dim);
    check.hom_residual = max_abs_diff(rho.at(g.identity()), eye);

    // Homomorphism rho(xy) = rho(x) rho(y): exhaustive pairs up to order 48,
    // seeded sample beyond (same policy as group associativity).
    if (order <= 48) {
      for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y)
          check.hom_residual =
              std::max(check.hom_residual,
                       max_abs_diff(rho.at(g.mul(x, y)), rho.at(x) * rho.at(y)));
    } else {
      Rng rng(seed);
      for (int trial = 0; trial < 10000; ++trial) {
        const int x = rng.uniform_int(0, order - 1);
        const int y = rng.uniform_int(0, order - 1);
        check.hom_residual =
            std::max(check.hom_residual,
                     max_abs_diff(rho.at(g.mul(x, y)), rho.at(x) * rho.at(y)));
      }
    }

    double irr = 0.0;
    for (int x = 0; x < order; ++x) {
      const ComplexMatrix& m = rho.at(x);
      if (!m.all_finite()) throw InvalidArgument("verify_catalog: non-finite entry in '" + rho.name + "'");
      check.unitarity_residual =
          std::max(check.unitarity_residual, frobenius_norm(m * m.adjoint() - eye));
      irr += std::norm(trace(m));
    }
    check.irreducibility_residual = std::abs(irr / order - 1.0);

    check.pass = check.hom_residual < report.hom_tol &&
                 check.unitarity_residual < report.unitarity_tol &&
                 check.irreducibility_residual < report.char_tol;
    report.irrep_checks.push_back(std::move(check));
  }

  report.dim_sq_sum = cat.dim_sq_sum();
  report.completeness = (report.dim_sq_sum == order);

  for (int i = 0; i < cat.count(); ++i) {
    for (int j = i + 1; j < cat.count(); ++j) {
      cplx inner{0.0, 0.0};
      for (int x = 0; x < order; ++x)
        inner += trace(cat.at(i).at(x)) * std::conj(trace(cat.at(j).at(x)));
      report.max_char_inner = std::max(report.max_char_inner, std::abs(inner) / order);
    }
  }
  report.inequivalence = report.max_char_inner < report.char_tol;

  report.pass = report.completeness && report.inequivalence;
  for (const IrrepCheckReport& check : report.irrep_checks) report.pass = report.pass && check.pass;
  return report;
}

}  // namespace ncfa
