#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncfa/cli.hpp"
#include "ncfa/errors.hpp"
#include "ncfa/io.hpp"

namespace py = pybind11;
using namespace ncfa;

namespace {

py::list matrix_to_py(const ComplexMatrix& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(m.at(i, j));
    rows.append(row);
  }
  return rows;
}

ComplexMatrix matrix_from_py(const std::vector<std::vector<cplx>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw InvalidArgument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_ncfa, m) {
  m.doc() = "noncommutative Fourier analysis and uncertainty principles on finite groups";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_ValueError);

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("identity", &FiniteGroup::identity)
      .def_property_readonly("label", &FiniteGroup::label)
      .def("mul", &FiniteGroup::mul, py::arg("x"), py::arg("y"))
      .def("inverse", &FiniteGroup::inverse, py::arg("x"))
      .def("is_abelian", &FiniteGroup::is_abelian)
      .def("__repr__", [](const FiniteGroup& g) {
        return "<FiniteGroup " + g.label() + " of order " + std::to_string(g.order()) + ">";
      });

  py::class_<Subgroup>(m, "Subgroup")
      .def_readonly("members", &Subgroup::members)
      .def_property_readonly("size", &Subgroup::size);

  py::class_<IrrepCatalog>(m, "IrrepCatalog")
      .def_property_readonly("count", &IrrepCatalog::count)
      .def("dim", &IrrepCatalog::dim, py::arg("i"))
      .def("name", [](const IrrepCatalog& c, int i) { return c.at(i).name; }, py::arg("i"))
      .def("dims",
           [](const IrrepCatalog& c) {
             std::vector<int> d;
             for (int i = 0; i < c.count(); ++i) d.push_back(c.dim(i));
             return d;
           })
      .def("matrix",
           [](const IrrepCatalog& c, int i, int element) { return matrix_to_py(c.at(i).at(element)); },
           py::arg("i"), py::arg("element"));

  py::class_<GroupFunction>(m, "GroupFunction")
      .def_readonly("values", &GroupFunction::values)
      .def_property_readonly("group", [](const GroupFunction& f) { return f.group; });

  py::class_<Spectrum>(m, "Spectrum")
      .def_property_readonly("count", &Spectrum::count)
      .def("block", [](const Spectrum& s, int i) { return matrix_to_py(s.block(i)); }, py::arg("i"));

  py::class_<SupportMetrics>(m, "SupportMetrics")
      .def_readonly("mu_supp", &SupportMetrics::mu_supp)
      .def_readonly("rank_sum", &SupportMetrics::rank_sum)
      .def_readonly("dsq_sum", &SupportMetrics::dsq_sum)
      .def_readonly("d1_sum", &SupportMetrics::d1_sum)
      .def_readonly("zero_function", &SupportMetrics::zero_function);

  py::class_<BandLimiter>(m, "BandLimiter")
      .def_property_readonly("count", &BandLimiter::count)
      .def("block", [](const BandLimiter& r, int i) { return matrix_to_py(r.block(i)); }, py::arg("i"));

  py::class_<UncertaintyReport>(m, "UncertaintyReport")
      .def_readonly("check", &UncertaintyReport::check)
      .def_readonly("quantities", &UncertaintyReport::quantities)
      .def_readonly("residual", &UncertaintyReport::residual)
      .def_readonly("slack", &UncertaintyReport::slack)
      .def_readonly("tolerance", &UncertaintyReport::tolerance)
      .def_readonly("flag", &UncertaintyReport::flag)
      .def_property_readonly("verdict",
                             [](const UncertaintyReport& r) { return std::string(verdict_name(r.verdict)); })
      .def_property_readonly("passed", &UncertaintyReport::passed)
      .def("to_json", [](const UncertaintyReport& r) { return report_to_json(r).dump(); });

  m.def("parse_group", [](const std::string& spec) { return make_group(spec); }, py::arg("spec"));
  m.def("make_cyclic", &make_cyclic, py::arg("n"));
  m.def("make_dihedral", &make_dihedral, py::arg("n"));
  m.def("make_symmetric", &make_symmetric, py::arg("n"));
  m.def("direct_product", &direct_product, py::arg("g1"), py::arg("g2"));

  m.def("subgroup_from_generators", &subgroup_from_generators, py::arg("group"), py::arg("generators"));
  m.def("all_subgroups", &all_subgroups, py::arg("group"), py::arg("max_order") = 48);
  m.def("is_normal", &is_normal, py::arg("group"), py::arg("subgroup"));

  m.def("irreps", &irreps, py::arg("group"));
  m.def("verify_catalog_json",
        [](const FiniteGroup& g, const IrrepCatalog& cat) {
          return catalog_report_to_json(verify_catalog(g, cat)).dump();
        },
        py::arg("group"), py::arg("catalog"));
  m.def("load_catalog", &load_catalog, py::arg("path"), py::arg("group"));

  m.def("make_function", [](const FiniteGroup& g, std::vector<cplx> values) {
          return make_function(g, std::move(values));
        },
        py::arg("group"), py::arg("values"));
  m.def("constant_one", &constant_one, py::arg("group"));
  m.def("delta", &delta, py::arg("group"), py::arg("element"));
  m.def("indicator", &indicator, py::arg("group"), py::arg("subset"));
  m.def("subgroup_indicator", &subgroup_indicator, py::arg("group"), py::arg("subgroup"));

  m.def("fourier_transform", &fourier_transform, py::arg("f"), py::arg("catalog"));
  m.def("inverse_transform", &inverse_transform, py::arg("spectrum"));
  m.def("plancherel_residual", &plancherel_residual, py::arg("f"), py::arg("spectrum"));
  m.def("support_metrics", &support_metrics, py::arg("f"), py::arg("spectrum"),
        py::arg("rel_tol") = 1e-9);

  m.def("identity_band_limiter", &identity_band_limiter, py::arg("catalog"));
  m.def("subset_band_limiter", &subset_band_limiter, py::arg("catalog"), py::arg("irreps"));
  m.def("image_band_limiter", &image_band_limiter, py::arg("spectrum"), py::arg("rel_tol") = 1e-9);
  m.def("apply_band_limiter",
        [](const BandLimiter& r, const GroupFunction& f, const std::string& side) {
          return apply_band_limiter(r, f, side == "right" ? Side::right : Side::left);
        },
        py::arg("band"), py::arg("f"), py::arg("side") = "left");

  m.def("singular_values",
        [](const std::vector<std::vector<cplx>>& rows) { return singular_values(matrix_from_py(rows)); },
        py::arg("matrix"));
  m.def("numeric_rank",
        [](const std::vector<std::vector<cplx>>& rows, double rel_tol) {
          return numeric_rank(matrix_from_py(rows), rel_tol);
        },
        py::arg("matrix"), py::arg("rel_tol") = 1e-9);

  m.def("hs_identity_check",
        [](const GroupFunction& f, const BandLimiter& r, double tol) {
          return hs_identity_check(f, r, Side::left, tol);
        },
        py::arg("f"), py::arg("band"), py::arg("tol") = 1e-9);
  m.def("op_norm_bound_check",
        [](const GroupFunction& f, const BandLimiter& r, double tol) {
          return op_norm_bound_check(f, r, Side::left, tol);
        },
        py::arg("f"), py::arg("band"), py::arg("tol") = 1e-9);
  m.def("support_rank_check", &support_rank_check, py::arg("f"), py::arg("catalog"),
        py::arg("rel_tol") = 1e-9, py::arg("tol") = 1e-9);
  m.def("projection_uncertainty_check",
        [](const FiniteGroup& g, const IrrepCatalog& cat, const std::vector<int>& s,
           const std::vector<int>& t, double tol) {
          return projection_uncertainty_check(g, cat, s, t, tol);
        },
        py::arg("group"), py::arg("catalog"), py::arg("elements"), py::arg("irreps"),
        py::arg("tol") = 1e-9);
  m.def("subgroup_profile", &subgroup_profile, py::arg("group"), py::arg("catalog"),
        py::arg("subgroup"), py::arg("rel_tol") = 1e-9, py::arg("tol") = 1e-9);
  m.def("cauchy_schwarz_chain_check", &cauchy_schwarz_chain_check, py::arg("f"), py::arg("catalog"),
        py::arg("rel_tol") = 1e-9, py::arg("tol") = 1e-9);

  m.def("verify_report_json",
        [](const std::string& group, std::uint64_t seed, int trials, double tol) {
          RunConfig cfg;
          cfg.group_spec = group;
          cfg.seed = seed;
          cfg.trials = trials;
          cfg.tol = tol;
          return verify_report(cfg).dump(2);
        },
        py::arg("group"), py::arg("seed") = 0, py::arg("trials") = 25, py::arg("tol") = 1e-9);

#ifdef NCFA_VERSION
  m.attr("__version__") = NCFA_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
