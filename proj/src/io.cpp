#include "ncfa/io.hpp"

#include <fstream>

#include "ncfa/errors.hpp"

namespace ncfa {

namespace {

using nlohmann::json;

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a complex number as a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json arr = json::array();
  for (const cplx& z : m.entries()) arr.push_back(cplx_to_json(z));
  return arr;
}

ComplexMatrix matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows) * cols)
    throw ParseError("matrix entry count does not match declared dimension");
  std::vector<cplx> entries;
  entries.reserve(j.size());
  for (const json& e : j) entries.push_back(cplx_from_json(e));
  return ComplexMatrix(rows, cols, std::move(entries));
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

void check_group_header(const json& j, const FiniteGroup& g) {
  const std::string spec_text = require(j, "group_spec").get<std::string>();
  GroupSpec spec;
  try {
    spec = parse_group_spec(spec_text);
  } catch (const ParseError& e) {
    throw ParseError(std::string("bad group_spec in file: ") + e.what());
  }
  if (spec.label() != g.label())
    throw ParseError("file is for group " + spec.label() + ", expected " + g.label());
}


// Converts nlohmann type/access errors at the parse boundary into ParseError
// so callers see one exception family for malformed files.
template <typename Fn>
auto parse_guard(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json function_to_json(const GroupFunction& f) {
  json j;
  j["group_spec"] = f.group.label();
  json values = json::array();
  for (const cplx& z : f.values) values.push_back(cplx_to_json(z));
  j["values"] = std::move(values);
  return j;
}

GroupFunction function_from_json(const json& j, const FiniteGroup& g) {
  return parse_guard("function file", [&] {
    if (!j.is_object()) throw ParseError("function file: expected a JSON object");
    check_group_header(j, g);
    const json& values = require(j, "values");
    if (!values.is_array() || values.size() != static_cast<std::size_t>(g.order()))
      throw ParseError("function file: expected " + std::to_string(g.order()) + " values");
    std::vector<cplx> out;
    out.reserve(values.size());
    for (const json& v : values) out.push_back(cplx_from_json(v));
    return make_function(g, std::move(out));
  });
}

json spectrum_to_json(const Spectrum& s) {
  json j;
  j["group_spec"] = s.catalog.group().label();
  j["order"] = s.catalog.group().order();
  j["count"] = s.count();
  json blocks = json::array();
  for (int i = 0; i < s.count(); ++i) {
    json b;
    b["name"] = s.catalog.at(i).name;
    b["dim"] = s.catalog.dim(i);
    b["matrix"] = matrix_to_json(s.block(i));
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Spectrum spectrum_from_json(const json& j, const IrrepCatalog& cat) {
  return parse_guard("spectrum file", [&] {
    if (!j.is_object()) throw ParseError("spectrum file: expected a JSON object");
    check_group_header(j, cat.group());
    if (require(j, "count").get<int>() != cat.count())
      throw ParseError("spectrum file: block count does not match catalog");
    const json& blocks = require(j, "blocks");
    if (!blocks.is_array() || blocks.size() != static_cast<std::size_t>(cat.count()))
      throw ParseError("spectrum file: expected one block per catalog irrep");
    Spectrum s;
    s.catalog = cat;
    for (int i = 0; i < cat.count(); ++i) {
      const json& b = blocks[i];
      const int dim = require(b, "dim").get<int>();
      if (dim != cat.dim(i)) throw ParseError("spectrum file: block dimension mismatch");
      s.blocks.push_back(matrix_from_json(require(b, "matrix"), dim, dim));
    }
    return s;
  });
}

json catalog_to_json(const IrrepCatalog& cat) {
  json j;
  j["group_spec"] = cat.group().label();
  j["order"] = cat.group().order();
  j["count"] = cat.count();
  json irreps = json::array();
  for (int i = 0; i < cat.count(); ++i) {
    const Irrep& rho = cat.at(i);
    json r;
    r["name"] = rho.name;
    r["dim"] = rho.dim;
    json mats = json::array();
    for (const ComplexMatrix& m : rho.matrices) mats.push_back(matrix_to_json(m));
    r["matrices"] = std::move(mats);
    irreps.push_back(std::move(r));
  }
  j["irreps"] = std::move(irreps);
  return j;
}

IrrepCatalog catalog_from_json(const json& j, const FiniteGroup& g) {
  return parse_guard("catalog file", [&] {
    if (!j.is_object()) throw ParseError("catalog file: expected a JSON object");
    check_group_header(j, g);
    if (require(j, "order").get<int>() != g.order())
      throw ParseError("catalog file: order does not match group");
    const json& irreps_json = require(j, "irreps");
    if (!irreps_json.is_array()) throw ParseError("catalog file: 'irreps' must be an array");
    if (require(j, "count").get<int>() != static_cast<int>(irreps_json.size()))
      throw ParseError("catalog file: count does not match irrep array length");

    std::vector<Irrep> parsed;
    for (const json& r : irreps_json) {
      Irrep rho;
      rho.name = require(r, "name").get<std::string>();
      rho.dim = require(r, "dim").get<int>();
      if (rho.dim < 1) throw ParseError("catalog file: irrep dimension must be positive");
      const json& mats = require(r, "matrices");
      if (!mats.is_array() || mats.size() != static_cast<std::size_t>(g.order()))
        throw ParseError("catalog file: expected " + std::to_string(g.order()) +
                         " matrices in irrep '" + rho.name + "'");
      for (const json& m : mats) rho.matrices.push_back(matrix_from_json(m, rho.dim, rho.dim));
      parsed.push_back(std::move(rho));
    }
    return assemble_catalog(g, std::move(parsed));
  });
}

IrrepCatalog load_catalog(const std::string& path, const FiniteGroup& g) {
  const IrrepCatalog cat = catalog_from_json(read_json_file(path), g);
  const CatalogReport report = verify_catalog(g, cat);
  if (!report.pass) {
    std::string why = "catalog failed verification:";
    if (!report.completeness)
      why += " completeness (sum d^2 = " + std::to_string(report.dim_sq_sum) + " != " +
             std::to_string(g.order()) + ")";
    if (!report.inequivalence) why += " pairwise-inequivalence";
    for (const IrrepCheckReport& c : report.irrep_checks)
      if (!c.pass) why += " irrep '" + c.name + "'";
    throw VerificationError(why);
  }
  return cat;
}

json operator_desc_to_json(const OperatorDesc& desc) {
  json j;
  switch (desc.kind) {
    case OperatorDesc::Kind::time:
      j["kind"] = "time";
      j["mask"] = function_to_json(desc.mask);
      break;
    case OperatorDesc::Kind::band: {
      j["kind"] = "band";
      j["side"] = desc.side == Side::left ? "left" : "right";
      json blocks = json::array();
      for (int i = 0; i < desc.band.count(); ++i) {
        json b;
        b["name"] = desc.band.catalog.at(i).name;
        b["dim"] = desc.band.catalog.dim(i);
        b["matrix"] = matrix_to_json(desc.band.block(i));
        blocks.push_back(std::move(b));
      }
      j["blocks"] = std::move(blocks);
      break;
    }
    case OperatorDesc::Kind::translate:
      j["kind"] = "translate";
      j["element"] = desc.element;
      break;
    case OperatorDesc::Kind::isotypic:
      j["kind"] = "isotypic";
      j["irrep"] = desc.irrep;
      break;
    case OperatorDesc::Kind::compose: {
      j["kind"] = "compose";
      json parts = json::array();
      for (const OperatorDesc& p : desc.parts) parts.push_back(operator_desc_to_json(p));
      j["parts"] = std::move(parts);
      break;
    }
  }
  return j;
}

OperatorDesc operator_desc_from_json(const json& j, const FiniteGroup& g, const IrrepCatalog& cat) {
  return parse_guard("operator description", [&] {
    if (!j.is_object()) throw ParseError("operator description: expected a JSON object");
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "time") return OperatorDesc::time_limiter(function_from_json(require(j, "mask"), g));
    if (kind == "translate") {
      const int element = require(j, "element").get<int>();
      if (element < 0 || element >= g.order())
        throw ParseError("operator description: translation element out of range");
      return OperatorDesc::left_translation(element);
    }
    if (kind == "isotypic") {
      const int irrep = require(j, "irrep").get<int>();
      if (irrep < 0 || irrep >= cat.count())
        throw ParseError("operator description: irrep index out of range");
      return OperatorDesc::isotypic(irrep);
    }
    if (kind == "band") {
      const std::string side = require(j, "side").get<std::string>();
      if (side != "left" && side != "right")
        throw ParseError("operator description: side must be 'left' or 'right'");
      const json& blocks = require(j, "blocks");
      if (!blocks.is_array() || blocks.size() != static_cast<std::size_t>(cat.count()))
        throw ParseError("operator description: expected one block per catalog irrep");
      BandLimiter r;
      r.catalog = cat;
      for (int i = 0; i < cat.count(); ++i) {
        const json& b = blocks[i];
        const int dim = require(b, "dim").get<int>();
        if (dim != cat.dim(i)) throw ParseError("operator description: block dimension mismatch");
        r.blocks.push_back(matrix_from_json(require(b, "matrix"), dim, dim));
      }
      return OperatorDesc::band_limiter(std::move(r), side == "left" ? Side::left : Side::right);
    }
    if (kind == "compose") {
      const json& parts = require(j, "parts");
      if (!parts.is_array()) throw ParseError("operator description: 'parts' must be an array");
      std::vector<OperatorDesc> out;
      for (const json& p : parts) out.push_back(operator_desc_from_json(p, g, cat));
      return OperatorDesc::compose(std::move(out));
    }
    throw ParseError("operator description: unknown kind '" + kind + "'");
  });
}

json report_to_json(const UncertaintyReport& rep) {
  json j;
  j["check"] = rep.check;
  j["quantities"] = rep.quantities;
  j["residual"] = rep.residual;
  j["slack"] = rep.slack;
  j["tolerance"] = rep.tolerance;
  j["verdict"] = verdict_name(rep.verdict);
  if (!rep.flag.empty()) j["flag"] = rep.flag;
  return j;
}

json catalog_report_to_json(const CatalogReport& rep) {
  json j;
  json checks = json::array();
  for (const IrrepCheckReport& c : rep.irrep_checks) {
    json cj;
    cj["name"] = c.name;
    cj["dim"] = c.dim;
    cj["hom_residual"] = c.hom_residual;
    cj["unitarity_residual"] = c.unitarity_residual;
    cj["irreducibility_residual"] = c.irreducibility_residual;
    cj["verdict"] = c.pass ? "pass" : "fail";
    checks.push_back(std::move(cj));
  }
  j["irrep_checks"] = std::move(checks);
  j["dim_sq_sum"] = rep.dim_sq_sum;
  j["completeness"] = rep.completeness;
  j["max_char_inner"] = rep.max_char_inner;
  j["inequivalence"] = rep.inequivalence;
  j["verdict"] = rep.pass ? "pass" : "fail";
  return j;
}

json commutation_report_to_json(const CommutationReport& rep) {
  json j;
  j["left_translation_residual"] = rep.left_translation_residual;
  j["right_translation_residual"] = rep.right_translation_residual;
  j["subset_projection_residual"] = rep.subset_projection_residual;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw ParseError("failed writing file: " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw ParseError("failed writing file: " + path);
}

}  // namespace ncfa
