#pragma once

#include <string>

#include <json.hpp>

#include "ncfa/irreps.hpp"
#include "ncfa/operators.hpp"
#include "ncfa/uncertainty.hpp"

namespace ncfa {

// JSON file formats. Complex numbers are [re, im] pairs of IEEE doubles in
// decimal text; element and irrep order is the canonical catalog order.
//
//   function  {"group_spec": "S3", "values": [[re, im], ...]}        (|G| values)
//   spectrum  {"group_spec", "order", "count", "blocks":
//                [{"name", "dim", "matrix": [[re, im], ...]}]}       (row-major d^2)
//   catalog   {"group_spec", "order", "count", "irreps":
//                [{"name", "dim", "matrices": [[[re, im], ...], ...]}]}  (|G| matrices)
//   operator  tagged union on "kind": time | band | translate | isotypic | compose

nlohmann::json function_to_json(const GroupFunction& f);
GroupFunction function_from_json(const nlohmann::json& j, const FiniteGroup& g);

nlohmann::json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j, const IrrepCatalog& cat);

nlohmann::json catalog_to_json(const IrrepCatalog& cat);
// Parses without verifying; load_catalog is the checked entry point.
IrrepCatalog catalog_from_json(const nlohmann::json& j, const FiniteGroup& g);

// Parse + verify_catalog. Throws ParseError for malformed files and
// VerificationError when the parsed catalog fails its defining properties.
IrrepCatalog load_catalog(const std::string& path, const FiniteGroup& g);

nlohmann::json operator_desc_to_json(const OperatorDesc& desc);
OperatorDesc operator_desc_from_json(const nlohmann::json& j, const FiniteGroup& g,
                                     const IrrepCatalog& cat);

nlohmann::json report_to_json(const UncertaintyReport& rep);
nlohmann::json catalog_report_to_json(const CatalogReport& rep);
nlohmann::json commutation_report_to_json(const CommutationReport& rep);

nlohmann::json read_json_file(const std::string& path);   // throws ParseError
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ncfa
