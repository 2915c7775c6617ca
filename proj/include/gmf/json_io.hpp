#pragma once

// JSON interchange. Objects are written with sorted keys and rationals as
// decimal strings "p/q", so dump() of an emitted value is canonical.

#include <string>
#include <vector>

#include "json.hpp"

#include "gmf/etaforms.hpp"
#include "gmf/gmfcore.hpp"
#include "gmf/qseries.hpp"

namespace gmf::io {

using nlohmann::json;

json field_to_json(const FieldTag& k);
FieldTag field_from_json(const json& j);
// "rational" or "cyclotomic:<m>".
FieldTag parse_field(const std::string& text);

json element_to_json(const FieldElement& x);
FieldElement element_from_json(const json& j, const FieldTag& k);

json series_to_json(const QExpansion& f);
QExpansion series_from_json(const json& j);

json basis_to_json(const CuspFormBasis& b);
// {"group": "...", "forms": [series, ...]}; the level defaults to the forms' level.
CuspFormBasis basis_from_json(const json& j);

// A bare array of rationals or {"field": ..., "coeffs": [...]}.
std::vector<FieldElement> prefix_from_json(const json& j);
json prefix_to_json(const std::vector<FieldElement>& xs, const FieldTag& k);

json report_to_json(const DecompositionReport& r);
json basis_report_to_json(const BasisReport& r);
json decomposition_to_json(const CanonicalDecomposition& dec, const DecompositionReport& checks);
CanonicalDecomposition decomposition_from_json(const json& j, const GroupDescriptor& g);
json certificate_to_json(const Certificate& c);

json parse(const std::string& text);
json read_file(const std::string& path);

}  // namespace gmf::io
