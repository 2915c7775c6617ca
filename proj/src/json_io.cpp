#include "gmf/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gmf/error.hpp"

namespace gmf::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::parse_error, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

std::int64_t get_int(const json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t pos = 0;
    try {
      const auto v = std::stoll(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  bad(std::string(what) + " must be an integer");
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  bad("rational coefficient must be a string \"p/q\" or an integer, got " + j.dump());
}

}  // namespace

json field_to_json(const FieldTag& k) {
  if (k.is_rational()) return json{{"kind", "rational"}};
  return json{{"conductor", k.conductor}, {"kind", "cyclotomic"}};
}

FieldTag field_from_json(const json& j) {
  if (j.is_string()) return parse_field(j.get<std::string>());
  const auto kind = member(j, "kind");
  if (kind == "rational") return FieldTag::rationals();
  if (kind == "cyclotomic") {
    const auto m = get_int(member(j, "conductor"), "conductor");
    if (m < 1) bad("conductor must be >= 1");
    return FieldTag::cyclotomic(static_cast<std::uint64_t>(m));
  }
  bad("unknown field kind " + kind.dump());
}

FieldTag parse_field(const std::string& text) {
  if (text == "rational") return FieldTag::rationals();
  const std::string prefix = "cyclotomic:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t pos = 0;
    long m = 0;
    try {
      m = std::stol(text.substr(prefix.size()), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos > 0 && pos == text.size() - prefix.size() && m >= 1)
      return FieldTag::cyclotomic(static_cast<std::uint64_t>(m));
  }
  bad("field must be 'rational' or 'cyclotomic:<m>', got '" + text + "'");
}

json element_to_json(const FieldElement& x) {
  if (x.field().is_rational()) return to_string(x.coords()[0]);
  json out = json::array();
  for (const auto& c : x.coords()) out.push_back(to_string(c));
  return out;
}

FieldElement element_from_json(const json& j, const FieldTag& k) {
  if (!j.is_array()) return FieldElement::from_rational(rational_from_json(j), k);
  if (j.size() != k.degree()) {
    bad("field element over " + to_string(k) + " needs " + std::to_string(k.degree()) +
        " coordinates, got " + std::to_string(j.size()));
  }
  std::vector<Rational> coords;
  for (const auto& c : j) coords.push_back(rational_from_json(c));
  return FieldElement::from_coords(k, std::move(coords));
}

json series_to_json(const QExpansion& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(element_to_json(c));
  return json{{"coeffs", coeffs},
              {"field", field_to_json(f.field())},
              {"lead", f.lead()},
              {"level", f.level()},
              {"precision", f.precision()}};
}

QExpansion series_from_json(const json& j) {
  const auto level = get_int(member(j, "level"), "level");
  if (level < 1) bad("level must be >= 1");
  const FieldTag k = j.contains("field") ? field_from_json(j.at("field")) : FieldTag::rationals();
  const auto& raw = member(j, "coeffs");
  if (!raw.is_array()) bad("coeffs must be an array");
  const Exponent lead = j.contains("lead") ? get_int(j.at("lead"), "lead") : 0;
  const Exponent precision = j.contains("precision")
                                 ? get_int(j.at("precision"), "precision")
                                 : lead + static_cast<Exponent>(raw.size());
  if (precision < lead) bad("precision below lead");
  if (static_cast<Exponent>(raw.size()) != precision - lead) {
    bad("series with lead " + std::to_string(lead) + " and precision " + std::to_string(precision) +
        " needs " + std::to_string(precision - lead) + " coefficients, got " +
        std::to_string(raw.size()));
  }
  std::vector<FieldElement> coeffs;
  coeffs.reserve(raw.size());
  for (const auto& c : raw) coeffs.push_back(element_from_json(c, k));
  return QExpansion::from_coeffs(static_cast<std::uint64_t>(level), lead, precision, k, std::move(coeffs));
}

json basis_to_json(const CuspFormBasis& b) {
  json forms = json::array();
  for (const auto& f : b.forms) forms.push_back(series_to_json(f));
  return json{{"forms", forms}, {"group", to_string(b.group)}, {"level", b.level}};
}

CuspFormBasis basis_from_json(const json& j) {
  const auto& g = member(j, "group");
  if (!g.is_string()) bad("group must be a descriptor string");
  CuspFormBasis b;
  try {
    b.group = GroupDescriptor::parse(g.get<std::string>());
  } catch (const Error& e) {
    bad(e.what());
  }
  const auto& forms = member(j, "forms");
  if (!forms.is_array()) bad("forms must be an array");
  for (const auto& f : forms) b.forms.push_back(series_from_json(f));
  if (j.contains("level")) {
    b.level = static_cast<std::uint64_t>(get_int(j.at("level"), "level"));
  } else if (!b.forms.empty()) {
    b.level = b.forms[0].level();
  } else {
    b.level = invariants(b.group).width_at_infinity;
  }
  return b;
}

std::vector<FieldElement> prefix_from_json(const json& j) {
  FieldTag k = FieldTag::rationals();
  const json* coeffs = &j;
  if (j.is_object()) {
    if (j.contains("field")) k = field_from_json(j.at("field"));
    coeffs = &member(j, "coeffs");
  }
  if (!coeffs->is_array()) bad("prefix must be an array of coefficients");
  std::vector<FieldElement> out;
  for (const auto& c : *coeffs) out.push_back(element_from_json(c, k));
  return out;
}

json prefix_to_json(const std::vector<FieldElement>& xs, const FieldTag& k) {
  json coeffs = json::array();
  for (const auto& x : xs) coeffs.push_back(element_to_json(x.promote(k)));
  return json{{"coeffs", coeffs}, {"field", field_to_json(k)}};
}

json report_to_json(const DecompositionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(json{{"detail", c.detail},
                          {"first_discrepancy", c.first_discrepancy ? json(*c.first_discrepancy) : json()},
                          {"name", c.name},
                          {"passed", c.passed}});
  }
  return json{{"checks", checks}, {"ok", r.ok()}};
}

json basis_report_to_json(const BasisReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        json{{"detail", c.detail}, {"name", c.name}, {"passed", c.passed}, {"required", c.required}});
  }
  return json{{"checks", checks}, {"genus", r.genus}, {"kappa", r.kappa}, {"ok", r.ok()}, {"rank", r.rank}};
}

json decomposition_to_json(const CanonicalDecomposition& dec, const DecompositionReport& checks) {
  json coords = json::array();
  for (const auto& c : dec.basis_coords) coords.push_back(element_to_json(c));
  return json{{"basis_coords", coords},
              {"checks", report_to_json(checks)},
              {"f0", series_to_json(dec.f0.expansion)},
              {"f1", series_to_json(dec.f1.expansion)},
              {"g0", series_to_json(dec.g0)}};
}

CanonicalDecomposition decomposition_from_json(const json& j, const GroupDescriptor& g) {
  CanonicalDecomposition dec;
  dec.f1 = PGMF::make(series_from_json(member(j, "f1")), g);
  dec.f0 = PGMF::make(series_from_json(member(j, "f0")), g);
  dec.g0 = series_from_json(member(j, "g0"));
  const auto& coords = member(j, "basis_coords");
  if (!coords.is_array()) bad("basis_coords must be an array");
  for (const auto& c : coords) dec.basis_coords.push_back(element_from_json(c, dec.g0.field()));
  return dec;
}

json certificate_to_json(const Certificate& c) {
  json detail{{"message", c.detail}};
  if (c.witness) {
    detail["witness"] = json{{"exponent", c.witness->exponent},
                             {"expected", element_to_json(c.witness->expected)},
                             {"fitted", element_to_json(c.witness->fitted)}};
  }
  if (c.decomposition) {
    json coords = json::array();
    for (const auto& x : c.decomposition->basis_coords) coords.push_back(element_to_json(x));
    detail["basis_coords"] = coords;
    detail["precision"] = c.decomposition->f1.expansion.precision();
  }
  return json{{"detail", detail}, {"verdict", to_string(c.verdict)}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace gmf::io
