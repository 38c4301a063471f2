#include "model.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "torlink/errors.hpp"

namespace torlink::cli {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

Integer integer_field(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      invalid(field, e.what());
    }
  }
  invalid(field, "expected an integer");
}

QmodZ rational_field(const json& j, const std::string& field) {
  if (!j.is_string()) invalid(field, "expected a rational string \"a/b\"");
  try {
    return QmodZ::parse_canonical(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    invalid(field, e.what());
  }
}

const json& array_field(const json& j, const std::string& field) {
  if (!j.is_array()) invalid(field, "expected an array");
  return j;
}

std::vector<Integer> integer_vector(const json& j, const std::string& field) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < array_field(j, field).size(); ++i)
    out.push_back(integer_field(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// det of rows {k,l,q} x cols {a,b,c} of the lift matrix.
Integer lift_minor(const std::vector<std::vector<Integer>>& lifts, const GeneratorTriple& rows,
                   const GeneratorTriple& cols) {
  auto e = [&](int r, int c) -> const Integer& { return lifts[rows[r]][cols[c]]; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

ManifoldModel parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed model file at " + location(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("model file must contain a JSON object");

  static const std::set<std::string> known = {"name", "linking_matrix", "group", "lambda2", "lambda3",
                                              "named_elements"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) invalid(key, "unknown field");

  ManifoldModel model;
  if (!doc.contains("name") || !doc["name"].is_string()) invalid("name", "expected a string");
  model.name = doc["name"].get<std::string>();

  const bool has_matrix = doc.contains("linking_matrix");
  const bool has_group = doc.contains("group") || doc.contains("lambda2");
  if (has_matrix == has_group) invalid("linking_matrix", "give exactly one of linking_matrix or group+lambda2");

  std::vector<GroupElement> meridians;
  std::vector<std::vector<Integer>> lifts;
  std::size_t coordinate_count = 0;
  if (has_matrix) {
    const json& rows = array_field(doc["linking_matrix"], "linking_matrix");
    const std::size_t n = rows.size();
    IntegerMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string f = "linking_matrix[" + std::to_string(i) + "]";
      auto row = integer_vector(rows[i], f);
      if (row.size() != n) invalid(f, "linking matrix must be square");
      for (std::size_t j = 0; j < n; ++j) a(i, j) = row[j];
    }
    try {
      LinkingPresentation pres = linking_form_from_matrix(a);
      model.form = std::move(pres.form);
      meridians = std::move(pres.meridian_images);
      lifts = std::move(pres.generator_lifts);
    } catch (const Error& e) {
      invalid("linking_matrix", e.what());
    }
    model.linking_matrix = std::move(a);
    model.meridian_images = meridians;
    coordinate_count = n;
  } else {
    if (!doc.contains("group") || !doc.contains("lambda2")) invalid("group", "group and lambda2 go together");
    std::vector<Integer> factors = integer_vector(doc["group"], "group");
    FiniteAbelianGroup g;
    try {
      g = FiniteAbelianGroup(factors);
    } catch (const Error& e) {
      invalid("group", e.what());
    }
    const json& rows = array_field(doc["lambda2"], "lambda2");
    if (rows.size() != g.rank()) invalid("lambda2", "expected " + std::to_string(g.rank()) + " rows");
    QmodZMatrix gram(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) {
      const std::string f = "lambda2[" + std::to_string(i) + "]";
      if (array_field(rows[i], f).size() != g.rank()) invalid(f, "expected " + std::to_string(g.rank()) + " entries");
      for (std::size_t j = 0; j < g.rank(); ++j)
        gram[i].push_back(rational_field(rows[i][j], f + "[" + std::to_string(j) + "]"));
    }
    try {
      model.form = LinkingForm(g, std::move(gram));
    } catch (const Error& e) {
      invalid("lambda2", e.what());
    }
    coordinate_count = g.rank();
  }
  const FiniteAbelianGroup& g = model.form.group();

  if (doc.contains("lambda3")) {
    const json& entries = array_field(doc["lambda3"], "lambda3");
    std::map<GeneratorTriple, QmodZ> given;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const std::string f = "lambda3[" + std::to_string(e) + "]";
      const json& entry = entries[e];
      if (!entry.is_object() || !entry.contains("triple") || !entry.contains("value"))
        invalid(f, "expected {\"triple\": [i, j, k], \"value\": \"a/b\"}");
      auto idx = integer_vector(entry["triple"], f + ".triple");
      if (idx.size() != 3) invalid(f + ".triple", "expected three indices");
      for (const auto& i : idx)
        if (i < 1 || i > Integer(coordinate_count))
          invalid(f + ".triple", "index out of range 1.." + std::to_string(coordinate_count));
      if (!(idx[0] < idx[1] && idx[1] < idx[2])) invalid(f + ".triple", "indices must be strictly increasing");
      GeneratorTriple t{idx[0].get_ui() - 1, idx[1].get_ui() - 1, idx[2].get_ui() - 1};
      if (given.contains(t)) invalid(f + ".triple", "triple listed twice");
      given.emplace(t, rational_field(entry["value"], f + ".value"));
    }
    std::map<GeneratorTriple, QmodZ> coeffs;
    if (has_matrix) {
      const std::size_t r = g.rank();
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = k + 1; l < r; ++l)
          for (std::size_t q = l + 1; q < r; ++q) {
            QmodZ c;
            for (const auto& [abc, value] : given) c += lift_minor(lifts, {k, l, q}, abc) * value;
            if (!c.is_zero()) coeffs.emplace(GeneratorTriple{k, l, q}, c);
          }
    } else {
      coeffs = std::move(given);
    }
    try {
      model.triple = TripleForm(model.form, std::move(coeffs));
    } catch (const Error& e) {
      invalid("lambda3", e.what());
    }
  }

  if (doc.contains("named_elements")) {
    const json& named = doc["named_elements"];
    if (!named.is_object()) invalid("named_elements", "expected an object");
    for (const auto& [key, value] : named.items()) {
      const std::string f = "named_elements." + key;
      auto coords = integer_vector(value, f);
      if (coords.size() != coordinate_count) invalid(f, "expected " + std::to_string(coordinate_count) + " coordinates");
      model.named_elements.emplace(key, element_from_coordinates(model, coords));
    }
  }
  return model;
}

GroupElement element_from_coordinates(const ManifoldModel& model, const std::vector<Integer>& coords) {
  const FiniteAbelianGroup& g = model.form.group();
  if (!model.linking_matrix) {
    if (coords.size() != g.rank()) throw ValidationError("expected " + std::to_string(g.rank()) + " coordinates");
    return g.element(coords);
  }
  if (coords.size() != model.meridian_images.size())
    throw ValidationError("expected " + std::to_string(model.meridian_images.size()) + " meridian coordinates");
  GroupElement e = g.zero();
  for (std::size_t i = 0; i < coords.size(); ++i) e = g.add(e, g.scale(coords[i], model.meridian_images[i]));
  return e;
}

ManifoldModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(const ManifoldModel& model) {
  const FiniteAbelianGroup& g = model.form.group();
  auto integer_json = [](const Integer& v) -> json {
    if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
    return v.get_str();
  };
  json doc;
  doc["name"] = model.name;
  doc["group"] = json::array();
  for (const auto& t : g.invariant_factors()) doc["group"].push_back(integer_json(t));
  doc["lambda2"] = json::array();
  for (const auto& row : model.form.gram()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.to_string());
    doc["lambda2"].push_back(std::move(r));
  }
  if (model.triple) {
    doc["lambda3"] = json::array();
    for (const auto& [t, v] : model.triple->coefficients())
      doc["lambda3"].push_back({{"triple", {t[0] + 1, t[1] + 1, t[2] + 1}}, {"value", v.to_string()}});
  }
  if (!model.named_elements.empty()) {
    doc["named_elements"] = json::object();
    for (const auto& [name, e] : model.named_elements) {
      json c = json::array();
      for (const auto& v : e.coords) c.push_back(integer_json(v));
      doc["named_elements"][name] = std::move(c);
    }
  }
  // One array per line keeps the file readable without expanding matrices.
  std::ostringstream os;
  os << "{\n";
  bool first = true;
  for (const auto& [key, value] : doc.items()) {
    os << (first ? "" : ",\n") << "  " << json(key).dump() << ": ";
    first = false;
    if (value.is_array() && !value.empty() && (value[0].is_array() || value[0].is_object())) {
      os << "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) os << "    " << value[i].dump() << (i + 1 < value.size() ? ",\n" : "\n");
      os << "  ]";
    } else if (value.is_object()) {
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [k, v] : value.items())
        os << "    " << json(k).dump() << ": " << v.dump() << (++i < value.size() ? ",\n" : "\n");
      os << "  }";
    } else {
      os << value.dump();
    }
  }
  os << "\n}\n";
  return os.str();
}

ManifoldModel model_from_m0() {
  M0Model m0 = m0_model();
  ManifoldModel model;
  model.name = "M0";
  model.form = m0.form();
  model.triple = m0.triple;
  model.named_elements = m0.elements;
  return model;
}

}  // namespace torlink::cli
