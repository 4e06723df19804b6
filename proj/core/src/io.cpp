#include "hscale/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hscale {

using nlohmann::json;

namespace {

Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw SchemaError(where + ": expected a number or an [re, im] pair");
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a non-empty matrix");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.empty())
      throw SchemaError(where + ": row " + std::to_string(r) + " is not a non-empty array");
    if (r == 0) {
      cols = row.size();
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw SchemaError(where + ": ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(row[c], where + "[" + std::to_string(r) + "][" +
                                        std::to_string(c) + "]");
  }
  return m;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

SystemTolerances tolerances_from_json(const json& j) {
  SystemTolerances t;
  if (!j.contains("tolerances")) return t;
  const json& tj = j.at("tolerances");
  if (!tj.is_object()) throw SchemaError("tolerances: expected an object");
  if (tj.contains("herm")) t.kernel.herm = tj.at("herm").get<double>();
  if (tj.contains("pd")) t.kernel.pd = tj.at("pd").get<double>();
  if (tj.contains("inj")) t.inj = tj.at("inj").get<double>();
  if (tj.contains("contr")) t.contr = tj.at("contr").get<double>();
  if (tj.contains("path")) t.path = tj.at("path").get<double>();
  return t;
}

IndexPoset poset_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    throw SchemaError(where + ": expected {elements, covers}");
  std::vector<Label> elements;
  for (const auto& e : j.at("elements")) {
    if (!e.is_string()) throw SchemaError(where + ".elements: labels must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<Label, Label>> covers;
  for (const auto& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      throw SchemaError(where + ".covers: expected [from, to] label pairs");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  return IndexPoset::build(std::move(elements), covers);
}

ContractiveSystem explicit_from_json(const json& j, SystemTolerances tol) {
  IndexPoset poset = poset_from_json(j.at("poset"), "poset");
  if (!j.contains("spaces") || !j.at("spaces").is_object())
    throw SchemaError("spaces: expected an object keyed by label");
  std::vector<MetricSpace> spaces;
  for (const Label& l : poset.elements()) {
    if (!j.at("spaces").contains(l)) throw SchemaError("spaces: missing entry for '" + l + "'");
    const json& sj = j.at("spaces").at(l);
    const Matrix gram = matrix_from_json(sj.at("gram"), "spaces." + l + ".gram");
    if (sj.contains("dim") && sj.at("dim").get<Eigen::Index>() != gram.rows())
      throw SchemaError("spaces." + l + ": dim disagrees with the Gram matrix");
    spaces.emplace_back(gram, tol.kernel);
  }
  std::map<std::pair<Label, Label>, Matrix> umaps;
  if (j.contains("umaps")) {
    for (const auto& uj : j.at("umaps")) {
      if (!uj.is_object() || !uj.contains("from") || !uj.contains("to") ||
          !uj.contains("matrix"))
        throw SchemaError("umaps: expected {from, to, matrix} entries");
      umaps[{uj.at("from").get<std::string>(), uj.at("to").get<std::string>()}] =
          matrix_from_json(uj.at("matrix"), "umaps.matrix");
    }
  }
  return ContractiveSystem(std::move(poset), std::move(spaces), std::move(umaps), tol,
                           Provenance::Explicit);
}

OFamily ofamily_from_json(const json& j) {
  if (!j.contains("base") || !j.at("base").is_object())
    throw SchemaError("base: expected {dim?, gram}");
  const Matrix gram = matrix_from_json(j.at("base").at("gram"), "base.gram");
  OFamily f{MetricSpace(gram), {}};
  if (!j.contains("ops") || !j.at("ops").is_array())
    throw SchemaError("ops: expected an array of {name, matrix}");
  for (const auto& oj : j.at("ops")) {
    if (!oj.is_object() || !oj.contains("name") || !oj.contains("matrix"))
      throw SchemaError("ops: expected {name, matrix} entries");
    f.ops.emplace_back(oj.at("name").get<std::string>(),
                       matrix_from_json(oj.at("matrix"), "ops.matrix"));
  }
  return f;
}

WeightForm weight_form_from_json(const json& j) {
  if (!j.contains("weight_form")) return WeightForm::OnePlusAbsPow;
  const std::string w = j.at("weight_form").get<std::string>();
  if (w == "one-plus-abs-pow") return WeightForm::OnePlusAbsPow;
  if (w == "paper-literal") return WeightForm::PaperLiteral;
  throw SchemaError("weight_form: expected 'one-plus-abs-pow' or 'paper-literal'");
}

std::vector<OperatorDef> operators_from_json(const json& j) {
  std::vector<OperatorDef> out;
  if (!j.contains("operators")) return out;
  for (const auto& oj : j.at("operators")) {
    if (!oj.is_object() || !oj.contains("name") || !oj.contains("base") ||
        !oj.contains("matrix"))
      throw SchemaError("operators: expected {name, base, matrix} entries");
    out.push_back({oj.at("name").get<std::string>(), oj.at("base").get<std::string>(),
                   matrix_from_json(oj.at("matrix"), "operators.matrix")});
  }
  return out;
}

}  // namespace

SystemFile parse_system_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("kind"))
      throw SchemaError("top level: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    const SystemTolerances tol = tolerances_from_json(j);
    if (kind == "explicit") {
      return SystemFile{kind, explicit_from_json(j, tol), std::nullopt, operators_from_json(j)};
    }
    if (kind == "ofamily") {
      OFamily f = ofamily_from_json(j);
      ContractiveSystem s = build_system_from_ofamily(f);
      return SystemFile{kind, std::move(s), std::move(f), operators_from_json(j)};
    }
    if (kind == "shift-chain") {
      return SystemFile{kind,
                        gen_shift_chain(j.value("dim", Eigen::Index(1)), j.value("levels", 1)),
                        std::nullopt, operators_from_json(j)};
    }
    if (kind == "weighted-grid") {
      if (!j.contains("alphas")) throw SchemaError("weighted-grid: missing 'alphas'");
      std::vector<double> alphas;
      for (const auto& a : j.at("alphas")) alphas.push_back(a.get<double>());
      return SystemFile{kind,
                        gen_weighted_grid(j.value("xmin", -1.0), j.value("xmax", 1.0),
                                          j.value("points", 3), alphas, weight_form_from_json(j)),
                        std::nullopt, operators_from_json(j)};
    }
    if (kind == "ofamily-seed") {
      OFamily f = gen_ofamily_chain(j.value("seed", std::uint64_t(1)),
                                    j.value("dim", Eigen::Index(2)), j.value("levels", 2));
      ContractiveSystem s = build_system_from_ofamily(f);
      return SystemFile{kind, std::move(s), std::move(f), operators_from_json(j)};
    }
    if (kind == "random") {
      IndexPoset poset = poset_from_json(j.at("poset"), "poset");
      std::map<Label, Eigen::Index> dims;
      if (j.contains("dims")) {
        for (const auto& [k, v] : j.at("dims").items()) dims[k] = v.get<Eigen::Index>();
      } else if (j.contains("dim")) {
        for (const Label& l : poset.elements()) dims[l] = j.at("dim").get<Eigen::Index>();
      } else {
        throw SchemaError("random: need 'dims' (per label) or 'dim'");
      }
      return SystemFile{kind,
                        gen_random_system(j.value("seed", std::uint64_t(1)), dims, poset),
                        std::nullopt, operators_from_json(j)};
    }
    throw SchemaError("unknown system kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schema: ") + e.what());
  }
}

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_json(buf.str());
}

std::string system_to_json(const ContractiveSystem& s,
                           const std::vector<OperatorDef>& operators) {
  json j;
  j["kind"] = "explicit";
  json elements = json::array();
  for (const Label& l : s.poset().elements()) elements.push_back(l);
  json covers = json::array();
  for (const auto& [a, b] : s.poset().hasse_edges()) covers.push_back(json::array({a, b}));
  j["poset"] = {{"elements", std::move(elements)}, {"covers", std::move(covers)}};
  json spaces = json::object();
  for (const Label& l : s.poset().elements()) {
    const MetricSpace& sp = s.space(l);
    spaces[l] = {{"dim", sp.dim()}, {"gram", matrix_to_json(sp.gram())}};
  }
  j["spaces"] = std::move(spaces);
  json umaps = json::array();
  for (const auto& [a, b] : s.cover_edges())
    umaps.push_back({{"from", a}, {"to", b}, {"matrix", matrix_to_json(s.cover_umap(a, b))}});
  j["umaps"] = std::move(umaps);
  if (!operators.empty()) {
    json ops = json::array();
    for (const auto& o : operators)
      ops.push_back({{"name", o.name}, {"base", o.base}, {"matrix", matrix_to_json(o.matrix)}});
    j["operators"] = std::move(ops);
  }
  return j.dump(2);
}

std::string report_to_json(const Report& r) {
  json j;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj = {{"id", c.id},
               {"anchor", c.anchor},
               {"verdict", to_string(c.verdict)},
               {"margin", c.margin}};
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["pass"] = r.all_pass();
  return j.dump(2);
}

Report report_from_json(const std::string& text) {
  Report r;
  json j;
  try {
    j = json::parse(text);
    for (const auto& cj : j.at("checks")) {
      CheckResult c;
      c.id = cj.at("id").get<std::string>();
      c.anchor = cj.at("anchor").get<std::string>();
      c.verdict = verdict_from_string(cj.at("verdict").get<std::string>());
      c.margin = cj.at("margin").get<double>();
      c.witness = cj.value("witness", "");
      r.checks.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  return r;
}

std::string format_complex15(Complex z) {
  char re[64];
  std::snprintf(re, sizeof re, "%.15f", z.real());
  char im[64];
  if (z.imag() == 0.0) {
    std::snprintf(im, sizeof im, "+0i");
  } else {
    std::snprintf(im, sizeof im, "%+.15gi", z.imag());
  }
  return std::string(re) + im;
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw SchemaError("empty complex literal");
  // Find the sign splitting real and imaginary parts (skip leading sign and
  // exponent signs).
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if ((text[i] == '+' || text[i] == '-') &&
        (text[i - 1] != 'e' && text[i - 1] != 'E'))
      split = i;
  }
  try {
    if (text.back() == 'i' || text.back() == 'I') {
      if (split == std::string::npos)  // pure imaginary, e.g. "2i"
        return Complex(0.0, std::stod(text.substr(0, text.size() - 1)));
      const double re = std::stod(text.substr(0, split));
      std::string imag = text.substr(split, text.size() - split - 1);
      if (imag == "+" || imag == "-") imag += "1";
      return Complex(re, std::stod(imag));
    }
    return Complex(std::stod(text), 0.0);
  } catch (const std::exception&) {
    throw SchemaError("cannot parse complex literal '" + text + "'");
  }
}

Vector parse_vector(const std::string& text) {
  std::vector<Complex> entries;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) entries.push_back(parse_complex(token));
  if (entries.empty()) throw SchemaError("empty vector literal");
  Vector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

}  // namespace hscale
