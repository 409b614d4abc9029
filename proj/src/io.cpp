#include "mldcone/io.hpp"

#include "mldcone/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mldcone {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end())
      throw ParseError(where + ": unknown field '" + item.key() + "'");
  }
}

const json& get_field(const json& obj, const char* key,
                      const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::int64_t get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t parse_i64(std::string_view text, const std::string& where) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(where + ": bad integer '" + std::string(text) + "'");
  return value;
}

}  // namespace

FanoConeData cone_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("cone input: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("cone input: expected an object");
  check_keys(root, {"name", "r", "dim", "charts"}, "cone input");

  FanoConeData data;
  data.name = get_string(get_field(root, "name", "cone input"), "field 'name'");
  const json& rj = get_field(root, "r", "cone input");
  try {
    data.r = Rat::parse(get_string(rj, "field 'r'"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'r': ") + e.what());
  }
  data.dim =
      static_cast<int>(get_int(get_field(root, "dim", "cone input"), "field 'dim'"));

  const json& charts = get_field(root, "charts", "cone input");
  if (!charts.is_array()) throw ParseError("field 'charts': expected a list");
  for (std::size_t i = 0; i < charts.size(); ++i) {
    std::string where = "charts[" + std::to_string(i) + "]";
    const json& cj = charts[i];
    if (!cj.is_object()) throw ParseError(where + ": expected an object");
    check_keys(cj, {"label", "factors"}, where);
    std::string label =
        get_string(get_field(cj, "label", where), where + ".label");
    const json& fj = get_field(cj, "factors", where);
    if (!fj.is_array()) throw ParseError(where + ".factors: expected a list");
    std::vector<CyclicFactor> factors;
    for (std::size_t j = 0; j < fj.size(); ++j) {
      std::string fwhere = where + ".factors[" + std::to_string(j) + "]";
      const json& f = fj[j];
      if (!f.is_object()) throw ParseError(fwhere + ": expected an object");
      check_keys(f, {"order", "weights"}, fwhere);
      CyclicFactor factor;
      factor.order = get_int(get_field(f, "order", fwhere), fwhere + ".order");
      const json& wj = get_field(f, "weights", fwhere);
      if (!wj.is_array())
        throw ParseError(fwhere + ".weights: expected a list");
      for (std::size_t w = 0; w < wj.size(); ++w)
        factor.weights.push_back(
            get_int(wj[w], fwhere + ".weights[" + std::to_string(w) + "]"));
      factors.push_back(std::move(factor));
    }
    try {
      data.charts.push_back(QuotientChart(label, data.dim, std::move(factors)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return data;
}

std::string cone_to_json(const FanoConeData& data) {
  ordered_json root;
  root["name"] = data.name;
  root["r"] = data.r.str();
  root["dim"] = data.dim;
  root["charts"] = ordered_json::array();
  for (const auto& chart : data.charts) {
    ordered_json cj;
    cj["label"] = chart.label();
    cj["factors"] = ordered_json::array();
    for (const auto& f : chart.factors()) {
      ordered_json fj;
      fj["order"] = f.order;
      fj["weights"] = f.weights;
      cj["factors"].push_back(std::move(fj));
    }
    root["charts"].push_back(std::move(cj));
  }
  return root.dump(2) + "\n";
}

FanoConeData load_cone_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return cone_from_json(buf.str());
}

FanoConeData parse_quotient_shorthand(const std::string& text,
                                      std::int64_t max_order) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("quotient shorthand: expected 'm:a1,a2,...', got '" +
                     text + "'");
  std::int64_t m =
      parse_i64(std::string_view(text).substr(0, colon), "quotient shorthand");
  if (m < 1) throw ParseError("quotient shorthand: order must be >= 1");

  std::vector<std::int64_t> a;
  std::string_view rest = std::string_view(text).substr(colon + 1);
  while (true) {
    auto comma = rest.find(',');
    std::string_view piece =
        comma == std::string_view::npos ? rest : rest.substr(0, comma);
    std::int64_t v = parse_i64(piece, "quotient shorthand");
    a.push_back(((v % m) + m) % m);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (a.size() < 2)
    throw ParseError("quotient shorthand: need at least two weights");
  return cone_from_cyclic_quotient(m, a, {}, max_order);
}

std::string exponents_str(const std::vector<std::int64_t>& exponents) {
  bool identity = std::all_of(exponents.begin(), exponents.end(),
                              [](std::int64_t k) { return k == 0; });
  if (identity) return "e";
  std::ostringstream os;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (j) os << ';';
    os << exponents[j];
  }
  return os.str();
}

std::string mld_result_to_json(const FanoConeData& data,
                               const MldResult& result) {
  ordered_json root;
  root["name"] = data.name;
  root["r"] = data.r.str();
  root["mld"] = result.value.str();
  ordered_json witness;
  witness["chart"] = result.witness.r_term ? "" : result.witness.chart;
  witness["element"] = result.witness.r_term
                           ? "r-term"
                           : exponents_str(result.witness.exponents);
  root["witness"] = std::move(witness);
  root["terms"] = ordered_json::array();
  for (const auto& term : result.terms) {
    ordered_json tj;
    tj["chart"] = term.chart;
    tj["element"] = exponents_str(term.exponents);
    tj["value"] = term.value.str();
    root["terms"].push_back(std::move(tj));
  }
  return root.dump(2) + "\n";
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string mld_result_to_csv(const FanoConeData& data,
                              const MldResult& result) {
  std::ostringstream os;
  os << "name,mld,witness_chart,witness_element,bound,ok\n";
  bool ok = !(result.value > Rat(data.dim));
  os << csv_quote(data.name) << ',' << result.value.str() << ','
     << csv_quote(result.witness.r_term ? "" : result.witness.chart) << ','
     << csv_quote(result.witness.r_term
                      ? "r-term"
                      : exponents_str(result.witness.exponents))
     << ',' << data.dim << ',' << (ok ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace mldcone
