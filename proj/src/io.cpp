// Copyright 2026 The complexity-lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "complexity_lab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace clab {
namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) {
    throw ConfigError(where + ": missing field '" + name + "'");
  }
  return *it;
}

IdList ids_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of strings");
  IdList ids;
  for (const Json& e : j) {
    if (!e.is_string()) throw ConfigError(where + ": expected string ids");
    ids.push_back(e.get<std::string>());
  }
  return ids;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

Json ids_to_json(const IdList& ids) {
  Json out = Json::array();
  for (const auto& s : ids) out.push_back(s);
  return out;
}

// NaN and infinities have no JSON spelling; they become null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ":" +
                      std::to_string(col) + ": invalid JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed while writing '" + path + "'");
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(where + ": expected a nonempty array of rows");
  }
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ConfigError(at + ": rows must be arrays of equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          number(j[r][c], at + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v[i]));
  return out;
}

Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] =
        number(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json to_json(const FiniteHypothesisClass& h) {
  Json j;
  j["type"] = "finite_class";
  j["label_kind"] = std::string(to_string(h.label_kind()));
  j["domain"] = ids_to_json(h.domain());
  j["hypotheses"] = ids_to_json(h.hypotheses());
  j["values"] = matrix_to_json(h.values());
  return j;
}

FiniteHypothesisClass class_from_json(const Json& j) {
  const std::string where = "class";
  LabelKind kind = LabelKind::kReal;
  if (j.contains("label_kind")) {
    kind = parse_label_kind(field(j, "label_kind", where).get<std::string>());
  }
  return FiniteHypothesisClass(
      ids_from_json(field(j, "domain", where), where + ".domain"),
      ids_from_json(field(j, "hypotheses", where), where + ".hypotheses"),
      matrix_from_json(field(j, "values", where), where + ".values"), kind);
}

Json to_json(const DistributionOverX& d) {
  Json j;
  j["type"] = "distribution";
  if (!d.domain().empty()) j["domain"] = ids_to_json(d.domain());
  j["probabilities"] = vector_to_json(d.probabilities());
  return j;
}

DistributionOverX distribution_from_json(const Json& j, int num_points) {
  if (j.is_string()) {
    if (j.get<std::string>() == "uniform") {
      return DistributionOverX::uniform(num_points);
    }
    throw ConfigError("distribution: expected \"uniform\" or an object");
  }
  IdList domain;
  if (j.is_object() && j.contains("domain")) {
    domain = ids_from_json(j["domain"], "distribution.domain");
  }
  return DistributionOverX(
      vector_from_json(field(j, "probabilities", "distribution"),
                       "distribution.probabilities"),
      std::move(domain));
}

Json to_json(const EmbeddingWeightPair& pair) {
  Json j;
  j["type"] = "embedding_pair";
  j["features"] = matrix_to_json(pair.embedding().features());
  j["hypotheses"] = ids_to_json(pair.hypotheses());
  j["weights"] = matrix_to_json(pair.weights());
  return j;
}

EmbeddingWeightPair pair_from_json(const Json& j) {
  const std::string where = "pair";
  return EmbeddingWeightPair(
      Embedding::tabular(matrix_from_json(field(j, "features", where),
                                          where + ".features")),
      ids_from_json(field(j, "hypotheses", where), where + ".hypotheses"),
      matrix_from_json(field(j, "weights", where), where + ".weights"));
}

Json to_json(const FunctionalClass& f) {
  Json j;
  j["type"] = "functional_class";
  j["input_dim"] = f.input_dim();
  j["ids"] = ids_to_json(f.ids());
  switch (f.kind()) {
    case FunctionalClass::Kind::kRelu: {
      j["kind"] = "relu";
      j["w_bound"] = f.w_bound();
      j["b_bound"] = f.b_bound();
      Json neurons = Json::array();
      for (const ReluNeuron& r : f.neurons()) {
        neurons.push_back({{"w", vector_to_json(r.w)}, {"b", r.b}});
      }
      j["neurons"] = std::move(neurons);
      break;
    }
    case FunctionalClass::Kind::kZigzag: {
      j["kind"] = "zigzag";
      j["a"] = f.a();
      Json dirs = Json::array();
      for (const Vector& u : f.directions()) dirs.push_back(vector_to_json(u));
      j["directions"] = std::move(dirs);
      break;
    }
    case FunctionalClass::Kind::kCombination: {
      j["kind"] = "combination";
      j["kappa"] = f.kappa();
      j["base"] = to_json(*f.base());
      Json terms = Json::array();
      for (const auto& combo : f.terms()) {
        Json t = Json::array();
        for (const auto& [index, coef] : combo) {
          t.push_back({{"index", index}, {"coefficient", coef}});
        }
        terms.push_back(std::move(t));
      }
      j["terms"] = std::move(terms);
      break;
    }
  }
  return j;
}

FunctionalClass functional_from_json(const Json& j) {
  const std::string where = "functional_class";
  const std::string kind = field(j, "kind", where).get<std::string>();
  const int n = static_cast<int>(number(field(j, "input_dim", where), where + ".input_dim"));
  IdList ids;
  if (j.contains("ids")) ids = ids_from_json(j["ids"], where + ".ids");
  if (kind == "relu") {
    std::vector<ReluNeuron> neurons;
    for (const Json& r : field(j, "neurons", where)) {
      neurons.push_back({vector_from_json(field(r, "w", where + ".neurons"), where + ".neurons.w"),
                         number(field(r, "b", where + ".neurons"), where + ".neurons.b")});
    }
    return FunctionalClass::relu(n, std::move(neurons),
                                 number(field(j, "w_bound", where), where + ".w_bound"),
                                 number(field(j, "b_bound", where), where + ".b_bound"),
                                 std::move(ids));
  }
  if (kind == "zigzag") {
    std::vector<Vector> dirs;
    for (const Json& u : field(j, "directions", where)) {
      dirs.push_back(vector_from_json(u, where + ".directions"));
    }
    return FunctionalClass::zigzag(n, std::move(dirs), std::move(ids));
  }
  if (kind == "combination") {
    auto base = std::make_shared<const FunctionalClass>(
        functional_from_json(field(j, "base", where)));
    std::vector<std::vector<std::pair<int, double>>> terms;
    for (const Json& combo : field(j, "terms", where)) {
      std::vector<std::pair<int, double>> t;
      for (const Json& e : combo) {
        t.emplace_back(static_cast<int>(number(field(e, "index", where), where)),
                       number(field(e, "coefficient", where), where));
      }
      terms.push_back(std::move(t));
    }
    return FunctionalClass::combination(
        std::move(base), std::move(terms),
        number(field(j, "kappa", where), where + ".kappa"), std::move(ids));
  }
  throw ConfigError(where + ".kind: unknown kind '" + kind + "'");
}

Json to_json(const CriterionReport& r) {
  Json j;
  j["type"] = "criterion";
  j["loss"] = r.loss;
  j["eps"] = num(r.eps);
  j["draws"] = r.draws;
  j["exact_enumeration"] = r.exact_enumeration;
  j["max"] = num(r.max);
  j["mean"] = num(r.mean);
  j["hypotheses"] = ids_to_json(r.hypotheses);
  j["values"] = vector_to_json(r.values);
  j["standard_errors"] = vector_to_json(r.standard_errors);
  return j;
}

Json to_json(const PointwiseReport& r) {
  return {{"type", "pointwise"},
          {"value", num(r.value)},
          {"hypothesis", r.hypothesis_id},
          {"point", r.point_id}};
}

Json to_json(const MinDimResult& r) {
  Json j;
  j["type"] = "min_dim";
  j["found"] = r.found;
  j["dimension"] = r.found ? Json(r.dimension) : Json(nullptr);
  j["best_dimension"] = r.best_dimension;
  j["best_max"] = num(r.best_max);
  Json trace = Json::array();
  for (const auto& [d, v] : r.trace) trace.push_back({{"d", d}, {"max", num(v)}});
  j["trace"] = std::move(trace);
  j["report"] = to_json(r.report);
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["type"] = "bound";
  j["name"] = r.name;
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = num(v);
  j["inputs"] = std::move(inputs);
  j["value"] = num(r.value);
  j["vacuous"] = r.vacuous;
  j["asymptotic"] = r.asymptotic;
  j["witness_lambda"] = r.witness_lambda ? num(*r.witness_lambda) : Json(nullptr);
  j["witness"] = ids_to_json(r.witness_ids);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const DimResult& r) {
  return {{"value", r.value}, {"exact", r.exact}, {"witness", ids_to_json(r.witness_ids)}};
}

Json to_json(const McResult& r) {
  Json j;
  j["type"] = "mc_upper";
  j["radius"] = num(r.radius);
  j["min_margin"] = num(r.min_margin);
  j["verified"] = r.verified;
  j["trivial"] = r.trivial;
  j["features"] = matrix_to_json(r.features);
  j["weights"] = matrix_to_json(r.weights);
  return j;
}

Json to_json(const VcResult& r) {
  return {{"type", "vc"},
          {"value", r.value},
          {"exceeds_cap", r.exceeds_cap},
          {"witness", ids_to_json(r.witness)}};
}

Json to_json(const CoverResult& r) {
  Json j;
  j["type"] = "cover";
  j["size"] = r.cover.size();
  j["cover"] = ids_to_json(r.cover_ids);
  Json assign = Json::array();
  for (int a : r.assignment) assign.push_back(r.cover_ids[a]);
  j["assignment"] = std::move(assign);
  j["distances"] = vector_to_json(r.distances);
  j["pair"] = to_json(r.pair);
  return j;
}

Json to_json(const SimulationResult& r) {
  Json rows = Json::array();
  for (const SimulationRow& row : r.rows) {
    rows.push_back({{"mode", std::string(to_string(row.mode))},
                    {"m", row.m},
                    {"trial", row.trial},
                    {"hypothesis", row.hypothesis_id},
                    {"empirical_loss", num(row.empirical_loss)},
                    {"criterion", num(row.population_criterion)},
                    {"bound_term", num(row.bound_term)},
                    {"population_error", num(row.population_error)},
                    {"sup_probe", num(row.sup_probe)},
                    {"seed", row.seed}});
  }
  Json j;
  j["type"] = "simulation";
  j["summary"] = {{"hypotheses", ids_to_json(r.summary.hypotheses)},
                  {"mean", vector_to_json(r.summary.mean)},
                  {"standard_error", vector_to_json(r.summary.standard_error)},
                  {"max", num(r.summary.max)},
                  {"sup_approximation", r.summary.sup_approximation}};
  j["rows"] = std::move(rows);
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw InputError("CSV row has " + std::to_string(cells.size()) +
                     " cells but the header has " + std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvWriter::quote(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CsvWriter::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += quote(row[i]);
    }
    out.push_back('\n');
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

std::string simulation_csv(const SimulationResult& r) {
  CsvWriter w({"mode", "m", "trial", "hypothesis", "empirical_loss",
               "criterion", "bound_term", "population_error", "sup_probe", "seed"});
  for (const SimulationRow& row : r.rows) {
    w.add_row({std::string(to_string(row.mode)), std::to_string(row.m),
               std::to_string(row.trial), row.hypothesis_id,
               format_double(row.empirical_loss),
               format_double(row.population_criterion),
               format_double(row.bound_term), format_double(row.population_error),
               format_double(row.sup_probe), std::to_string(row.seed)});
  }
  return w.str();
}

std::string criterion_csv(const CriterionReport& r) {
  CsvWriter w({"hypothesis", "value", "standard_error", "loss", "draws", "eps"});
  for (std::size_t i = 0; i < r.hypotheses.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    w.add_row({r.hypotheses[i], format_double(r.values[k]),
               format_double(r.standard_errors[k]), r.loss,
               std::to_string(r.draws), format_double(r.eps)});
  }
  return w.str();
}

std::string min_dim_csv(const MinDimResult& r) {
  CsvWriter w({"d", "max_criterion", "qualifies"});
  for (const auto& [d, v] : r.trace) {
    const bool ok = r.found && d == r.dimension;
    w.add_row({std::to_string(d), format_double(v), ok ? "true" : "false"});
  }
  return w.str();
}

std::string bound_csv(const std::vector<BoundReport>& reports) {
  CsvWriter w({"bound", "param", "value", "witness"});
  for (const BoundReport& r : reports) {
    std::string param, witness;
    for (const auto& [k, v] : r.inputs) {
      if (!param.empty()) param += ';';
      param += k + "=" + format_double(v);
    }
    if (r.witness_lambda) {
      if (!param.empty()) param += ';';
      param += "lambda=" + format_double(*r.witness_lambda);
    }
    for (const auto& id : r.witness_ids) {
      if (!witness.empty()) witness += ';';
      witness += id;
    }
    w.add_row({r.name, param, format_double(r.value), witness});
  }
  return w.str();
}

}  // namespace clab
