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

#ifndef COMPLEXITY_LAB_IO_HPP_
#define COMPLEXITY_LAB_IO_HPP_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/learners.hpp"
#include "complexity_lab/measures.hpp"
#include "complexity_lab/spectral.hpp"

namespace clab {

using Json = nlohmann::ordered_json;

// Reads and parses a JSON file. Parse failures become ConfigError messages
// naming the file, line and column.
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& origin);
void write_text_file(const std::string& path, const std::string& text);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& field);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& field);

Json to_json(const FiniteHypothesisClass& h);
FiniteHypothesisClass class_from_json(const Json& j);

Json to_json(const DistributionOverX& d);
// Accepts an object with "probabilities" or the string "uniform".
DistributionOverX distribution_from_json(const Json& j, int num_points);

Json to_json(const EmbeddingWeightPair& pair);
EmbeddingWeightPair pair_from_json(const Json& j);

Json to_json(const FunctionalClass& f);
FunctionalClass functional_from_json(const Json& j);

Json to_json(const CriterionReport& r);
Json to_json(const PointwiseReport& r);
Json to_json(const MinDimResult& r);
Json to_json(const BoundReport& r);
Json to_json(const DimResult& r);
Json to_json(const McResult& r);
Json to_json(const VcResult& r);
Json to_json(const CoverResult& r);
Json to_json(const SimulationResult& r);

// %.17g, which round-trips every finite double.
std::string format_double(double v);

// RFC 4180 quoting with "\n" line ends. Fields are
// quoted only when they hold a comma, quote or line break.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;

  static std::string quote(const std::string& field);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string simulation_csv(const SimulationResult& r);
std::string criterion_csv(const CriterionReport& r);
std::string min_dim_csv(const MinDimResult& r);
std::string bound_csv(const std::vector<BoundReport>& reports);

}  // namespace clab

#endif  // COMPLEXITY_LAB_IO_HPP_
