// Copyright 2026 The HINT Authors.
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

#include "hint/dataset.hpp"

#include <fstream>

#include "hint/error.hpp"
#include "json_io.hpp"

namespace hint {

namespace {

using detail::Json;
using detail::OrderedJson;

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
  fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + what);
}

const Json& field(const Json& j, const char* name, std::size_t line_no) {
  auto it = j.find(name);
  if (it == j.end()) line_error(line_no, std::string("missing \"") + name + "\" field");
  return *it;
}

std::size_t as_index(const Json& v, const char* what, std::size_t line_no) {
  if (!v.is_number_unsigned()) {
    line_error(line_no, std::string(what) + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Proposal proposal_from_json(const Json& j, std::size_t line_no) {
  if (!j.is_object()) line_error(line_no, "proposal must be an object");
  const Json& box = field(j, "box", line_no);
  if (!box.is_array() || box.size() != 4) {
    line_error(line_no, "box must be [x1, y1, x2, y2]");
  }
  Proposal p;
  int c[4];
  for (int k = 0; k < 4; ++k) {
    if (!box[k].is_number_integer()) line_error(line_no, "box coordinates must be integers");
    c[k] = box[k].get<int>();
  }
  p.box = Box{c[0], c[1], c[2], c[3]};
  if (p.box.x1 < 0 || p.box.y1 < 0 || p.box.x1 >= p.box.x2 || p.box.y1 >= p.box.y2) {
    line_error(line_no, "box must satisfy 0 <= x1 < x2 and 0 <= y1 < y2");
  }
  const Json& feature = field(j, "feature", line_no);
  if (!feature.is_array() || feature.empty()) line_error(line_no, "feature must be a non-empty array");
  p.feature.reserve(feature.size());
  for (const auto& v : feature) {
    if (!v.is_number()) line_error(line_no, "feature values must be numeric");
    p.feature.push_back(v.get<double>());
  }
  return p;
}

}  // namespace

std::string example_to_json(const Example& ex) {
  OrderedJson j;
  j["id"] = ex.id;
  j["question"] = ex.question;
  j["answer"] = ex.answer;
  OrderedJson props = OrderedJson::array();
  for (const auto& p : ex.proposals) {
    OrderedJson pj;
    pj["box"] = {p.box.x1, p.box.y1, p.box.x2, p.box.y2};
    pj["feature"] = p.feature;
    props.push_back(std::move(pj));
  }
  j["proposals"] = std::move(props);
  j["attention"] = ex.attention ? detail::raster_to_json(*ex.attention) : OrderedJson();
  j["referent"] = ex.referent ? OrderedJson(*ex.referent) : OrderedJson();
  return detail::dump(j);
}

Example example_from_json(const std::string& line, std::size_t line_no) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    line_error(line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) line_error(line_no, "expected a JSON object");

  Example ex;
  const Json& id = field(j, "id", line_no);
  if (!id.is_string()) line_error(line_no, "id must be a string");
  ex.id = id.get<std::string>();

  const Json& question = field(j, "question", line_no);
  if (!question.is_array() || question.empty()) {
    line_error(line_no, "question must be a non-empty array of token ids");
  }
  for (const auto& t : question) ex.question.push_back(as_index(t, "question token", line_no));

  ex.answer = as_index(field(j, "answer", line_no), "answer", line_no);

  const Json& proposals = field(j, "proposals", line_no);
  if (!proposals.is_array() || proposals.empty()) {
    line_error(line_no, "proposals must be a non-empty array");
  }
  for (const auto& p : proposals) ex.proposals.push_back(proposal_from_json(p, line_no));

  auto att = j.find("attention");
  if (att != j.end() && !att->is_null()) {
    try {
      if (att->is_array()) {
        std::vector<AttentionRaster> maps;
        for (const auto& r : *att) maps.push_back(detail::raster_from_json(r));
        if (!maps.empty()) ex.attention = average_rasters(maps);
      } else {
        ex.attention = detail::raster_from_json(*att);
      }
    } catch (const Error& e) {
      line_error(line_no, std::string("attention: ") + e.what());
    }
  }

  auto ref = j.find("referent");
  if (ref != j.end() && !ref->is_null()) ex.referent = as_index(*ref, "referent", line_no);
  return ex;
}

void write_jsonl(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  for (const auto& ex : data) out << example_to_json(ex) << '\n';
  out.flush();
  if (!out) fail(ErrorCode::kIo, "failed writing " + path.string());
}

Dataset read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    data.push_back(example_from_json(line, line_no));
  }
  return data;
}

}  // namespace hint
