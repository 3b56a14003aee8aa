// Copyright 2026 The flatchain Authors
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

#include "flatchain/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flatchain {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

GroupValue coef_from_json(const json& j, const Group& group, const std::string& where) {
  switch (group.kind) {
    case GroupKind::real:
      if (!j.is_number()) fail(where + ": real coefficient must be a number");
      return GroupValue::real(j.get<double>());
    case GroupKind::integer:
      if (!j.is_number_integer()) fail(where + ": integer coefficient must be an integer");
      return GroupValue::integer(j.get<std::int64_t>());
    case GroupKind::integer_mod:
      if (!j.is_number_integer()) fail(where + ": Z/m coefficient must be an integer");
      return GroupValue::integer_mod(j.get<std::int64_t>(), group.modulus);
    case GroupKind::real_vector: {
      if (!j.is_array() || static_cast<int>(j.size()) != group.dim)
        fail(where + ": vector coefficient must be an array of length " + std::to_string(group.dim));
      std::vector<double> v;
      v.reserve(j.size());
      for (const auto& x : j) {
        if (!x.is_number()) fail(where + ": vector coefficient entries must be numbers");
        v.push_back(x.get<double>());
      }
      return GroupValue::real_vector(std::move(v));
    }
  }
  fail(where + ": unknown group");
}

json coef_to_json(const GroupValue& g) {
  switch (g.group().kind) {
    case GroupKind::real:
      return g.real_value();
    case GroupKind::integer:
    case GroupKind::integer_mod:
      return g.int_value();
    case GroupKind::real_vector:
      return g.vector_value();
  }
  return nullptr;
}

std::vector<int> int_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(where + " entries must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  out << content;
}

Chain parse_chain_text(const std::string& text, std::vector<std::string>* warnings) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  Chain chain;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail("line " + std::to_string(line_no) + ": malformed JSON (" + e.what() + ")");
    }
    if (!have_header) {
      if (!j.contains("n") || !j.contains("k") || !j.contains("spacing") || !j.contains("group"))
        fail("line " + std::to_string(line_no) + ": header must carry n, k, spacing, group");
      const auto group = Group::parse(j["group"].get<std::string>());
      if (!group) fail("line " + std::to_string(line_no) + ": unknown group " + j["group"].dump());
      chain = Chain(j["n"].get<int>(), j["k"].get<int>(), j["spacing"].get<double>(), *group);
      have_header = true;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (!j.contains("anchor") || !j.contains("axes") || !j.contains("coef"))
      fail(where + ": cell record must carry anchor, axes, coef");
    Cell cell{int_array(j["anchor"], where + ": anchor"), int_array(j["axes"], where + ": axes")};
    if (!cell_valid(cell, chain.ambient_dim(), chain.degree()))
      fail(where + ": cell " + format_cell(cell) + " does not match the header");
    const GroupValue coef = coef_from_json(j["coef"], chain.group(), where);
    if (coef.is_zero()) {
      if (warnings)
        warnings->push_back(where + ": zero coefficient on " + format_cell(cell) + " dropped");
      continue;
    }
    if (!chain.coefficient(cell).is_zero())
      fail(where + ": duplicate cell " + format_cell(cell));
    chain.set_coefficient(cell, coef);
  }
  if (!have_header) fail("chain file has no header record");
  return chain;
}

Chain parse_chain_file(const std::string& path, std::vector<std::string>* warnings) {
  try {
    return parse_chain_text(read_file(path), warnings);
  } catch (const std::invalid_argument& e) {
    fail(path + ": " + e.what());
  }
}

std::string chain_to_text(const Chain& a) {
  std::ostringstream out;
  json header;
  header["n"] = a.ambient_dim();
  header["k"] = a.degree();
  header["spacing"] = a.spacing();
  header["group"] = a.group().name();
  out << header.dump() << "\n";
  for (const auto& [cell, g] : a.coefficients()) {
    json rec;
    rec["anchor"] = cell.anchor;
    rec["axes"] = cell.axes;
    rec["coef"] = coef_to_json(g);
    out << rec.dump() << "\n";
  }
  return out.str();
}

void write_chain_file(const Chain& a, const std::string& path) {
  write_file(path, chain_to_text(a));
}

Raster parse_raster_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string fieldstr;
    while (std::getline(ls, fieldstr, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(fieldstr, &pos));
        while (pos < fieldstr.size() &&
               (fieldstr[pos] == ' ' || fieldstr[pos] == '\t' || fieldstr[pos] == '\r'))
          ++pos;
        if (pos != fieldstr.size()) throw std::invalid_argument("trailing garbage");
      } catch (const std::exception&) {
        fail("line " + std::to_string(line_no) + ": bad numeric field '" + fieldstr + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail("line " + std::to_string(line_no) + ": ragged CSV row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("raster CSV is empty");
  return Raster::from_rows(rows);
}

Raster parse_raster_csv(const std::string& path) {
  try {
    return parse_raster_text(read_file(path));
  } catch (const std::invalid_argument& e) {
    fail(path + ": " + e.what());
  }
}

std::string raster_to_text(const Raster& f) {
  if (f.dim() != 2) fail("raster CSV writing supports 2-d rasters");
  std::ostringstream out;
  const int rows = f.shape()[0], cols = f.shape()[1];
  char buf[40];
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", f[static_cast<std::int64_t>(i) * cols + j]);
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
  return out.str();
}

void write_raster_csv(const Raster& f, const std::string& path) {
  write_file(path, raster_to_text(f));
}

nlohmann::json cost_function_to_json(const CostFunction& h) {
  json j;
  if (h.kind() == CostFunction::Kind::power) {
    j["type"] = "power";
    j["alpha"] = h.alpha();
    return j;
  }
  j["type"] = "dyadic";
  json bp = json::array();
  for (int i = 0; i < static_cast<int>(h.breakpoint_values().size()); ++i) {
    bp.push_back({std::exp2(-static_cast<double>(i)), h.breakpoint_values()[static_cast<std::size_t>(i)]});
  }
  j["breakpoints"] = std::move(bp);
  j["slopes"] = h.slopes();
  j["tail_index"] = h.tail_index();
  j["tail_coefficient"] = h.tail_coefficient();
  return j;
}

CostFunction cost_function_from_json(const nlohmann::json& j) {
  const std::string type = j.value("type", "dyadic");
  if (type == "power") return CostFunction::power_shape(j.at("alpha").get<double>());
  if (type != "dyadic") fail("unknown cost function type " + type);
  if (j.contains("slopes")) return CostFunction::from_slopes(j.at("slopes").get<std::vector<double>>());
  // Reconstruct slopes from consecutive breakpoints.
  const auto& bp = j.at("breakpoints");
  if (!bp.is_array() || bp.size() < 2) fail("cost function needs at least two breakpoints");
  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double h_hi = bp[i][1].get<double>();
    const double h_lo = bp[i + 1][1].get<double>();
    slopes.push_back((h_hi - h_lo) * std::exp2(static_cast<double>(i) + 1.0));
  }
  const double tail = j.at("tail_coefficient").get<double>();
  slopes.push_back(tail);
  if (std::abs(slopes.front() - 1.0) < 1e-6) slopes.front() = 1.0;
  for (std::size_t i = 1; i < slopes.size(); ++i)
    slopes[i] = std::max(slopes[i], slopes[i - 1]);
  return CostFunction::from_slopes(std::move(slopes));
}

CostFunction parse_cost_function_json(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(path + ": malformed JSON (" + std::string(e.what()) + ")");
  }
  try {
    return cost_function_from_json(j);
  } catch (const std::exception& e) {
    fail(path + ": " + e.what());
  }
}

void write_cost_function_json(const CostFunction& h, const std::string& path) {
  write_file(path, cost_function_to_json(h).dump(2) + "\n");
}

nlohmann::json cell_to_json(const Cell& c) {
  json j;
  j["anchor"] = c.anchor;
  j["axes"] = c.axes;
  return j;
}

nlohmann::json partition_to_json(const CellPartition& partition) {
  json blocks = json::array();
  for (const CellSet& block : partition) {
    json cells = json::array();
    for (const Cell& cell : block) cells.push_back(cell_to_json(cell));
    blocks.push_back(std::move(cells));
  }
  return blocks;
}

}  // namespace flatchain
