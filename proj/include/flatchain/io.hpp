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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatchain/chain.hpp"
#include "flatchain/cost_function.hpp"
#include "flatchain/raster.hpp"

namespace flatchain {

// Chain files are line-delimited JSON: a header record
//   {"group":"Z","k":1,"n":2,"spacing":1.0}
// followed by one record per cell:
//   {"anchor":[0,0],"axes":[0],"coef":2}
// Zero coefficients are dropped with a warning; duplicate cells are errors.
Chain parse_chain_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
Chain parse_chain_text(const std::string& text, std::vector<std::string>* warnings = nullptr);
void write_chain_file(const Chain& a, const std::string& path);
std::string chain_to_text(const Chain& a);

// Rasters are plain-text CSV of reals, row-major, rectangular (2-d).
Raster parse_raster_csv(const std::string& path);
Raster parse_raster_text(const std::string& text);
void write_raster_csv(const Raster& f, const std::string& path);
std::string raster_to_text(const Raster& f);

CostFunction parse_cost_function_json(const std::string& path);
void write_cost_function_json(const CostFunction& h, const std::string& path);
nlohmann::json cost_function_to_json(const CostFunction& h);
CostFunction cost_function_from_json(const nlohmann::json& j);

nlohmann::json cell_to_json(const Cell& c);
nlohmann::json partition_to_json(const CellPartition& partition);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace flatchain
