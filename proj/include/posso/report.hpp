#pragma once

#include <string>

#include <json.hpp>

#include "posso/poly.hpp"
#include "posso/solver.hpp"

namespace posso {

/// One row of the benchmark table.
struct StatsRecord {
  std::size_t n = 0;
  std::size_t D = 0;
  std::string pipeline;
  double gb_time = 0;
  double matrix_time = 0;
  double chord_time = 0;
  std::uint64_t nf_count = 0;
  double density = 0;
  double total_time = 0;
};

StatsRecord stats_record(const SolveReport& report);

/// Exactly the StatsRecord field names as keys.
nlohmann::json to_json(const StatsRecord& record);

/// {"stats": ..., "rep": [[coefficients of h_1, low to high], ...], "g": rows or null}.
nlohmann::json to_json(const SolveReport& report);

}  // namespace posso
