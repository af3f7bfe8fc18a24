#include "posso/report.hpp"

namespace posso {

StatsRecord stats_record(const SolveReport& report) {
  const SolveStats& s = report.stats;
  return StatsRecord{s.n,       s.degree,         to_string(report.pipeline), s.times.gb, s.times.matrix,
                     s.times.chord, s.nf_count, s.density,                  s.times.total};
}

nlohmann::json to_json(const StatsRecord& r) {
  return nlohmann::json{{"n", r.n},
                        {"D", r.D},
                        {"pipeline", r.pipeline},
                        {"gb_time", r.gb_time},
                        {"matrix_time", r.matrix_time},
                        {"chord_time", r.chord_time},
                        {"nf_count", r.nf_count},
                        {"density", r.density},
                        {"total_time", r.total_time}};
}

nlohmann::json to_json(const SolveReport& report) {
  nlohmann::json rep = nlohmann::json::array();
  for (const auto& h : report.rep.h) rep.push_back(h.c);
  nlohmann::json g = nullptr;
  if (report.g) {
    g = nlohmann::json::array();
    for (std::size_t i = 0; i < report.g->rows(); ++i) {
      const auto row = report.g->row(i);
      g.push_back(std::vector<Elem>(row.begin(), row.end()));
    }
  }
  return nlohmann::json{{"stats", to_json(stats_record(report))}, {"rep", rep}, {"g", g}};
}

}  // namespace posso
