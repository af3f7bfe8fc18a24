#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "posso/bench.hpp"
#include "posso/error.hpp"
#include "posso/gb.hpp"
#include "posso/io.hpp"
#include "posso/quotient.hpp"
#include "posso/report.hpp"
#include "posso/solver.hpp"

namespace {

using namespace posso;

constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitRestarts = 3;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_matrix(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
}

std::string format_stats_row(const StatsRecord& r) {
  std::ostringstream os;
  os << std::left << std::setw(4) << r.n << std::setw(7) << r.D << std::setw(15) << r.pipeline << std::right
     << std::fixed << std::setprecision(3) << std::setw(10) << r.gb_time << std::setw(10) << r.matrix_time
     << std::setw(9) << r.nf_count << std::setw(9) << std::setprecision(2) << 100 * r.density << "%"
     << std::setprecision(3) << std::setw(10) << r.chord_time << std::setw(10) << r.total_time;
  return os.str();
}

const char* kStatsHeader = "n   D      pipeline           gb(s)    Tn(s)      #NF  density  chord(s)  total(s)";

int run_gb(const std::string& file, const std::string& order) {
  SystemFile sys = parse_system(read_input(file));
  const PolyRing ring = sys.ring.with_order(order == "lex" ? TermOrder::Kind::LEX : TermOrder::Kind::DRL);
  std::vector<Polynomial> input;
  for (const auto& p : sys.polys) input.push_back(ring.reorder(p));
  const GroebnerBasis g = groebner(ring, input);
  for (const auto& p : g.polys) std::cout << ring.format(p) << '\n';
  return 0;
}

int run_solve(const std::string& file, bool lv, std::uint64_t seed, bool json, const SolveOptions& options) {
  SystemFile sys = parse_system(read_input(file));
  Rng rng(seed);
  const SolveReport report =
      lv ? solve_lasvegas(sys.ring, sys.polys, rng, options) : solve_deterministic(sys.ring, sys.polys, rng, options);
  if (json) {
    std::cout << to_json(report).dump(2) << '\n';
    return 0;
  }
  std::cout << format(sys.ring, report.rep) << '\n';
  if (report.g) {
    std::cout << "change of variables g (solutions of the input are g * v):\n";
    print_matrix(std::cout, *report.g);
  }
  std::cout << kStatsHeader << '\n' << format_stats_row(stats_record(report)) << '\n';
  return 0;
}

int run_matrices(const std::string& file, const std::string& method, bool summary, const MulOptions& mul) {
  SystemFile sys = parse_system(read_input(file));
  const PolyRing& ring = sys.ring;
  const GroebnerBasis g = groebner(ring, sys.polys);
  if (!is_zero_dimensional(g)) throw Error(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  const QuotientStructure q = compute_basis(g);
  std::vector<std::pair<std::size_t, Matrix>> out;
  BuildStats stats;
  if (method == "free") {
    ReadResult r = try_read_Tn(q, g);
    if (!r.readable()) {
      throw Error(ErrorCode::NotShapePosition,
                  "T_n cannot be read off the basis: " + ring.format(*r.offending) + " is neither standard nor a leading monomial");
    }
    out.emplace_back(ring.nvars() - 1, std::move(*r.tn));
  } else {
    auto all = method == "fglm" ? build_matrices_fglm(q, g, &stats) : build_matrices_echelon(q, g, mul, &stats);
    for (std::size_t i = 0; i < all.size(); ++i) out.emplace_back(i, std::move(all[i]));
  }
  std::cout << "D = " << q.size() << ", type-II normal forms = " << stats.type_two
            << ", field ops = " << stats.field_ops << '\n';
  for (const auto& [var, m] : out) {
    std::cout << "T_" << ring.names()[var] << ": density " << std::fixed << std::setprecision(4) << m.density()
              << '\n';
    std::cout.unsetf(std::ios::floatfield);
    if (!summary) print_matrix(std::cout, m);
  }
  return 0;
}

int run_bench(std::size_t n, std::uint64_t seed, bool json, const SolveOptions& options) {
  const PolyRing ring = appendix_ring(n);
  const auto f = appendix_family(ring, seed);
  Rng rng(seed);
  const SolveReport usual = solve_deterministic(ring, f, rng, options);
  const SolveReport lv = solve_lasvegas(ring, f, rng, options);
  if (json) {
    std::cout << nlohmann::json::array({to_json(stats_record(usual)), to_json(stats_record(lv))}).dump(2) << '\n';
    return 0;
  }
  std::cout << kStatsHeader << '\n'
            << format_stats_row(stats_record(usual)) << '\n'
            << format_stats_row(stats_record(lv)) << '\n';
  return 0;
}

int run_probbound(std::size_t n, std::uint64_t q, const std::vector<std::uint64_t>& degrees) {
  const ProbabilityBound b = probability_bound(n, q, degrees);
  std::cout << "bound = " << b.bound << " ~ " << std::setprecision(6) << b.value() << '\n';
  std::cout << "D = " << b.degree << (b.vacuous ? " (vacuous: clamped to 0)" : "") << '\n';
  std::cout << "q > sum(d_i - 1) + 1: " << (b.characteristic_ok ? "yes" : "no") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial system solving over prime fields"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Threads for dense matrix products")->check(CLI::PositiveNumber);

  std::string file;
  std::string order = "drl";
  auto* gb = app.add_subcommand("gb", "Print the reduced Groebner basis");
  gb->add_option("file", file, "System file ('-' for stdin)")->required();
  gb->add_option("--order", order, "Monomial order")->check(CLI::IsMember({"drl", "lex"}));

  bool det = false, lv = false, json = false;
  std::uint64_t seed = 1;
  std::size_t restarts = 8, retries = 4;
  auto* solve = app.add_subcommand("solve", "Univariate representation of the solutions");
  solve->add_option("file", file, "System file ('-' for stdin)")->required();
  auto* det_flag = solve->add_flag("--det", det, "Deterministic pipeline (default)");
  solve->add_flag("--lv", lv, "Las Vegas pipeline")->excludes(det_flag);
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--restarts", restarts, "Las Vegas: changes of variables to try");
  solve->add_option("--retries", retries, "Random projections per T_n");
  solve->add_flag("--json", json, "Machine-readable output");

  std::string method = "echelon";
  bool summary = false;
  auto* matrices = app.add_subcommand("matrices", "Multiplication matrices");
  matrices->add_option("file", file, "System file ('-' for stdin)")->required();
  matrices->add_option("--method", method, "Builder")->check(CLI::IsMember({"fglm", "echelon", "free"}));
  matrices->add_flag("--summary", summary, "Densities only");

  std::size_t bench_n = 7;
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* appendix = bench->add_subcommand("appendix", "x_i^2 family, both pipelines");
  appendix->add_option("--n", bench_n, "Number of variables")->check(CLI::Range(1, 16));
  appendix->add_option("--seed", seed, "Random seed");
  appendix->add_flag("--json", json, "Machine-readable output");

  std::size_t pb_n = 0;
  std::uint64_t pb_q = 0;
  std::vector<std::uint64_t> pb_degrees;
  auto* probbound = app.add_subcommand("probbound", "Success probability of a random change of variables");
  probbound->add_option("--n", pb_n, "Number of variables")->required();
  probbound->add_option("--q", pb_q, "Size of the sampling set")->required();
  probbound->add_option("--degrees", pb_degrees, "Degrees d1,...,dn")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  SolveOptions options;
  options.max_restarts = restarts;
  options.r_retries = retries;
  options.chord.mul.threads = threads;

  try {
    if (*gb) return run_gb(file, order);
    if (*solve) return run_solve(file, lv, seed, json, options);
    if (*matrices) return run_matrices(file, method, summary, options.chord.mul);
    if (*appendix) return run_bench(bench_n, seed, json, options);
    if (*probbound) return run_probbound(pb_n, pb_q, pb_degrees);
  } catch (const ParseError& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::UnknownVariable:
      case ErrorCode::NonPrimeModulus:
        return kExitParse;
      case ErrorCode::ExhaustedRestarts:
        return kExitRestarts;
      default:
        return kExitPrecondition;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return 0;
}
