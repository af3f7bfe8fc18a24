#include "posso/solver.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "posso/error.hpp"
#include "posso/quotient.hpp"

namespace posso {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::uint32_t kRootScanLimit = 1u << 20;

// Up to `tries` fresh vectors r; nullopt if every one fails.
std::optional<UnivariateRep> chord_with_retries(const Matrix& tn, const GroebnerBasis& g, const QuotientStructure& q,
                                                Rng& rng, const SolveOptions& options, SolveStats& stats) {
  for (std::size_t t = 0; t < std::max<std::size_t>(options.r_retries, 1); ++t) {
    auto rep = change_ordering(tn, g, q, rng, options.chord, &stats.chord);
    if (rep) return rep;
    ++stats.r_failures;
  }
  return std::nullopt;
}

void require_zero_dimensional(const GroebnerBasis& g) {
  if (!is_zero_dimensional(g)) throw Error(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
}

}  // namespace

const char* to_string(Pipeline p) noexcept { return p == Pipeline::Deterministic ? "deterministic" : "lasvegas"; }

SolveReport solve_deterministic(const PolyRing& ring, std::span<const Polynomial> f, Rng& rng,
                                const SolveOptions& options) {
  const auto start = Clock::now();
  const PolyRing drl = ring.with_order(TermOrder::Kind::DRL);
  std::vector<Polynomial> input;
  for (const auto& p : f) input.push_back(drl.reorder(p));

  SolveReport report;
  report.pipeline = Pipeline::Deterministic;
  SolveStats& st = report.stats;
  st.n = ring.nvars();

  auto t0 = Clock::now();
  const GroebnerBasis g = groebner(drl, input);
  st.times.gb = seconds_since(t0);
  require_zero_dimensional(g);

  t0 = Clock::now();
  const QuotientStructure q = compute_basis(g);
  const Frontier fr = compute_frontier(q, g);
  BuildStats bs;
  const NormalFormTable nf = frontier_normal_forms_echelon(q, fr, g, options.chord.mul, &bs);
  const Matrix tn = assemble_mul_matrix(q, fr, nf, st.n - 1);
  st.times.matrix = seconds_since(t0);
  st.degree = q.size();
  st.nf_count = bs.type_two_tn;
  st.density = tn.density();
  st.field_ops = bs.field_ops;

  t0 = Clock::now();
  auto rep = chord_with_retries(tn, g, q, rng, options, st);
  st.times.chord = seconds_since(t0);
  if (!rep) {
    throw Error(ErrorCode::NotShapePosition,
                "minimal polynomial stayed below degree " + std::to_string(q.size()) + " for " +
                    std::to_string(st.r_failures) + " random projections");
  }
  report.rep = std::move(*rep);
  st.times.total = seconds_since(start);
  return report;
}

SolveReport solve_lasvegas(const PolyRing& ring, std::span<const Polynomial> f, Rng& rng,
                           const SolveOptions& options) {
  const auto start = Clock::now();
  const PolyRing drl = ring.with_order(TermOrder::Kind::DRL);
  const PrimeField& field = ring.field();
  const std::size_t n = ring.nvars();
  std::vector<Polynomial> input;
  for (const auto& p : f) input.push_back(drl.reorder(p));

  SolveReport report;
  report.pipeline = Pipeline::LasVegas;
  SolveStats& st = report.stats;
  st.n = n;
  std::size_t max_degree_seen = 0;

  const std::size_t draws = std::max<std::size_t>(options.max_restarts, 1);
  for (std::size_t attempt = 0; attempt < draws; ++attempt) {
    st.restarts = attempt;
    const Matrix g = (attempt == 0 && options.force_identity_first) ? Matrix::identity(n)
                                                                      : random_nonsingular_matrix(field, n, rng);
    auto t0 = Clock::now();
    std::vector<Polynomial> moved;
    for (const auto& p : input) moved.push_back(apply_change_of_variables(drl, p, g));
    const GroebnerBasis gb = groebner(drl, moved);
    st.times.gb += seconds_since(t0);
    require_zero_dimensional(gb);

    t0 = Clock::now();
    const QuotientStructure q = compute_basis(gb);
    const ReadResult read = try_read_Tn(q, gb);
    st.times.matrix += seconds_since(t0);
    st.degree = q.size();
    for (const auto& m : q.basis) max_degree_seen = std::max<std::size_t>(max_degree_seen, m.degree());
    if (!read.readable()) {
      ++st.unreadable;
      continue;
    }
    st.nf_count = read.type_two;
    st.field_ops = read.field_ops;
    st.density = read.tn->density();

    t0 = Clock::now();
    auto rep = chord_with_retries(*read.tn, gb, q, rng, options, st);
    st.times.chord += seconds_since(t0);
    if (!rep) continue;
    report.g = g;
    report.rep = std::move(*rep);
    st.times.total = seconds_since(start);
    return report;
  }

  std::string msg = "no usable change of variables after " + std::to_string(draws) + " draws: " +
                    std::to_string(st.unreadable) + " left T_n unreadable, " +
                    std::to_string(draws - st.unreadable) + " failed every projection (" +
                    std::to_string(st.r_failures) + " projections in total)";
  if (st.unreadable > 0 && field.modulus() <= max_degree_seen + 1) {
    msg += "; p is small enough to divide an x_n-degree of the staircase";
  }
  throw Error(ErrorCode::ExhaustedRestarts, msg);
}

std::optional<std::vector<std::vector<Elem>>> rational_solutions(const PrimeField& field,
                                                                  const SolveReport& report) {
  if (field.modulus() > kRootScanLimit) return std::nullopt;
  const UnivariateRep& rep = report.rep;
  const std::size_t n = rep.nvars();
  std::vector<std::vector<Elem>> out;
  for (Elem a : roots_by_scan(field, rep.eliminant())) {
    std::vector<Elem> v(n);
    for (std::size_t i = 0; i + 1 < n; ++i) v[i] = evaluate(field, rep.h[i], a);
    v[n - 1] = a;
    out.push_back(report.g ? mat_vec(field, *report.g, v) : v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Elem>> enumerate_rational_solutions(const PolyRing& ring, std::span<const Polynomial> f,
                                                            std::uint64_t p_limit) {
  const std::uint64_t p = ring.field().modulus();
  const std::size_t n = ring.nvars();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > p_limit / p) throw Error(ErrorCode::BudgetExceeded, "p^n exceeds the enumeration budget");
    total *= p;
  }
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> point(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // The first coordinate varies slowest, so points come out sorted.
    std::uint64_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      point[i] = static_cast<Elem>(rest % p);
      rest /= p;
    }
    if (std::all_of(f.begin(), f.end(), [&](const Polynomial& q) { return ring.evaluate(q, point) == 0; })) {
      out.push_back(point);
    }
  }
  return out;
}

ProbabilityBound probability_bound(std::size_t n, std::uint64_t q, std::span<const std::uint64_t> degrees,
                                   std::optional<std::uint64_t> degree) {
  if (degrees.size() != n) throw Error(ErrorCode::DimensionMismatch, "probability_bound: need n degrees");
  if (q == 0) throw Error(ErrorCode::DimensionMismatch, "probability_bound: q must be positive");
  using boost::multiprecision::cpp_int;
  ProbabilityBound out;
  out.n = n;
  out.q = q;
  out.degrees.assign(degrees.begin(), degrees.end());

  cpp_int bezout = 1;
  cpp_int sum = 0;
  cpp_int macaulay = 1;
  for (auto d : degrees) {
    bezout *= d;
    sum += d;
    macaulay += cpp_int(d) - 1;
  }
  const cpp_int dd = degree ? cpp_int(*degree) : bezout;
  out.degree = degree ? *degree : bezout.convert_to<std::uint64_t>();

  // C(sum + 1, n)
  cpp_int binom = 1;
  for (std::size_t k = 0; k < n; ++k) {
    binom *= (sum + 1 - k);
    binom /= (k + 1);
  }
  const cpp_int bad = dd * (dd - 1) / 2 + macaulay * (binom - dd);
  Rational value = Rational(1) - Rational(bad, cpp_int(q));
  if (value <= 0) {
    out.vacuous = true;
    value = 0;
  }
  if (value > 1) value = 1;
  out.bound = value;
  out.characteristic_ok = cpp_int(q) > macaulay;
  return out;
}

}  // namespace posso
