// Batched Buchberger: every critical pair of the current minimal degree is
// turned into rows of one sparse matrix, reducers are collected by symbolic
// preprocessing, and the rows are reduced together against the pivots.

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "posso/gb.hpp"

namespace posso {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

class MonoTable {
 public:
  explicit MonoTable(const TermOrder& order) : order_(order), slots_(1u << 14, kNone) {
    const std::size_t n = std::max<std::size_t>(order.n, 1);
    bits_ = std::max<std::size_t>(1, 64 / n);
  }

  std::uint32_t intern(const Monomial& m) {
    const std::size_t h = m.hash();
    std::size_t mask = slots_.size() - 1;
    std::size_t s = h & mask;
    while (slots_[s] != kNone) {
      const std::uint32_t id = slots_[s];
      if (hashes_[id] == h && mono_[id] == m) return id;
      s = (s + 1) & mask;
    }
    const auto id = static_cast<std::uint32_t>(mono_.size());
    mono_.push_back(m);
    hashes_.push_back(h);
    masks_.push_back(divmask(m));
    slots_[s] = id;
    if (mono_.size() * 2 > slots_.size()) rehash();
    return id;
  }

  const Monomial& operator[](std::uint32_t id) const { return mono_[id]; }
  std::uint64_t mask(std::uint32_t id) const { return masks_[id]; }
  std::size_t size() const { return mono_.size(); }
  const TermOrder& order() const { return order_; }

  /// a | b, with the divisibility mask as a fast reject.
  bool divides(std::uint32_t a, std::uint32_t b) const {
    return (masks_[a] & ~masks_[b]) == 0 && mono_[a].divides(mono_[b]);
  }
  bool greater(std::uint32_t a, std::uint32_t b) const { return order_.greater(mono_[a], mono_[b]); }

 private:
  std::uint64_t divmask(const Monomial& m) const {
    std::uint64_t out = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < order_.n && bit < 64; ++i) {
      for (std::size_t k = 0; k < bits_ && bit < 64; ++k, ++bit) {
        if (m[i] > k) out |= std::uint64_t{1} << bit;
      }
    }
    return out;
  }

  void rehash() {
    std::vector<std::uint32_t> next(slots_.size() * 2, kNone);
    const std::size_t mask = next.size() - 1;
    for (std::uint32_t id = 0; id < mono_.size(); ++id) {
      std::size_t s = hashes_[id] & mask;
      while (next[s] != kNone) s = (s + 1) & mask;
      next[s] = id;
    }
    slots_ = std::move(next);
  }

  TermOrder order_;
  std::size_t bits_ = 1;
  std::vector<std::uint32_t> slots_;
  std::vector<Monomial> mono_;
  std::vector<std::size_t> hashes_;
  std::vector<std::uint64_t> masks_;
};

// Terms in decreasing order; monic once it has entered the basis.
struct SparsePoly {
  std::vector<std::uint32_t> mons;
  std::vector<Elem> coefs;
  std::uint32_t lm() const { return mons.front(); }
};

struct Pair {
  std::uint32_t i;
  std::uint32_t j;  // kNone: a pending input polynomial
  std::uint32_t lcm;
  std::uint32_t deg;
};

// A row u * src before column assignment.
struct RowSpec {
  std::uint32_t mult;
  std::uint32_t src;
  bool operator==(const RowSpec&) const = default;
};

struct RowSpecHash {
  std::size_t operator()(const RowSpec& r) const noexcept {
    return (std::size_t{r.mult} << 32) ^ r.src ^ (std::size_t{r.src} * 0x9E3779B97F4A7C15ull);
  }
};

// A matrix row: increasing column indices (decreasing monomials) and a
// coefficient array that may be shared with a basis polynomial.
struct Row {
  std::vector<std::uint32_t> cols;
  const Elem* coefs = nullptr;
};

class Engine {
 public:
  Engine(const PolyRing& ring, GbStats* stats)
      : ring_(ring), field_(ring.field()), table_(ring.order()), stats_(stats) {}

  GroebnerBasis run(std::span<const Polynomial> f) {
    for (const auto& p : f) {
      const Polynomial q = ring_.reorder(p);
      if (q.is_zero()) continue;
      SparsePoly s = import(q);
      const auto idx = static_cast<std::uint32_t>(inputs_.size());
      std::uint32_t deg = 0;
      for (auto m : s.mons) deg = std::max(deg, table_[m].degree());
      pairs_.push_back({idx, kNone, s.lm(), deg});
      inputs_.push_back(std::move(s));
    }
    while (!pairs_.empty()) step();

    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (!redundant_[k]) out.push_back(export_poly(basis_[k]));
    }
    return inter_reduce(std::move(out));
  }

 private:
  SparsePoly import(const Polynomial& p) {
    SparsePoly s;
    for (const auto& t : p.terms) {
      s.mons.push_back(table_.intern(t.mono));
      s.coefs.push_back(t.coef);
    }
    return s;
  }

  Polynomial export_poly(const SparsePoly& s) const {
    Polynomial p;
    for (std::size_t k = 0; k < s.mons.size(); ++k) p.terms.push_back({table_[s.mons[k]], s.coefs[k]});
    return p;
  }

  const SparsePoly& source(std::uint32_t src) const {
    return src < basis_.size() ? basis_[src] : inputs_[src - basis_offset_];
  }

  // Sources >= basis_offset_ refer to pending inputs.
  static constexpr std::uint32_t basis_offset_ = 0x80000000u;

  std::uint32_t deg_of(std::uint32_t mono) const { return table_[mono].degree(); }

  void step() {
    std::uint32_t d = kNone;
    for (const auto& p : pairs_) d = std::min(d, p.deg);
    std::vector<Pair> selected;
    std::vector<Pair> rest;
    for (const auto& p : pairs_) (p.deg == d ? selected : rest).push_back(p);
    pairs_ = std::move(rest);

    std::vector<RowSpec> todo;
    std::unordered_set<RowSpec, RowSpecHash> todo_set;
    auto want = [&](std::uint32_t mult, std::uint32_t src) {
      const RowSpec r{mult, src};
      if (todo_set.insert(r).second) todo.push_back(r);
    };
    const std::uint32_t one = table_.intern(Monomial{});
    for (const auto& p : selected) {
      if (p.j == kNone) {
        want(one, basis_offset_ + p.i);
        continue;
      }
      want(table_.intern(table_[p.lcm] / table_[basis_[p.i].lm()]), p.i);
      want(table_.intern(table_[p.lcm] / table_[basis_[p.j].lm()]), p.j);
    }
    if (stats_ != nullptr) stats_->pairs_reduced += selected.size();

    reduce_rows(todo, todo_set);
  }

  std::vector<std::uint32_t> expand(const RowSpec& r) {
    const SparsePoly& s = source(r.src);
    std::vector<std::uint32_t> out(s.mons.size());
    if (table_[r.mult].is_one()) {
      std::copy(s.mons.begin(), s.mons.end(), out.begin());
      return out;
    }
    const Monomial u = table_[r.mult];
    for (std::size_t k = 0; k < s.mons.size(); ++k) out[k] = table_.intern(u * table_[s.mons[k]]);
    return out;
  }

  // Sparsest non-redundant basis element whose leading monomial divides m.
  std::uint32_t find_reducer(std::uint32_t m) const {
    for (std::uint32_t k : by_size_) {
      if (table_.divides(basis_[k].lm(), m)) return k;
    }
    return kNone;
  }

  void refresh_reducer_order() {
    by_size_.clear();
    for (std::uint32_t k = 0; k < basis_.size(); ++k) {
      if (!redundant_[k]) by_size_.push_back(k);
    }
    std::stable_sort(by_size_.begin(), by_size_.end(), [&](std::uint32_t a, std::uint32_t b) {
      return basis_[a].mons.size() < basis_[b].mons.size();
    });
  }

  void reduce_rows(std::vector<RowSpec> todo, std::unordered_set<RowSpec, RowSpecHash>& todo_set) {
    refresh_reducer_order();

    std::vector<std::vector<std::uint32_t>> todo_mons;
    std::vector<RowSpec> reducers;
    std::vector<std::vector<std::uint32_t>> reducer_mons;
    std::vector<std::uint32_t> worklist;
    if (seen_.size() < table_.size()) seen_.resize(table_.size(), 0);
    ++stamp_;

    auto touch = [&](const std::vector<std::uint32_t>& mons) {
      for (auto m : mons) {
        if (m >= seen_.size()) seen_.resize(table_.size() * 2, 0);
        if (seen_[m] != stamp_) {
          seen_[m] = stamp_;
          worklist.push_back(m);
        }
      }
    };
    for (const auto& r : todo) {
      todo_mons.push_back(expand(r));
      touch(todo_mons.back());
    }

    std::vector<std::uint32_t> columns;
    std::unordered_set<RowSpec, RowSpecHash> promoted;
    for (std::size_t w = 0; w < worklist.size(); ++w) {
      const std::uint32_t m = worklist[w];
      columns.push_back(m);
      const std::uint32_t k = find_reducer(m);
      if (k == kNone) continue;
      const RowSpec r{table_.intern(table_[m] / table_[basis_[k].lm()]), k};
      if (todo_set.contains(r)) promoted.insert(r);
      reducers.push_back(r);
      reducer_mons.push_back(expand(r));
      touch(reducer_mons.back());
    }

    std::sort(columns.begin(), columns.end(), [&](std::uint32_t a, std::uint32_t b) { return table_.greater(a, b); });
    if (colmap_.size() < table_.size()) colmap_.resize(table_.size());
    for (std::uint32_t c = 0; c < columns.size(); ++c) colmap_[columns[c]] = c;
    const std::size_t ncols = columns.size();

    std::vector<std::int64_t> pivot(ncols, -1);
    std::vector<Row> rows;
    rows.reserve(reducers.size() + todo.size());
    for (std::size_t k = 0; k < reducers.size(); ++k) {
      Row row;
      row.cols.resize(reducer_mons[k].size());
      for (std::size_t t = 0; t < row.cols.size(); ++t) row.cols[t] = colmap_[reducer_mons[k][t]];
      row.coefs = source(reducers[k].src).coefs.data();
      pivot[row.cols.front()] = static_cast<std::int64_t>(rows.size());
      rows.push_back(std::move(row));
    }

    struct Pending {
      std::vector<std::uint32_t> cols;
      const Elem* coefs;
    };
    std::vector<Pending> work;
    for (std::size_t k = 0; k < todo.size(); ++k) {
      if (promoted.contains(todo[k])) continue;
      Pending p;
      p.cols.resize(todo_mons[k].size());
      for (std::size_t t = 0; t < p.cols.size(); ++t) p.cols[t] = colmap_[todo_mons[k][t]];
      p.coefs = source(todo[k].src).coefs.data();
      work.push_back(std::move(p));
    }
    std::sort(work.begin(), work.end(), [](const Pending& a, const Pending& b) { return a.cols[0] < b.cols[0]; });

    if (stats_ != nullptr) {
      ++stats_->matrices;
      stats_->max_rows = std::max<std::uint64_t>(stats_->max_rows, rows.size() + work.size());
      stats_->max_cols = std::max<std::uint64_t>(stats_->max_cols, ncols);
    }

    const std::uint64_t p = field_.modulus();
    std::vector<std::uint64_t> acc(ncols, 0);
    std::vector<std::uint64_t> bitmap((ncols + 63) / 64, 0);
    std::vector<std::vector<Elem>> fresh_coefs;
    fresh_coefs.reserve(work.size());
    std::vector<std::size_t> fresh_rows;

    for (const auto& w : work) {
      for (std::size_t t = 0; t < w.cols.size(); ++t) {
        acc[w.cols[t]] = w.coefs[t];
        bitmap[w.cols[t] >> 6] |= std::uint64_t{1} << (w.cols[t] & 63);
      }
      std::vector<std::uint32_t> out_cols;
      std::vector<Elem> out_coefs;
      std::size_t word = w.cols[0] >> 6;
      while (word < bitmap.size()) {
        std::uint64_t bits = bitmap[word];
        if (bits == 0) {
          ++word;
          continue;
        }
        const std::uint32_t c = static_cast<std::uint32_t>((word << 6) + std::countr_zero(bits));
        bitmap[word] &= bits - 1;
        const Elem v = static_cast<Elem>(acc[c] % p);
        acc[c] = 0;
        if (v == 0) continue;
        const std::int64_t piv = pivot[c];
        if (piv < 0) {
          out_cols.push_back(c);
          out_coefs.push_back(v);
          continue;
        }
        // Pivot rows are monic: subtract v times the row.
        const Row& r = rows[static_cast<std::size_t>(piv)];
        const std::uint64_t mult = p - v;
        for (std::size_t t = 1; t < r.cols.size(); ++t) {
          const std::uint32_t col = r.cols[t];
          std::uint64_t x = acc[col] + mult * r.coefs[t];
          if (x >= (std::uint64_t{1} << 63)) x %= p;
          acc[col] = x;
          bitmap[col >> 6] |= std::uint64_t{1} << (col & 63);
        }
      }
      if (out_cols.empty()) {
        if (stats_ != nullptr) ++stats_->zero_reductions;
        continue;
      }
      const Elem inv = field_.inv(out_coefs.front());
      for (auto& v : out_coefs) v = field_.mul(v, inv);
      fresh_coefs.push_back(std::move(out_coefs));
      Row row;
      row.cols = std::move(out_cols);
      row.coefs = fresh_coefs.back().data();
      pivot[row.cols.front()] = static_cast<std::int64_t>(rows.size());
      fresh_rows.push_back(rows.size());
      rows.push_back(std::move(row));
    }

    std::vector<SparsePoly> found;
    for (std::size_t k = 0; k < fresh_rows.size(); ++k) {
      const Row& r = rows[fresh_rows[k]];
      SparsePoly s;
      s.mons.reserve(r.cols.size());
      for (auto c : r.cols) s.mons.push_back(columns[c]);
      s.coefs = fresh_coefs[k];
      found.push_back(std::move(s));
    }
    std::sort(found.begin(), found.end(),
              [&](const SparsePoly& a, const SparsePoly& b) { return table_.greater(b.lm(), a.lm()); });
    for (auto& s : found) add_to_basis(std::move(s));
  }

  // Gebauer-Moeller update.
  void add_to_basis(SparsePoly s) {
    const auto h = static_cast<std::uint32_t>(basis_.size());
    const std::uint32_t lh = s.lm();
    const Monomial mh = table_[lh];
    basis_.push_back(std::move(s));
    redundant_.push_back(false);

    struct Cand {
      std::uint32_t k;
      std::uint32_t lcm;
      bool coprime;
    };
    std::vector<Cand> cand;
    for (std::uint32_t k = 0; k < h; ++k) {
      if (redundant_[k]) continue;
      const Monomial mk = table_[basis_[k].lm()];
      cand.push_back({k, table_.intern(mk.lcm(mh)), mk.coprime(mh)});
    }
    std::vector<Cand> kept;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      bool keep = true;
      if (!cand[c].coprime) {
        for (std::size_t o = c + 1; o < cand.size() && keep; ++o) {
          if (table_.divides(cand[o].lcm, cand[c].lcm)) keep = false;
        }
        for (std::size_t o = 0; o < kept.size() && keep; ++o) {
          if (table_.divides(kept[o].lcm, cand[c].lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(cand[c]);
    }

    std::vector<Pair> next;
    next.reserve(pairs_.size() + kept.size());
    for (const auto& p : pairs_) {
      if (p.j != kNone && table_.divides(lh, p.lcm)) {
        const Monomial& li = table_[basis_[p.i].lm()];
        const Monomial& lj = table_[basis_[p.j].lm()];
        const Monomial& l = table_[p.lcm];
        if (li.lcm(mh) != l && lj.lcm(mh) != l) continue;
      }
      next.push_back(p);
    }
    for (const auto& c : kept) {
      if (!c.coprime) next.push_back({c.k, h, c.lcm, deg_of(c.lcm)});
    }
    pairs_ = std::move(next);

    for (std::uint32_t k = 0; k < h; ++k) {
      if (!redundant_[k] && table_.divides(lh, basis_[k].lm())) redundant_[k] = true;
    }
  }

  // Minimal basis, then every tail reduced in one pass: reducers u * g are
  // collected for each non-standard monomial reachable from the tails.
  GroebnerBasis inter_reduce(std::vector<Polynomial> polys) {
    const TermOrder& ord = ring_.order();
    std::sort(polys.begin(), polys.end(), [&](const Polynomial& a, const Polynomial& b) { return ord.less(a.lm(), b.lm()); });
    std::vector<Polynomial> minimal;
    for (auto& p : polys) {
      bool redundant = false;
      for (const auto& q : minimal) {
        if (q.lm().divides(p.lm())) {
          redundant = true;
          break;
        }
      }
      if (!redundant) minimal.push_back(std::move(p));
    }

    basis_.clear();
    redundant_.clear();
    for (const auto& p : minimal) {
      basis_.push_back(import(p));
      redundant_.push_back(false);
    }
    refresh_reducer_order();

    if (seen_.size() < table_.size()) seen_.resize(table_.size(), 0);
    ++stamp_;
    std::vector<std::uint32_t> worklist;
    std::vector<RowSpec> reducers;
    std::vector<std::vector<std::uint32_t>> reducer_mons;
    auto touch = [&](std::span<const std::uint32_t> mons) {
      for (auto m : mons) {
        if (m >= seen_.size()) seen_.resize(table_.size() * 2, 0);
        if (seen_[m] != stamp_) {
          seen_[m] = stamp_;
          worklist.push_back(m);
        }
      }
    };
    for (const auto& b : basis_) touch(std::span<const std::uint32_t>(b.mons).subspan(1));
    std::vector<std::uint32_t> columns;
    for (std::size_t w = 0; w < worklist.size(); ++w) {
      const std::uint32_t m = worklist[w];
      columns.push_back(m);
      const std::uint32_t k = find_reducer(m);
      if (k == kNone) continue;
      const RowSpec r{table_.intern(table_[m] / table_[basis_[k].lm()]), k};
      reducers.push_back(r);
      reducer_mons.push_back(expand(r));
      touch(reducer_mons.back());
    }
    if (columns.empty()) return GroebnerBasis{ring_, std::move(minimal)};

    std::sort(columns.begin(), columns.end(), [&](std::uint32_t a, std::uint32_t b) { return table_.greater(a, b); });
    if (colmap_.size() < table_.size()) colmap_.resize(table_.size());
    for (std::uint32_t c = 0; c < columns.size(); ++c) colmap_[columns[c]] = c;
    const std::size_t ncols = columns.size();
    std::vector<std::int64_t> pivot(ncols, -1);
    std::vector<Row> rows;
    for (std::size_t k = 0; k < reducers.size(); ++k) {
      Row row;
      row.cols.resize(reducer_mons[k].size());
      for (std::size_t t = 0; t < row.cols.size(); ++t) row.cols[t] = colmap_[reducer_mons[k][t]];
      row.coefs = basis_[reducers[k].src].coefs.data();
      pivot[row.cols.front()] = static_cast<std::int64_t>(rows.size());
      rows.push_back(std::move(row));
    }

    const std::uint64_t p = field_.modulus();
    std::vector<std::uint64_t> acc(ncols, 0);
    std::vector<std::uint64_t> bitmap((ncols + 63) / 64, 0);
    std::vector<Polynomial> out;
    for (const auto& b : basis_) {
      Polynomial r;
      r.terms.push_back({table_[b.lm()], 1});
      if (b.mons.size() == 1) {
        out.push_back(std::move(r));
        continue;
      }
      std::size_t first = ncols;
      for (std::size_t t = 1; t < b.mons.size(); ++t) {
        const std::uint32_t c = colmap_[b.mons[t]];
        first = std::min<std::size_t>(first, c);
        acc[c] = b.coefs[t];
        bitmap[c >> 6] |= std::uint64_t{1} << (c & 63);
      }
      std::size_t word = first >> 6;
      while (word < bitmap.size()) {
        std::uint64_t bits = bitmap[word];
        if (bits == 0) {
          ++word;
          continue;
        }
        const std::uint32_t c = static_cast<std::uint32_t>((word << 6) + std::countr_zero(bits));
        bitmap[word] &= bits - 1;
        const Elem v = static_cast<Elem>(acc[c] % p);
        acc[c] = 0;
        if (v == 0) continue;
        const std::int64_t piv = pivot[c];
        if (piv < 0) {
          r.terms.push_back({table_[columns[c]], v});
          continue;
        }
        const Row& row = rows[static_cast<std::size_t>(piv)];
        const std::uint64_t mult = p - v;
        for (std::size_t t = 1; t < row.cols.size(); ++t) {
          const std::uint32_t col = row.cols[t];
          std::uint64_t x = acc[col] + mult * row.coefs[t];
          if (x >= (std::uint64_t{1} << 63)) x %= p;
          acc[col] = x;
          bitmap[col >> 6] |= std::uint64_t{1} << (col & 63);
        }
      }
      out.push_back(std::move(r));
    }
    return GroebnerBasis{ring_, std::move(out)};
  }

  const PolyRing& ring_;
  const PrimeField& field_;
  MonoTable table_;
  GbStats* stats_;
  std::vector<SparsePoly> inputs_;
  std::vector<SparsePoly> basis_;
  std::vector<bool> redundant_;
  std::vector<std::uint32_t> by_size_;
  std::vector<Pair> pairs_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> colmap_;
};

}  // namespace

GroebnerBasis buchberger_batched(const PolyRing& ring, std::span<const Polynomial> f, GbStats* stats) {
  Engine engine(ring, stats);
  return engine.run(f);
}

}  // namespace posso
