#include "cfl/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cfl/cliques.hpp"
#include "cfl/random.hpp"

namespace cfl {

void CliqueTiling::add(const VertexSet& clique) {
  covered |= clique;
  auto at = std::lower_bound(members.begin(), members.end(), clique, lex_less);
  members.insert(at, clique);
}

bool verify_tiling(const Graph& g, const CliqueTiling& t, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  VertexSet seen(g.order());
  for (const VertexSet& m : t.members) {
    if (m.universe() != g.order()) return fail("member over wrong universe");
    if (m.count() != t.r) return fail("member of size " + std::to_string(m.count()) + " != r");
    if (m.intersects(seen)) return fail("members overlap");
    auto vs = m.to_vector();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!g.adjacent(vs[i], vs[j])) {
          return fail("non-edge " + std::to_string(vs[i]) + "-" + std::to_string(vs[j]) + " inside a member");
        }
    seen |= m;
  }
  if (!(seen == t.covered)) return fail("covered set disagrees with members");
  return true;
}

bool verify_factor(const Graph& g, const CliqueTiling& t, const VertexSet& target, std::string* why) {
  if (!verify_tiling(g, t, why)) return false;
  if (!(t.covered == target)) {
    if (why) *why = "tiling does not cover exactly the target set";
    return false;
  }
  return true;
}

const char* to_string(FactorStatus s) {
  switch (s) {
    case FactorStatus::kFound: return "found";
    case FactorStatus::kAbsent: return "absent";
    case FactorStatus::kIndeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

struct BudgetExceeded {};

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto x : w) h = splitmix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

using Key = std::vector<std::uint64_t>;
Key key_of(const VertexSet& s) { return Key(s.words().begin(), s.words().end()); }

// Exact maximum packing by memoized recursion on the free set: the lowest
// free vertex is either covered by one of its cliques or left uncovered.
class PackingSearch {
 public:
  PackingSearch(const Graph& g, int r, std::int64_t budget) : g_(g), r_(r), budget_(budget) {}

  int solve(const VertexSet& free) {
    if (free.empty()) return 0;
    if (auto it = memo_.find(key_of(free)); it != memo_.end()) return it->second.value;
    if (++nodes_ > budget_) throw BudgetExceeded{};

    const int upper = free.count() / r_;
    Vertex v = free.first();
    VertexSet rest = free;
    rest.erase(v);

    Entry best{-1, {}};
    if (upper > 0) {
      for_each_clique(g_, r_ - 1, rest & g_.neighbors(v), [&](const VertexSet& c) {
        int val = 1 + solve(rest - c);
        if (val > best.value) {
          best.value = val;
          best.choice = c.to_vector();
          best.choice.push_back(v);
        }
        return best.value < upper;
      });
    }
    if (best.value < (free.count() - 1) / r_ || best.value < 0) {
      int val = solve(rest);
      if (val > best.value) best = Entry{val, {}};
    }
    memo_[key_of(free)] = best;
    return best.value;
  }

  CliqueTiling reconstruct(VertexSet free) const {
    CliqueTiling t(g_.order(), r_);
    while (!free.empty()) {
      const Entry& e = memo_.at(key_of(free));
      if (e.choice.empty()) {
        free.erase(free.first());
      } else {
        VertexSet c(g_.order(), std::span<const Vertex>(e.choice));
        t.add(c);
        free -= c;
      }
    }
    return t;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  struct Entry {
    int value;
    std::vector<Vertex> choice;  // empty: lowest vertex left uncovered
  };
  const Graph& g_;
  int r_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::unordered_map<Key, Entry, WordsHash> memo_;
};

// Perfect-tiling search: stranding any vertex is never allowed.
class FactorSearch {
 public:
  FactorSearch(const Graph& g, int r, std::int64_t budget) : g_(g), r_(r), budget_(budget) {}

  bool solve(const VertexSet& free) {
    if (free.empty()) return true;
    Key key = key_of(free);
    if (dead_.contains(key)) return false;
    if (++nodes_ > budget_) throw BudgetExceeded{};

    Vertex v = free.first();
    VertexSet rest = free;
    rest.erase(v);
    bool ok = false;
    for_each_clique(g_, r_ - 1, rest & g_.neighbors(v), [&](const VertexSet& c) {
      VertexSet with_v = c;
      with_v.insert(v);
      path_.push_back(with_v);
      if (solve(rest - c)) {
        ok = true;
        return false;
      }
      path_.pop_back();
      return true;
    });
    if (!ok) dead_.insert(std::move(key));
    return ok;
  }

  const std::vector<VertexSet>& path() const { return path_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  const Graph& g_;
  int r_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::unordered_set<Key, WordsHash> dead_;
  std::vector<VertexSet> path_;
};

CliqueTiling singletons(const Graph& g, const VertexSet& within) {
  CliqueTiling t(g.order(), 1);
  within.for_each([&](Vertex v) { t.add(VertexSet(g.order(), {v})); });
  return t;
}

}  // namespace

TilingResult max_tiling(const Graph& g, int r, const VertexSet& within, std::int64_t node_budget) {
  if (r < 1) throw std::invalid_argument("max_tiling: r must be >= 1");
  TilingResult res;
  const int total = within.count();
  if (r == 1) {
    res.best = singletons(g, within);
    res.optimal = true;
    return res;
  }
  PackingSearch search(g, r, node_budget);
  try {
    search.solve(within);
    res.best = search.reconstruct(within);
    res.optimal = true;
  } catch (const BudgetExceeded&) {
    // fall back to a greedy incumbent restricted to `within`
    Graph sub = g.induced(within);
    CliqueTiling local = greedy_tiling(sub, r, 0);
    auto members = within.to_vector();
    res.best = CliqueTiling(g.order(), r);
    for (const VertexSet& c : local.members) {
      VertexSet mapped(g.order());
      c.for_each([&](Vertex v) { mapped.insert(members[v]); });
      res.best.add(mapped);
    }
    res.optimal = false;
  }
  res.nodes_explored = search.nodes();
  res.deficiency = total - res.best.covered.count();
  return res;
}

TilingResult max_tiling(const Graph& g, int r, std::int64_t node_budget) {
  return max_tiling(g, r, g.all(), node_budget);
}

FactorResult has_factor(const Graph& g, int r, const VertexSet& within, std::int64_t node_budget) {
  if (r < 1) throw std::invalid_argument("has_factor: r must be >= 1");
  FactorResult res;
  if (within.count() % r != 0) {
    res.status = FactorStatus::kAbsent;
    res.reason = "divisibility";
    return res;
  }
  if (r == 1) {
    res.status = FactorStatus::kFound;
    res.factor = singletons(g, within);
    return res;
  }
  FactorSearch search(g, r, node_budget);
  try {
    if (search.solve(within)) {
      CliqueTiling t(g.order(), r);
      for (const VertexSet& c : search.path()) t.add(c);
      res.status = FactorStatus::kFound;
      res.factor = std::move(t);
    } else {
      res.status = FactorStatus::kAbsent;
      res.reason = "exhausted";
    }
  } catch (const BudgetExceeded&) {
    res.status = FactorStatus::kIndeterminate;
    res.reason = "node budget";
  }
  res.nodes_explored = search.nodes();
  return res;
}

FactorResult has_factor(const Graph& g, int r, std::int64_t node_budget) {
  return has_factor(g, r, g.all(), node_budget);
}

CliqueTiling greedy_tiling(const Graph& g, int r, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("greedy_tiling: r must be >= 1");
  CliqueTiling t(g.order(), r);
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  VertexSet free = g.all();
  for (Vertex v : order) {
    if (!free.contains(v)) continue;
    VertexSet cand = free & g.neighbors(v);
    auto c = find_clique(g, cand, r - 1);
    if (!c) continue;
    c->insert(v);
    t.add(*c);
    free -= *c;
  }
  return t;
}

}  // namespace cfl
