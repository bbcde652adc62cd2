// Small dense graphs on bitset adjacency rows, plus the exact searches the
// verification layer leans on: BFS, branch-and-bound maximum clique with
// greedy coloring bounds, exhaustive k-clique enumeration, maximal-clique
// enumeration (Bron-Kerbosch), and independent sets via the complement.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zgrass/budget.hpp"
#include "zgrass/errors.hpp"

namespace zgrass {

using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace bits {

inline u64 word_count(u64 n) { return (n + 63) / 64; }

inline bool test(const std::vector<u64>& w, u64 i) { return (w[i >> 6] >> (i & 63)) & 1; }
inline void set(std::vector<u64>& w, u64 i) { w[i >> 6] |= u64{1} << (i & 63); }
inline void clear(std::vector<u64>& w, u64 i) { w[i >> 6] &= ~(u64{1} << (i & 63)); }

inline u64 count(const std::vector<u64>& w) {
  u64 c = 0;
  for (u64 x : w) c += static_cast<u64>(__builtin_popcountll(x));
  return c;
}

inline bool any(const std::vector<u64>& w) {
  for (u64 x : w)
    if (x) return true;
  return false;
}

// Members of the set, ascending.
inline std::vector<u64> to_list(const std::vector<u64>& w) {
  std::vector<u64> out;
  for (u64 wi = 0; wi < w.size(); ++wi) {
    u64 x = w[wi];
    while (x) {
      out.push_back(wi * 64 + static_cast<u64>(__builtin_ctzll(x)));
      x &= x - 1;
    }
  }
  return out;
}

}  // namespace bits

class BitGraph {
 public:
  explicit BitGraph(u64 n) : n_(n), words_(bits::word_count(n)), rows_(n, std::vector<u64>(words_, 0)) {}

  u64 size() const { return n_; }

  void add_edge(u64 a, u64 b) {
    if (a == b) return;
    bits::set(rows_[a], b);
    bits::set(rows_[b], a);
  }

  bool adjacent(u64 a, u64 b) const { return bits::test(rows_[a], b); }
  const std::vector<u64>& row(u64 v) const { return rows_[v]; }
  u64 degree(u64 v) const { return bits::count(rows_[v]); }

  u64 edge_count() const {
    u64 twice = 0;
    for (u64 v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
  }

  BitGraph complement() const {
    BitGraph g(n_);
    for (u64 v = 0; v < n_; ++v) {
      for (u64 w = 0; w < words_; ++w) g.rows_[v][w] = ~rows_[v][w];
      // mask tail bits and the diagonal
      if (n_ & 63) g.rows_[v][words_ - 1] &= (u64{1} << (n_ & 63)) - 1;
      bits::clear(g.rows_[v], v);
    }
    return g;
  }

  // Hop distances from src; -1 where unreachable.
  std::vector<i64> bfs_distances(u64 src) const {
    std::vector<i64> dist(n_, -1);
    dist[src] = 0;
    std::vector<u64> frontier(words_, 0), seen(words_, 0);
    bits::set(frontier, src);
    bits::set(seen, src);
    i64 level = 0;
    while (bits::any(frontier)) {
      charge_budget();
      ++level;
      std::vector<u64> next(words_, 0);
      for (u64 v : bits::to_list(frontier))
        for (u64 w = 0; w < words_; ++w) next[w] |= rows_[v][w];
      for (u64 w = 0; w < words_; ++w) next[w] &= ~seen[w];
      for (u64 v : bits::to_list(next)) dist[v] = level;
      for (u64 w = 0; w < words_; ++w) seen[w] |= next[w];
      frontier = std::move(next);
    }
    return dist;
  }

  // Largest BFS distance over all pairs; throws if the graph is disconnected.
  i64 diameter() const {
    i64 best = 0;
    for (u64 v = 0; v < n_; ++v) {
      for (i64 d : bfs_distances(v)) {
        if (d < 0) throw Error("diameter: graph is disconnected");
        best = std::max(best, d);
      }
    }
    return best;
  }

 private:
  u64 n_;
  u64 words_;
  std::vector<std::vector<u64>> rows_;
};

// Exact clique machinery. All entry points charge the work budget per search
// node, so runaway instances fail loudly instead of spinning.
class CliqueSearch {
 public:
  explicit CliqueSearch(const BitGraph& g) : g_(g), n_(g.size()), words_(bits::word_count(n_)) {}

  // A maximum clique (exact). Classic branch and bound: candidates ordered by
  // a greedy coloring whose color count bounds the best possible extension.
  std::vector<u64> maximum_clique() {
    best_.clear();
    target_ = 0;
    stop_at_target_ = false;
    std::vector<u64> all(words_, 0);
    for (u64 v = 0; v < n_; ++v) bits::set(all, v);
    std::vector<u64> current;
    expand(all, current);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

  // Decision form: is there a clique of size k? Stops on the first witness.
  std::optional<std::vector<u64>> find_clique_of_size(u64 k) {
    if (k == 0) return std::vector<u64>{};
    best_.clear();
    target_ = k;
    stop_at_target_ = true;
    std::vector<u64> all(words_, 0);
    for (u64 v = 0; v < n_; ++v) bits::set(all, v);
    std::vector<u64> current;
    expand(all, current);
    if (best_.size() >= k) {
      best_.resize(k);
      std::sort(best_.begin(), best_.end());
      return best_;
    }
    return std::nullopt;
  }

  // Every clique of size exactly k, ascending vertex order within each.
  // With k = omega this enumerates exactly the maximum cliques.
  void for_each_clique_of_size(u64 k, const std::function<void(const std::vector<u64>&)>& fn) {
    if (k == 0) return;
    std::vector<u64> all(words_, 0);
    for (u64 v = 0; v < n_; ++v) bits::set(all, v);
    std::vector<u64> current;
    enumerate(all, current, k, fn);
  }

 private:
  // Greedy coloring of the candidate set; emits vertices grouped by color and
  // returns the per-vertex color numbers (1-based), used as the bound.
  void color_sort(const std::vector<u64>& cand, std::vector<u64>& order, std::vector<u64>& bound) {
    order.clear();
    bound.clear();
    std::vector<u64> uncolored = cand;
    u64 color = 0;
    while (bits::any(uncolored)) {
      ++color;
      std::vector<u64> avail = uncolored;
      while (bits::any(avail)) {
        u64 v = 0;
        for (u64 w = 0; w < words_; ++w)
          if (avail[w]) {
            v = w * 64 + static_cast<u64>(__builtin_ctzll(avail[w]));
            break;
          }
        bits::clear(avail, v);
        bits::clear(uncolored, v);
        for (u64 w = 0; w < words_; ++w) avail[w] &= ~g_.row(v)[w];
        order.push_back(v);
        bound.push_back(color);
      }
    }
  }

  void expand(const std::vector<u64>& cand, std::vector<u64>& current) {
    charge_budget();
    if (stop_at_target_ && best_.size() >= target_) return;
    std::vector<u64> order, bound;
    color_sort(cand, order, bound);
    std::vector<u64> live = cand;
    for (u64 idx = order.size(); idx-- > 0;) {
      if (current.size() + bound[idx] <= best_.size()) return;  // color bound
      const u64 v = order[idx];
      current.push_back(v);
      std::vector<u64> next(words_);
      for (u64 w = 0; w < words_; ++w) next[w] = live[w] & g_.row(v)[w];
      if (bits::any(next)) {
        expand(next, current);
      } else if (current.size() > best_.size()) {
        best_ = current;
      }
      current.pop_back();
      if (stop_at_target_ && best_.size() >= target_) return;
      bits::clear(live, v);
    }
  }

  void enumerate(const std::vector<u64>& cand, std::vector<u64>& current, u64 k,
                 const std::function<void(const std::vector<u64>&)>& fn) {
    charge_budget();
    if (current.size() == k) {
      fn(current);
      return;
    }
    std::vector<u64> order, bound;
    color_sort(cand, order, bound);
    std::vector<u64> live = cand;
    for (u64 idx = order.size(); idx-- > 0;) {
      if (current.size() + bound[idx] < k) return;  // cannot reach k any more
      const u64 v = order[idx];
      current.push_back(v);
      if (current.size() == k) {
        std::vector<u64> found = current;
        std::sort(found.begin(), found.end());
        fn(found);
      } else {
        std::vector<u64> next(words_);
        for (u64 w = 0; w < words_; ++w) next[w] = live[w] & g_.row(v)[w];
        enumerate(next, current, k, fn);
      }
      current.pop_back();
      bits::clear(live, v);
    }
  }

  const BitGraph& g_;
  u64 n_;
  u64 words_;
  std::vector<u64> best_;
  u64 target_ = 0;
  bool stop_at_target_ = false;
};

inline std::vector<u64> maximum_clique(const BitGraph& g) { return CliqueSearch(g).maximum_clique(); }

inline std::vector<u64> maximum_independent_set(const BitGraph& g) {
  const BitGraph co = g.complement();
  return CliqueSearch(co).maximum_clique();
}

// Grow a clique from seed vertices by repeatedly adding the smallest vertex
// adjacent to everything chosen so far. Result is a maximal clique.
inline std::vector<u64> greedy_maximal_clique(const BitGraph& g, const std::vector<u64>& seed) {
  const u64 words = bits::word_count(g.size());
  std::vector<u64> common(words, 0);
  for (u64 v = 0; v < g.size(); ++v) bits::set(common, v);
  std::vector<u64> clique;
  for (u64 v : seed) {
    if (!bits::test(common, v)) throw Error("greedy_maximal_clique: seed is not a clique");
    clique.push_back(v);
    for (u64 w = 0; w < words; ++w) common[w] &= g.row(v)[w];
  }
  while (bits::any(common)) {
    charge_budget();
    u64 v = bits::to_list(common).front();
    clique.push_back(v);
    for (u64 w = 0; w < words; ++w) common[w] &= g.row(v)[w];
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

// Bron-Kerbosch with pivoting, restricted to an induced vertex subset, with
// the clique required to contain `required`. Used for the radical-clique
// exhaustions where we need *all* maximal cliques of a small induced graph.
inline void for_each_maximal_clique(const BitGraph& g, const std::vector<u64>& subset,
                                    const std::vector<u64>& required,
                                    const std::function<void(const std::vector<u64>&)>& fn) {
  const u64 words = bits::word_count(g.size());
  std::vector<u64> p(words, 0);
  for (u64 v : subset) bits::set(p, v);
  std::vector<u64> r;
  for (u64 v : required) {
    if (!bits::test(p, v)) throw Error("for_each_maximal_clique: required vertex outside subset");
    r.push_back(v);
  }
  for (u64 v : required) {
    bits::clear(p, v);
    for (u64 w = 0; w < words; ++w) p[w] &= g.row(v)[w];
  }
  std::vector<u64> x(words, 0);
  std::function<void(std::vector<u64>&, std::vector<u64>&, std::vector<u64>&)> bk =
      [&](std::vector<u64>& P, std::vector<u64>& X, std::vector<u64>& R) {
        charge_budget();
        if (!bits::any(P) && !bits::any(X)) {
          std::vector<u64> out = R;
          std::sort(out.begin(), out.end());
          fn(out);
          return;
        }
        // pivot: vertex of P|X with most neighbours in P
        u64 pivot = 0, best = 0;
        bool have = false;
        for (u64 w = 0; w < words; ++w) {
          u64 both = P[w] | X[w];
          while (both) {
            const u64 v = w * 64 + static_cast<u64>(__builtin_ctzll(both));
            both &= both - 1;
            u64 cnt = 0;
            for (u64 ww = 0; ww < words; ++ww) cnt += static_cast<u64>(__builtin_popcountll(P[ww] & g.row(v)[ww]));
            if (!have || cnt > best) {
              have = true;
              best = cnt;
              pivot = v;
            }
          }
        }
        std::vector<u64> branch(words);
        for (u64 w = 0; w < words; ++w) branch[w] = P[w] & ~g.row(pivot)[w];
        for (u64 v : bits::to_list(branch)) {
          std::vector<u64> P2(words), X2(words);
          for (u64 w = 0; w < words; ++w) {
            P2[w] = P[w] & g.row(v)[w];
            X2[w] = X[w] & g.row(v)[w];
          }
          R.push_back(v);
          bk(P2, X2, R);
          R.pop_back();
          bits::clear(P, v);
          bits::set(X, v);
        }
      };
  bk(p, x, r);
}

}  // namespace zgrass
