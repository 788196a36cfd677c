#pragma once

// Brute-force reference computations on raw tables. Nothing here calls the
// library's algorithms, so agreement with them is independent evidence.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Index = std::size_t;
using Table = std::vector<std::vector<Index>>;
inline constexpr Index kNone = static_cast<Index>(-1);

inline bool associative_at(const Table& m, Index a, Index b, Index c) { return m[m[a][b]][c] == m[a][m[b][c]]; }

inline bool is_group(const Table& m, Index unit, const std::vector<Index>& inv) {
  const Index n = m.size();
  for (Index a = 0; a < n; ++a) {
    if (m[unit][a] != a || m[a][unit] != a) return false;
    if (m[a][inv[a]] != unit || m[inv[a]][a] != unit) return false;
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (!associative_at(m, a, b, c)) return false;
  return true;
}

/// Groupoid axioms by exhaustive loops; comp[a2][a1] = a2 after a1 or kNone.
inline bool is_groupoid(Index objects, const std::vector<Index>& src, const std::vector<Index>& tgt,
                        const std::vector<Index>& ident, const Table& comp, const std::vector<Index>& inv) {
  const Index m = src.size();
  for (Index o = 0; o < objects; ++o)
    if (src[ident[o]] != o || tgt[ident[o]] != o) return false;
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      bool ok = src[a] == tgt[b];
      if (ok != (comp[a][b] != kNone)) return false;
      if (ok && (src[comp[a][b]] != src[b] || tgt[comp[a][b]] != tgt[a])) return false;
    }
  for (Index a = 0; a < m; ++a) {
    if (comp[ident[tgt[a]]][a] != a || comp[a][ident[src[a]]] != a) return false;
    if (comp[inv[a]][a] != ident[src[a]] || comp[a][inv[a]] != ident[tgt[a]]) return false;
  }
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      for (Index c = 0; c < m; ++c)
        if (comp[a][b] != kNone && comp[b][c] != kNone && comp[comp[a][b]][c] != comp[a][comp[b][c]]) return false;
  return true;
}

/// Orbits of a group action given as rows act[g][x], by flood fill.
inline Index orbit_count(const Table& act, Index n) {
  std::vector<bool> seen(n, false);
  Index count = 0;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<Index> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      Index x = stack.back();
      stack.pop_back();
      for (const auto& row : act)
        if (!seen[row[x]]) {
          seen[row[x]] = true;
          stack.push_back(row[x]);
        }
    }
  }
  return count;
}

inline std::vector<std::vector<Index>> permutations(Index n) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), Index{0});
  std::vector<std::vector<Index>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Every group action on n points: one permutation per element, filtered by
/// the unit and compatibility laws.
inline std::vector<Table> group_actions(const Table& m, Index unit, Index n) {
  const Index order = m.size();
  auto perms = permutations(n);
  std::vector<Table> out;
  Table act(order);
  std::function<void(Index)> rec = [&](Index g) {
    if (g == order) {
      for (Index x = 0; x < n; ++x)
        if (act[unit][x] != x) return;
      for (Index a = 0; a < order; ++a)
        for (Index b = 0; b < order; ++b)
          for (Index x = 0; x < n; ++x)
            if (act[a][act[b][x]] != act[m[a][b]][x]) return;
      out.push_back(act);
      return;
    }
    for (const auto& p : perms) {
      act[g] = p;
      rec(g + 1);
    }
  };
  rec(0);
  return out;
}

/// Free and transitive on every fiber of proj, with proj surjective and invariant.
inline bool principal(const Table& act, const std::vector<Index>& proj, Index base) {
  const Index n = proj.size();
  std::vector<bool> hit(base, false);
  for (Index x : proj) hit[x] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  for (const auto& row : act)
    for (Index x = 0; x < n; ++x)
      if (proj[row[x]] != proj[x]) return false;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (proj[x] != proj[y]) continue;
      Index k = 0;
      for (const auto& row : act) k += row[y] == x;
      if (k != 1) return false;
    }
  return true;
}

/// Number of (action, projection) pairs on a labelled carrier that are
/// principal bundles over a base of the given size.
inline Index count_torsors(const Table& m, Index unit, Index base, Index carrier) {
  auto acts = group_actions(m, unit, carrier);
  Index count = 0;
  std::vector<Index> proj(carrier, 0);
  std::function<void(Index)> rec = [&](Index i) {
    if (i == carrier) {
      for (const auto& a : acts) count += principal(a, proj, base);
      return;
    }
    for (Index x = 0; x < base; ++x) {
      proj[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

/// Bundles for the discrete groupoid on s objects: an anchor and a
/// projection on a labelled carrier, principal iff every arrow-fiber
/// pair has exactly one arrow carrying one point to the other.
inline Index count_discrete_torsors(Index s, Index base, Index carrier) {
  Index count = 0;
  std::vector<Index> proj(carrier, 0), anchor(carrier, 0);
  std::function<void(Index)> rec = [&](Index i) {
    if (i == carrier) {
      std::vector<bool> hit(base, false);
      for (Index x : proj) hit[x] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) return;
      for (Index x = 0; x < carrier; ++x)
        for (Index y = 0; y < carrier; ++y) {
          if (proj[x] != proj[y]) continue;
          // Only identities act, so x is reached from y iff x == y.
          if (x != y) return;
        }
      ++count;
      return;
    }
    for (Index x = 0; x < base; ++x)
      for (Index o = 0; o < s; ++o) {
        proj[i] = x;
        anchor[i] = o;
        rec(i + 1);
      }
  };
  rec(0);
  return count;
}

inline Index factorial(Index n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline Index power(Index b, Index e) {
  Index r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace oracle
