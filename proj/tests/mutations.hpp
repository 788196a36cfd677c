#pragma once

// Deterministic single-entry mutations of fixture tables, and a checker that
// confirms a reported witness really violates the law its kind names.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frobundle/algebra.hpp"
#include "oracle.hpp"

namespace mutation {

using frobundle::ErrorKind;
using oracle::Index;
using oracle::kNone;
using oracle::Table;

struct GroupTables {
  std::string name;
  Table mul;
  Index unit = 0;
  std::vector<Index> inv;
};

struct GroupoidTables {
  std::string name;
  Index objects = 0;
  std::vector<Index> src, tgt, ident, inv;
  Table comp;
};

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

inline std::vector<std::filesystem::path> sorted_json(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline GroupTables group_tables(const nlohmann::json& j) {
  return {j.value("name", ""), j["mul"].get<Table>(), j["unit"].get<Index>(), j["inv"].get<std::vector<Index>>()};
}

inline GroupoidTables groupoid_tables(const nlohmann::json& j) {
  GroupoidTables g{j.value("name", ""), j["objects"].get<Index>(), j["src"].get<std::vector<Index>>(),
                   j["tgt"].get<std::vector<Index>>(), j["ident"].get<std::vector<Index>>(),
                   j["inv"].get<std::vector<Index>>(), {}};
  for (const auto& row : j["comp"]) {
    std::vector<Index> r;
    for (const auto& v : row) r.push_back(v.is_null() ? kNone : v.get<Index>());
    g.comp.push_back(r);
  }
  return g;
}

struct Mutant {
  std::string label;
  bool is_group = true;
  GroupTables group;
  GroupoidTables groupoid;
};

/// Mutations of group tables (one mul, inv or unit entry changed) and of
/// groupoid tables (one comp or inv entry changed), drawn with a fixed seed.
inline std::vector<Mutant> make_mutants(const std::vector<GroupTables>& groups, const std::vector<GroupoidTables>& groupoids,
                                        Index group_count, Index groupoid_count, unsigned seed = 0) {
  std::mt19937 rng(seed);
  auto pick = [&](Index n) { return static_cast<Index>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  auto other = [&](Index v, Index n) { return (v + 1 + pick(n - 1)) % n; };
  std::vector<Mutant> out;
  std::vector<const GroupTables*> big;
  for (const auto& g : groups)
    if (g.mul.size() >= 2) big.push_back(&g);
  while (out.size() < group_count) {
    const GroupTables& g = *big[pick(big.size())];
    Mutant m{g.name, true, g, {}};
    const Index n = g.mul.size();
    switch (out.size() % 4) {
      case 0:
      case 1: {
        Index a = pick(n), b = pick(n);
        m.group.mul[a][b] = other(g.mul[a][b], n);
        m.label += " mul[" + std::to_string(a) + "][" + std::to_string(b) + "]";
        break;
      }
      case 2: {
        Index a = pick(n);
        m.group.inv[a] = other(g.inv[a], n);
        m.label += " inv[" + std::to_string(a) + "]";
        break;
      }
      default:
        m.group.unit = other(g.unit, n);
        m.label += " unit";
    }
    out.push_back(std::move(m));
  }
  std::vector<const GroupoidTables*> rich;
  for (const auto& g : groupoids)
    if (g.src.size() >= 2) rich.push_back(&g);
  Index made = 0;
  while (made < groupoid_count) {
    const GroupoidTables& g = *rich[pick(rich.size())];
    Mutant m{g.name, false, {}, g};
    const Index n = g.src.size();
    if (made % 2 == 0) {
      Index a = pick(n), b = pick(n);
      Index v = g.comp[a][b];
      m.groupoid.comp[a][b] = v == kNone ? pick(n) : (pick(3) == 0 ? kNone : other(v, n));
      m.label += " comp[" + std::to_string(a) + "][" + std::to_string(b) + "]";
    } else {
      Index a = pick(n);
      m.groupoid.inv[a] = other(g.inv[a], n);
      m.label += " inv[" + std::to_string(a) + "]";
    }
    out.push_back(std::move(m));
    ++made;
  }
  return out;
}

/// True when the witness violates the law named by kind, on the raw tables.
inline bool witness_holds(const GroupTables& g, ErrorKind kind, const std::vector<Index>& w) {
  const Table& m = g.mul;
  const Index n = m.size();
  auto in = [&](Index v) { return v < n; };
  switch (kind) {
    case ErrorKind::NoUnit:
      return w.size() == 1 && in(w[0]) && (m[g.unit][w[0]] != w[0] || m[w[0]][g.unit] != w[0]);
    case ErrorKind::NoInverse:
      return w.size() == 1 && in(w[0]) && (m[w[0]][g.inv[w[0]]] != g.unit || m[g.inv[w[0]]][w[0]] != g.unit);
    case ErrorKind::NotAssociative:
      return w.size() == 3 && in(w[0]) && in(w[1]) && in(w[2]) && !oracle::associative_at(m, w[0], w[1], w[2]);
    default:
      return false;
  }
}

inline bool witness_holds(const GroupoidTables& g, ErrorKind kind, const std::vector<Index>& w) {
  const Index n = g.src.size();
  auto in = [&](Index v) { return v < n; };
  const auto& c = g.comp;
  switch (kind) {
    case ErrorKind::BadComposability: {
      if (w.size() != 2 || !in(w[0]) || !in(w[1])) return false;
      Index a = w[0], b = w[1], ab = c[a][b];
      bool ok = g.src[a] == g.tgt[b];
      if (ok != (ab != kNone)) return true;
      return ab != kNone && (!in(ab) || g.src[ab] != g.src[b] || g.tgt[ab] != g.tgt[a]);
    }
    case ErrorKind::BadIdentity:
      return w.size() == 1 && in(w[0]) &&
             (c[g.ident[g.tgt[w[0]]]][w[0]] != w[0] || c[w[0]][g.ident[g.src[w[0]]]] != w[0]);
    case ErrorKind::BadInverse: {
      if (w.size() != 1 || !in(w[0])) return false;
      Index a = w[0], i = g.inv[a];
      return g.src[i] != g.tgt[a] || g.tgt[i] != g.src[a] || c[i][a] != g.ident[g.src[a]] || c[a][i] != g.ident[g.tgt[a]];
    }
    case ErrorKind::NotAssociative: {
      if (w.size() != 3 || !in(w[0]) || !in(w[1]) || !in(w[2])) return false;
      Index ab = c[w[0]][w[1]], bc = c[w[1]][w[2]];
      return ab != kNone && bc != kNone && c[ab][w[2]] != c[w[0]][bc];
    }
    default:
      return false;
  }
}

/// Runs the library validator on a mutant. Returns the reported error, or
/// nothing when the mutant was accepted.
inline std::optional<frobundle::Error> validate(const Mutant& m) {
  try {
    if (m.is_group) {
      frobundle::FinGroup::validate(m.group.mul.size(), m.group.mul, m.group.unit, m.group.inv);
    } else {
      const auto& g = m.groupoid;
      frobundle::FinGroupoid::validate(g.objects, g.src.size(), g.src, g.tgt, g.ident, g.comp, g.inv);
    }
  } catch (const frobundle::Error& e) {
    return e;
  }
  return std::nullopt;
}

/// The mutant is rejected with a witness that violates the named law.
inline bool rejected_with_witness(const Mutant& m, std::string* why = nullptr) {
  auto e = validate(m);
  if (!e) {
    if (why) *why = "accepted";
    return false;
  }
  bool ok = m.is_group ? witness_holds(m.group, e->kind(), e->witness()) : witness_holds(m.groupoid, e->kind(), e->witness());
  if (!ok && why) *why = e->what();
  return ok;
}

}  // namespace mutation
