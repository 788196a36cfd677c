#pragma once

// JSON forms for fixtures and reports. Every ParseError names the source
// and the JSON pointer (or byte offset) of the offending value.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "frobundle/adjunction.hpp"
#include "frobundle/algebra.hpp"
#include "frobundle/torsor.hpp"

namespace frobundle::json {

using nlohmann::json;

/// A value inside a named document, carrying its location for errors.
class Cursor {
 public:
  Cursor(const json& value, std::string source, json::json_pointer at = json::json_pointer())
      : value_(&value), source_(std::move(source)), at_(std::move(at)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, source_ + ":" + (at_.empty() ? std::string("/") : at_.to_string()) + ": " + what);
  }

  const json& value() const { return *value_; }
  bool has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

  Cursor operator[](const std::string& key) const {
    if (!value_->is_object()) fail("expected an object");
    auto it = value_->find(key);
    if (it == value_->end()) fail("missing field \"" + key + "\"");
    return Cursor(*it, source_, at_ / key);
  }

  Cursor operator[](Index i) const {
    if (!value_->is_array()) fail("expected an array");
    if (i >= value_->size()) fail("index out of range");
    return Cursor((*value_)[i], source_, at_ / i);
  }

  Index size() const {
    if (!value_->is_array()) fail("expected an array");
    return value_->size();
  }

  Index index() const {
    if (!value_->is_number_unsigned() && !(value_->is_number_integer() && value_->get<long long>() >= 0)) {
      fail("expected a non-negative integer");
    }
    return value_->get<Index>();
  }

  /// An index, or npos for null.
  Index index_or_null() const { return value_->is_null() ? npos : index(); }

  std::string string() const {
    if (!value_->is_string()) fail("expected a string");
    return value_->get<std::string>();
  }

  std::vector<Index> indices() const {
    std::vector<Index> out(size());
    for (Index i = 0; i < out.size(); ++i) out[i] = (*this)[i].index();
    return out;
  }

  std::vector<std::vector<Index>> rows(bool allow_null = false) const {
    std::vector<std::vector<Index>> out(size());
    for (Index i = 0; i < out.size(); ++i) {
      Cursor row = (*this)[i];
      out[i].resize(row.size());
      for (Index j = 0; j < out[i].size(); ++j) out[i][j] = allow_null ? row[j].index_or_null() : row[j].index();
    }
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  const json* value_;
  std::string source_;
  json::json_pointer at_;
};

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

inline json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path.string());
}

// ---------------------------------------------------------------------------
// Readers. Validation errors from the algebra layer propagate unchanged.

/// {"size": n, "labels": [...]?} or a bare count.
inline FinSet read_finset(const Cursor& c) {
  if (c.value().is_number()) return FinSet(c.index());
  Index n = c["size"].index();
  if (!c.has("labels")) return FinSet(n);
  Cursor l = c["labels"];
  std::vector<std::string> labels(l.size());
  for (Index i = 0; i < labels.size(); ++i) labels[i] = l[i].string();
  if (labels.size() != n) c["labels"].fail("labels do not match size");
  try {
    return FinSet(std::move(labels));
  } catch (const Error& e) {
    c["labels"].fail(e.what());
  }
}

inline FinFn read_finfn(const Cursor& c) {
  FinSet dom = read_finset(c["dom"]);
  FinSet cod = read_finset(c["cod"]);
  try {
    return FinFn(std::move(dom), std::move(cod), c["table"].indices());
  } catch (const Error& e) {
    c.fail(e.what());
  }
}

inline FinGroup read_group(const Cursor& c) {
  return FinGroup::validate(c["order"].index(), c["mul"].rows(), c["unit"].index(), c["inv"].indices());
}

inline FinGroupoid read_groupoid(const Cursor& c) {
  return FinGroupoid::validate(c["objects"].index(), c["arrows"].index(), c["src"].indices(), c["tgt"].indices(),
                               c["ident"].indices(), c["comp"].rows(true), c["inv"].indices());
}

/// Either an inline group/groupoid, or the name of one in `known`.
inline Algebra read_algebra(const Cursor& c, const std::map<std::string, Algebra>& known) {
  if (c.value().is_string()) {
    auto it = known.find(c.string());
    if (it == known.end()) c.fail("unknown algebra \"" + c.string() + "\"");
    return it->second;
  }
  if (c.has("order")) return make_algebra(read_group(c));
  return make_algebra(read_groupoid(c));
}

/// {"algebra": ref, "carrier": ..., "anchor": [..]?, "act": [[..]]}, with
/// act[g][x] = g . x and null where the action is undefined.
inline ActionObject read_action(const Cursor& c, const std::map<std::string, Algebra>& known) {
  Algebra alg = read_algebra(c["algebra"], known);
  FinSet carrier = read_finset(c["carrier"]);
  std::vector<Index> anchor = c.has("anchor") ? c["anchor"].indices() : std::vector<Index>(carrier.size(), 0);
  if (anchor.size() != carrier.size()) c["anchor"].fail("anchor has the wrong length");
  auto rows = c["act"].rows(true);
  if (rows.size() != alg->arrows()) c["act"].fail("expected one row per arrow");
  std::vector<Index> flat;
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != carrier.size()) c["act"][i].fail("row has the wrong length");
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  FinFn anchor_fn = [&] {
    try {
      return FinFn(carrier, FinSet(alg->objects()), anchor);
    } catch (const Error& e) {
      c["anchor"].fail(e.what());
    }
  }();
  return ActionObject::validate(alg, carrier, anchor_fn, std::move(flat));
}

/// {"action": ..., "base": ..., "proj": [..]}.
inline Bundle read_bundle(const Cursor& c, const std::map<std::string, Algebra>& known) {
  ActionObject a = read_action(c["action"], known);
  FinSet base = read_finset(c["base"]);
  FinFn proj = [&] {
    try {
      return FinFn(a.carrier(), base, c["proj"].indices());
    } catch (const Error& e) {
      c["proj"].fail(e.what());
    }
  }();
  return Bundle::make(std::move(a), std::move(base), std::move(proj));
}

// ---------------------------------------------------------------------------
// Writers.

inline json write(const FinSet& s) {
  json j{{"size", s.size()}};
  if (s.labels()) j["labels"] = *s.labels();
  return j;
}

inline json write(const FinFn& f) { return json{{"dom", write(f.dom())}, {"cod", write(f.cod())}, {"table", f.table()}}; }

inline json write_nullable_rows(const std::vector<std::vector<Index>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (Index v : row) r.push_back(v == npos ? json(nullptr) : json(v));
    out.push_back(std::move(r));
  }
  return out;
}

inline json write(const FinGroup& g) {
  return json{{"order", g.order()}, {"mul", g.mul_rows()}, {"unit", g.unit()}, {"inv", g.inv_table()}};
}

inline json write(const FinGroupoid& g) {
  return json{{"objects", g.objects()}, {"arrows", g.arrows()},       {"src", g.src_table()},
              {"tgt", g.tgt_table()},   {"ident", g.ident_table()}, {"comp", write_nullable_rows(g.comp_rows())},
              {"inv", g.inv_table()}};
}

/// An action, with its algebra given by name.
inline json write(const ActionObject& a, const std::string& algebra_name) {
  std::vector<std::vector<Index>> rows(a.algebra()->arrows(), std::vector<Index>(a.size()));
  for (Index g = 0; g < rows.size(); ++g)
    for (Index x = 0; x < a.size(); ++x) rows[g][x] = a.act(g, x);
  return json{{"algebra", algebra_name},
              {"carrier", write(a.carrier())},
              {"anchor", a.anchor().table()},
              {"act", write_nullable_rows(rows)}};
}

inline json write(const Bundle& b, const std::string& algebra_name) {
  return json{{"action", write(b.action, algebra_name)}, {"base", write(b.base)}, {"proj", b.proj.table()}};
}

inline json write(const CheckReport& r) {
  json bounds = json::object();
  for (const auto& [k, v] : r.bounds) bounds[k] = v;
  return json{{"check", r.check}, {"bounds", bounds}, {"pass", r.pass}, {"cases", r.cases}, {"witnesses", r.witnesses}};
}

inline json write(const Error& e) {
  return json{{"kind", to_string(e.kind())}, {"message", e.what()}, {"witness", e.witness()}};
}

}  // namespace frobundle::json
