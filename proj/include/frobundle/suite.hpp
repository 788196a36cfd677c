#pragma once

// Fixture loading and the four suites driven by the command-line tool.
// Reports are JSON documents; everything except the timing field is a pure
// function of the configuration and the fixture files.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "frobundle/frobenius.hpp"
#include "frobundle/json.hpp"
#include "frobundle/torsor.hpp"

namespace frobundle::suite {

using nlohmann::json;
namespace fj = frobundle::json;

struct RunConfig {
  std::string command;
  std::vector<std::string> fixtures;
  Index bound_group = 4;
  Index bound_carrier = 6;
  Index bound_base = 2;
  std::uint64_t seed = 0;
  std::string out;
  bool json_output = true;

  /// Defaults per command.
  static RunConfig defaults(const std::string& command) {
    RunConfig c;
    c.command = command;
    if (command == "verify") {
      c.bound_group = 8;
      c.bound_carrier = 4;
      c.bound_base = 3;
    } else if (command == "enumerate") {
      c.bound_group = 4;
      c.bound_carrier = 8;
      c.bound_base = 2;
    } else if (command == "glue") {
      c.bound_carrier = 4;
      c.bound_base = 2;
    }
    return c;
  }
};

struct Report {
  json body = json::object();
  double timing_ms = 0;
  bool pass = true;

  void add(const CheckReport& r) {
    pass = pass && r.pass;
    body["checks"].push_back(fj::write(r));
  }

  /// The report without its timing field.
  std::string canonical() const { return body.dump(2); }

  json document() const {
    json d = body;
    d["pass"] = pass;
    d["timing_ms"] = timing_ms;
    return d;
  }
};

// ---------------------------------------------------------------------------
// Fixtures.

struct NamedAlgebra {
  std::string name;
  Algebra algebra;
};

struct NamedBundle {
  std::string name;
  std::string algebra;
  Bundle bundle;
};

struct LoadFailure {
  std::string name;
  Error error;
};

struct FixtureSet {
  std::vector<NamedAlgebra> algebras;
  std::vector<NamedBundle> bundles;
  std::vector<LoadFailure> failures;
};

inline std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Reads groups/, groupoids/ and bundles/ under each directory, in file
/// name order. A file that fails to parse or validate becomes a LoadFailure;
/// a missing directory throws.
inline FixtureSet load_fixtures(const std::vector<std::string>& dirs) {
  FixtureSet fs;
  std::map<std::string, Algebra> known;
  auto name_of = [](const json& j, const std::filesystem::path& p) {
    return j.is_object() && j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : p.stem().string();
  };
  for (const auto& d : dirs)
    if (!std::filesystem::is_directory(d)) throw Error(ErrorKind::ParseError, d + ": not a fixture directory");
  for (const auto& d : dirs) {
    std::filesystem::path root(d);
    for (const char* sub : {"groups", "groupoids"}) {
      for (const auto& p : json_files(root / sub)) {
        std::string name = p.stem().string();
        try {
          json doc = fj::parse_file(p);
          name = name_of(doc, p);
          fj::Cursor c(doc, p.string());
          Algebra a = std::string(sub) == "groups" ? make_algebra(fj::read_group(c)) : make_algebra(fj::read_groupoid(c));
          known[name] = a;
          fs.algebras.push_back({name, a});
        } catch (const Error& e) {
          fs.failures.push_back({name, e});
        }
      }
    }
  }
  for (const auto& d : dirs) {
    for (const auto& p : json_files(std::filesystem::path(d) / "bundles")) {
      std::string name = p.stem().string();
      try {
        json doc = fj::parse_file(p);
        name = name_of(doc, p);
        fj::Cursor c(doc, p.string());
        std::string alg = doc.contains("action") && doc["action"].contains("algebra") && doc["action"]["algebra"].is_string()
                              ? doc["action"]["algebra"].get<std::string>()
                              : std::string("inline");
        fs.bundles.push_back({name, alg, fj::read_bundle(c, known)});
      } catch (const Error& e) {
        fs.failures.push_back({name, e});
      }
    }
  }
  return fs;
}

inline std::string describe(const Error& e) {
  std::string w;
  for (Index i = 0; i < e.witness().size(); ++i) w += (i ? ", " : "") + std::to_string(e.witness()[i]);
  return std::string(e.what()) + (w.empty() ? "" : " [" + w + "]");
}

inline CheckReport named(std::string check, std::vector<std::pair<std::string, Index>> bounds = {}) {
  CheckReport r{std::move(check)};
  r.bounds = std::move(bounds);
  return r;
}

/// Runs body, recording a thrown Error as a failure.
template <class F>
void guarded(CheckReport& r, const std::string& where, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    r.fail(where + ": " + describe(e));
  }
}

inline json config_json(const RunConfig& c) {
  return json{{"command", c.command},     {"fixtures", c.fixtures},     {"bound_group", c.bound_group},
              {"bound_carrier", c.bound_carrier}, {"bound_base", c.bound_base}, {"seed", c.seed}};
}

inline void report_failures(Report& rep, const FixtureSet& fs) {
  for (const auto& f : fs.failures) {
    CheckReport r = named("load:" + f.name);
    ++r.cases;
    r.fail(describe(f.error));
    rep.add(r);
    rep.body["failures"].push_back({{"fixture", f.name}, {"error", fj::write(f.error)}});
  }
}

// ---------------------------------------------------------------------------
// verify

/// Every action of a group on a carrier of each size up to k.
inline std::vector<ActionObject> all_group_actions(const Algebra& alg, Index k) {
  std::vector<ActionObject> out;
  for (Index n = 0; n <= k; ++n) {
    auto acts = enumerate_actions(alg, FinFn::constant(FinSet(n), FinSet(1), 0));
    out.insert(out.end(), acts.begin(), acts.end());
  }
  return out;
}

inline Index components(const FinGroupoid& g) {
  DisjointSets d(g.objects());
  for (Index a = 0; a < g.arrows(); ++a) d.unite(g.src(a), g.tgt(a));
  Index n = 0;
  for (Index o = 0; o < g.objects(); ++o) n += d.find(o) == o;
  return n;
}

inline void verify_algebra(Report& rep, const NamedAlgebra& a, const RunConfig& cfg) {
  const FinGroupoid& g = *a.algebra;
  const bool group = g.one_object();
  {
    CheckReport r = named("sigma_regular:" + a.name);
    ++r.cases;
    guarded(r, a.name, [&] {
      Index n = sigma(self_action(a.algebra)).set.size();
      if (n != g.objects()) r.fail("orbit count " + std::to_string(n) + ", expected " + std::to_string(g.objects()));
    });
    rep.add(r);
  }
  {
    CheckReport r = named("sigma_trivial:" + a.name, {{"base", cfg.bound_base}});
    auto sa = sigma_adjunction(a.algebra);
    for (Index x = 0; x <= cfg.bound_base; ++x) {
      ++r.cases;
      guarded(r, "X=" + std::to_string(x), [&] {
        FinFn eps = sa.counit(FinSet(x));
        bool ok = group ? is_bijection(eps) : eps.dom().size() == components(g) * x;
        if (!ok) r.fail("X=" + std::to_string(x));
      });
    }
    rep.add(r);
  }
  if (group) {
    CheckReport r = named("untwist:" + a.name, {{"carrier", cfg.bound_carrier}});
    for (const auto& act : all_group_actions(a.algebra, cfg.bound_carrier)) {
      ++r.cases;
      guarded(r, "action on " + std::to_string(act.size()), [&] {
        UntwistIso u = untwist_iso(act);
        if (!u.certificate.valid()) r.fail("certificate invalid on carrier " + std::to_string(act.size()));
      });
    }
    rep.add(r);
  }
  {
    auto sa = sigma_adjunction(a.algebra);
    auto xs = family(sa.target, cfg.bound_base);
    auto as = family(sa.source, cfg.bound_carrier);
    CheckReport f = check_frobenius(sa, xs, as);
    f.check = "sigma_frobenius:" + a.name;
    f.bounds.insert(f.bounds.begin(), {{"base", cfg.bound_base}, {"carrier", cfg.bound_carrier}});
    rep.add(f);
    CheckReport t = check_triangles(sa, xs, as);
    t.check = "sigma_triangles:" + a.name;
    rep.add(t);
  }
}

inline void verify_bundle(Report& rep, const NamedBundle& b) {
  CheckReport r = named("bundle:" + b.name);
  ++r.cases;
  guarded(r, b.name, [&] {
    TorsorWitness w = is_principal_bundle(b.bundle);
    DivisionReport d = division_map(w);
    r.cases += d.law_instances;
    FinFn id = FinFn::identity(b.bundle.base);
    GluedObject glued = glue_descent_data(b.bundle.proj, canonical_descent_datum(b.bundle.proj, id));
    if (!is_bijection(glued.glued)) r.fail("descent along the projection does not recover the base");
  });
  rep.add(r);
}

inline Report run_verify(const RunConfig& cfg) {
  Report rep;
  rep.body["config"] = config_json(cfg);
  rep.body["checks"] = json::array();
  FixtureSet fs = load_fixtures(cfg.fixtures);
  report_failures(rep, fs);
  for (const auto& a : fs.algebras) {
    if (a.algebra->arrows() > cfg.bound_group) continue;
    verify_algebra(rep, a, cfg);
  }
  for (const auto& b : fs.bundles) verify_bundle(rep, b);
  return rep;
}

// ---------------------------------------------------------------------------
// enumerate

inline Report run_enumerate(const RunConfig& cfg) {
  if (cfg.bound_carrier > kMaxTorsorCarrier) {
    throw Error(ErrorKind::BoundsExceeded, "carrier bound " + std::to_string(cfg.bound_carrier) + " exceeds " +
                                               std::to_string(kMaxTorsorCarrier));
  }
  Report rep;
  rep.body["config"] = config_json(cfg);
  rep.body["checks"] = json::array();
  rep.body["enumerations"] = json::array();
  FixtureSet fs = load_fixtures(cfg.fixtures);
  report_failures(rep, fs);
  for (const auto& a : fs.algebras) {
    if (a.algebra->arrows() > cfg.bound_group) continue;
    for (Index x = 0; x <= cfg.bound_base; ++x)
      for (Index p = 0; p <= cfg.bound_carrier; ++p) {
        TorsorEnumeration e = enumerate_torsors(a.algebra, FinSet(x), FinSet(p));
        if (e.structures.empty()) continue;
        json reps = json::array();
        for (Index r : e.representatives) reps.push_back(fj::write(e.structures[r].bundle, a.name));
        rep.body["enumerations"].push_back({{"algebra", a.name},
                                            {"base", x},
                                            {"carrier", p},
                                            {"structures", e.structures.size()},
                                            {"classes", e.class_count()},
                                            {"candidates", e.candidates_tested},
                                            {"representatives", reps}});
      }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// theorem

/// Family bounds for the per-bundle checks.
inline constexpr FrobeniusBounds kBundleBounds{4, 3, 3};
/// Family bounds for Sigma -| G*.
inline constexpr FrobeniusBounds kSigmaBounds{4, 4, 3};
/// Base sizes for the discrete-groupoid instance.
inline constexpr Index kDiscreteBase = 3;
/// Sets Y in the tensor identity P (x) G*Y = X x Y.
inline constexpr Index kTensorTrivialMax = 3;

inline std::vector<std::pair<std::string, Index>> bounds_of(const FrobeniusBounds& b) {
  return {{"base_carrier", b.base_carrier}, {"c_carrier", b.c_carrier}, {"d_carrier", b.d_carrier}};
}

struct BundleChecks {
  CheckReport round_trip, triangles, over_base, left_adjoints, stable, agreement, tensor_ids, factorization,
      transformations, negatives;
  Index frobenius_negatives = 0;  // corrupted presentations failing both Frobenius checks
};

inline BundleChecks make_bundle_checks(const std::string& tag, Index carrier) {
  auto b = bounds_of(kBundleBounds);
  b.emplace_back("carrier", carrier);
  return BundleChecks{named("round_trip:" + tag, b),     named("triangles:" + tag, b),
                      named("over_base:" + tag, b),      named("left_adjoints:" + tag, b),
                      named("stably_frobenius:" + tag, b), named("corollary_agreement:" + tag, b),
                      named("tensor_identities:" + tag, {{"carrier", carrier}, {"trivial_sets", kTensorTrivialMax}}),
                      named("factorization:" + tag, b),  named("induced_transformations:" + tag, b),
                      named("negative_controls:" + tag, b), 0};
}

inline void check_structure(BundleChecks& c, const TorsorWitness& w, const std::string& where, bool representative) {
  const FrobeniusBounds& fb = kBundleBounds;
  AdjunctionOverBase ab = bundle_to_adjunction(w);
  auto as = family(ab.adj.target, fb.c_carrier);
  auto ws = family(ab.adj.source, fb.d_carrier);
  auto ms = morphisms_among(ab.adj.source, ws);

  ++c.round_trip.cases;
  guarded(c.round_trip, where, [&] {
    TorsorWitness back = adjunction_to_bundle(ab, fb);
    if (!find_bundle_iso(w.bundle, back.bundle)) c.round_trip.fail(where + ": recovered bundle is not isomorphic");
    c.left_adjoints.absorb(compare_left_adjoints(ab, back, ws, ms), where + ": ");
  });
  c.triangles.absorb(check_triangles(ab.adj, as, ws), where + ": ");
  c.over_base.absorb(check_over_base(ab, ws, ms), where + ": ");

  AgreementReport cor = corollary_slice_criterion(ab, fb);
  c.stable.absorb(cor.full, where + ": ");
  ++c.agreement.cases;
  if (!cor.agree()) c.agreement.fail(where + ": slice criterion and stable check disagree");

  ++c.tensor_ids.cases;
  guarded(c.tensor_ids, where, [&] {
    tensor_regular_iso(w);
    for (Index y = 0; y <= kTensorTrivialMax; ++y) tensor_trivial_iso(w, FinSet(y));
  });

  if (!representative) return;
  ++c.factorization.cases;
  guarded(c.factorization, where, [&] {
    SliceFactorization f = factor_to_slice(ab);
    CheckReport fr = check_frobenius(f.composite, family(f.composite.target, fb.c_carrier), family(f.composite.source, fb.d_carrier));
    c.factorization.absorb(fr, where + ": ");
    if (fr.pass != cor.full.pass) c.factorization.fail(where + ": factored Frobenius disagrees with the stable check");
    c.factorization.absorb(check_factor_recompose(ab, f, ws), where + ": ");
  });

  // Only a corruption that moves some counit component is a negative.
  AdjunctionOverBase corrupted = corrupted_counit(ab);
  bool moved = std::any_of(as.begin(), as.end(), [&](const ActionObject& a) {
    return !(corrupted.adj.counit(a).map == ab.adj.counit(a).map);
  });
  if (moved) {
    ++c.negatives.cases;
    ++c.agreement.cases;
    AgreementReport bad = corollary_slice_criterion(corrupted, fb);
    if (!bad.agree()) c.agreement.fail(where + "/corrupted: slice criterion and stable check disagree");
    bool triangles_hold = false;
    try {
      triangles_hold = check_triangles(corrupted.adj, as, ws).pass;
    } catch (const Error&) {
    }
    if (triangles_hold) c.negatives.fail(where + "/corrupted: triangles still hold");
    if (!bad.criterion.pass && !bad.full.pass) ++c.frobenius_negatives;
  }
}

inline void theorem_bundles(Report& rep, const NamedAlgebra& a, const RunConfig& cfg) {
  for (Index x = 0; x <= cfg.bound_base; ++x) {
    std::string tag = a.name + ":X=" + std::to_string(x);
    BundleChecks c = make_bundle_checks(tag, cfg.bound_carrier);
    Index structures = 0;
    for (Index p = 0; p <= cfg.bound_carrier; ++p) {
      TorsorEnumeration e = enumerate_torsors(a.algebra, FinSet(x), FinSet(p));
      structures += e.structures.size();
      for (Index i = 0; i < e.structures.size(); ++i) {
        bool is_rep = e.representatives[e.class_of[i]] == i;
        check_structure(c, e.structures[i], "P=" + std::to_string(p) + "#" + std::to_string(i), is_rep);
        if (is_rep) continue;
        const TorsorWitness& r = e.structures[e.representatives[e.class_of[i]]];
        auto phi = find_bundle_iso(r.bundle, e.structures[i].bundle);
        ++c.transformations.cases;
        if (!phi) {
          c.transformations.fail("P=" + std::to_string(p) + "#" + std::to_string(i) + ": no isomorphism to its class");
          continue;
        }
        AdjunctionOverBase ab = bundle_to_adjunction(r);
        auto ws = family(ab.adj.source, kBundleBounds.d_carrier);
        c.transformations.absorb(induced_transformation(r, e.structures[i], *phi, ws, morphisms_among(ab.adj.source, ws)));
      }
    }
    for (CheckReport* r : {&c.round_trip, &c.triangles, &c.over_base, &c.left_adjoints, &c.stable, &c.agreement,
                           &c.tensor_ids, &c.factorization, &c.transformations, &c.negatives}) {
      r->bounds.emplace_back("structures", structures);
      if (r == &c.negatives) r->bounds.emplace_back("frobenius_detected", c.frobenius_negatives);
      rep.add(*r);
    }
  }
}

/// G* -| fixed points is over C but not Frobenius for a nontrivial group.
inline void theorem_trivial_action_control(Report& rep, const NamedAlgebra& a) {
  CheckReport r = named("trivial_action_control:" + a.name, bounds_of(kBundleBounds));
  ++r.cases;
  AdjunctionOverBase ab = trivial_action_adjunction(a.algebra);
  bool trivial = a.algebra->arrows() == 1;
  try {
    adjunction_to_bundle(ab, kBundleBounds);
    if (!trivial) r.fail("accepted as a bundle presentation");
  } catch (const Error& e) {
    if (trivial || e.kind() != ErrorKind::FrobeniusFail) r.fail(describe(e));
  }
  ++r.cases;
  AgreementReport cor = corollary_slice_criterion(ab, kBundleBounds);
  if (!cor.agree()) r.fail("slice criterion and stable check disagree");
  rep.add(r);
}

inline Index power(Index b, Index e) {
  Index r = 1;
  while (e--) r *= b;
  return r;
}

inline Index factorial(Index n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline void theorem_discrete(Report& rep, const NamedAlgebra& a) {
  const FinGroupoid& g = *a.algebra;
  CheckReport counts = named("discrete_counts:" + a.name, {{"base", kDiscreteBase}});
  CheckReport cmp = named("discrete_pullback:" + a.name, {{"base", kDiscreteBase}, {"c_carrier", kBundleBounds.c_carrier},
                                                          {"d_carrier", kBundleBounds.d_carrier}});
  const Index s = g.objects();
  for (Index x = 0; x <= kDiscreteBase; ++x) {
    ++counts.cases;
    TorsorEnumeration e = enumerate_torsors(a.algebra, FinSet(x), FinSet(x));
    if (e.class_count() != power(s, x) || e.structures.size() != factorial(x) * power(s, x)) {
      counts.fail("X=" + std::to_string(x) + ": " + std::to_string(e.class_count()) + " classes, " +
                  std::to_string(e.structures.size()) + " structures");
    }
    for (Index r : e.representatives) {
      const TorsorWitness& w = e.structures[r];
      AdjunctionOverBase ab = bundle_to_adjunction(w);
      auto ws = family(ab.adj.source, kBundleBounds.d_carrier);
      auto as = family(ab.adj.target, kBundleBounds.c_carrier);
      cmp.absorb(compare_with_pullback_adjunction(w, ws, as, morphisms_among(ab.adj.source, ws)),
                 "X=" + std::to_string(x) + "#" + std::to_string(r) + ": ");
    }
  }
  rep.add(counts);
  rep.add(cmp);
}

/// G-sets over G*X against (G x X)-sets in C/X: round trip on every map
/// from the family into G*X, and agreement of the two bundle predicates.
inline void theorem_slice_translation(Report& rep, const NamedAlgebra& a, const RunConfig& cfg) {
  CheckReport r = named("slice_translation:" + a.name, {{"base", cfg.bound_base}, {"carrier", kBundleBounds.c_carrier}});
  ActionCat cat(a.algebra);
  for (Index x = 0; x <= cfg.bound_base; ++x) {
    ActionObject gx = trivial_action(a.algebra, FinSet(x));
    for (const auto& m : cat.slices_over(gx, kBundleBounds.c_carrier)) {
      ++r.cases;
      guarded(r, "X=" + std::to_string(x), [&] {
        SlicedAction s = to_sliced(m);
        EquivariantMap back = from_sliced(s);
        if (!(back.dom == m.dom) || !(back.map == m.map)) r.fail("round trip differs at X=" + std::to_string(x));
        bool principal = try_principal_bundle(Bundle::make(m.dom, FinSet(x), m.map)).has_value();
        if (principal != is_principal_sliced(s)) r.fail("predicates disagree at X=" + std::to_string(x));
      });
    }
  }
  rep.add(r);
}

inline Report run_theorem(const RunConfig& cfg) {
  Report rep;
  rep.body["config"] = config_json(cfg);
  rep.body["family_bounds"] = {{"bundle", bounds_of(kBundleBounds)}, {"sigma", bounds_of(kSigmaBounds)}};
  rep.body["checks"] = json::array();
  FixtureSet fs = load_fixtures(cfg.fixtures);
  report_failures(rep, fs);
  for (const auto& a : fs.algebras) {
    if (a.algebra->arrows() > cfg.bound_group) continue;
    const FinGroupoid& g = *a.algebra;
    auto sa = sigma_adjunction(a.algebra);
    CheckReport st = check_stably_frobenius(sa, kSigmaBounds);
    st.check = "sigma_stably_frobenius:" + a.name;
    rep.add(st);
    theorem_bundles(rep, a, cfg);
    if (g.one_object()) {
      theorem_trivial_action_control(rep, a);
      theorem_slice_translation(rep, a, cfg);
    }
    if (g.arrows() == g.objects()) theorem_discrete(rep, a);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// glue

/// Exhaustive descent along every surjection f: P -> X with |P| up to
/// bound_carrier and |X| up to bound_base, for data with |Y| up to
/// bound_carrier: every datum glues with a certificate, every Z over X
/// is recovered from its canonical datum, and maps of canonical data
/// correspond to maps over X.
inline Report run_glue(const RunConfig& cfg) {
  Report rep;
  rep.body["config"] = config_json(cfg);
  rep.body["checks"] = json::array();
  std::vector<std::pair<std::string, Index>> b{{"base", cfg.bound_base}, {"carrier", cfg.bound_carrier}};
  CheckReport glue = named("descent_glue", b), surj = named("descent_essentially_surjective", b),
              full = named("descent_fully_faithful", b);
  Index data = 0;
  for (Index x = 0; x <= cfg.bound_base; ++x)
    for (Index p = 0; p <= cfg.bound_carrier; ++p)
      for_each_function(p, x, [&](const std::vector<Index>& t) {
        FinFn f(FinSet(p), FinSet(x), t);
        if (!is_surjection(f)) return;
        std::string where = "f=" + json(t).dump();
        for (Index y = 0; y <= cfg.bound_carrier; ++y)
          for_each_descent_datum(f, y, [&](const DescentDatum& d) {
            ++glue.cases;
            ++data;
            guarded(glue, where, [&] { glue_descent_data(f, d); });
          });
        std::vector<FinFn> zs;
        for (Index z = 0; z <= cfg.bound_carrier; ++z)
          for_each_function(z, x, [&](const std::vector<Index>& zt) {
            FinFn zf(FinSet(z), FinSet(x), zt);
            if (pullback(f, zf).set.size() <= cfg.bound_carrier) zs.push_back(zf);
          });
        for (const auto& z : zs) {
          ++surj.cases;
          guarded(surj, where, [&] {
            GluedObject g = glue_descent_data(f, canonical_descent_datum(f, z));
            // Each class is the image of the elements (p, z) for a single z.
            std::vector<Index> to(g.glued.dom().size());
            Pullback fz = pullback(f, z);
            for (Index e = 0; e < fz.set.size(); ++e) to[g.classes.map(e)] = fz.elements[e].second;
            FinFn cmp(g.glued.dom(), z.dom(), std::move(to));
            if (!is_bijection(cmp) || !(compose(z, cmp) == g.glued)) surj.fail(where + ": Z=" + json(z.table()).dump());
          });
        }
        for (const auto& z1 : zs)
          for (const auto& z2 : zs) {
            if (power(z2.dom().size(), z1.dom().size()) > 4096) continue;
            ++full.cases;
            Index over_x = 0;
            for_each_function(z1.dom().size(), z2.dom().size(), [&](const std::vector<Index>& m) {
              for (Index i = 0; i < m.size(); ++i)
                if (z2(m[i]) != z1(i)) return;
              ++over_x;
            });
            Index over_p = count_descent_morphisms(f, canonical_descent_datum(f, z1), canonical_descent_datum(f, z2));
            if (over_x != over_p) {
              full.fail(where + ": " + std::to_string(over_x) + " maps over X, " + std::to_string(over_p) + " maps of data");
            }
          }
      });
  glue.bounds.emplace_back("data", data);
  rep.add(glue);
  rep.add(surj);
  rep.add(full);
  return rep;
}

// ---------------------------------------------------------------------------

inline Report run(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  if (cfg.command == "verify") rep = run_verify(cfg);
  else if (cfg.command == "enumerate") rep = run_enumerate(cfg);
  else if (cfg.command == "theorem") rep = run_theorem(cfg);
  else if (cfg.command == "glue") rep = run_glue(cfg);
  else throw Error(ErrorKind::ParseError, "unknown command \"" + cfg.command + "\"");
  rep.body["command"] = cfg.command;
  rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace frobundle::suite
