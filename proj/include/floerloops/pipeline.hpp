#pragma once

#include "json_io.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

namespace floerloops {

struct RunConfig {
  GeometryConfig geometry;
  Twist twist = Twist::none;
  std::string mutate;
  bool timing = false;
};

inline const std::vector<std::string>& mutation_names() {
  static const std::vector<std::string> names{"mu2_sign", "functor_zero", "flat_sign", "path_product_sign"};
  return names;
}

/// Throws Error on configurations outside the supported range.
inline void validate_run_config(const RunConfig& cfg) {
  validate_geometry(cfg.geometry.geometry);
  if (cfg.geometry.winding_bound < 1) throw Error("winding bound must be at least 1");
  if (cfg.geometry.max_d < 2 || cfg.geometry.max_d > 4) throw Error("max_d must lie in [2,4]");
  if (!cfg.mutate.empty() &&
      std::find(mutation_names().begin(), mutation_names().end(), cfg.mutate) == mutation_names().end())
    throw Error("unknown mutation " + cfg.mutate);
}

struct Report {
  std::string check;
  bool passed = true;
  Json witness;
  Json details;
  double seconds = 0;
};

inline Json report_to_json(const Report& r, bool timing) {
  Json j{{"check", r.check}, {"status", r.passed ? "pass" : "fail"}, {"details", r.details}};
  if (!r.passed) j["witness"] = r.witness;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

inline bool all_passed(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed; });
}

inline Json reports_to_json(const std::vector<Report>& reports, bool timing) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r, timing));
  return {{"schema_version", schema_version}, {"passed", all_passed(reports)}, {"reports", arr}};
}

/// A functor given by a function on tuples, with the identity on objects.
template <class K, class E>
class FunctionFunctor {
 public:
  using key_type = K;
  explicit FunctionFunctor(std::function<E(std::span<const K>)> f) : f_(std::move(f)) {}
  int object(int a) const { return a; }
  E apply(std::span<const K> xs) const { return f_(xs); }

 private:
  std::function<E(std::span<const K>)> f_;
};

namespace detail {

template <class F>
Report timed(const std::string& name, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.check = name;
  try {
    body(r);
  } catch (const Error& e) {
    r.passed = false;
    r.witness = {{"problem", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

template <class C>
Json tuple_names(const C& cat, const std::vector<typename C::key_type>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(cat.name(x));
  return out;
}

}  // namespace detail

/// Everything check-all needs, independent of whether it was built from geometry or
/// imported from a bundle.
template <AInftyCategory C, PathModel M>
struct SuiteInput {
  using Target = TwTarget<PontryaginCategory<M>>;
  using Functor = FunctionFunctor<typename C::key_type, typename Target::element_type>;

  const C* category = nullptr;
  const M* model = nullptr;
  std::vector<TwistedComplex<typename M::key_type>> objects;
  StratifiedModuli moduli;
  CylinderGeometry geometry;
  std::vector<std::pair<std::string, int>> chord_degrees;
  int max_d = 4;
  std::function<Functor(const FundamentalChain*)> make_functor;
};

template <AInftyCategory C, PathModel M>
std::vector<Report> run_suite(const SuiteInput<C, M>& in) {
  using PK = typename M::key_type;
  const C& cat = *in.category;
  const M& model = *in.model;
  PontryaginCategory<M> pcat(model);
  auto pname = [&](const PK& k) { return model.name(k); };
  auto cname = [&](const typename C::key_type& k) { return cat.name(k); };
  std::vector<Report> out;

  out.push_back(detail::timed("maslov", [&](Report& r) {
    const int oracle = maslov_rotation_oracle(in.geometry);
    for (const auto& [name, degree] : in.chord_degrees)
      if (degree != oracle) {
        r.passed = false;
        r.witness = {{"chord", name}, {"degree", degree}, {"oracle", oracle}};
        break;
      }
    r.details = {{"chords", in.chord_degrees.size()}};
  }));

  out.push_back(detail::timed("validate_path_model", [&](Report& r) {
    auto rep = validate_path_model(model);
    r.passed = rep.passed;
    r.details = {{"points", model.point_count()}};
    if (!rep.passed) {
      Json w = Json::array();
      for (const auto& k : rep.witness) w.push_back(model.name(k));
      r.witness = {{"check", rep.check}, {"elements", w}, {"residual", chain_to_json(rep.residual, pname)}};
    }
  }));

  out.push_back(detail::timed("check_ainfty", [&](Report& r) {
    auto rep = check_ainfty(cat, in.max_d);
    r.passed = rep.passed;
    r.details = {{"max_d", rep.max_d}, {"tuples_checked", rep.tuples_checked}};
    if (rep.witness)
      r.witness = {{"tuple", detail::tuple_names(cat, rep.witness->tuple)},
                   {"residual", chain_to_json(rep.witness->residual, cname)},
                   {"problem", rep.witness->problem}};
  }));

  out.push_back(detail::timed("validate_twisted", [&](Report& r) {
    r.details = {{"complexes", in.objects.size()}};
    for (std::size_t i = 0; i < in.objects.size(); ++i) {
      auto rep = validate_twisted(pcat, in.objects[i]);
      if (!rep.passed) {
        r.passed = false;
        r.witness = {{"complex", i}, {"problem", rep.problem}, {"residual", chain_to_json(rep.residual, pname)}};
        if (rep.entry) r.witness["entry"] = {rep.entry->first, rep.entry->second};
        break;
      }
    }
  }));

  out.push_back(detail::timed("check_tw_dg", [&](Report& r) {
    auto rep = check_tw_dg(pcat, in.objects);
    r.passed = rep.passed;
    r.details = {{"checks", rep.checks}};
    if (!rep.passed) {
      Json ms = Json::array();
      for (const auto& m : rep.morphisms) ms.push_back(tw_morphism_to_json(m, pname));
      r.witness = {{"problem", rep.problem},
                   {"complexes", rep.complexes},
                   {"morphisms", ms},
                   {"residual", tw_morphism_to_json(rep.residual, pname)}};
    }
  }));

  std::optional<FundamentalChain> chains;
  out.push_back(detail::timed("fundamental_chains", [&](Report& r) {
    std::size_t one_cells = 0;
    for (const auto& c : in.moduli.cells) one_cells += c.dimension == 1;
    r.details = {{"cells", in.moduli.cells.size()}, {"one_cells", one_cells}};
    try {
      FundamentalChain f = choose_fundamental_chains(in.moduli);
      auto rep = verify_boundary_consistency(in.moduli, f);
      r.passed = rep.passed;
      if (!rep.passed)
        r.witness = {{"cell", rep.cell}, {"problem", rep.problem}, {"residual", cell_chain_to_json(rep.residual)}};
      else
        chains = std::move(f);
    } catch (const ModuliError& e) {
      r.passed = false;
      r.witness = {{"cell", e.report.cell}, {"problem", e.report.problem},
                   {"residual", cell_chain_to_json(e.report.residual)}};
    }
  }));

  out.push_back(detail::timed("check_functor", [&](Report& r) {
    typename SuiteInput<C, M>::Target target(pcat, in.objects);
    auto functor = in.make_functor(chains ? &*chains : nullptr);
    auto rep = check_functor(cat, target, functor, 2);
    r.passed = rep.passed;
    r.details = {{"max_d", rep.max_d}, {"tuples_checked", rep.tuples_checked}};
    if (rep.witness)
      r.witness = {{"tuple", detail::tuple_names(cat, rep.witness->tuple)},
                   {"residual", tw_morphism_to_json(rep.witness->residual.matrix, pname)},
                   {"problem", rep.witness->problem}};
  }));
  return out;
}

// ---------------------------------------------------------------------------
// Mutations

inline void flip_first_flat_stratum(StratifiedModuli& m) {
  for (auto& [id, strata] : m.boundary)
    for (auto& s : strata)
      if (s.kind == StratumKind::flat) {
        s.flipped = !s.flipped;
        return;
      }
  throw Error("no flat stratum to mutate");
}

/// Runs the suite, wrapping the category and path model when a mutation asks for it.
/// `mu2_key` and `path_key` name the elements whose products are negated.
template <AInftyCategory C, PathModel M, class Build>
std::vector<Report> run_with_mutations(const RunConfig& cfg, const C& cat, const M& model,
                                       const typename C::key_type& mu2_key, const typename M::key_type& path_key,
                                       Build&& build) {
  if (cfg.mutate == "mu2_sign") {
    SignFlippedCategory<C> flipped(cat, {mu2_key, mu2_key});
    return run_suite(build(flipped, model));
  }
  if (cfg.mutate == "path_product_sign") {
    FlippedCompositionModel<M> flipped(model, path_key, path_key);
    return run_suite(build(cat, flipped));
  }
  return run_suite(build(cat, model));
}

// ---------------------------------------------------------------------------
// Geometry runs

inline CylinderCategory make_category(const RunConfig& cfg) {
  return CylinderCategory(cfg.geometry.geometry, {cfg.geometry.winding_bound, cfg.twist, Tokens::positive});
}

inline CircleModel make_circle_model(const RunConfig& cfg) {
  return CircleModel(cfg.geometry.geometry.fibers, cfg.geometry.winding_bound);
}

inline std::vector<TwistedComplex<PathClass>> make_F_objects(const CylinderGeometry& g) {
  std::vector<TwistedComplex<PathClass>> out;
  for (int a = 0; a < static_cast<int>(g.fibers.size()); ++a) out.push_back(build_F_object(g, a));
  return out;
}

inline StratifiedModuli make_cylinder_moduli(const CylinderCategory& cat) {
  CylinderFunctor f(cat);
  const long long W = cat.options().winding_bound;
  return cylinder_moduli(cat, f, W, std::min<long long>(W, 1));
}

inline std::vector<Report> check_all_geometry(const RunConfig& cfg) {
  validate_run_config(cfg);
  CylinderCategory cat = make_category(cfg);
  CircleModel model = make_circle_model(cfg);
  StratifiedModuli moduli = make_cylinder_moduli(cat);
  if (cfg.mutate == "flat_sign") flip_first_flat_stratum(moduli);
  const ChordKey mutated{0, 0, 1};
  auto build = [&](const auto& c, const auto& m) {
    using C = std::decay_t<decltype(c)>;
    using M = std::decay_t<decltype(m)>;
    SuiteInput<C, M> in;
    in.category = &c;
    in.model = &m;
    in.objects = make_F_objects(cfg.geometry.geometry);
    in.moduli = moduli;
    in.geometry = cfg.geometry.geometry;
    for (int a = 0; a < cat.object_count(); ++a)
      for (int b = 0; b < cat.object_count(); ++b)
        for (const auto& x : cat.basis(a, b)) in.chord_degrees.emplace_back(cat.name(x), cat.degree(x));
    in.max_d = cfg.geometry.max_d;
    in.make_functor = [&cat, &cfg, mutated](const FundamentalChain* chains) {
      using E = typename SuiteInput<C, M>::Target::element_type;
      auto f = std::make_shared<CylinderFunctor>(cat, chains);
      if (cfg.mutate == "functor_zero") f->zero_on(mutated);
      return typename SuiteInput<C, M>::Functor([f](std::span<const ChordKey> xs) {
        auto e = f->apply(xs);
        return E{e.source, e.target, std::move(e.matrix)};
      });
    };
    return in;
  };
  return run_with_mutations(cfg, cat, model, mutated, PathClass{0, 0, 1}, build);
}

// ---------------------------------------------------------------------------
// Bundles

struct Bundle {
  GeometryConfig config;
  Twist twist = Twist::none;
  TableCategory category;
  TablePathModel path_model{std::vector<std::string>{}};
  std::vector<TwistedComplex<int>> objects;
  std::vector<std::pair<std::vector<int>, TwMorphism<int>>> functor;
  StratifiedModuli moduli;
};

/// Auxiliary window of exported tables. Checks of arity at most 4 with vanishing mu_3
/// feed at most two basis elements through mu_2 before a third is attached, so
/// outputs stay within three times the winding bound.
inline long long aux_window(long long winding_bound) { return 3 * winding_bound; }

inline Bundle build_bundle(const RunConfig& cfg) {
  validate_run_config(cfg);
  CylinderCategory cat = make_category(cfg);
  CircleModel model = make_circle_model(cfg);
  const long long A = aux_window(cfg.geometry.winding_bound);
  Bundle b;
  b.config = cfg.geometry;
  b.twist = cfg.twist;
  b.category = tabulate(cat, A, cfg.geometry.max_d);
  b.path_model = tabulate(model, A);
  for (const auto& t : make_F_objects(cfg.geometry.geometry)) {
    TwistedComplex<int> tt;
    tt.summands = t.summands;
    for (const auto& [ij, c] : t.differential.entries) {
      Chain<int> ci;
      for (const auto& [k, coeff] : c) ci.add(b.path_model.find(model.name(k)), coeff);
      tt.differential.add(ij, ci);
    }
    b.objects.push_back(std::move(tt));
  }
  CylinderFunctor f(cat);
  for (int a = 0; a < cat.object_count(); ++a)
    for (int c = 0; c < cat.object_count(); ++c)
      for (long long k = -A; k <= A; ++k) {
        ChordKey one[1] = {{a, c, k}};
        TwMorphism<int> m;
        for (const auto& [ij, chain] : f.apply(one).matrix.entries) {
          Chain<int> ci;
          for (const auto& [pk, coeff] : chain) {
            if (!b.path_model.has_generator(model.name(pk))) throw Error("functor image leaves the tabulated window");
            ci.add(b.path_model.find(model.name(pk)), coeff);
          }
          m.add(ij, ci);
        }
        if (!m.is_zero()) b.functor.emplace_back(std::vector<int>{b.category.find(chord_name(one[0]))}, std::move(m));
      }
  b.moduli = make_cylinder_moduli(cat);
  return b;
}

inline Json bundle_to_json(const Bundle& b) {
  auto pname = [&](int k) { return b.path_model.name(k); };
  auto oname = [&](int a) { return b.path_model.point_name(a); };
  Json objects = Json::array();
  for (const auto& t : b.objects) objects.push_back(twisted_to_json(t, oname, pname));
  Json functor = Json::array();
  for (const auto& [in, m] : b.functor) {
    Json names = Json::array();
    for (int k : in) names.push_back(b.category.name(k));
    functor.push_back({{"inputs", names}, {"matrix", tw_morphism_to_json(m, pname)}});
  }
  Json cfg = geometry_config_to_json(b.config);
  cfg["twist"] = to_string(b.twist);
  return {{"schema_version", schema_version},
          {"kind", "bundle"},
          {"config", cfg},
          {"category", category_to_json(b.category)},
          {"path_model", path_model_to_json(b.path_model)},
          {"twisted_complexes", objects},
          {"functor", functor},
          {"moduli", moduli_to_json(b.moduli)}};
}

inline Bundle bundle_from_json(const Json& j) {
  if (j.value("schema_version", 0) != schema_version) throw Error("unsupported schema_version");
  Bundle b;
  b.config = geometry_config_from_json(j.at("config"));
  b.twist = twist_from_string(j.at("config").value("twist", std::string("none")));
  b.category = category_from_json(j.at("category"));
  b.path_model = path_model_from_json(j.at("path_model"));
  if (b.path_model.point_count() != b.category.object_count())
    throw Error("path model and category have different numbers of objects");
  auto point = [&](const std::string& n) {
    for (int p = 0; p < b.path_model.point_count(); ++p)
      if (b.path_model.point_name(p) == n) return p;
    throw Error("unknown point " + n);
  };
  auto find = [&](const std::string& n) { return b.path_model.find(n); };
  for (const auto& t : j.at("twisted_complexes")) b.objects.push_back(twisted_from_json<int>(t, point, find));
  for (const auto& e : j.at("functor")) {
    std::vector<int> in;
    for (const auto& n : e.at("inputs")) in.push_back(b.category.find(n.get<std::string>()));
    b.functor.emplace_back(std::move(in), tw_morphism_from_json<int>(e.at("matrix"), find));
  }
  b.moduli = moduli_from_json(j.at("moduli"));
  return b;
}

inline bool is_bundle(const Json& j) { return j.is_object() && j.value("kind", std::string()) == "bundle"; }

inline std::vector<Report> check_all_bundle(const Bundle& b, const RunConfig& cfg) {
  StratifiedModuli moduli = b.moduli;
  if (cfg.mutate == "flat_sign") flip_first_flat_stratum(moduli);
  std::map<std::vector<int>, TwMorphism<int>> table(b.functor.begin(), b.functor.end());
  const int mutated = b.category.find(chord_name({0, 0, 1}));
  const int path_mutated = b.path_model.find(CircleModel(b.config.geometry.fibers, 0).name(PathClass{0, 0, 1}));
  auto build = [&](const auto& c, const auto& m) {
    using C = std::decay_t<decltype(c)>;
    using M = std::decay_t<decltype(m)>;
    SuiteInput<C, M> in;
    in.category = &c;
    in.model = &m;
    in.objects = b.objects;
    in.moduli = moduli;
    in.geometry = b.config.geometry;
    for (int a = 0; a < b.category.object_count(); ++a)
      for (int bb = 0; bb < b.category.object_count(); ++bb)
        for (int k : b.category.basis(a, bb)) in.chord_degrees.emplace_back(b.category.name(k), b.category.degree(k));
    in.max_d = b.config.max_d;
    in.make_functor = [&](const FundamentalChain* chains) {
      using E = typename SuiteInput<C, M>::Target::element_type;
      return typename SuiteInput<C, M>::Functor([&, chains](std::span<const int> xs) {
        E e{b.category.source(xs.front()), b.category.target(xs.back()), {}};
        if (cfg.mutate == "functor_zero" && xs.size() == 1 && xs[0] == mutated) return e;
        if (chains && xs.size() == 2) {
          std::vector<std::string> names{b.category.name(xs[0]), b.category.name(xs[1])};
          if (!chains->cells.count(half_disc_cell_id(names)))
            throw Error("no fundamental chain for " + half_disc_cell_id(names));
        }
        auto it = table.find(std::vector<int>(xs.begin(), xs.end()));
        if (it != table.end()) e.matrix = it->second;
        return e;
      });
    };
    return in;
  };
  return run_with_mutations(cfg, b.category, b.path_model, mutated, path_mutated, build);
}

// ---------------------------------------------------------------------------
// The S^1 demo

struct DemoResult {
  bool ring_isomorphism = true;
  std::string reason;
};

/// Prints the chord basis, the F^1 table, and mu_2 against the Pontryagin product for
/// one fiber, and decides whether F^1 is a ring isomorphism onto Z[t, t^-1] in the
/// window.
inline DemoResult demo_s1(const RunConfig& cfg, std::ostream& os) {
  validate_run_config(cfg);
  CylinderGeometry g{cfg.geometry.geometry.c, {cfg.geometry.geometry.fibers.front()}};
  const long long W = cfg.geometry.winding_bound;
  CylinderCategory cat(g, {W, cfg.twist, Tokens::positive});
  CircleModel model({g.fibers.front()}, 2 * W);
  PontryaginCategory<CircleModel> pcat(model);
  CylinderFunctor f(cat);
  DemoResult res;
  auto fail = [&](const std::string& why) {
    if (res.ring_isomorphism) res.reason = why;
    res.ring_isomorphism = false;
  };
  auto show = [&](const Chain<PathClass>& c) {
    if (c.is_zero()) return std::string("0");
    std::string s;
    for (const auto& [k, coeff] : c) s += std::string(coeff < 0 ? "-" : (s.empty() ? "" : "+")) +
                                          (abs(coeff) == 1 ? "" : Integer(abs(coeff)).str()) + model.name(k);
    return s;
  };
  auto F1 = [&](const ChordKey& x) {
    ChordKey one[1] = {x};
    return f.apply(one).matrix.entry(0, 0);
  };
  os << "fiber q = " << g.fibers.front().str() << ", c = " << g.c.str() << ", twist " << to_string(cfg.twist) << "\n";
  os << "chord basis (sorted by action):\n";
  for (const auto& ch : enumerate_chords(g, 0, 0, W))
    os << "  x_" << ch.key.winding << "  p = " << ch.momentum.str() << "  action = " << ch.action.str()
       << "  degree " << ch.degree << "\n";
  os << "F^1 table:\n";
  std::set<PathClass> images;
  for (const auto& x : cat.basis(0, 0)) {
    Chain<PathClass> img = F1(x);
    os << "  x_" << x.winding << " -> " << show(img) << "\n";
    if (cat.degree(x) != 0) fail("chord of nonzero degree");
    if (img.size() != 1 || abs(img.begin()->second) != 1) {
      fail("F^1(x_" + std::to_string(x.winding) + ") is not a signed generator");
      continue;
    }
    if (img.begin()->first.winding != x.winding) fail("F^1 does not send x_k to t^k");
    images.insert(img.begin()->first);
  }
  if (images.size() != cat.basis(0, 0).size()) fail("F^1 is not injective on the basis");
  os << "mu_2 vs Pontryagin product (row x_j, column x_i: F^1 mu_2(x_j, x_i) | mu_2(F^1 x_j, F^1 x_i)):\n";
  for (const auto& xj : cat.basis(0, 0)) {
    os << "  x_" << xj.winding << ":";
    for (const auto& xi : cat.basis(0, 0)) {
      ChordKey pair[2] = {xi, xj};
      Chain<PathClass> lhs;
      for (const auto& [y, c] : cat.mu(pair)) lhs.add(F1(y), c);
      Chain<PathClass> rhs;
      for (const auto& [a, ca] : F1(xi))
        for (const auto& [b2, cb] : F1(xj)) {
          PathClass two[2] = {a, b2};
          rhs.add(pcat.mu(two), ca * cb);
        }
      os << " " << show(lhs) << "|" << show(rhs);
      if (!(lhs == rhs)) fail("F^1 does not intertwine mu_2 at (x_" + std::to_string(xj.winding) + ", x_" +
                              std::to_string(xi.winding) + ")");
    }
    os << "\n";
  }
  // The unit of CW is the chord e with mu_2(e, x) = x for all x; F^1 must send it to t^0.
  const ChordKey x0{0, 0, 0};
  ChordKey probe[2] = {x0, x0};
  Chain<ChordKey> sq = cat.mu(probe);
  const Integer s = sq.coefficient(x0);
  if (sq.size() != 1 || abs(s) != 1) fail("no unit among the signed chords");
  else {
    Chain<PathClass> unit_image = F1(x0);
    unit_image *= s;
    os << "unit: " << (s > 0 ? "" : "-") << "x_0 -> " << show(unit_image) << "\n";
    if (!(unit_image == Chain<PathClass>::basis(model.unit(0)))) fail("F^1 does not preserve the unit");
  }
  os << "ring isomorphism: " << (res.ring_isomorphism ? "yes" : "no") << "\n";
  if (!res.ring_isomorphism) os << "reason: " << res.reason << "\n";
  return res;
}

}  // namespace floerloops
