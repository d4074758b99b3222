#pragma once

#include "cylinder.hpp"
#include "moduli.hpp"
#include "pontryagin.hpp"
#include "table_category.hpp"
#include "twisted.hpp"

#include <json.hpp>

#include <limits>
#include <string>

namespace floerloops {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

inline Json integer_to_json(const Integer& c) {
  if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
    return c.convert_to<long long>();
  return c.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error("expected an integer");
}

/// Accepts integers, "p/q" strings and finite decimal strings such as "0.25".
inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw Error("expected a rational number as an integer or a string");
  std::string s = j.get<std::string>();
  if (s.empty()) throw Error("empty rational");
  try {
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(s);
    const bool negative = s[0] == '-';
    std::string whole = s.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
    std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos ||
        whole.find_first_not_of("0123456789") != std::string::npos || (whole.empty() && frac.empty()))
      throw Error("bad decimal");
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Integer num = Integer(whole.empty() ? "0" : whole) * den + Integer(frac.empty() ? "0" : frac);
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  } catch (const std::exception&) {
    throw Error("cannot parse rational '" + s + "'");
  }
}

inline Json rational_to_json(const Rational& r) { return r.str(); }

template <class K, class Namer>
Json chain_to_json(const Chain<K>& c, Namer&& name) {
  Json out = Json::array();
  for (const auto& [k, coeff] : c) out.push_back(Json::array({name(k), integer_to_json(coeff)}));
  return out;
}

template <class K, class Finder>
Chain<K> chain_from_json(const Json& j, Finder&& find) {
  Chain<K> out;
  if (!j.is_array()) throw Error("a chain is an array of terms");
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw Error("chain terms are [name, coefficient] pairs");
    out.add(find(term[0].get<std::string>()), integer_from_json(term[1]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometry configuration

struct GeometryConfig {
  CylinderGeometry geometry;
  long long winding_bound = 3;
  int max_d = 4;
};

inline GeometryConfig geometry_config_from_json(const Json& j) {
  GeometryConfig cfg;
  if (j.contains("c")) cfg.geometry.c = rational_from_json(j["c"]);
  if (j.contains("fibers")) {
    cfg.geometry.fibers.clear();
    for (const auto& f : j["fibers"]) cfg.geometry.fibers.push_back(rational_from_json(f));
  }
  if (j.contains("winding_bound")) cfg.winding_bound = j["winding_bound"].get<long long>();
  if (j.contains("max_d")) cfg.max_d = j["max_d"].get<int>();
  return cfg;
}

inline Json geometry_config_to_json(const GeometryConfig& cfg) {
  Json fibers = Json::array();
  for (const auto& f : cfg.geometry.fibers) fibers.push_back(rational_to_json(f));
  return {{"c", rational_to_json(cfg.geometry.c)},
          {"fibers", fibers},
          {"winding_bound", cfg.winding_bound},
          {"max_d", cfg.max_d}};
}

// ---------------------------------------------------------------------------
// A-infinity categories

inline Json category_to_json(const TableCategory& cat) {
  Json objects = Json::array(), gens = Json::array(), mu = Json::array();
  for (int a = 0; a < cat.object_count(); ++a) objects.push_back(cat.object_name(a));
  for (int k = 0; k < cat.generator_count(); ++k) {
    const auto& g = cat.generator(k);
    gens.push_back({{"name", g.name},
                    {"source", cat.object_name(g.source)},
                    {"target", cat.object_name(g.target)},
                    {"degree", g.degree},
                    {"in_basis", g.in_basis}});
  }
  auto name = [&](int k) { return cat.name(k); };
  for (const auto& [inputs, output] : cat.entries()) {
    Json in = Json::array();
    for (int k : inputs) in.push_back(cat.name(k));
    mu.push_back({{"inputs", in}, {"output", chain_to_json(output, name)}});
  }
  return {{"objects", objects}, {"generators", gens}, {"mu", mu}};
}

inline TableCategory category_from_json(const Json& j) {
  TableCategory cat;
  for (const auto& o : j.at("objects")) cat.add_object(o.get<std::string>());
  for (const auto& g : j.at("generators"))
    cat.add_generator(g.at("name").get<std::string>(), cat.find_object(g.at("source").get<std::string>()),
                      cat.find_object(g.at("target").get<std::string>()), g.at("degree").get<int>(),
                      g.value("in_basis", true));
  auto find = [&](const std::string& n) { return cat.find(n); };
  for (const auto& e : j.at("mu")) {
    std::vector<int> inputs;
    for (const auto& n : e.at("inputs")) inputs.push_back(cat.find(n.get<std::string>()));
    cat.set_mu(inputs, chain_from_json<int>(e.at("output"), find));
  }
  return cat;
}

/// Tabulates a category: generators with |winding| <= W form the basis, those up to
/// `aux_window` are auxiliary. mu_2 is recorded on every pair with an input in the basis
/// whose output stays within the auxiliary window; mu_d for d >= 3 on basis tuples.
inline TableCategory tabulate(const CylinderCategory& cat, long long aux_window, int max_d) {
  TableCategory t;
  const int n = cat.object_count();
  const long long W = cat.options().winding_bound;
  for (int a = 0; a < n; ++a) t.add_object(detail::fiber_label(a));
  std::map<ChordKey, int> index;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (long long k = -aux_window; k <= aux_window; ++k) {
        ChordKey key{a, b, k};
        index[key] = t.add_generator(chord_name(key), a, b, cat.degree(key), std::abs(k) <= W);
      }
  auto to_table = [&](const Chain<ChordKey>& c, bool& fits) {
    Chain<int> out;
    for (const auto& [k, coeff] : c) {
      auto it = index.find(k);
      if (it == index.end()) {
        fits = false;
        return out;
      }
      out.add(it->second, coeff);
    }
    return out;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (long long i = -aux_window; i <= aux_window; ++i)
          for (long long j = -aux_window; j <= aux_window; ++j) {
            if (std::abs(i) > W && std::abs(j) > W) continue;
            ChordKey xs[2] = {{a, b, i}, {b, c, j}};
            bool fits = true;
            Chain<int> out = to_table(cat.mu(xs), fits);
            if (fits) t.set_mu({index[xs[0]], index[xs[1]]}, out);
          }
  for (int d = 3; d <= max_d; ++d)
    for_each_composable_tuple(cat, d, [&](std::span<const ChordKey> xs) {
      Chain<ChordKey> out = cat.mu(xs);
      if (!out.is_zero()) {
        bool fits = true;
        Chain<int> o = to_table(out, fits);
        if (!fits) throw Error("higher product leaves the tabulated window");
        std::vector<int> in;
        for (const auto& x : xs) in.push_back(index[x]);
        t.set_mu(in, o);
      }
      return true;
    });
  return t;
}

// ---------------------------------------------------------------------------
// Path models

inline Json path_model_to_json(const TablePathModel& m) {
  Json points = Json::array(), gens = Json::array(), units = Json::object(), diff = Json::array(),
       comp = Json::array();
  for (int p = 0; p < m.point_count(); ++p) {
    points.push_back(m.point_name(p));
    if (m.has_unit(p)) units[m.point_name(p)] = m.name(m.unit(p));
  }
  for (int k = 0; k < m.generator_count(); ++k) {
    const auto& g = m.generator(k);
    gens.push_back({{"name", g.name},
                    {"source", m.point_name(g.source)},
                    {"target", m.point_name(g.target)},
                    {"degree", g.degree},
                    {"in_basis", g.in_basis}});
  }
  auto name = [&](int k) { return m.name(k); };
  for (const auto& [k, c] : m.differentials())
    if (!c.is_zero()) diff.push_back({{"generator", m.name(k)}, {"chain", chain_to_json(c, name)}});
  for (const auto& [ab, c] : m.compositions())
    if (!c.is_zero())
      comp.push_back({{"left", m.name(ab.first)}, {"right", m.name(ab.second)}, {"output", chain_to_json(c, name)}});
  return {{"schema_version", schema_version},
          {"points", points},
          {"generators", gens},
          {"units", units},
          {"differential", diff},
          {"composition", comp}};
}

inline TablePathModel path_model_from_json(const Json& j) {
  std::vector<std::string> points;
  for (const auto& p : j.at("points")) points.push_back(p.get<std::string>());
  if (points.empty()) throw Error("path model needs at least one point");
  TablePathModel m(points);
  auto point = [&](const std::string& n) {
    for (int p = 0; p < static_cast<int>(points.size()); ++p)
      if (points[p] == n) return p;
    throw Error("unknown point " + n);
  };
  for (const auto& g : j.at("generators"))
    m.add_generator(g.at("name").get<std::string>(), point(g.at("source").get<std::string>()),
                    point(g.at("target").get<std::string>()), g.at("degree").get<int>(), g.value("in_basis", true));
  for (const auto& [p, g] : j.at("units").items()) m.set_unit(point(p), m.find(g.get<std::string>()));
  for (int p = 0; p < m.point_count(); ++p)
    if (!m.has_unit(p)) throw Error("point " + points[p] + " has no unit");
  auto find = [&](const std::string& n) { return m.find(n); };
  for (const auto& d : j.value("differential", Json::array()))
    m.set_differential(m.find(d.at("generator").get<std::string>()), chain_from_json<int>(d.at("chain"), find));
  for (const auto& c : j.value("composition", Json::array()))
    m.set_composition(m.find(c.at("left").get<std::string>()), m.find(c.at("right").get<std::string>()),
                      chain_from_json<int>(c.at("output"), find));
  return m;
}

/// Tabulates the circle model: classes with |winding| <= window form the basis, those up
/// to aux_window are auxiliary; compositions are recorded when a factor is in the basis
/// and the product stays within the auxiliary window.
inline TablePathModel tabulate(const CircleModel& model, long long aux_window) {
  std::vector<std::string> points;
  for (int p = 0; p < model.point_count(); ++p) points.push_back("q" + std::to_string(p));
  TablePathModel t(points);
  const int n = model.point_count();
  std::map<PathClass, int> index;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (long long k = -aux_window; k <= aux_window; ++k) {
        PathClass c{a, b, k};
        index[c] = t.add_generator(model.name(c), a, b, model.degree(c), std::abs(k) <= model.window());
      }
  for (int a = 0; a < n; ++a) t.set_unit(a, index.at(model.unit(a)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (long long i = -aux_window; i <= aux_window; ++i)
          for (long long j = -aux_window; j <= aux_window; ++j) {
            if (std::abs(i) > model.window() && std::abs(j) > model.window()) continue;
            if (std::abs(i + j) > aux_window) continue;
            PathClass x{a, b, i}, y{b, c, j};
            Chain<int> out;
            for (const auto& [k, coeff] : model.concatenate(x, y)) out.add(index.at(k), coeff);
            t.set_composition(index.at(x), index.at(y), out);
          }
  return t;
}

// ---------------------------------------------------------------------------
// Twisted complexes

template <class K, class Namer>
Json tw_morphism_to_json(const TwMorphism<K>& m, Namer&& name) {
  Json out = Json::array();
  for (const auto& [ij, c] : m.entries)
    out.push_back({{"row", ij.first}, {"col", ij.second}, {"chain", chain_to_json(c, name)}});
  return out;
}

template <class K, class Finder>
TwMorphism<K> tw_morphism_from_json(const Json& j, Finder&& find) {
  TwMorphism<K> m;
  for (const auto& e : j) m.add({e.at("row").get<int>(), e.at("col").get<int>()}, chain_from_json<K>(e.at("chain"), find));
  return m;
}

template <class K, class ObjectName, class Namer>
Json twisted_to_json(const TwistedComplex<K>& t, ObjectName&& object, Namer&& name) {
  Json summands = Json::array();
  for (const auto& s : t.summands) summands.push_back({{"object", object(s.object)}, {"shift", s.shift}});
  return {{"summands", summands}, {"differential", tw_morphism_to_json(t.differential, name)}};
}

template <class K, class ObjectFinder, class Finder>
TwistedComplex<K> twisted_from_json(const Json& j, ObjectFinder&& object, Finder&& find) {
  TwistedComplex<K> t;
  for (const auto& s : j.at("summands")) t.summands.push_back({object(s.at("object").get<std::string>()), s.at("shift").get<int>()});
  t.differential = tw_morphism_from_json<K>(j.at("differential"), find);
  return t;
}

// ---------------------------------------------------------------------------
// Moduli datasets

inline Json moduli_to_json(const StratifiedModuli& m) {
  Json cells = Json::array(), boundary = Json::array();
  for (const auto& c : m.cells)
    cells.push_back({{"id", c.id},
                     {"kind", to_string(c.kind)},
                     {"dimension", c.dimension},
                     {"start", c.start},
                     {"end", c.end},
                     {"start_degree", c.start_degree},
                     {"end_degree", c.end_degree},
                     {"inputs", c.inputs},
                     {"input_degrees", c.input_degrees},
                     {"orientation", c.orientation}});
  for (const auto& [id, strata] : m.boundary) {
    Json s = Json::array();
    for (const auto& st : strata)
      s.push_back({{"kind", to_string(st.kind)},
                   {"first", st.first},
                   {"second", st.second},
                   {"split", st.split},
                   {"length", st.length},
                   {"mid_degree", st.mid_degree},
                   {"flipped", st.flipped}});
    boundary.push_back({{"cell", id}, {"strata", s}});
  }
  return {{"schema_version", schema_version}, {"cells", cells}, {"boundary", boundary}};
}

inline StratifiedModuli moduli_from_json(const Json& j) {
  StratifiedModuli m;
  for (const auto& c : j.at("cells")) {
    ModuliCell cell;
    cell.id = c.at("id").get<std::string>();
    cell.kind = moduli_kind_from_string(c.at("kind").get<std::string>());
    cell.dimension = c.at("dimension").get<int>();
    cell.start = c.value("start", std::string());
    cell.end = c.value("end", std::string());
    cell.start_degree = c.value("start_degree", 0);
    cell.end_degree = c.value("end_degree", 0);
    cell.inputs = c.value("inputs", std::vector<std::string>{});
    cell.input_degrees = c.value("input_degrees", std::vector<int>{});
    cell.orientation = c.value("orientation", 1);
    m.cells.push_back(std::move(cell));
  }
  for (const auto& b : j.value("boundary", Json::array())) {
    auto& strata = m.boundary[b.at("cell").get<std::string>()];
    for (const auto& s : b.at("strata")) {
      BoundaryStratum st;
      st.kind = stratum_kind_from_string(s.at("kind").get<std::string>());
      st.first = s.at("first").get<std::string>();
      st.second = s.at("second").get<std::string>();
      st.split = s.value("split", 0);
      st.length = s.value("length", 0);
      st.mid_degree = s.value("mid_degree", 0);
      st.flipped = s.value("flipped", false);
      strata.push_back(std::move(st));
    }
  }
  return m;
}

inline Json cell_chain_to_json(const Chain<CellWord>& c) {
  Json out = Json::array();
  for (const auto& [w, coeff] : c) out.push_back(Json::array({w, integer_to_json(coeff)}));
  return out;
}

}  // namespace floerloops
