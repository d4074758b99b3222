#pragma once

#include "ainfty.hpp"
#include "moduli.hpp"
#include "pontryagin.hpp"
#include "twisted.hpp"

#include <compare>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace floerloops {

// Wrapped Floer theory of cotangent fibers in T*S^1 = (R/Z) x R with H = c p^2. The
// time-1 flow is (q, p) -> (q + 2cp, p). Polygons live in the universal cover R^2,
// where a fiber lifts to the vertical lines q = q_L + n and its image under the
// weight-w flow to the lines q = q_L + n + 2cwp.

struct CylinderGeometry {
  Rational c = 1;
  std::vector<Rational> fibers{Rational(0)};
};

inline void validate_geometry(const CylinderGeometry& g) {
  if (g.c <= 0) throw Error("hamiltonian coefficient must be positive (chords degenerate otherwise)");
  if (g.fibers.empty()) throw Error("geometry needs at least one fiber");
  for (std::size_t i = 0; i < g.fibers.size(); ++i) {
    if (g.fibers[i] < 0 || g.fibers[i] >= 1) throw Error("fiber positions must lie in [0,1)");
    for (std::size_t j = 0; j < i; ++j)
      if (g.fibers[i] == g.fibers[j]) throw Error("fibers must be pairwise distinct");
  }
}

/// Liouville rescaling p -> rho p. Fibers are invariant and the Hamiltonian coefficient
/// becomes c / rho, so a chord of winding k keeps its label and its momentum scales by rho.
inline CylinderGeometry rescale(const CylinderGeometry& g, const Rational& rho) {
  if (rho <= 0) throw Error("rescaling factor must be positive");
  return {g.c / rho, g.fibers};
}

struct ChordKey {
  int source = 0;
  int target = 0;
  long long winding = 0;
  auto operator<=>(const ChordKey&) const = default;
  bool operator==(const ChordKey&) const = default;
};

inline std::string chord_name(const ChordKey& k) {
  return "x[" + std::to_string(k.source) + "," + std::to_string(k.target) + "," + std::to_string(k.winding) + "]";
}

struct Chord {
  ChordKey key;
  Rational momentum;
  int degree = 0;
  Rational action;
};

/// Displacement q_b - q_a + k of a chord in the cover.
inline Rational chord_displacement(const CylinderGeometry& g, const ChordKey& k) {
  return g.fibers.at(k.target) - g.fibers.at(k.source) + k.winding;
}

/// Momentum of a chord for the weight-w flow: 2cwp = displacement.
inline Rational chord_momentum(const CylinderGeometry& g, const ChordKey& k, int weight = 1) {
  return chord_displacement(g, k) / (2 * g.c * weight);
}

/// Maslov degree of a chord of the weight-w flow. The fiber carries the phase 1/2; the
/// flowed fiber has tangent (2cw, 1), whose phase alpha lies in (0, 1/2) when cw > 0,
/// and the degree is floor(1/2 - alpha).
inline int maslov_degree(const CylinderGeometry& g, int weight = 1) {
  const Rational u = 2 * g.c * weight;
  if (u > 0) return 0;  // 1/2 - alpha in (0, 1/2)
  if (u < 0) return -1;  // 1/2 - alpha in (-1/2, 0)
  throw Error("degenerate chord: flowed fiber parallel to the target fiber");
}

/// The linearized return map at a chord is invertible iff the flowed fiber is transverse
/// to the target fiber, i.e. det[(2c, 1), (0, 1)] != 0.
inline bool chord_is_nondegenerate(const CylinderGeometry& g) { return 2 * g.c != 0; }

inline Chord make_chord(const CylinderGeometry& g, const ChordKey& k) {
  if (k.source < 0 || k.target < 0 || k.source >= static_cast<int>(g.fibers.size()) ||
      k.target >= static_cast<int>(g.fibers.size()))
    throw Error("chord between unknown fibers");
  if (!chord_is_nondegenerate(g)) throw Error("degenerate chord " + chord_name(k));
  Rational p = chord_momentum(g, k);
  return {k, p, maslov_degree(g), -g.c * p * p};
}

/// All chords from fiber a to fiber b with |winding| <= bound, sorted by action and then
/// momentum.
inline std::vector<Chord> enumerate_chords(const CylinderGeometry& g, int a, int b, long long winding_bound) {
  validate_geometry(g);
  if (winding_bound < 0) throw Error("winding bound must be nonnegative");
  std::vector<Chord> out;
  for (long long k = -winding_bound; k <= winding_bound; ++k) out.push_back(make_chord(g, {a, b, k}));
  std::sort(out.begin(), out.end(), [](const Chord& x, const Chord& y) {
    return x.action != y.action ? x.action < y.action : x.momentum < y.momentum;
  });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].momentum == out[i - 1].momentum) throw Error("two chords collide");
  return out;
}

struct IntersectionPoint {
  int fiber = 0;
  Rational q;
  int degree = 0;
};

/// The zero section meets the fiber over q transversely in the single point (q, 0).
inline std::vector<IntersectionPoint> intersection_points(const CylinderGeometry& g, int fiber) {
  return {{fiber, g.fibers.at(fiber), 0}};
}

struct CoverPoint {
  Rational q, p;
  bool operator==(const CoverPoint&) const = default;
};

struct LatticePolygon {
  std::vector<CoverPoint> vertices;
  std::vector<std::string> corners;
  std::vector<std::string> boundary_word;
  std::vector<long long> winding_profile;
  int sign = 1;
  int dimension = 0;
  bool constant = false;
  bool convex = false;
  Rational output_action;
  Rational input_action;

  /// Constant polygons and convex polygons traversed clockwise in (q, p) count.
  bool holomorphic() const { return constant || convex; }
  long long output_winding() const { return winding_profile.empty() ? 0 : winding_profile.back(); }
};

namespace detail {

inline Rational cross(const CoverPoint& o, const CoverPoint& a, const CoverPoint& b) {
  return (a.q - o.q) * (b.p - o.p) - (a.p - o.p) * (b.q - o.q);
}

/// Fills `constant` and `convex` (every turn clockwise or straight, with positive
/// clockwise area).
inline void classify(LatticePolygon& poly) {
  const auto& v = poly.vertices;
  poly.constant = std::all_of(v.begin(), v.end(), [&](const CoverPoint& x) { return x == v.front(); });
  if (poly.constant) {
    poly.convex = false;
    return;
  }
  const std::size_t n = v.size();
  Rational area = 0;
  bool turns_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    area += a.q * b.p - a.p * b.q;
    if (cross(a, b, v[(i + 2) % n]) > 0) turns_ok = false;
  }
  poly.convex = turns_ok && area < 0;
}

inline std::string fiber_label(int i) { return "L" + std::to_string(i); }

/// Lifts n_0 = 0, ..., n_d of the boundary lines determined by the corner conditions:
/// the corner of lines k-1 and k must be the chord x_k, which forces
/// n_k - n_{k-1} = winding(x_k).
inline std::vector<long long> corner_lifts(std::span<const ChordKey> xs) {
  std::vector<long long> n(xs.size() + 1, 0);
  for (std::size_t k = 1; k <= xs.size(); ++k) n[k] = n[k - 1] + xs[k - 1].winding;
  return n;
}

/// Input corner k (1-based) for boundary lines of weights d-k+1 and d-k.
inline CoverPoint input_corner(const CylinderGeometry& g, std::span<const ChordKey> xs,
                               const std::vector<long long>& n, std::size_t k) {
  const std::size_t d = xs.size();
  const ChordKey& x = xs[k - 1];
  const Rational p = chord_momentum(g, x);
  const Rational q = g.fibers[x.target] + n[k] + 2 * g.c * static_cast<long long>(d - k) * p;
  // The same point lies on line k-1.
  if (g.fibers[x.source] + n[k - 1] + 2 * g.c * static_cast<long long>(d - k + 1) * p != q)
    throw Error("corner is not an intersection of consecutive boundary lines");
  return {q, p};
}

}  // namespace detail

/// The disc with inputs xs and output `out`, if the boundary closes up.
inline std::optional<LatticePolygon> disc_polygon(const CylinderGeometry& g, std::span<const ChordKey> xs,
                                                  const ChordKey& out, int out_degree, int input_degree_sum) {
  const std::size_t d = xs.size();
  if (d < 2) return std::nullopt;
  if (out.source != xs.front().source || out.target != xs.back().target) return std::nullopt;
  auto n = detail::corner_lifts(xs);
  if (out.winding != n[d] - n[0]) return std::nullopt;
  LatticePolygon poly;
  // Output corner: lines 0 and d meet at a chord of the weight-d flow, identified with
  // the unrescaled chord by p -> d p.
  const Rational P = chord_momentum(g, out, static_cast<int>(d));
  const CoverPoint v0{g.fibers[out.target] + n[d], P};
  if (g.fibers[out.source] + n[0] + 2 * g.c * static_cast<long long>(d) * P != v0.q)
    throw Error("output corner is not on the first boundary line");
  if (P * static_cast<long long>(d) != chord_momentum(g, out)) throw Error("rescaling identification fails");
  poly.vertices.push_back(v0);
  poly.corners.push_back(chord_name(out));
  for (std::size_t k = 1; k <= d; ++k) {
    poly.vertices.push_back(detail::input_corner(g, xs, n, k));
    poly.corners.push_back(chord_name(xs[k - 1]));
  }
  poly.boundary_word.push_back(detail::fiber_label(xs.front().source));
  for (std::size_t k = 1; k <= d; ++k) poly.boundary_word.push_back(detail::fiber_label(xs[k - 1].target));
  poly.winding_profile = n;
  poly.dimension = out_degree + static_cast<int>(d) - 2 - input_degree_sum;
  poly.output_action = -g.c * static_cast<long long>(d) * P * P;
  for (const auto& x : xs) {
    Rational p = chord_momentum(g, x);
    poly.input_action += -g.c * p * p;
  }
  detail::classify(poly);
  return poly;
}

/// The half-disc with corners q_0 = (q_{L_0}, 0), the inputs, and q_d = (q_{L_d} + n_d, 0).
/// Its arc on the zero section runs from q_0 to q_d and has winding n_d.
inline std::optional<LatticePolygon> half_disc_polygon(const CylinderGeometry& g, int q0_fiber,
                                                       std::span<const ChordKey> xs, int qd_fiber,
                                                       int input_degree_sum) {
  const std::size_t d = xs.size();
  if (d < 1 || xs.front().source != q0_fiber || xs.back().target != qd_fiber) return std::nullopt;
  auto n = detail::corner_lifts(xs);
  LatticePolygon poly;
  poly.vertices.push_back({g.fibers[q0_fiber] + n[0], 0});
  poly.corners.push_back("q" + std::to_string(q0_fiber));
  for (std::size_t k = 1; k <= d; ++k) {
    poly.vertices.push_back(detail::input_corner(g, xs, n, k));
    poly.corners.push_back(chord_name(xs[k - 1]));
  }
  poly.vertices.push_back({g.fibers[qd_fiber] + n[d], 0});
  poly.corners.push_back("q" + std::to_string(qd_fiber));
  poly.boundary_word.push_back(detail::fiber_label(q0_fiber));
  for (std::size_t k = 1; k <= d; ++k) poly.boundary_word.push_back(detail::fiber_label(xs[k - 1].target));
  poly.boundary_word.push_back("Q");
  poly.winding_profile = n;
  poly.dimension = static_cast<int>(d) - 1 - input_degree_sum;
  for (const auto& x : xs) {
    Rational p = chord_momentum(g, x);
    poly.input_action += -g.c * p * p;
  }
  detail::classify(poly);
  return poly;
}

/// Half-discs H(q0, xs, qd) over the fibers of q0 and qd.
inline std::vector<LatticePolygon> half_discs(const CylinderGeometry& g, const IntersectionPoint& q0,
                                              std::span<const ChordKey> xs, const IntersectionPoint& qd) {
  int sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sum += maslov_degree(g);
  auto poly = half_disc_polygon(g, q0.fiber, xs, qd.fiber, sum);
  if (!poly) return {};
  poly->dimension += q0.degree - qd.degree;
  if (poly->dimension == 0 && !poly->holomorphic()) return {};
  return {*poly};
}

/// Windings of output chords a -> b allowed by the energy bound: the rescaled output
/// action -c p0^2 / d is at least the total input action, i.e. p0^2 <= d sum p_k^2.
inline std::vector<long long> output_windings(const CylinderGeometry& g, int a, int b, std::span<const ChordKey> xs) {
  Rational s = 0;
  for (const auto& x : xs) {
    Rational dx = chord_displacement(g, x);
    s += dx * dx;
  }
  s *= static_cast<long long>(xs.size());
  long long bound = 0;
  while (Rational(bound * bound) < s) ++bound;
  const Rational offset = g.fibers[b] - g.fibers[a];
  std::vector<long long> out;
  for (long long w = -bound - 1; w <= bound + 1; ++w) {
    Rational dx = offset + w;
    if (dx * dx <= s) out.push_back(w);
  }
  return out;
}

/// All disc polygons with inputs xs and any output allowed by the energy bound, rigid or not.
inline std::vector<std::pair<ChordKey, LatticePolygon>> enumerate_disc_polygons(const CylinderGeometry& g,
                                                                                std::span<const ChordKey> xs) {
  std::vector<std::pair<ChordKey, LatticePolygon>> out;
  if (xs.size() < 2) return out;
  const int a = xs.front().source, b = xs.back().target;
  int sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sum += maslov_degree(g);
  for (long long w : output_windings(g, a, b, xs)) {
    ChordKey out_key{a, b, w};
    if (auto poly = disc_polygon(g, xs, out_key, maslov_degree(g), sum)) out.emplace_back(out_key, *poly);
  }
  return out;
}

/// Strips between x0 and x1 are bigons bounded by one lift of the flowed source fiber
/// and one lift of the target fiber. Two such lines meet exactly once, so a bigon with
/// distinct corners cannot exist; the search reports the pairs of lifts through both
/// corners.
inline std::vector<std::pair<long long, long long>> enumerate_bigons(const CylinderGeometry& g, const ChordKey& x0,
                                                                     const ChordKey& x1, long long lift_window) {
  if (x0.source != x1.source || x0.target != x1.target) throw Error("strip corners must share the Lagrangian pair");
  std::vector<std::pair<long long, long long>> out;
  const Rational p0 = chord_momentum(g, x0), p1 = chord_momentum(g, x1);
  for (long long n1 = -lift_window; n1 <= lift_window; ++n1) {
    // line 0: q = q_a + 2cp (lift 0); line 1: q = q_b + n1. They meet at 2cp = q_b + n1 - q_a.
    const Rational p = (g.fibers[x0.target] + n1 - g.fibers[x0.source]) / (2 * g.c);
    if (p == p0 && p == p1 && x0 != x1) out.emplace_back(0, n1);
  }
  return out;
}

inline Integer count_strips(const CylinderGeometry& g, const ChordKey& x0, const ChordKey& x1) {
  if (x0.source != x1.source || x0.target != x1.target) throw Error("strip corners must share the Lagrangian pair");
  if (maslov_degree(g) != maslov_degree(g) + 1) return 0;  // rigid strips need |x0| = |x1| + 1
  const long long window = std::max(std::abs(x0.winding), std::abs(x1.winding)) + 1;
  return static_cast<long long>(enumerate_bigons(g, x0, x1, window).size());
}

enum class Twist { none, constant, winding_parity };
enum class Tokens { positive, alternating };

inline std::string to_string(Twist t) {
  switch (t) {
    case Twist::none: return "none";
    case Twist::constant: return "constant";
    case Twist::winding_parity: return "parity";
  }
  return "none";
}

inline Twist twist_from_string(const std::string& s) {
  if (s == "none") return Twist::none;
  if (s == "constant") return Twist::constant;
  if (s == "parity") return Twist::winding_parity;
  throw Error("unknown twist " + s);
}

/// Intersection number N_b(u) of a polygon with the background class.
inline long long background_intersection(Twist t, const LatticePolygon& u) {
  switch (t) {
    case Twist::none: return 0;
    case Twist::constant: return 1;
    case Twist::winding_parity: return u.output_winding();
  }
  return 0;
}

/// Multiplies every polygon's sign by (-1)^N_b(u).
inline std::vector<LatticePolygon> background_twist(std::vector<LatticePolygon> polys,
                                                    const std::function<long long(const LatticePolygon&)>& n_b) {
  for (auto& u : polys) u.sign *= sign_of_parity(((n_b(u) % 2) + 2) % 2);
  return polys;
}

struct CylinderOptions {
  long long winding_bound = 3;
  Twist twist = Twist::none;
  Tokens tokens = Tokens::positive;
};

/// The wrapped category with objects the fibers and basis the chords with |winding| at
/// most the bound. mu accepts chords of any winding.
class CylinderCategory {
 public:
  using key_type = ChordKey;

  CylinderCategory(CylinderGeometry g, CylinderOptions opts) : g_(std::move(g)), opts_(opts) {
    validate_geometry(g_);
    if (opts_.winding_bound < 0) throw Error("winding bound must be nonnegative");
    degree_ = maslov_degree(g_);
  }
  CylinderCategory(const CylinderCategory& o) : g_(o.g_), opts_(o.opts_), degree_(o.degree_) {}

  const CylinderGeometry& geometry() const { return g_; }
  const CylinderOptions& options() const { return opts_; }

  int object_count() const { return static_cast<int>(g_.fibers.size()); }
  int degree(const ChordKey&) const { return degree_; }
  int source(const ChordKey& k) const { return k.source; }
  int target(const ChordKey& k) const { return k.target; }
  std::string name(const ChordKey& k) const { return chord_name(k); }

  std::vector<ChordKey> basis(int a, int b) const {
    std::vector<ChordKey> out;
    for (long long k = -opts_.winding_bound; k <= opts_.winding_bound; ++k) out.push_back({a, b, k});
    return out;
  }

  int token(const ChordKey& k) const {
    return opts_.tokens == Tokens::alternating ? sign_of_parity(((k.winding % 2) + 2) % 2) : 1;
  }

  /// Rigid signed polygons contributing to mu_d(xs), d >= 2, keyed by output.
  std::vector<std::pair<ChordKey, LatticePolygon>> rigid_discs(std::span<const ChordKey> xs) const {
    std::vector<std::pair<ChordKey, LatticePolygon>> out;
    const std::size_t d = xs.size();
    int sum = 0;
    std::vector<int> degrees;
    for (const auto& x : xs) degrees.push_back(degree(x)), sum += degree(x);
    const int required = 2 - static_cast<int>(d) + sum;
    if (required != degree_) return out;  // no chord has the degree of a rigid output
    for (long long w : output_windings(g_, xs.front().source, xs.back().target, xs)) {
      ChordKey out_key{xs.front().source, xs.back().target, w};
      auto poly = disc_polygon(g_, xs, out_key, degree_, sum);
      if (!poly || poly->dimension != 0 || !poly->holomorphic()) continue;
      if (poly->output_action < poly->input_action) throw Error("action monotonicity fails for a rigid polygon");
      int s = dagger_sign(degrees) * token(out_key);
      for (const auto& x : xs) s *= token(x);
      poly->sign = s;
      out.emplace_back(out_key, *poly);
    }
    auto twisted = background_twist(strip_keys(out), [this](const LatticePolygon& u) {
      return background_intersection(opts_.twist, u);
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].second.sign = twisted[i].sign;
    return out;
  }

  Chain<ChordKey> mu(std::span<const ChordKey> xs) const {
    if (xs.empty()) throw Error("mu needs an input");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (xs[i].target != xs[i + 1].source) return {};
    if (xs.size() == 1) return mu1(xs[0]);
    if (xs.size() == 2) {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = mu2_cache_.find({xs[0], xs[1]});
      if (it != mu2_cache_.end()) return it->second;
    }
    Chain<ChordKey> out;
    for (const auto& [k, poly] : rigid_discs(xs)) out.add(k, poly.sign);
    if (xs.size() == 2) {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      mu2_cache_.emplace(std::make_pair(xs[0], xs[1]), out);
    }
    return out;
  }

 private:
  static std::vector<LatticePolygon> strip_keys(const std::vector<std::pair<ChordKey, LatticePolygon>>& v) {
    std::vector<LatticePolygon> out;
    for (const auto& [k, p] : v) out.push_back(p);
    return out;
  }

  Chain<ChordKey> mu1(const ChordKey& x) const {
    Chain<ChordKey> out;
    if (degree_ + 1 != degree_) return out;  // rigid strips need an output of degree |x| + 1
    ChordKey one[1] = {x};
    for (long long w : output_windings(g_, x.source, x.target, one)) {
      ChordKey x0{x.source, x.target, w};
      out.add(x0, count_strips(g_, x0, x) * token(x0) * token(x));
    }
    return out;
  }

  struct PairHash {
    std::size_t operator()(const std::pair<ChordKey, ChordKey>& p) const noexcept {
      std::size_t h = 0;
      for (long long v : {static_cast<long long>(p.first.source), static_cast<long long>(p.first.target), p.first.winding,
                          static_cast<long long>(p.second.source), static_cast<long long>(p.second.target), p.second.winding})
        h = h * 1000003u ^ std::hash<long long>{}(v);
      return h;
    }
  };

  CylinderGeometry g_;
  CylinderOptions opts_;
  int degree_ = 0;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::pair<ChordKey, ChordKey>, Chain<ChordKey>, PairHash> mu2_cache_;
};

/// The twisted complex of L: one summand per point of the zero section in L, shifted by
/// minus its degree, with D = sum (-1)^(|q^i|(|q^j| + 1)) ev[H(q^i, q^j)].
/// `points` lists (object, degree) in the order that makes D upper-triangular;
/// `strip_cell(i, j)` names the strip cell between points i and j (empty if none) and
/// `ev` evaluates a cell to a chain of the path model.
template <class K>
TwistedComplex<K> build_twisted_from_strips(const std::vector<std::pair<int, int>>& points,
                                            const StratifiedModuli& strips, const FundamentalChain& chains,
                                            const std::function<std::string(int, int)>& strip_cell,
                                            const std::function<Chain<K>(const std::string&)>& ev) {
  TwistedComplex<K> t;
  for (const auto& [obj, deg] : points) t.summands.push_back({obj, -deg});
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    for (int j = 0; j < static_cast<int>(points.size()); ++j) {
      if (i == j) continue;
      const std::string id = strip_cell(i, j);
      if (id.empty()) continue;
      if (i > j) throw Error("strip " + id + " runs against the chosen order of intersection points");
      const ModuliCell& c = strips.cell(id);
      if (c.kind != ModuliKind::strip) throw Error(id + " is not a strip cell");
      const CellChain& cc = chains.cells.at(id);
      const int s = sign_of_parity(static_cast<long long>(points[i].second) * (points[j].second + 1));
      t.differential.add({i, j}, ev(id), cc.coefficient * s);
    }
  return t;
}

/// F(L) for a fiber: the zero section meets it once, so F(L) is one summand q[0], D = 0.
inline TwistedComplex<PathClass> build_F_object(const CylinderGeometry& g, int fiber) {
  auto pts = intersection_points(g, fiber);
  std::vector<std::pair<int, int>> points;
  for (const auto& q : pts) points.emplace_back(q.fiber, q.degree);
  return build_twisted_from_strips<PathClass>(
      points, StratifiedModuli{}, FundamentalChain{}, [](int, int) { return std::string(); },
      [](const std::string&) { return Chain<PathClass>{}; });
}

using CircleTarget = TwTarget<PontryaginCategory<CircleModel>>;

inline std::string half_disc_cell_id(const std::vector<std::string>& input_names) {
  std::string s = input_names.size() == 1 ? "h" : "H";
  for (const auto& x : input_names) s += x;
  return s;
}

inline std::string half_disc_cell_id(std::span<const ChordKey> xs) {
  std::vector<std::string> names;
  for (const auto& x : xs) names.push_back(chord_name(x));
  return half_disc_cell_id(names);
}

inline std::string disc_cell_id(const ChordKey& out, std::span<const ChordKey> xs) {
  std::string s = (xs.size() == 2 ? "r" : "R") + chord_name(out) + ";";
  for (const auto& x : xs) s += chord_name(x);
  return s;
}

/// The functor F from the cylinder category to Tw(P(S^1)) with F(L_a) = q_a[0].
/// F^1 counts rigid half-discs and records their evaluation winding; F^d for d >= 2
/// evaluates half-disc families of dimension d - 1, which vanish in the minimal circle
/// model because it has no generators in negative degree.
class CylinderFunctor {
 public:
  using key_type = ChordKey;

  explicit CylinderFunctor(const CylinderCategory& cat, const FundamentalChain* chains = nullptr)
      : cat_(&cat), chains_(chains) {}

  void zero_on(const ChordKey& k) { zeroed_ = k; }

  int object(int a) const { return a; }

  /// The signed rigid half-disc of F^1(x).
  LatticePolygon half_disc(const ChordKey& x) const {
    const auto& g = cat_->geometry();
    ChordKey one[1] = {x};
    auto polys = half_discs(g, intersection_points(g, x.source).front(), one,
                            intersection_points(g, x.target).front());
    if (polys.size() != 1) throw Error("expected exactly one rigid half-disc for " + chord_name(x));
    LatticePolygon u = polys.front();
    u.sign = functor_d1_sign(cat_->degree(x), 0, 0) * cat_->token(x);
    return background_twist({u}, [this](const LatticePolygon& p) {
      return background_intersection(cat_->options().twist, p);
    }).front();
  }

  CircleTarget::element_type apply(std::span<const ChordKey> xs) const {
    const int a = xs.front().source, b = xs.back().target;
    CircleTarget::element_type e{a, b, {}};
    if (xs.size() == 1) {
      if (zeroed_ && *zeroed_ == xs[0]) return e;
      LatticePolygon u = half_disc(xs[0]);
      e.matrix.add({0, 0}, Chain<PathClass>::basis({a, b, u.output_winding()}), u.sign);
      return e;
    }
    int sum = 0;
    for (const auto& x : xs) sum += cat_->degree(x);
    const int dim = static_cast<int>(xs.size()) - 1 - sum;
    if (dim == 0) throw Error("rigid half-discs with several inputs do not occur for fibers");
    if (chains_ && xs.size() == 2 && !chains_->cells.count(half_disc_cell_id(xs)))
      throw Error("no fundamental chain for " + half_disc_cell_id(xs));
    // Evaluation lands in degree -dim of the circle model, which is zero.
    return e;
  }

 private:
  const CylinderCategory* cat_;
  const FundamentalChain* chains_;
  std::optional<ChordKey> zeroed_;
};

/// Moduli data of the cylinder: rigid half-discs and triangles as 0-cells oriented by
/// their counts with the sign prefactors of F^1 and mu_2 removed, the one-dimensional
/// half-disc families H(q_a, x1, x2, q_c) for inputs of winding at most
/// `half_disc_window`, and the quadrilateral families R(x0; x1, x2, x3) for inputs of
/// winding at most `disc_window`.
inline StratifiedModuli cylinder_moduli(const CylinderCategory& cat, const CylinderFunctor& functor,
                                        long long half_disc_window, long long disc_window) {
  StratifiedModuli m;
  std::map<std::string, std::size_t> index;
  auto add_cell = [&](ModuliCell c) -> const std::string& {
    auto [it, inserted] = index.emplace(c.id, m.cells.size());
    if (inserted) m.cells.push_back(std::move(c));
    return m.cells[it->second].id;
  };
  auto q = [](int a) { return "q" + std::to_string(a); };
  auto half_disc_cell = [&](const ChordKey& x) {
    ChordKey one[1] = {x};
    return add_cell({half_disc_cell_id(one), ModuliKind::half_disc, 0, q(x.source), q(x.target), 0, 0,
                     {chord_name(x)}, {cat.degree(x)},
                     functor.half_disc(x).sign * functor_d1_sign(cat.degree(x), 0, 0)});
  };
  auto triangle_cell = [&](const ChordKey& out, const ChordKey& x1, const ChordKey& x2, int sign) {
    ChordKey two[2] = {x1, x2};
    return add_cell({disc_cell_id(out, two), ModuliKind::disc, 0, chord_name(out), "", cat.degree(out), 0,
                     {chord_name(x1), chord_name(x2)}, {cat.degree(x1), cat.degree(x2)},
                     sign * dagger_sign({cat.degree(x1), cat.degree(x2)})});
  };
  const int n = cat.object_count();
  auto window = [](long long w) {
    std::vector<long long> out;
    for (long long k = -w; k <= w; ++k) out.push_back(k);
    return out;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (long long i : window(half_disc_window))
          for (long long j : window(half_disc_window)) {
            ChordKey xs[2] = {{a, b, i}, {b, c, j}};
            ModuliCell cell{half_disc_cell_id(xs), ModuliKind::half_disc, 1, q(a), q(c), 0, 0,
                            {chord_name(xs[0]), chord_name(xs[1])}, {cat.degree(xs[0]), cat.degree(xs[1])}, 1};
            const std::string id = add_cell(cell);
            auto& strata = m.boundary[id];
            strata.push_back({StratumKind::flat, half_disc_cell(xs[0]), half_disc_cell(xs[1]), 1, 0, 0});
            for (const auto& [y, coeff] : cat.mu(xs)) {
              const std::string h = half_disc_cell(y);
              const std::string r = triangle_cell(y, xs[0], xs[1], static_cast<int>(coeff));
              if (coeff != 1 && coeff != -1) throw Error("triangle count other than one");
              strata.push_back({StratumKind::sharp, h, r, 0, 2, cat.degree(y)});
            }
          }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e)
          for (long long i : window(disc_window))
            for (long long j : window(disc_window))
              for (long long l : window(disc_window)) {
                ChordKey xs[3] = {{a, b, i}, {b, c, j}, {c, e, l}};
                for (int k = 0; k < 2; ++k) {
                  for (const auto& [y, cy] : cat.mu(std::span<const ChordKey>(xs + k, 2))) {
                    const std::string inner = triangle_cell(y, xs[k], xs[k + 1], static_cast<int>(cy));
                    ChordKey outer_in[2] = {k == 0 ? y : xs[0], k == 0 ? xs[2] : y};
                    for (const auto& [x0, c0] : cat.mu(outer_in)) {
                      const std::string outer = triangle_cell(x0, outer_in[0], outer_in[1], static_cast<int>(c0));
                      ModuliCell cell{disc_cell_id(x0, xs), ModuliKind::disc, 1, chord_name(x0), "", cat.degree(x0), 0,
                                      {chord_name(xs[0]), chord_name(xs[1]), chord_name(xs[2])},
                                      {cat.degree(xs[0]), cat.degree(xs[1]), cat.degree(xs[2])}, 1};
                      const std::string id = add_cell(cell);
                      m.boundary[id].push_back({StratumKind::disc_break, outer, inner, k, 2, cat.degree(y)});
                    }
                  }
                }
              }
  return m;
}

}  // namespace floerloops
