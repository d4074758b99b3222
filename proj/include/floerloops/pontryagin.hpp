#pragma once

#include "ainfty.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace floerloops {

// Finite models of the Pontryagin category: objects are basepoints, concatenate(a, b)
// is the path a followed by b, and degrees are negated homological degrees.
template <class M>
concept PathModel = requires(const M& m, const typename M::key_type& k, int p, int q) {
  { m.point_count() } -> std::convertible_to<int>;
  { m.degree(k) } -> std::convertible_to<int>;
  { m.source(k) } -> std::convertible_to<int>;
  { m.target(k) } -> std::convertible_to<int>;
  { m.differential(k) } -> std::convertible_to<Chain<typename M::key_type>>;
  { m.concatenate(k, k) } -> std::convertible_to<Chain<typename M::key_type>>;
  { m.unit(p) } -> std::convertible_to<typename M::key_type>;
  { m.basis(p, q) } -> std::convertible_to<std::vector<typename M::key_type>>;
  { m.name(k) } -> std::convertible_to<std::string>;
};

/// Homotopy class of a path in S^1 from basepoint `from` to basepoint `to`: in the
/// universal cover it runs from q_from to q_to + winding.
struct PathClass {
  int from = 0;
  int to = 0;
  long long winding = 0;
  auto operator<=>(const PathClass&) const = default;
  bool operator==(const PathClass&) const = default;
};

/// Minimal model of P(S^1) on basepoints in [0,1): every component of the path space
/// is contractible, so each hom is free in degree 0 on path classes and d = 0.
class CircleModel {
 public:
  using key_type = PathClass;

  CircleModel(std::vector<Rational> basepoints, long long window)
      : points_(std::move(basepoints)), window_(window) {
    if (points_.empty()) throw Error("circle model needs a basepoint");
    if (window_ < 0) throw Error("basis window must be nonnegative");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i] < 0 || points_[i] >= 1) throw Error("basepoints must lie in [0,1)");
      for (std::size_t j = 0; j < i; ++j)
        if (points_[i] == points_[j]) throw Error("basepoints must be distinct");
    }
  }

  int point_count() const { return static_cast<int>(points_.size()); }
  const Rational& position(int i) const { return points_.at(i); }
  long long window() const { return window_; }
  int degree(const PathClass&) const { return 0; }
  int source(const PathClass& k) const { return k.from; }
  int target(const PathClass& k) const { return k.to; }
  Chain<PathClass> differential(const PathClass&) const { return {}; }

  Chain<PathClass> concatenate(const PathClass& a, const PathClass& b) const {
    if (a.to != b.from) throw Error("concatenation of non-composable paths");
    return Chain<PathClass>::basis({a.from, b.to, a.winding + b.winding});
  }

  PathClass unit(int p) const { return {p, p, 0}; }

  std::vector<PathClass> basis(int p, int q) const {
    std::vector<PathClass> out;
    for (long long k = -window_; k <= window_; ++k) out.push_back({p, q, k});
    return out;
  }

  /// Total displacement q_to - q_from + winding in the universal cover.
  Rational displacement(const PathClass& k) const { return points_.at(k.to) - points_.at(k.from) + k.winding; }

  std::string name(const PathClass& k) const {
    if (points_.size() == 1) return "t^" + std::to_string(k.winding);
    return "g[" + std::to_string(k.from) + "," + std::to_string(k.to) + "," + std::to_string(k.winding) + "]";
  }

 private:
  std::vector<Rational> points_;
  long long window_;
};

inline CircleModel circle_model(int num_basepoints, long long window = 3) {
  if (num_basepoints < 1) throw Error("circle_model needs at least one basepoint");
  std::vector<Rational> pts;
  for (int i = 0; i < num_basepoints; ++i) pts.emplace_back(Rational(i) / num_basepoints);
  return CircleModel(std::move(pts), window);
}

/// Word in the generators of a free path category; the empty word at p is the unit.
struct PathWord {
  int from = 0;
  int to = 0;
  std::vector<int> letters;
  auto operator<=>(const PathWord&) const = default;
  bool operator==(const PathWord&) const = default;
};

/// Free DG path category on finitely many generators. Composition is concatenation of
/// words and the differential extends from the generators by the Leibniz rule.
class FreePathModel {
 public:
  using key_type = PathWord;

  struct GeneratorInfo {
    std::string name;
    int source = 0;
    int target = 0;
    int degree = 0;
    Chain<PathWord> differential;
  };

  FreePathModel(std::vector<std::string> points, std::size_t max_length)
      : points_(std::move(points)), max_length_(max_length) {}

  int add_generator(const std::string& name, int source, int target, int degree,
                    Chain<PathWord> differential = {}) {
    if (source < 0 || source >= point_count() || target < 0 || target >= point_count())
      throw Error("generator " + name + " has an unknown endpoint");
    for (const auto& [w, c] : differential) {
      if (w.from != source || w.to != target) throw Error("differential of " + name + " has wrong endpoints");
      for (int l : w.letters)
        if (l < 0 || l >= static_cast<int>(gens_.size())) throw Error("differential of " + name + " uses a later generator");
    }
    gens_.push_back({name, source, target, degree, std::move(differential)});
    return static_cast<int>(gens_.size()) - 1;
  }

  PathWord letter(int g) const { return {gens_.at(g).source, gens_.at(g).target, {g}}; }

  int point_count() const { return static_cast<int>(points_.size()); }
  const std::string& point_name(int p) const { return points_.at(p); }
  const GeneratorInfo& generator(int g) const { return gens_.at(g); }
  int generator_count() const { return static_cast<int>(gens_.size()); }

  int degree(const PathWord& w) const {
    int d = 0;
    for (int l : w.letters) d += gens_[l].degree;
    return d;
  }
  int source(const PathWord& w) const { return w.from; }
  int target(const PathWord& w) const { return w.to; }

  Chain<PathWord> concatenate(const PathWord& a, const PathWord& b) const {
    if (a.to != b.from) throw Error("concatenation of non-composable words");
    PathWord w{a.from, b.to, a.letters};
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return Chain<PathWord>::basis(w);
  }

  Chain<PathWord> differential(const PathWord& w) const {
    Chain<PathWord> out;
    int before = 0;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      const auto& g = gens_[w.letters[i]];
      for (const auto& [inner, c] : g.differential) {
        PathWord v{w.from, w.to, {w.letters.begin(), w.letters.begin() + i}};
        v.letters.insert(v.letters.end(), inner.letters.begin(), inner.letters.end());
        v.letters.insert(v.letters.end(), w.letters.begin() + i + 1, w.letters.end());
        out.add(v, c * sign_of_parity(before));
      }
      before += g.degree;
    }
    return out;
  }

  PathWord unit(int p) const { return {p, p, {}}; }

  std::vector<PathWord> basis(int p, int q) const {
    std::vector<PathWord> out;
    std::vector<PathWord> frontier{unit(p)};
    for (std::size_t len = 0; len <= max_length_; ++len) {
      std::vector<PathWord> next;
      for (const auto& w : frontier) {
        if (w.to == q) out.push_back(w);
        if (len == max_length_) continue;
        for (int g = 0; g < generator_count(); ++g) {
          if (gens_[g].source != w.to) continue;
          PathWord v = w;
          v.to = gens_[g].target;
          v.letters.push_back(g);
          next.push_back(std::move(v));
        }
      }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string name(const PathWord& w) const {
    if (w.letters.empty()) return "1_" + points_[w.from];
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) s += (i ? "." : "") + gens_[w.letters[i]].name;
    return s;
  }

 private:
  std::vector<std::string> points_;
  std::size_t max_length_;
  std::vector<GeneratorInfo> gens_;
};

/// Path model given by explicit tables (used for user-supplied models). Missing
/// composition entries are zero. Auxiliary generators may occur in tables but are not
/// part of the basis.
class TablePathModel {
 public:
  using key_type = int;

  struct GeneratorInfo {
    std::string name;
    int source = 0;
    int target = 0;
    int degree = 0;
    bool in_basis = true;
  };

  explicit TablePathModel(std::vector<std::string> points) : points_(std::move(points)), units_(points_.size(), -1) {}

  int add_generator(const std::string& name, int source, int target, int degree, bool in_basis = true) {
    if (source < 0 || source >= point_count() || target < 0 || target >= point_count())
      throw Error("generator " + name + " has an unknown endpoint");
    if (index_.count(name)) throw Error("duplicate generator " + name);
    index_[name] = static_cast<int>(gens_.size());
    gens_.push_back({name, source, target, degree, in_basis});
    return static_cast<int>(gens_.size()) - 1;
  }

  void set_unit(int p, int g) {
    if (gens_.at(g).source != p || gens_.at(g).target != p) throw Error("unit must be a loop at its point");
    units_.at(p) = g;
  }

  void set_differential(int g, Chain<int> d) {
    for (const auto& [k, c] : d)
      if (gens_.at(k).source != gens_.at(g).source || gens_.at(k).target != gens_.at(g).target)
        throw Error("differential of " + gens_.at(g).name + " has wrong endpoints");
    differential_[g] = std::move(d);
  }

  void set_composition(int a, int b, Chain<int> out) {
    if (gens_.at(a).target != gens_.at(b).source) throw Error("composition of non-composable generators");
    for (const auto& [k, c] : out)
      if (gens_.at(k).source != gens_.at(a).source || gens_.at(k).target != gens_.at(b).target)
        throw Error("composition output has wrong endpoints");
    composition_[{a, b}] = std::move(out);
  }

  int find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unknown generator " + name);
    return it->second;
  }

  int point_count() const { return static_cast<int>(points_.size()); }
  const std::string& point_name(int p) const { return points_.at(p); }
  int degree(int k) const { return gens_.at(k).degree; }
  int source(int k) const { return gens_.at(k).source; }
  int target(int k) const { return gens_.at(k).target; }
  std::string name(int k) const { return gens_.at(k).name; }
  int generator_count() const { return static_cast<int>(gens_.size()); }
  const GeneratorInfo& generator(int k) const { return gens_.at(k); }
  bool has_generator(const std::string& name) const { return index_.count(name) > 0; }
  const std::map<int, Chain<int>>& differentials() const { return differential_; }
  const std::map<std::pair<int, int>, Chain<int>>& compositions() const { return composition_; }

  Chain<int> differential(int k) const {
    auto it = differential_.find(k);
    return it == differential_.end() ? Chain<int>{} : it->second;
  }
  Chain<int> concatenate(int a, int b) const {
    if (gens_.at(a).target != gens_.at(b).source) throw Error("concatenation of non-composable generators");
    auto it = composition_.find({a, b});
    return it == composition_.end() ? Chain<int>{} : it->second;
  }
  int unit(int p) const {
    if (units_.at(p) < 0) throw Error("point " + points_.at(p) + " has no unit");
    return units_[p];
  }
  bool has_unit(int p) const { return units_.at(p) >= 0; }
  std::vector<int> basis(int p, int q) const {
    std::vector<int> out;
    for (int k = 0; k < generator_count(); ++k)
      if (gens_[k].in_basis && gens_[k].source == p && gens_[k].target == q) out.push_back(k);
    return out;
  }

 private:
  std::vector<std::string> points_;
  std::vector<int> units_;
  std::vector<GeneratorInfo> gens_;
  std::map<std::string, int> index_;
  std::map<int, Chain<int>> differential_;
  std::map<std::pair<int, int>, Chain<int>> composition_;
};

/// Wraps a path model and negates one concatenation a.b.
template <PathModel M>
class FlippedCompositionModel {
 public:
  using key_type = typename M::key_type;
  FlippedCompositionModel(const M& base, key_type a, key_type b) : base_(&base), a_(a), b_(b) {}

  int point_count() const { return base_->point_count(); }
  int degree(const key_type& k) const { return base_->degree(k); }
  int source(const key_type& k) const { return base_->source(k); }
  int target(const key_type& k) const { return base_->target(k); }
  Chain<key_type> differential(const key_type& k) const { return base_->differential(k); }
  Chain<key_type> concatenate(const key_type& a, const key_type& b) const {
    Chain<key_type> out = base_->concatenate(a, b);
    if (a == a_ && b == b_) out *= -1;
    return out;
  }
  key_type unit(int p) const { return base_->unit(p); }
  std::vector<key_type> basis(int p, int q) const { return base_->basis(p, q); }
  std::string name(const key_type& k) const { return base_->name(k); }

 private:
  const M* base_;
  key_type a_, b_;
};

/// The path model as an A-infinity category: mu_1 = d, mu_2(s2, s1) = (-1)^deg(s1) s1.s2,
/// and mu_d = 0 for d >= 3.
template <PathModel M>
class PontryaginCategory {
 public:
  using key_type = typename M::key_type;

  explicit PontryaginCategory(const M& model) : model_(&model) {}

  const M& model() const { return *model_; }
  int object_count() const { return model_->point_count(); }
  int degree(const key_type& k) const { return model_->degree(k); }
  int source(const key_type& k) const { return model_->source(k); }
  int target(const key_type& k) const { return model_->target(k); }
  std::vector<key_type> basis(int a, int b) const { return model_->basis(a, b); }
  std::string name(const key_type& k) const { return model_->name(k); }

  Chain<key_type> mu(std::span<const key_type> xs) const {
    if (xs.size() == 1) return model_->differential(xs[0]);
    if (xs.size() == 2) {
      if (model_->target(xs[0]) != model_->source(xs[1])) return {};
      Chain<key_type> out = model_->concatenate(xs[0], xs[1]);
      if (model_->degree(xs[0]) % 2 != 0) out *= -1;
      return out;
    }
    return {};
  }

 private:
  const M* model_;
};

template <class K>
struct PathModelReport {
  bool passed = true;
  std::string check;
  std::vector<K> witness;
  Chain<K> residual;
};

/// Checks d^2 = 0, degree of d, units, associativity and the Leibniz rule
/// d(a.b) = da.b + (-1)^|a| a.db over all basis pairs and triples.
template <PathModel M>
PathModelReport<typename M::key_type> validate_path_model(const M& m) {
  using K = typename M::key_type;
  PathModelReport<K> r;
  auto fail = [&](std::string check, std::vector<K> w, Chain<K> res) {
    r.passed = false;
    r.check = std::move(check);
    r.witness = std::move(w);
    r.residual = std::move(res);
  };
  auto concat_chain = [&](const Chain<K>& a, const Chain<K>& b) {
    Chain<K> out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) out.add(m.concatenate(ka, kb), ca * cb);
    return out;
  };
  const int n = m.point_count();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (const K& a : m.basis(p, q)) {
        Chain<K> da = m.differential(a);
        for (const auto& [k, c] : da)
          if (m.degree(k) != m.degree(a) + 1 || m.source(k) != p || m.target(k) != q)
            return fail("differential degree", {a}, da), r;
        Chain<K> dda = da.apply([&](const K& k) { return m.differential(k); });
        if (!dda.is_zero()) return fail("d squared", {a}, dda), r;
        Chain<K> left = m.concatenate(m.unit(p), a) - Chain<K>::basis(a);
        if (!left.is_zero()) return fail("left unit", {m.unit(p), a}, left), r;
        Chain<K> right = m.concatenate(a, m.unit(q)) - Chain<K>::basis(a);
        if (!right.is_zero()) return fail("right unit", {a, m.unit(q)}, right), r;
      }
    }
    if (m.degree(m.unit(p)) != 0 || !m.differential(m.unit(p)).is_zero())
      return fail("unit is not a degree-0 cycle", {m.unit(p)}, m.differential(m.unit(p))), r;
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (const K& a : m.basis(p, q))
        for (int s = 0; s < n; ++s)
          for (const K& b : m.basis(q, s)) {
            Chain<K> ab = m.concatenate(a, b);
            Chain<K> leib = ab.apply([&](const K& k) { return m.differential(k); });
            leib -= concat_chain(m.differential(a), Chain<K>::basis(b));
            leib.add(concat_chain(Chain<K>::basis(a), m.differential(b)), -sign_of_parity(m.degree(a)));
            if (!leib.is_zero()) return fail("Leibniz", {a, b}, leib), r;
            for (int t = 0; t < n; ++t)
              for (const K& c : m.basis(s, t)) {
                Chain<K> assoc = concat_chain(ab, Chain<K>::basis(c)) - concat_chain(Chain<K>::basis(a), m.concatenate(b, c));
                if (!assoc.is_zero()) return fail("associativity", {a, b, c}, assoc), r;
              }
          }
  return r;
}

}  // namespace floerloops
