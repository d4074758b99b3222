#pragma once

#include "ainfty.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace floerloops {

struct Summand {
  int object = 0;
  int shift = 0;
  bool operator==(const Summand&) const = default;
};

using EntryIndex = std::pair<int, int>;

/// Matrix of chains; entry (i, j) runs from summand i of the source to summand j of the
/// target. Zero entries are not stored.
template <class K>
struct TwMorphism {
  std::map<EntryIndex, Chain<K>> entries;

  void add(const EntryIndex& ij, const Chain<K>& c, const Integer& s = 1) {
    auto& e = entries[ij];
    e.add(c, s);
    if (e.is_zero()) entries.erase(ij);
  }
  void add(const TwMorphism& o, const Integer& s = 1) {
    for (const auto& [ij, c] : o.entries) add(ij, c, s);
  }
  bool is_zero() const { return entries.empty(); }
  Chain<K> entry(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? Chain<K>{} : it->second;
  }
  bool operator==(const TwMorphism&) const = default;

  static TwMorphism elementary(int i, int j, const Chain<K>& c) {
    TwMorphism m;
    m.add({i, j}, c);
    return m;
  }
};

/// Summands (q^i, m_i) and a strictly upper-triangular D with entries in Hom(q^i[m_i], q^j[m_j]).
template <class K>
struct TwistedComplex {
  std::vector<Summand> summands;
  TwMorphism<K> differential;
};

template <AInftyCategory C>
void check_shape(const C& cat, const TwistedComplex<typename C::key_type>& t1,
                 const TwistedComplex<typename C::key_type>& t2, const TwMorphism<typename C::key_type>& s) {
  for (const auto& [ij, c] : s.entries) {
    const auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= static_cast<int>(t1.summands.size()) || j >= static_cast<int>(t2.summands.size()))
      throw Error("shape mismatch: entry outside the summand range");
    for (const auto& [k, coeff] : c)
      if (cat.source(k) != t1.summands[i].object || cat.target(k) != t2.summands[j].object)
        throw Error("shape mismatch: entry " + cat.name(k) + " does not match its summands");
  }
}

/// Degree of a basis term of entry (i, j) in the shifted hom.
template <AInftyCategory C>
int shifted_degree(const C& cat, const TwistedComplex<typename C::key_type>& t1,
                   const TwistedComplex<typename C::key_type>& t2, int i, int j, const typename C::key_type& k) {
  return cat.degree(k) + t2.summands[j].shift - t1.summands[i].shift;
}

/// Matrix product of S2 : T2 -> T3 and S1 : T1 -> T2 with shifted mu_2 entries.
template <AInftyCategory C>
TwMorphism<typename C::key_type> tw_mu2(const C& cat, const TwistedComplex<typename C::key_type>& t1,
                                        const TwistedComplex<typename C::key_type>& t2,
                                        const TwistedComplex<typename C::key_type>& t3,
                                        const TwMorphism<typename C::key_type>& s2,
                                        const TwMorphism<typename C::key_type>& s1) {
  check_shape(cat, t1, t2, s1);
  check_shape(cat, t2, t3, s2);
  TwMorphism<typename C::key_type> out;
  for (const auto& [ij1, c1] : s1.entries) {
    const auto [i1, i2] = ij1;
    for (auto it = s2.entries.lower_bound({i2, 0}); it != s2.entries.end() && it->first.first == i2; ++it) {
      const int i3 = it->first.second;
      out.add({i1, i3}, mu2_shifted(cat, it->second, c1, t1.summands[i1].shift, t2.summands[i2].shift));
    }
  }
  return out;
}

/// mu_1 S + mu_2(S, D1) + mu_2(D2, S) for S : T1 -> T2.
template <AInftyCategory C>
TwMorphism<typename C::key_type> tw_mu1(const C& cat, const TwistedComplex<typename C::key_type>& t1,
                                        const TwistedComplex<typename C::key_type>& t2,
                                        const TwMorphism<typename C::key_type>& s) {
  using K = typename C::key_type;
  check_shape(cat, t1, t2, s);
  TwMorphism<K> out;
  for (const auto& [ij, c] : s.entries) {
    Chain<K> dc;
    for (const auto& [k, coeff] : c) dc.add(cat.mu(std::span<const K>(&k, 1)), coeff);
    out.add(ij, dc);
  }
  out.add(tw_mu2(cat, t1, t1, t2, s, t1.differential));
  out.add(tw_mu2(cat, t1, t2, t2, t2.differential, s));
  return out;
}

template <class K>
struct TwistedReport {
  bool passed = true;
  std::string problem;
  std::optional<EntryIndex> entry;
  Chain<K> residual;
};

/// Maurer-Cartan check mu_1(D) + mu_2(D, D) = 0, entrywise.
template <AInftyCategory C>
TwistedReport<typename C::key_type> validate_twisted(const C& cat, const TwistedComplex<typename C::key_type>& t) {
  using K = typename C::key_type;
  const int n = static_cast<int>(t.summands.size());
  for (const auto& s : t.summands)
    if (s.object < 0 || s.object >= cat.object_count()) throw Error("summand with unknown object");
  for (const auto& [ij, c] : t.differential.entries)
    if (ij.first >= ij.second || ij.first < 0 || ij.second >= n)
      throw Error("twisted differential is not strictly upper-triangular");
  check_shape(cat, t, t, t.differential);
  TwistedReport<K> r;
  for (const auto& [ij, c] : t.differential.entries)
    for (const auto& [k, coeff] : c)
      if (shifted_degree(cat, t, t, ij.first, ij.second, k) != 1) {
        r.passed = false;
        r.problem = "differential entry of shifted degree other than 1";
        r.entry = ij;
        r.residual = c;
        return r;
      }
  TwMorphism<K> mc;
  for (const auto& [ij, c] : t.differential.entries) {
    Chain<K> dc;
    for (const auto& [k, coeff] : c) dc.add(cat.mu(std::span<const K>(&k, 1)), coeff);
    mc.add(ij, dc);
  }
  mc.add(tw_mu2(cat, t, t, t, t.differential, t.differential));
  if (!mc.is_zero()) {
    r.passed = false;
    r.problem = "Maurer-Cartan equation fails";
    r.entry = mc.entries.begin()->first;
    r.residual = mc.entries.begin()->second;
  }
  return r;
}

/// Elementary morphisms T1 -> T2 built from the basis of the underlying homs.
template <AInftyCategory C>
std::vector<TwMorphism<typename C::key_type>> tw_basis(const C& cat, const TwistedComplex<typename C::key_type>& t1,
                                                       const TwistedComplex<typename C::key_type>& t2) {
  using K = typename C::key_type;
  std::vector<TwMorphism<K>> out;
  for (int i = 0; i < static_cast<int>(t1.summands.size()); ++i)
    for (int j = 0; j < static_cast<int>(t2.summands.size()); ++j)
      for (const K& k : cat.basis(t1.summands[i].object, t2.summands[j].object))
        out.push_back(TwMorphism<K>::elementary(i, j, Chain<K>::basis(k)));
  return out;
}

template <class K>
struct TwDgReport {
  bool passed = true;
  std::string problem;
  std::vector<int> complexes;
  std::vector<TwMorphism<K>> morphisms;
  TwMorphism<K> residual;
  std::size_t checks = 0;
};

/// mu1 o mu1 = 0 on every basis morphism between ordered pairs of samples and
/// mu1 mu2(S2, S1) + mu2(S2, mu1 S1) + (-1)^(1 + |S1|) mu2(mu1 S2, S1) = 0 on every triple.
template <AInftyCategory C>
TwDgReport<typename C::key_type> check_tw_dg(const C& cat, const std::vector<TwistedComplex<typename C::key_type>>& samples) {
  using K = typename C::key_type;
  TwDgReport<K> r;
  const int n = static_cast<int>(samples.size());
  std::vector<std::vector<std::vector<TwMorphism<K>>>> basis(n, std::vector<std::vector<TwMorphism<K>>>(n));
  std::vector<std::vector<std::vector<TwMorphism<K>>>> d_basis(n, std::vector<std::vector<TwMorphism<K>>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      basis[a][b] = tw_basis(cat, samples[a], samples[b]);
      for (const auto& s : basis[a][b]) {
        ++r.checks;
        auto ds = tw_mu1(cat, samples[a], samples[b], s);
        auto dds = tw_mu1(cat, samples[a], samples[b], ds);
        if (!dds.is_zero()) {
          r.passed = false;
          r.problem = "mu1 squared is nonzero";
          r.complexes = {a, b};
          r.morphisms = {s};
          r.residual = dds;
          return r;
        }
        d_basis[a][b].push_back(std::move(ds));
      }
    }
  auto degree_of = [&](int a, int b, const TwMorphism<K>& s) {
    const auto& [ij, c] = *s.entries.begin();
    return shifted_degree(cat, samples[a], samples[b], ij.first, ij.second, c.begin()->first);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (std::size_t i1 = 0; i1 < basis[a][b].size(); ++i1)
          for (std::size_t i2 = 0; i2 < basis[b][c].size(); ++i2) {
            ++r.checks;
            const auto& s1 = basis[a][b][i1];
            const auto& s2 = basis[b][c][i2];
            auto prod = tw_mu2(cat, samples[a], samples[b], samples[c], s2, s1);
            auto res = tw_mu1(cat, samples[a], samples[c], prod);
            res.add(tw_mu2(cat, samples[a], samples[b], samples[c], s2, d_basis[a][b][i1]));
            res.add(tw_mu2(cat, samples[a], samples[b], samples[c], d_basis[b][c][i2], s1),
                    sign_of_parity(1 + degree_of(a, b, s1)));
            if (!res.is_zero()) {
              r.passed = false;
              r.problem = "Leibniz rule fails";
              r.complexes = {a, b, c};
              r.morphisms = {s1, s2};
              r.residual = res;
              return r;
            }
          }
  return r;
}

/// Tw(C) restricted to a fixed list of twisted complexes, as a DG functor target.
template <AInftyCategory C>
class TwTarget {
 public:
  using key_type = typename C::key_type;
  struct element_type {
    int source = 0;
    int target = 0;
    TwMorphism<key_type> matrix;
  };

  TwTarget(const C& cat, std::vector<TwistedComplex<key_type>> objects) : cat_(&cat), objects_(std::move(objects)) {}

  const std::vector<TwistedComplex<key_type>>& objects() const { return objects_; }
  const C& base() const { return *cat_; }

  element_type zero(int a, int b) const { return {a, b, {}}; }
  element_type mu1(const element_type& e) const {
    return {e.source, e.target, tw_mu1(*cat_, objects_.at(e.source), objects_.at(e.target), e.matrix)};
  }
  element_type mu2(const element_type& e2, const element_type& e1) const {
    if (e1.target != e2.source) throw Error("mu2 on non-composable twisted morphisms");
    return {e1.source, e2.target,
            tw_mu2(*cat_, objects_.at(e1.source), objects_.at(e1.target), objects_.at(e2.target), e2.matrix, e1.matrix)};
  }
  bool is_zero(const element_type& e) const { return e.matrix.is_zero(); }
  element_type axpy(element_type a, const element_type& b, const Integer& s) const {
    a.matrix.add(b.matrix, s);
    return a;
  }

 private:
  const C* cat_;
  std::vector<TwistedComplex<key_type>> objects_;
};

}  // namespace floerloops
