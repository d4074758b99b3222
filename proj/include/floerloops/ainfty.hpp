#pragma once

#include "graded.hpp"

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace floerloops {

// Tuples are passed in path order: xs[0] = x_1 runs from object L_0 to L_1, and
// mu(xs) is the operation written mu_d(x_d, ..., x_1).
template <class C>
concept AInftyCategory = requires(const C& c, const typename C::key_type& k,
                                  std::span<const typename C::key_type> xs, int a, int b) {
  { c.object_count() } -> std::convertible_to<int>;
  { c.degree(k) } -> std::convertible_to<int>;
  { c.source(k) } -> std::convertible_to<int>;
  { c.target(k) } -> std::convertible_to<int>;
  { c.basis(a, b) } -> std::convertible_to<std::vector<typename C::key_type>>;
  { c.mu(xs) } -> std::convertible_to<Chain<typename C::key_type>>;
  { c.name(k) } -> std::convertible_to<std::string>;
};

template <class C, class K>
bool composable(const C& cat, std::span<const K> xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (cat.target(xs[i]) != cat.source(xs[i + 1])) return false;
  return !xs.empty();
}

/// Extends cat.mu multilinearly to a list of chains.
template <AInftyCategory C>
Chain<typename C::key_type> mu_multilinear(const C& cat,
                                           const std::vector<Chain<typename C::key_type>>& args) {
  using K = typename C::key_type;
  Chain<K> out;
  std::vector<K> tuple(args.size());
  auto rec = [&](auto&& self, std::size_t i, const Integer& coeff) -> void {
    if (i == args.size()) {
      out.add(cat.mu(std::span<const K>(tuple)), coeff);
      return;
    }
    for (const auto& [k, c] : args[i]) {
      tuple[i] = k;
      self(self, i + 1, coeff * c);
    }
  };
  rec(rec, 0, Integer(1));
  return out;
}

/// Calls fn(tuple) on every composable basis tuple of length d, objects first, then
/// basis indices, both lexicographically. Stops early when fn returns false.
template <AInftyCategory C, class Fn>
bool for_each_composable_tuple(const C& cat, int d, Fn&& fn) {
  using K = typename C::key_type;
  const int n = cat.object_count();
  if (n == 0 || d < 1) return true;
  std::vector<int> objs(d + 1, 0);
  std::vector<K> tuple(d);
  while (true) {
    std::vector<std::vector<K>> bases(d);
    bool empty = false;
    for (int i = 0; i < d; ++i) {
      bases[i] = cat.basis(objs[i], objs[i + 1]);
      if (bases[i].empty()) empty = true;
    }
    if (!empty) {
      std::vector<std::size_t> idx(d, 0);
      while (true) {
        for (int i = 0; i < d; ++i) tuple[i] = bases[i][idx[i]];
        if (!fn(std::span<const K>(tuple))) return false;
        int i = d - 1;
        while (i >= 0 && ++idx[i] == bases[i].size()) idx[i--] = 0;
        if (i < 0) break;
      }
    }
    int i = d;
    while (i >= 0 && ++objs[i] == n) objs[i--] = 0;
    if (i < 0) break;
  }
  return true;
}

template <class K>
struct AInftyWitness {
  std::vector<K> tuple;
  Chain<K> residual;
  std::string problem;
};

template <class K>
struct AInftyReport {
  bool passed = true;
  int max_d = 0;
  std::size_t tuples_checked = 0;
  std::optional<AInftyWitness<K>> witness;
};

inline int dagger_parity(std::span<const int> degrees, std::size_t k) {
  long long s = static_cast<long long>(k);
  for (std::size_t j = 0; j < k; ++j) s += degrees[j];
  return static_cast<int>(((s % 2) + 2) % 2);
}

/// Left side of the A-infinity relation on one tuple, in the sign convention
/// sum (-1)^(k + |x_1| + ... + |x_k|) mu(x_d, ..., mu(x_{k+d2}, ..., x_{k+1}), x_k, ..., x_1).
/// Sets `problem` when some mu output or the residual has the wrong degree.
template <AInftyCategory C>
Chain<typename C::key_type> ainfty_residual(const C& cat, std::span<const typename C::key_type> xs,
                                            std::string* problem = nullptr) {
  using K = typename C::key_type;
  const std::size_t d = xs.size();
  std::vector<int> deg(d);
  int total = 0;
  for (std::size_t i = 0; i < d; ++i) total += deg[i] = cat.degree(xs[i]);
  Chain<K> residual;
  std::vector<K> outer;
  for (std::size_t d2 = 1; d2 <= d; ++d2) {
    for (std::size_t k = 0; k + d2 <= d; ++k) {
      Chain<K> inner = cat.mu(xs.subspan(k, d2));
      if (inner.is_zero()) continue;
      int inner_expected = 2 - static_cast<int>(d2);
      for (std::size_t j = k; j < k + d2; ++j) inner_expected += deg[j];
      const int sign = sign_of_parity(dagger_parity(deg, k));
      outer.assign(xs.begin(), xs.begin() + k);
      outer.push_back(xs[k]);
      outer.insert(outer.end(), xs.begin() + k + d2, xs.end());
      for (const auto& [y, c] : inner) {
        if (cat.degree(y) != inner_expected && problem && problem->empty())
          *problem = "mu_" + std::to_string(d2) + " output has wrong degree";
        outer[k] = y;
        residual.add(cat.mu(std::span<const K>(outer)), c * sign);
      }
    }
  }
  const int expected = 3 - static_cast<int>(d) + total;
  for (const auto& [y, c] : residual)
    if (cat.degree(y) != expected && problem && problem->empty()) *problem = "residual has wrong degree";
  return residual;
}

/// Evaluates the A-infinity relations on every composable basis tuple with d <= max_d.
template <AInftyCategory C>
AInftyReport<typename C::key_type> check_ainfty(const C& cat, int max_d) {
  using K = typename C::key_type;
  AInftyReport<K> report;
  report.max_d = max_d;
  for (int d = 1; d <= max_d && report.passed; ++d) {
    for_each_composable_tuple(cat, d, [&](std::span<const K> xs) {
      ++report.tuples_checked;
      std::string problem;
      Chain<K> r = ainfty_residual(cat, xs, &problem);
      if (!r.is_zero() || !problem.empty()) {
        report.passed = false;
        report.witness = AInftyWitness<K>{{xs.begin(), xs.end()}, std::move(r),
                                          problem.empty() ? "nonzero residual" : problem};
        return false;
      }
      return true;
    });
  }
  return report;
}

/// A chain in Hom(q0[m0], q1[m1]).
template <class K>
struct ShiftedChain {
  Chain<K> chain;
  int source_shift = 0;
  int target_shift = 0;
};

/// (-1)^((deg s2 + 1)(m1 - m0)) mu_2(s2, s1) for s1 : q0[m0] -> q1[m1] and s2 : q1[m1] -> q2[m2].
template <AInftyCategory C>
Chain<typename C::key_type> mu2_shifted(const C& cat, const Chain<typename C::key_type>& s2,
                                        const Chain<typename C::key_type>& s1, int m0, int m1) {
  using K = typename C::key_type;
  Chain<K> out;
  const int dm = m1 - m0;
  K pair[2];
  for (const auto& [k2, c2] : s2) {
    const int sign = sign_of_parity(static_cast<long long>(cat.degree(k2) + 1) * dm);
    for (const auto& [k1, c1] : s1) {
      pair[0] = k1;
      pair[1] = k2;
      out.add(cat.mu(std::span<const K>(pair, 2)), c1 * c2 * sign);
    }
  }
  return out;
}

template <AInftyCategory C>
ShiftedChain<typename C::key_type> mu2_shifted(const C& cat, const ShiftedChain<typename C::key_type>& s2,
                                               const ShiftedChain<typename C::key_type>& s1) {
  if (s1.target_shift != s2.source_shift) throw Error("incompatible shift data");
  return {mu2_shifted(cat, s2.chain, s1.chain, s1.source_shift, s1.target_shift), s1.source_shift,
          s2.target_shift};
}

// A DG target for functors: elements carry their own source and target objects.
template <class T>
concept DgTarget = requires(const T& t, const typename T::element_type& e, int a, int b) {
  { t.zero(a, b) } -> std::convertible_to<typename T::element_type>;
  { t.mu1(e) } -> std::convertible_to<typename T::element_type>;
  { t.mu2(e, e) } -> std::convertible_to<typename T::element_type>;
  { t.is_zero(e) } -> std::convertible_to<bool>;
  { t.axpy(e, e, Integer(1)) } -> std::convertible_to<typename T::element_type>;
};

template <class F, class C, class T>
concept AInftyFunctor = AInftyCategory<C> && DgTarget<T> &&
    requires(const F& f, std::span<const typename C::key_type> xs, int a) {
      { f.object(a) } -> std::convertible_to<int>;
      { f.apply(xs) } -> std::convertible_to<typename T::element_type>;
    };

template <class K, class E>
struct FunctorWitness {
  std::vector<K> tuple;
  E residual;
  std::string problem;
};

template <class K, class E>
struct FunctorReport {
  bool passed = true;
  int max_d = 0;
  std::size_t tuples_checked = 0;
  std::optional<FunctorWitness<K, E>> witness;
};

/// LHS - RHS of the functor equation on one tuple:
///   sum (-1)^(k + |x_1| + ... + |x_k|) F(x_d, ..., mu(...), x_k, ..., x_1)
///     - mu1(F(x_d, ..., x_1)) - sum_{d1 + d2 = d} mu2(F(x_d, ..., x_{d1+1}), F(x_{d1}, ..., x_1)).
template <class C, class T, class F>
  requires AInftyFunctor<F, C, T>
typename T::element_type functor_residual(const C& src, const T& tgt, const F& f,
                                          std::span<const typename C::key_type> xs) {
  using K = typename C::key_type;
  const std::size_t d = xs.size();
  std::vector<int> deg(d);
  for (std::size_t i = 0; i < d; ++i) deg[i] = src.degree(xs[i]);
  auto res = tgt.zero(f.object(src.source(xs.front())), f.object(src.target(xs.back())));
  std::vector<K> outer;
  for (std::size_t d2 = 1; d2 <= d; ++d2) {
    for (std::size_t k = 0; k + d2 <= d; ++k) {
      Chain<K> inner = src.mu(xs.subspan(k, d2));
      if (inner.is_zero()) continue;
      const int sign = sign_of_parity(dagger_parity(deg, k));
      outer.assign(xs.begin(), xs.begin() + k);
      outer.push_back(xs[k]);
      outer.insert(outer.end(), xs.begin() + k + d2, xs.end());
      for (const auto& [y, c] : inner) {
        outer[k] = y;
        res = tgt.axpy(res, f.apply(std::span<const K>(outer)), c * sign);
      }
    }
  }
  res = tgt.axpy(res, tgt.mu1(f.apply(xs)), -1);
  for (std::size_t d1 = 1; d1 < d; ++d1)
    res = tgt.axpy(res, tgt.mu2(f.apply(xs.subspan(d1)), f.apply(xs.subspan(0, d1))), -1);
  return res;
}

template <class C, class T, class F>
  requires AInftyFunctor<F, C, T>
FunctorReport<typename C::key_type, typename T::element_type> check_functor(const C& src, const T& tgt,
                                                                            const F& f, int max_d) {
  using K = typename C::key_type;
  FunctorReport<K, typename T::element_type> report;
  report.max_d = max_d;
  for (int d = 1; d <= max_d && report.passed; ++d) {
    for_each_composable_tuple(src, d, [&](std::span<const K> xs) {
      ++report.tuples_checked;
      auto r = functor_residual(src, tgt, f, xs);
      if (!tgt.is_zero(r)) {
        report.passed = false;
        report.witness = FunctorWitness<K, typename T::element_type>{{xs.begin(), xs.end()}, std::move(r),
                                                                     "functor equation fails"};
        return false;
      }
      return true;
    });
  }
  return report;
}

/// An A-infinity category with vanishing mu_{>=3}, used as a DG functor target.
template <AInftyCategory C>
class DgaTarget {
 public:
  using key_type = typename C::key_type;
  struct element_type {
    int source = 0;
    int target = 0;
    Chain<key_type> chain;
  };

  explicit DgaTarget(const C& cat) : cat_(&cat) {}

  element_type zero(int a, int b) const { return {a, b, {}}; }
  element_type mu1(const element_type& e) const {
    Chain<key_type> out;
    for (const auto& [k, c] : e.chain) out.add(cat_->mu(std::span<const key_type>(&k, 1)), c);
    return {e.source, e.target, out};
  }
  element_type mu2(const element_type& e2, const element_type& e1) const {
    if (e1.target != e2.source) throw Error("mu2 on non-composable elements");
    return {e1.source, e2.target, mu_multilinear(*cat_, {e1.chain, e2.chain})};
  }
  bool is_zero(const element_type& e) const { return e.chain.is_zero(); }
  element_type axpy(element_type a, const element_type& b, const Integer& s) const {
    a.chain.add(b.chain, s);
    return a;
  }

 private:
  const C* cat_;
};

template <AInftyCategory C>
class IdentityFunctor {
 public:
  using key_type = typename C::key_type;
  explicit IdentityFunctor(const C& cat) : cat_(&cat) {}
  int object(int a) const { return a; }
  typename DgaTarget<C>::element_type apply(std::span<const key_type> xs) const {
    const int a = cat_->source(xs.front()), b = cat_->target(xs.back());
    if (xs.size() == 1) return {a, b, Chain<key_type>::basis(xs[0])};
    return {a, b, {}};
  }

 private:
  const C* cat_;
};

}  // namespace floerloops
