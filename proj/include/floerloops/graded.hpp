#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace floerloops {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int sign_of_parity(long long parity) { return (parity % 2 == 0) ? 1 : -1; }

/// Sparse integer combination of basis keys. Zero coefficients are never stored.
template <class K>
class Chain {
 public:
  using key_type = K;
  using storage = std::map<K, Integer>;

  Chain() = default;

  static Chain basis(const K& k, Integer c = 1) {
    Chain out;
    out.add(k, std::move(c));
    return out;
  }

  void add(const K& k, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const Chain& other, const Integer& scale = 1) {
    if (scale == 0) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  Chain& operator+=(const Chain& o) { add(o); return *this; }
  Chain& operator-=(const Chain& o) { add(o, -1); return *this; }
  Chain& operator*=(const Integer& s) {
    if (s == 0) { terms_.clear(); return *this; }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend Chain operator+(Chain a, const Chain& b) { a += b; return a; }
  friend Chain operator-(Chain a, const Chain& b) { a -= b; return a; }
  friend Chain operator-(Chain a) { a *= -1; return a; }
  friend Chain operator*(const Integer& s, Chain a) { a *= s; return a; }
  friend bool operator==(const Chain& a, const Chain& b) { return a.terms_ == b.terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const storage& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Integer coefficient(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Linear extension of f : K -> Chain<K2>.
  template <class F>
  auto apply(F&& f) const {
    using Out = std::invoke_result_t<F, const K&>;
    Out out;
    for (const auto& [k, c] : terms_) out.add(f(k), c);
    return out;
  }

 private:
  storage terms_;
};

enum class Orientation : int { positive = 1, negative = -1 };

/// Basis element together with a choice of orientation token.
template <class K>
struct Generator {
  K id;
  int degree = 0;
  Orientation token = Orientation::positive;

  Chain<K> chain() const { return Chain<K>::basis(id, static_cast<int>(token)); }
  Generator flipped() const {
    return {id, degree, token == Orientation::positive ? Orientation::negative : Orientation::positive};
  }
};

/// Sign of moving every element of `left` past every element of `right`.
inline int koszul_sign(std::span<const int> left, std::span<const int> right) {
  long long l = 0, r = 0;
  for (int a : left) l += a;
  for (int b : right) r += b;
  return sign_of_parity(((l % 2) + 2) % 2 * (((r % 2) + 2) % 2));
}

inline int koszul_sign(std::initializer_list<int> left, std::initializer_list<int> right) {
  return koszul_sign(std::span<const int>(left.begin(), left.size()),
                     std::span<const int>(right.begin(), right.size()));
}

template <class K>
struct GradedComplex {
  std::vector<Generator<K>> basis;
  std::function<Chain<K>(const K&)> d;
};

template <class K>
struct DSquaredReport {
  bool passed = true;
  std::optional<K> witness;
  Chain<K> residual;
  std::string problem;
};

/// Checks that d raises degree by one and squares to zero on every basis element.
template <class K>
DSquaredReport<K> check_d_squared(const GradedComplex<K>& complex) {
  std::map<K, int> degree;
  for (const auto& g : complex.basis) degree.emplace(g.id, g.degree);
  DSquaredReport<K> report;
  for (const auto& g : complex.basis) {
    Chain<K> dg = complex.d(g.id);
    for (const auto& [k, c] : dg) {
      auto it = degree.find(k);
      if (it == degree.end() || it->second != g.degree + 1) {
        report.passed = false;
        report.witness = g.id;
        report.residual = dg;
        report.problem = it == degree.end() ? "differential leaves the basis" : "differential has wrong degree";
        return report;
      }
    }
    Chain<K> ddg = dg.apply([&](const K& k) { return complex.d(k); });
    if (!ddg.is_zero()) {
      report.passed = false;
      report.witness = g.id;
      report.residual = std::move(ddg);
      report.problem = "d(d(g)) is nonzero";
      return report;
    }
  }
  return report;
}

}  // namespace floerloops
