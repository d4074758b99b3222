#pragma once

#include "graded.hpp"

#include <compare>
#include <string>
#include <vector>

namespace floerloops {

// A finite cubical set exposes dimension(c), face(c, k, eps) for 1 <= k <= dim,
// and is_degenerate(c).
template <class S>
concept CubicalSet = requires(const S& s, const typename S::cube_type& c, int k, int eps) {
  { s.dimension(c) } -> std::convertible_to<int>;
  { s.face(c, k, eps) } -> std::convertible_to<typename S::cube_type>;
  { s.is_degenerate(c) } -> std::convertible_to<bool>;
};

/// Normalized cubical boundary: sum over (k, eps) of (-1)^(k+eps) sigma o delta_{k,eps},
/// with degenerate faces dropped.
template <CubicalSet S>
Chain<typename S::cube_type> cubical_boundary(const S& set, const typename S::cube_type& sigma) {
  Chain<typename S::cube_type> out;
  const int dim = set.dimension(sigma);
  for (int k = 1; k <= dim; ++k) {
    for (int eps = 0; eps <= 1; ++eps) {
      auto f = set.face(sigma, k, eps);
      if (set.is_degenerate(f)) continue;
      out.add(f, sign_of_parity(k + eps));
    }
  }
  return out;
}

/// Cube of [0,1]^n given by affine coordinate maps [0,1]^dim -> [0,1]^n. Each output
/// coordinate is the constant 0, the constant 1, or an input coordinate x_j.
struct CoordinateCube {
  int dim = 0;
  std::vector<int> out;  // 0, 1, or 2 + j for x_j

  auto operator<=>(const CoordinateCube&) const = default;
  bool operator==(const CoordinateCube&) const = default;

  std::string name() const {
    std::string s = "(";
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i) s += ",";
      s += out[i] < 2 ? std::to_string(out[i]) : "x" + std::to_string(out[i] - 1);
    }
    return s + ")";
  }
};

/// All coordinate cubes of dimension <= max_dim in [0,1]^n. Closed under faces and
/// degeneracies up to max_dim.
class CoordinateCubes {
 public:
  using cube_type = CoordinateCube;

  CoordinateCubes(int n, int max_dim) : n_(n), max_dim_(max_dim) {
    if (n < 0 || max_dim < 0) throw Error("coordinate cubes need n >= 0 and max_dim >= 0");
  }

  int dimension(const CoordinateCube& c) const { return c.dim; }

  CoordinateCube face(const CoordinateCube& c, int k, int eps) const {
    if (k < 1 || k > c.dim || (eps != 0 && eps != 1)) throw Error("face index out of range");
    CoordinateCube f{c.dim - 1, c.out};
    const int j = k - 1;
    for (int& v : f.out) {
      if (v < 2) continue;
      const int idx = v - 2;
      if (idx == j) v = eps;
      else if (idx > j) v = v - 1;
    }
    return f;
  }

  bool is_degenerate(const CoordinateCube& c) const {
    std::vector<bool> used(c.dim, false);
    for (int v : c.out)
      if (v >= 2) used[v - 2] = true;
    for (bool u : used)
      if (!u) return true;
    return false;
  }

  std::vector<CoordinateCube> cubes() const {
    std::vector<CoordinateCube> all;
    for (int d = 0; d <= max_dim_; ++d) {
      CoordinateCube c{d, std::vector<int>(n_, 0)};
      const int choices = 2 + d;
      while (true) {
        all.push_back(c);
        int i = 0;
        while (i < n_ && ++c.out[i] == choices) c.out[i++] = 0;
        if (i == n_) break;
      }
    }
    return all;
  }

  /// Normalized chains, graded cohomologically (a cube of dimension i has degree -i).
  GradedComplex<CoordinateCube> normalized_complex() const {
    GradedComplex<CoordinateCube> cx;
    for (auto& c : cubes())
      if (!is_degenerate(c)) cx.basis.push_back({c, -c.dim, Orientation::positive});
    cx.d = [set = *this](const CoordinateCube& c) { return cubical_boundary(set, c); };
    return cx;
  }

 private:
  int n_;
  int max_dim_;
};

}  // namespace floerloops
