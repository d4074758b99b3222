// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "floerloops/floerloops.hpp"
#include "support/raster_oracle.hpp"
#include "support/synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace floerloops;

namespace {

CylinderGeometry three_fibers() { return {Rational(1), {Rational(0), Rational(1, 3), Rational(2, 3)}}; }

CylinderCategory category(const CylinderGeometry& g, long long w, Twist t = Twist::none) {
  return CylinderCategory(g, {w, t, Tokens::positive});
}

Chain<PathClass> F1(const CylinderFunctor& f, const ChordKey& x) {
  ChordKey one[1] = {x};
  return f.apply(one).matrix.entry(0, 0);
}

bool criterion1() {
  auto cat = category(three_fibers(), 3);
  return check_ainfty(cat, 4).passed;
}

bool criterion2() {
  auto g = three_fibers();
  auto cat = category(g, 3);
  CircleModel model(g.fibers, 3);
  PontryaginCategory<CircleModel> pcat(model);
  CylinderFunctor plain(cat);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::set<PathClass> images;
      for (const auto& x : cat.basis(a, b)) {
        auto img = F1(plain, x);
        if (img.size() != 1) return false;
        const auto& [k, c] = *img.begin();
        if (abs(c) != 1 || k != PathClass{a, b, x.winding} || model.degree(k) != 0 || cat.degree(x) != 0)
          return false;
        images.insert(k);
      }
      if (images.size() != model.basis(a, b).size()) return false;
    }
  // ring isomorphism on a single fiber
  CylinderGeometry one{Rational(1), {Rational(0)}};
  auto c1 = category(one, 3);
  CircleModel m1(one.fibers, 3);
  PontryaginCategory<CircleModel> p1(m1);
  CylinderFunctor f1(c1);
  for (const auto& x1 : c1.basis(0, 0))
    for (const auto& x2 : c1.basis(0, 0)) {
      ChordKey pair[2] = {x1, x2};
      Chain<PathClass> lhs;
      for (const auto& [y, c] : c1.mu(pair)) lhs.add(F1(f1, y), c);
      PathClass img[2] = {F1(f1, x1).begin()->first, F1(f1, x2).begin()->first};
      Chain<PathClass> rhs;
      for (const auto& [k, c] : p1.mu(img)) rhs.add(k, c * F1(f1, x1).begin()->second * F1(f1, x2).begin()->second);
      if (lhs != rhs) return false;
    }
  auto small = category(g, 2);
  CircleModel ms(g.fibers, 2);
  PontryaginCategory<CircleModel> ps(ms);
  CircleTarget target(ps, make_F_objects(g));
  FundamentalChain chains = choose_fundamental_chains(make_cylinder_moduli(small));
  CylinderFunctor f(small, &chains);
  return check_functor(small, target, f, 2).passed;
}

bool criterion3() {
  auto g = three_fibers();
  CircleModel model(g.fibers, 2);
  PontryaginCategory<CircleModel> pcat(model);
  if (!check_tw_dg(pcat, make_F_objects(g)).passed) return false;
  std::size_t total = 0;
  for (int n = 1; n <= 3; ++n) {
    CircleModel m = circle_model(n, 1);
    PontryaginCategory<CircleModel> p(m);
    auto samples = synthetic::random_complexes(m, 8, 100 + n);
    for (const auto& t : samples)
      if (!validate_twisted(p, t).passed) return false;
    if (!check_tw_dg(p, samples).passed) return false;
    total += samples.size();
  }
  return total >= 20;
}

bool criterion4() {
  auto datasets = synthetic::moduli_datasets();
  if (datasets.size() < 10) return false;
  std::set<StratumKind> kinds;
  for (const auto& [name, m] : datasets) {
    for (const auto& [id, strata] : m.boundary)
      for (const auto& s : strata) kinds.insert(s.kind);
    auto chains = choose_fundamental_chains(m);
    if (!verify_boundary_consistency(m, chains).passed) return false;
    for (const auto& [what, bad] : synthetic::single_mutations(m)) {
      bool caught = false;
      try {
        choose_fundamental_chains(bad);
      } catch (const ModuliError&) {
        caught = true;
      }
      if (!caught) {
        std::cerr << "undetected mutation " << name << " " << what << "\n";
        return false;
      }
    }
  }
  return kinds.size() == 7;
}

bool criterion5() {
  auto g = three_fibers();
  auto plain = category(g, 3);
  auto twisted = category(g, 3, Twist::constant);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (const auto& x1 : plain.basis(a, b))
          for (const auto& x2 : plain.basis(b, c)) {
            ChordKey pair[2] = {x1, x2};
            if (plain.mu(pair) != Chain<ChordKey>::basis({a, c, x1.winding + x2.winding})) return false;
            if (twisted.mu(pair) != -plain.mu(pair)) return false;
          }
  return check_ainfty(twisted, 4).passed;
}

bool criterion6() {
  auto g = three_fibers();
  auto base = category(g, 3);
  for (long long rho : {2, 4}) {
    auto scaled = category(rescale(g, Rational(rho)), 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (const auto& x1 : base.basis(a, b))
            for (const auto& x2 : base.basis(b, c)) {
              ChordKey pair[2] = {x1, x2};
              if (base.mu(pair) != scaled.mu(pair)) return false;
            }
  }
  return true;
}

bool criterion7() {
  for (Rational c : {Rational(1), Rational(1, 2), Rational(1, 4), Rational(3)}) {
    CylinderGeometry g{c, {Rational(0), Rational(1, 2)}};
    auto cat = category(g, 3);
    const int oracle = maslov_rotation_oracle(g);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (const auto& x : cat.basis(a, b))
          if (cat.degree(x) != oracle) return false;
  }
  CylinderGeometry g{Rational(1), {Rational(0)}};
  auto cat = category(g, 3);
  for (int res : {1, 2})
    for (const auto& x1 : cat.basis(0, 0))
      for (const auto& x2 : cat.basis(0, 0)) {
        ChordKey pair[2] = {x1, x2};
        std::map<long long, int> counts;
        for (const auto& [y, c] : cat.mu(pair)) counts[y.winding] = static_cast<int>(abs(c));
        if (counts != raster::triangle_counts(g, x1, x2, 8, res)) return false;
      }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    double limit;
    std::function<bool()> run;
  };
  const std::vector<Criterion> criteria{{1, 30, criterion1}, {2, 10, criterion2}, {3, 10, criterion3},
                                        {4, 5, criterion4},  {5, 10, criterion5}, {6, 10, criterion6},
                                        {7, 60, criterion7}};
  bool ok = true;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    bool passed = false;
    try {
      passed = c.run();
    } catch (const std::exception& e) {
      std::cerr << "criterion " << c.number << ": " << e.what() << "\n";
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.limit;
    std::printf("criterion %d: %s (%.3f s, limit %.0f s)\n", c.number, passed && in_time ? "pass" : "fail", s,
                c.limit);
    ok = ok && passed && in_time;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total: %.3f s\n", total);
  return ok ? 0 : 1;
}
