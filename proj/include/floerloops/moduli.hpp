#pragma once

#include "graded.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace floerloops {

// ---------------------------------------------------------------------------
// Sign rules

/// Boundary of the strip space H(q^i, q^j) at the stratum through q^k.
inline int boundary_sign_strips(int deg_qi, int deg_qk) { return sign_of_parity(deg_qi + deg_qk); }

enum class StratumKind {
  strip_break,      // H(q^i,q^k) x H(q^k,q^j)
  half_disc_top,    // d = 1: H(q0,x0,q1) x R(x0;x)
  half_disc_right,  // d = 1: H(q0,x,q1') x H(q1',q1)
  half_disc_left,   // d = 1: H(q0,q0') x H(q0',x,q1)
  flat,             // H(q0,x[1..d1],q') x H(q',x[d1+1..d],qd)
  sharp,            // H(q0,x[1..k],y,x[k+d2+1..d],qd) x R(y;x[k+1..k+d2])
  disc_break,       // R(x0;x[1..k],y,x[k+d2+1..d]) x R(y;x[k+1..k+d2])
};

inline std::string to_string(StratumKind k) {
  switch (k) {
    case StratumKind::strip_break: return "strip_break";
    case StratumKind::half_disc_top: return "half_disc_top";
    case StratumKind::half_disc_right: return "half_disc_right";
    case StratumKind::half_disc_left: return "half_disc_left";
    case StratumKind::flat: return "flat";
    case StratumKind::sharp: return "sharp";
    case StratumKind::disc_break: return "disc_break";
  }
  return "unknown";
}

inline StratumKind stratum_kind_from_string(const std::string& s) {
  for (auto k : {StratumKind::strip_break, StratumKind::half_disc_top, StratumKind::half_disc_right,
                 StratumKind::half_disc_left, StratumKind::flat, StratumKind::sharp, StratumKind::disc_break})
    if (to_string(k) == s) return k;
  throw Error("unknown stratum kind " + s);
}

/// Degree data read by the half-disc sign rules. Each kind reads only its own fields:
///   half_disc_top   x0, q0
///   half_disc_right q0, x, q_mid
///   half_disc_left  (none)
///   flat            d1, d2, q0, q_mid, sum_x = |x_1| + ... + |x_{d1}|
///   sharp           d, d2, k, q0, sum_x = |x_1| + ... + |x_{k+d2}|
struct HalfDiscStratumData {
  int d = 0, d1 = 0, d2 = 0, k = 0;
  int q0 = 0, q_mid = 0, x0 = 0, x = 0, sum_x = 0;
};

inline int boundary_sign_half_disc_strata(StratumKind kind, const HalfDiscStratumData& s) {
  switch (kind) {
    case StratumKind::half_disc_top: return sign_of_parity(s.x0 + s.q0);
    case StratumKind::half_disc_right: return sign_of_parity(1 + s.q0 + s.x + s.q_mid);
    case StratumKind::half_disc_left: return 1;
    case StratumKind::flat:
      return sign_of_parity(static_cast<long long>(s.d2 + 1) * (s.q0 + s.q_mid + s.sum_x) + s.d1 + 1);
    case StratumKind::sharp:
      return sign_of_parity(static_cast<long long>(s.d2) * (s.q0 + s.sum_x) +
                            static_cast<long long>(s.d2) * (s.d - s.k) + s.k + 1);
    default: throw Error("unknown stratum kind for half-disc strata: " + to_string(kind));
  }
}

/// (-1)^(sum k |x_k|), the sign attached to each rigid disc in mu_d.
inline int dagger_sign(const std::vector<int>& input_degrees) {
  long long s = 0;
  for (std::size_t k = 0; k < input_degrees.size(); ++k) s += static_cast<long long>(k + 1) * input_degrees[k];
  return sign_of_parity(s);
}

/// Sign of a rigid half-disc in F^d for d >= 2:
/// sum k|x_k| + (d+1)|q_d| + (|q_0| + d) dim.
inline int ddagger_sign(const std::vector<int>& input_degrees, int q0, int qd, int dim) {
  long long s = 0;
  const long long d = static_cast<long long>(input_degrees.size());
  for (std::size_t k = 0; k < input_degrees.size(); ++k) s += static_cast<long long>(k + 1) * input_degrees[k];
  s += (d + 1) * qd + (q0 + d) * dim;
  return sign_of_parity(s);
}

/// Sign of a rigid half-disc in F^1: |x| + (|q_0| + 1)(|x| + |q_1|).
inline int functor_d1_sign(int x, int q0, int q1) {
  return sign_of_parity(x + static_cast<long long>(q0 + 1) * (x + q1));
}

/// Boundary sign of a disc stratum, read off from the A-infinity relation: the
/// relation sign k + |x_1| + ... + |x_k| plus the dagger signs of both factors.
inline int boundary_sign_disc_break(const std::vector<int>& inputs, int k, int d2, int y) {
  long long s = k;
  for (int j = 0; j < k; ++j) s += inputs[j];
  std::vector<int> outer(inputs.begin(), inputs.begin() + k);
  outer.push_back(y);
  outer.insert(outer.end(), inputs.begin() + k + d2, inputs.end());
  std::vector<int> inner(inputs.begin() + k, inputs.begin() + k + d2);
  return sign_of_parity(s) * dagger_sign(outer) * dagger_sign(inner);
}

// ---------------------------------------------------------------------------
// Datasets

enum class ModuliKind { strip, half_disc, disc };

inline std::string to_string(ModuliKind k) {
  switch (k) {
    case ModuliKind::strip: return "strip";
    case ModuliKind::half_disc: return "half_disc";
    case ModuliKind::disc: return "disc";
  }
  return "unknown";
}

inline ModuliKind moduli_kind_from_string(const std::string& s) {
  if (s == "strip") return ModuliKind::strip;
  if (s == "half_disc") return ModuliKind::half_disc;
  if (s == "disc") return ModuliKind::disc;
  throw Error("unknown moduli kind " + s);
}

/// One moduli space. For a strip H(q^i,q^j), start/end are q^i, q^j. For a half-disc
/// H(q0, x, qd) they are q0, qd. For a disc R(x0; x) start is x0 and end is unused.
struct ModuliCell {
  std::string id;
  ModuliKind kind = ModuliKind::strip;
  int dimension = 0;
  std::string start, end;
  int start_degree = 0, end_degree = 0;
  std::vector<std::string> inputs;
  std::vector<int> input_degrees;
  int orientation = 1;

  int expected_dimension() const {
    int sum = 0;
    for (int x : input_degrees) sum += x;
    const int d = static_cast<int>(input_degrees.size());
    switch (kind) {
      case ModuliKind::strip: return start_degree - end_degree - 1;
      case ModuliKind::half_disc: return d - 1 + start_degree - end_degree - sum;
      case ModuliKind::disc: return start_degree + d - 2 - sum;
    }
    return -1;
  }
};

/// One boundary stratum first x second of a cell. `split` is d1 for flat strata and k
/// for sharp and disc strata, `length` is d2 for sharp and disc strata, and
/// `mid_degree` is the degree of the new asymptote (q^k, q', y or x0).
struct BoundaryStratum {
  StratumKind kind = StratumKind::strip_break;
  std::string first, second;
  int split = 0;
  int length = 0;
  int mid_degree = 0;
  bool flipped = false;
};

struct StratifiedModuli {
  std::vector<ModuliCell> cells;
  std::map<std::string, std::vector<BoundaryStratum>> boundary;

  const ModuliCell& cell(const std::string& id) const {
    for (const auto& c : cells)
      if (c.id == id) return c;
    throw Error("unknown cell " + id);
  }
};

/// Sign of one stratum, computed from the cell's degree labels.
inline int stratum_sign(const ModuliCell& c, const BoundaryStratum& s) {
  const int d = static_cast<int>(c.input_degrees.size());
  auto partial = [&](int upto) {
    int sum = 0;
    for (int j = 0; j < upto && j < d; ++j) sum += c.input_degrees[j];
    return sum;
  };
  int sign = 1;
  switch (s.kind) {
    case StratumKind::strip_break:
      if (c.kind != ModuliKind::strip) throw Error("strip_break stratum on a non-strip cell " + c.id);
      sign = boundary_sign_strips(c.start_degree, s.mid_degree);
      break;
    case StratumKind::half_disc_top:
    case StratumKind::half_disc_right:
    case StratumKind::half_disc_left: {
      if (c.kind != ModuliKind::half_disc || d != 1) throw Error("d = 1 stratum on cell " + c.id);
      HalfDiscStratumData h;
      h.q0 = c.start_degree;
      h.x = c.input_degrees[0];
      h.x0 = s.mid_degree;
      h.q_mid = s.mid_degree;
      sign = boundary_sign_half_disc_strata(s.kind, h);
      break;
    }
    case StratumKind::flat: {
      if (c.kind != ModuliKind::half_disc || s.split < 0 || s.split > d) throw Error("bad flat stratum on " + c.id);
      HalfDiscStratumData h;
      h.d = d;
      h.d1 = s.split;
      h.d2 = d - s.split;
      h.q0 = c.start_degree;
      h.q_mid = s.mid_degree;
      h.sum_x = partial(s.split);
      sign = boundary_sign_half_disc_strata(s.kind, h);
      break;
    }
    case StratumKind::sharp: {
      if (c.kind != ModuliKind::half_disc || s.split < 0 || s.length < 1 || s.split + s.length > d)
        throw Error("bad sharp stratum on " + c.id);
      HalfDiscStratumData h;
      h.d = d;
      h.d2 = s.length;
      h.k = s.split;
      h.q0 = c.start_degree;
      h.sum_x = partial(s.split + s.length);
      sign = boundary_sign_half_disc_strata(s.kind, h);
      break;
    }
    case StratumKind::disc_break:
      if (c.kind != ModuliKind::disc || s.split < 0 || s.length < 1 || s.split + s.length > d)
        throw Error("bad disc stratum on " + c.id);
      sign = boundary_sign_disc_break(c.input_degrees, s.split, s.length, s.mid_degree);
      break;
  }
  return s.flipped ? -sign : sign;
}

// ---------------------------------------------------------------------------
// Fundamental chains

using CellWord = std::vector<std::string>;

/// The chosen chain of a cell is coefficient * <cell>, with the formal generator <cell>
/// declared to have boundary `boundary` (a chain of products of lower cells).
struct CellChain {
  Integer coefficient = 1;
  Chain<CellWord> boundary;
  bool operator==(const CellChain&) const = default;
};

struct FundamentalChain {
  std::map<std::string, CellChain> cells;
  bool operator==(const FundamentalChain&) const = default;
};

struct ModuliReport {
  bool passed = true;
  std::string cell;
  std::string problem;
  Chain<CellWord> residual;
};

class ModuliError : public Error {
 public:
  ModuliError(const std::string& what, ModuliReport r) : Error(what), report(std::move(r)) {}
  ModuliReport report;
};

namespace detail {

inline std::vector<const ModuliCell*> ordered_cells(const StratifiedModuli& m) {
  std::vector<const ModuliCell*> out;
  for (const auto& c : m.cells) out.push_back(&c);
  std::sort(out.begin(), out.end(), [](const ModuliCell* a, const ModuliCell* b) {
    return a->dimension != b->dimension ? a->dimension < b->dimension : a->id < b->id;
  });
  return out;
}

/// Input axioms: unique ids, dimensions in [0,2] matching the degree labels, strata
/// referring to known cells of complementary dimension.
inline std::optional<ModuliReport> check_axioms(const StratifiedModuli& m) {
  std::map<std::string, const ModuliCell*> by_id;
  for (const auto& c : m.cells) {
    if (!by_id.emplace(c.id, &c).second) return ModuliReport{false, c.id, "duplicate cell id", {}};
    if (c.dimension < 0 || c.dimension > 2) return ModuliReport{false, c.id, "cell dimension outside [0,2]", {}};
    if (c.dimension != c.expected_dimension())
      return ModuliReport{false, c.id, "cell dimension disagrees with its degree labels", {}};
    if (c.dimension == 0 && c.orientation != 1 && c.orientation != -1)
      return ModuliReport{false, c.id, "0-cell orientation must be +1 or -1", {}};
  }
  for (const auto& [id, strata] : m.boundary) {
    auto it = by_id.find(id);
    if (it == by_id.end()) return ModuliReport{false, id, "boundary of an unknown cell", {}};
    if (it->second->dimension == 0 && !strata.empty())
      return ModuliReport{false, id, "0-cell with a boundary", {}};
    for (const auto& s : strata) {
      auto a = by_id.find(s.first), b = by_id.find(s.second);
      if (a == by_id.end() || b == by_id.end()) return ModuliReport{false, id, "stratum refers to an unknown cell", {}};
      if (a->second->dimension + b->second->dimension != it->second->dimension - 1)
        return ModuliReport{false, id, "stratum has the wrong dimension", {}};
      try {
        stratum_sign(*it->second, s);
      } catch (const Error& e) {
        return ModuliReport{false, id, e.what(), {}};
      }
    }
  }
  return std::nullopt;
}

inline Chain<CellWord> right_hand_side(const StratifiedModuli& m, const ModuliCell& c,
                                       const std::map<std::string, CellChain>& chosen) {
  Chain<CellWord> rhs;
  auto it = m.boundary.find(c.id);
  if (it == m.boundary.end()) return rhs;
  for (const auto& s : it->second) {
    auto a = chosen.find(s.first), b = chosen.find(s.second);
    if (a == chosen.end() || b == chosen.end()) throw Error("stratum of " + c.id + " uses a cell without a chain");
    rhs.add(CellWord{s.first, s.second}, a->second.coefficient * b->second.coefficient * stratum_sign(c, s));
  }
  return rhs;
}

/// Boundary of a chain of words by the Leibniz rule; letters of positive dimension are
/// replaced by their declared boundary.
inline Chain<CellWord> word_boundary(const StratifiedModuli& m, const Chain<CellWord>& x,
                                     const std::map<std::string, CellChain>& chosen) {
  Chain<CellWord> out;
  for (const auto& [w, coeff] : x) {
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const ModuliCell& letter = m.cell(w[i]);
      if (letter.dimension > 0) {
        const CellChain& cc = chosen.at(w[i]);
        for (const auto& [inner, c] : cc.boundary) {
          CellWord v(w.begin(), w.begin() + i);
          v.insert(v.end(), inner.begin(), inner.end());
          v.insert(v.end(), w.begin() + i + 1, w.end());
          out.add(v, coeff * c * sign_of_parity(before));
        }
      }
      before += letter.dimension;
    }
  }
  return out;
}

/// Closedness of a right-hand side of dimension dim - 1. For dim = 1 the right-hand side
/// is a 0-chain on the boundary of an interval and must have augmentation zero.
inline std::optional<Chain<CellWord>> closedness_defect(const StratifiedModuli& m, const ModuliCell& c,
                                                        const Chain<CellWord>& rhs,
                                                        const std::map<std::string, CellChain>& chosen) {
  if (c.dimension == 1) {
    Integer aug = 0;
    for (const auto& [w, coeff] : rhs) aug += coeff;
    if (aug != 0) return rhs;
    return std::nullopt;
  }
  Chain<CellWord> b = word_boundary(m, rhs, chosen);
  if (!b.is_zero()) return b;
  return std::nullopt;
}

}  // namespace detail

/// Chooses chains by induction on dimension so that every boundary equation holds.
/// Throws ModuliError when an input axiom fails or a right-hand side is not closed.
inline FundamentalChain choose_fundamental_chains(const StratifiedModuli& m) {
  if (auto bad = detail::check_axioms(m)) throw ModuliError("moduli input axioms fail at " + bad->cell, *bad);
  FundamentalChain f;
  for (const ModuliCell* c : detail::ordered_cells(m)) {
    if (c->dimension == 0) {
      f.cells[c->id] = CellChain{c->orientation, {}};
      continue;
    }
    Chain<CellWord> rhs = detail::right_hand_side(m, *c, f.cells);
    if (auto defect = detail::closedness_defect(m, *c, rhs, f.cells))
      throw ModuliError("boundary sum of " + c->id + " is not a cycle",
                        ModuliReport{false, c->id, "boundary sum is not a cycle", *defect});
    f.cells[c->id] = CellChain{1, std::move(rhs)};
  }
  return f;
}

/// Re-evaluates every boundary equation against the dataset's sign rules and checks the
/// closedness of every right-hand side.
inline ModuliReport verify_boundary_consistency(const StratifiedModuli& m, const FundamentalChain& f) {
  if (auto bad = detail::check_axioms(m)) return *bad;
  for (const ModuliCell* c : detail::ordered_cells(m)) {
    auto it = f.cells.find(c->id);
    if (it == f.cells.end()) return {false, c->id, "cell has no chosen chain", {}};
    if (c->dimension == 0) {
      if (it->second.coefficient != c->orientation || !it->second.boundary.is_zero())
        return {false, c->id, "0-cell chain differs from its signed point", {}};
      continue;
    }
    if (it->second.coefficient != 1 && it->second.coefficient != -1)
      return {false, c->id, "chain is not a fundamental chain", {}};
    Chain<CellWord> rhs;
    try {
      rhs = detail::right_hand_side(m, *c, f.cells);
    } catch (const Error& e) {
      return {false, c->id, e.what(), {}};
    }
    if (auto defect = detail::closedness_defect(m, *c, rhs, f.cells))
      return {false, c->id, "boundary sum is not a cycle", *defect};
    Chain<CellWord> declared = it->second.boundary;
    declared *= it->second.coefficient;
    if (!(declared == rhs)) return {false, c->id, "boundary equation fails", declared - rhs};
  }
  for (const auto& [id, cc] : f.cells) {
    bool known = false;
    for (const auto& c : m.cells) known = known || c.id == id;
    if (!known) return {false, id, "chain for an unknown cell", {}};
  }
  return {};
}

}  // namespace floerloops
