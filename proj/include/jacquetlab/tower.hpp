#pragma once

// Window-stabilized computation of the quotients M / f^k M and their
// generalized h-eigenspace towers.
//
// The modules are infinite; a window is trustworthy only when enlarging it
// changes nothing. Two independent methods are used:
//
//  * the intersection method: span(W) ∩ f^k M is computed exactly as the
//    image of f^k over an enlarged source range, restricted to combinations
//    supported inside W, and accepted only once it is invariant under source
//    growth and under doubling the report window;
//  * the rewriting oracle: when the extreme band coefficients of f are
//    nonvanishing along the chains used, every basis vector reduces modulo
//    f^k M to a small set of class representatives by leading-term
//    substitution, giving the dimension and the h-action charpoly by a
//    different route entirely.
//
// Quotient representatives are the non-pivot coordinates of the echelonized
// intersection under an edge-first scan order, so they always sit in the
// safely materialized interior (or against a genuine lattice boundary).

#include "jacquetlab/eigen.hpp"
#include "jacquetlab/modules.hpp"

#include <cstdlib>
#include <memory>
#include <optional>

namespace jacquetlab {

struct WindowPolicy {
  int start_width = 64;
  int max_width = 1024;  // power of two >= 64

  static WindowPolicy from_env() {
    WindowPolicy p;
    if (const char* s = std::getenv("JACQUETLAB_MAX_WINDOW")) {
      int v = std::atoi(s);
      if (v >= 64) p.max_width = v;
    }
    return p;
  }
};

inline Window policy_window(const BandedModule& m, int width) {
  const auto& lat = m.lattice;
  if (lat.lo && lat.hi) return {*lat.lo, *lat.hi};
  if (lat.lo) return {*lat.lo, *lat.lo + width};
  if (lat.hi) return {*lat.hi - width, *lat.hi};
  return {Rational(-width) / 2, Rational(width) / 2};
}

namespace detail {

// Signals that the current window is too small; the policy loop doubles it.
struct NeedWindow : std::runtime_error {
  explicit NeedWindow(const std::string& what) : std::runtime_error(what) {}
};

// Edge-first scan order: coordinates nearest an artificial window edge are
// scanned (and hence consumed as pivots) first; ties break toward lower n.
inline std::vector<int> badness_order(const OperatorWindow& win) {
  const int inf = std::numeric_limits<int>::max() / 4;
  const int n = win.size();
  std::vector<std::pair<int, int>> keyed(n);
  for (int i = 0; i < n; ++i) {
    int dlo = win.low_edge_artificial() ? i : inf;
    int dhi = win.high_edge_artificial() ? n - 1 - i : inf;
    keyed[i] = {std::min(dlo, dhi), i};
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keyed[a] < keyed[b]; });
  return order;
}

inline LatVec fk_column(const BandedModule& m, const Rational& n, int k) {
  LatVec v{{n, Rational(1)}};
  for (int i = 0; i < k; ++i) v = m.apply(Gen::F, v);
  return v;
}

// span(W) ∩ f^k · span(sources) for one source margin, echelonized edge-first.
inline Subspace image_in_window(const OperatorWindow& win, int k, const Rational& src_margin) {
  const BandedModule& m = win.module();
  const Rational wlo = win.coords().front(), whi = win.coords().back();

  std::vector<Rational> sources;
  {
    Rational lo = wlo - src_margin, hi = whi + src_margin;
    if (m.lattice.lo && *m.lattice.lo > lo) lo = *m.lattice.lo;
    if (m.lattice.hi && *m.lattice.hi < hi) hi = *m.lattice.hi;
    Rational steps = (lo - m.lattice.anchor) / 2;
    Rational start = m.lattice.anchor - Rational(rat_floor(-steps)) * 2;
    for (Rational v = start; v <= hi; v += 2) sources.push_back(v);
  }

  std::vector<LatVec> cols;
  cols.reserve(sources.size());
  std::map<Rational, int> outside_index;  // coordinates outside W touched by columns
  for (const Rational& n : sources) {
    cols.push_back(fk_column(m, n, k));
    for (const auto& [t, c] : cols.back())
      if (win.index_of(t) < 0 && !outside_index.count(t))
        outside_index.emplace(t, static_cast<int>(outside_index.size()));
  }

  // Kernel of the outside-coordinate block.
  ExactMatrix outside(static_cast<int>(outside_index.size()), static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (const auto& [t, c] : cols[j]) {
      auto it = outside_index.find(t);
      if (it != outside_index.end()) outside.set(it->second, j, c);
    }
  Subspace combos = kernel_cokernel(outside).kernel;

  Subspace image(win.size(), badness_order(win));
  for (const auto& combo : combos.basis()) {
    SparseVec v;
    for (const auto& [j, c] : combo) {
      for (const auto& [t, w] : cols[j]) {
        int i = win.index_of(t);
        if (i < 0) continue;  // cancels by construction of the kernel
        auto it = v.find(i);
        if (it == v.end())
          v.emplace(i, w * c);
        else {
          it->second += w * c;
          if (it->second == 0) v.erase(it);
        }
      }
    }
    image.insert(std::move(v));
  }
  return image;
}

}  // namespace detail

struct FiniteQuotient {
  int depth = 0;
  Window window_used{};
  int dimension = 0;
  std::vector<int> rep_coords;  // indices into the window coordinate list
  Subspace image{0};            // span(W) ∩ f^k M
  ExactMatrix h_action;
  std::optional<ExactMatrix> projection_from_deeper;  // set inside towers

  SparseVec to_quotient(const SparseVec& window_vec) const {
    SparseVec residue = image.reduce(window_vec);
    SparseVec out;
    for (const auto& [i, v] : residue) {
      auto it = std::lower_bound(rep_coords.begin(), rep_coords.end(), i);
      if (it == rep_coords.end() || *it != i)
        throw std::logic_error("quotient residue off the representative set");
      out[static_cast<int>(it - rep_coords.begin())] = v;
    }
    return out;
  }
};

namespace detail {

struct OracleOutcome {
  int dim = 0;
  RatPoly h_charpoly;
};

// Leading-term rewriting modulo f^k M; see the header comment. Returns
// nullopt when a needed leading coefficient vanishes on the window.
inline std::optional<OracleOutcome> rewriting_oracle(const OperatorWindow& win, int k) {
  const BandedModule& m = win.module();
  const BandList& fb = m.band(Gen::F);
  if (fb.empty()) return std::nullopt;
  Rational smax = fb.front().shift, smin = fb.front().shift;
  for (const auto& b : fb) {
    smax = std::max(smax, b.shift);
    smin = std::min(smin, b.shift);
  }
  const bool lo_genuine = !win.low_edge_artificial();
  const bool hi_genuine = !win.high_edge_artificial();

  std::map<Rational, LatVec> up_rules, down_rules;  // target -> rest/(-coeff)
  auto make_rule = [&](const Rational& source, bool up) -> bool {
    LatVec col = fk_column(m, source, k);
    if (col.empty()) return false;
    for (const auto& [t, c] : col)
      if (win.index_of(t) < 0) return false;  // support leaves the window
    Rational target = up ? col.rbegin()->first : col.begin()->first;
    Rational expected = source + Rational(k) * (up ? smax : smin);
    if (target != expected) return false;  // a leading product vanished
    Rational lead = col.at(target);
    LatVec rest;
    for (const auto& [t, c] : col)
      if (t != target) rest[t] = -c / lead;
    (up ? up_rules : down_rules).emplace(target, std::move(rest));
    return true;
  };

  const auto& coords = win.coords();
  std::vector<bool> has_rule(coords.size(), false);

  if (fb.size() == 1 || lo_genuine || hi_genuine) {
    // One-sided reduction toward the genuine boundary (or along the single
    // band); every available rule is built.
    const bool up = !hi_genuine || fb.size() == 1;
    for (const Rational& n : coords) {
      LatVec col = fk_column(m, n, k);
      if (col.empty()) continue;
      bool inside = true;
      for (const auto& [t, c] : col)
        if (win.index_of(t) < 0) inside = false;
      if (!inside) continue;
      if (!make_rule(n, up)) return std::nullopt;
    }
    for (const auto& [t, r] : up_rules) has_rule[win.index_of(t)] = true;
    for (const auto& [t, r] : down_rules) has_rule[win.index_of(t)] = true;
  } else {
    // Centered classes with bidirectional rules.
    const int n = static_cast<int>(coords.size());
    if (n < 8 * k + 4) return std::nullopt;
    const int mid = n / 2;
    const int class_lo = mid - k, class_hi = mid + k - 1;  // 2k class coordinates
    for (int i = class_hi + 1; i < n; ++i) {
      Rational src = coords[i] - Rational(k) * smax;
      if (!m.lattice.contains(src) || !make_rule(src, true)) return std::nullopt;
      has_rule[i] = true;
    }
    for (int i = 0; i < class_lo; ++i) {
      Rational src = coords[i] - Rational(k) * smin;
      if (!m.lattice.contains(src) || !make_rule(src, false)) return std::nullopt;
      has_rule[i] = true;
    }
  }

  std::vector<Rational> classes;
  for (size_t i = 0; i < coords.size(); ++i)
    if (!has_rule[i]) classes.push_back(coords[i]);
  if (classes.empty()) return std::nullopt;

  auto reduce_fully = [&](LatVec v) -> LatVec {
    const size_t cap = 64 * coords.size() * (k + 1);
    for (size_t step = 0; step < cap; ++step) {
      const LatVec* rule = nullptr;
      Rational at;
      Rational coeff;
      // Highest up-rule coordinate first, then lowest down-rule coordinate.
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        auto r = up_rules.find(it->first);
        if (r != up_rules.end()) {
          rule = &r->second;
          at = it->first;
          coeff = it->second;
          break;
        }
      }
      if (!rule) {
        for (auto it = v.begin(); it != v.end(); ++it) {
          auto r = down_rules.find(it->first);
          if (r != down_rules.end()) {
            rule = &r->second;
            at = it->first;
            coeff = it->second;
            break;
          }
        }
      }
      if (!rule) return v;
      v.erase(at);
      for (const auto& [t, c] : *rule) {
        auto it = v.find(t);
        if (it == v.end())
          v.emplace(t, c * coeff);
        else {
          it->second += c * coeff;
          if (it->second == 0) v.erase(it);
        }
      }
    }
    throw std::logic_error("rewriting oracle failed to terminate");
  };

  ExactMatrix h(static_cast<int>(classes.size()), static_cast<int>(classes.size()));
  auto class_index = [&](const Rational& c) {
    auto it = std::lower_bound(classes.begin(), classes.end(), c);
    if (it == classes.end() || *it != c) throw std::logic_error("oracle reduction left the classes");
    return static_cast<int>(it - classes.begin());
  };
  for (size_t j = 0; j < classes.size(); ++j) {
    LatVec hv = m.apply(Gen::H, LatVec{{classes[j], Rational(1)}});
    for (const auto& [t, c] : hv)
      if (win.index_of(t) < 0) return std::nullopt;  // class too close to an artificial edge
    LatVec red = reduce_fully(hv);
    for (const auto& [t, c] : red) h.set(class_index(t), static_cast<int>(j), c);
  }
  return OracleOutcome{static_cast<int>(classes.size()), h.char_poly()};
}

// One report-window attempt at a fixed width; throws NeedWindow when the
// window cannot support the computation.
inline FiniteQuotient quotient_at_window(const OperatorWindow& win, int k) {
  const Rational base_margin = Rational(8 * k + 16);
  Subspace image = image_in_window(win, k, base_margin);
  Subspace confirm = image_in_window(win, k, base_margin + 16);
  if (!(image == confirm))
    throw NeedWindow("f^" + std::to_string(k) + " image not saturated under source growth");

  FiniteQuotient q;
  q.depth = k;
  q.window_used = Window{win.coords().front(), win.coords().back()};
  q.image = std::move(image);
  for (int i : q.image.non_pivots()) q.rep_coords.push_back(i);
  q.dimension = static_cast<int>(q.rep_coords.size());
  for (int i : q.rep_coords)
    if (win.safe_radius(i) < 2)
      throw NeedWindow("quotient representative too close to an artificial edge");

  q.h_action = ExactMatrix(q.dimension, q.dimension);
  for (int j = 0; j < q.dimension; ++j) {
    SparseVec hv = win.apply_exact(Gen::H, SparseVec{{q.rep_coords[j], Rational(1)}});
    SparseVec red = q.to_quotient(hv);
    for (const auto& [i, v] : red) q.h_action.set(i, j, v);
  }

  if (auto oracle = rewriting_oracle(win, k)) {
    if (oracle->dim != q.dimension || !(oracle->h_charpoly == q.h_action.char_poly()))
      throw std::logic_error("window cokernel and rewriting oracle disagree at depth " +
                             std::to_string(k));
  }
  return q;
}

}  // namespace detail

// 1 + max over seeds s with s - alpha in 2Z>=0 of (s - alpha)/2: beyond this
// depth the alpha-eigenspace receives no new contributions.
inline int stabilization_depth(const std::vector<Rational>& seeds, const Rational& alpha) {
  std::optional<Integer> best;
  for (const auto& s : seeds) {
    Rational d = (s - alpha) / 2;
    if (!is_integer(d) || d < 0) continue;
    Integer steps = numerator(d);
    if (!best || steps > *best) best = steps;
  }
  if (!best) throw NotInCandidateSet(rat_str(alpha) + " is not in the candidate set S - 2Z>=0");
  return 1 + static_cast<int>(*best);
}

struct EigTower {
  std::shared_ptr<const BandedModule> module;
  std::shared_ptr<const OperatorWindow> win;
  int max_depth = 0;
  std::vector<FiniteQuotient> depths;                      // k = 1..D at [k-1]
  std::vector<std::vector<PrimaryComponent>> components;   // per depth
  std::vector<Rational> seeds;                             // descending
  Rational max_seed, reporting_floor;                      // floor = min(S) - 2(D-1)

  const FiniteQuotient& at(int k) const { return depths.at(k - 1); }
  const std::vector<PrimaryComponent>& comps(int k) const { return components.at(k - 1); }

  std::vector<Rational> candidates(int k) const {
    std::vector<Rational> c;
    for (const auto& s : seeds)
      for (int j = 0; j < k; ++j) c.push_back(s - 2 * j);
    std::sort(c.begin(), c.end(), std::greater<Rational>());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  // Dimension of the alpha generalized eigenspace of Q_k (0 when absent).
  int eig_dim(int k, const Rational& alpha) const {
    for (const auto& pc : comps(k))
      if (pc.eigenvalue == alpha) return pc.dimension;
    return 0;
  }
};

namespace detail {

inline EigTower tower_attempt(std::shared_ptr<const BandedModule> m, int max_depth, int width) {
  EigTower t;
  t.module = m;
  t.win = std::make_shared<OperatorWindow>(*m, policy_window(*m, width));
  t.max_depth = max_depth;
  for (int k = 1; k <= max_depth; ++k) t.depths.push_back(quotient_at_window(*t.win, k));

  // Seed spectrum from the depth-1 characteristic polynomial; its rational
  // roots must exhaust the dimension.
  auto roots = rational_roots(t.depths[0].h_action.char_poly());
  int mult = 0;
  for (const auto& [r, e] : roots) {
    t.seeds.push_back(r);
    mult += e;
  }
  if (mult != t.depths[0].dimension)
    throw IncompleteSpectrum("depth-1 spectrum has irrational eigenvalues");
  std::sort(t.seeds.begin(), t.seeds.end(), std::greater<Rational>());
  t.max_seed = t.seeds.front();
  t.reporting_floor = t.seeds.back() - 2 * (max_depth - 1);

  for (int k = 1; k <= max_depth; ++k)
    t.components.push_back(primary_decomposition(t.at(k).h_action, t.candidates(k)));

  // Connecting surjections Q_{k+1} -> Q_k, h-equivariant, surjective on
  // matching generalized eigenspaces.
  for (int k = 1; k < max_depth; ++k) {
    const FiniteQuotient& deep = t.at(k + 1);
    FiniteQuotient& shallow = t.depths[k - 1];
    ExactMatrix pi(shallow.dimension, deep.dimension);
    for (int j = 0; j < deep.dimension; ++j) {
      SparseVec red = shallow.to_quotient(SparseVec{{deep.rep_coords[j], Rational(1)}});
      for (const auto& [i, v] : red) pi.set(i, j, v);
    }
    if (column_space(pi).dim() != shallow.dimension)
      throw std::logic_error("connecting map is not surjective");
    if (!(shallow.h_action * pi == pi * deep.h_action))
      throw std::logic_error("connecting map is not h-equivariant");
    for (const auto& pc_deep : t.comps(k + 1)) {
      int target_dim = t.eig_dim(k, pc_deep.eigenvalue);
      ExactMatrix img(shallow.dimension, pc_deep.dimension);
      for (int j = 0; j < pc_deep.dimension; ++j) {
        SparseVec y = pi.apply(pc_deep.basis.basis()[j]);
        for (const auto& [i, v] : y) img.set(i, j, v);
      }
      if (column_space(img).dim() != target_dim)
        throw std::logic_error("connecting map not surjective on an eigenspace");
    }
    shallow.projection_from_deeper = pi;
  }
  return t;
}

inline bool tower_invariants_equal(const EigTower& a, const EigTower& b) {
  if (a.max_depth != b.max_depth) return false;
  for (int k = 1; k <= a.max_depth; ++k) {
    if (a.at(k).dimension != b.at(k).dimension) return false;
    if (!(a.at(k).h_action.char_poly() == b.at(k).h_action.char_poly())) return false;
  }
  return true;
}

}  // namespace detail

// Tower of quotients with per-depth primary decompositions; the window is
// grown by doubling until the result is invariant under one more doubling.
inline EigTower eigen_tower(const BandedModule& m, int max_depth,
                            WindowPolicy pol = WindowPolicy::from_env()) {
  if (max_depth < 1) throw InputError("tower depth must be >= 1");
  auto mod = std::make_shared<const BandedModule>(m);
  std::string last_problem = "window cap reached";
  std::optional<EigTower> prev;
  int prev_width = 0;
  for (int width = pol.start_width; width <= pol.max_width; width *= 2) {
    try {
      EigTower cur = detail::tower_attempt(mod, max_depth, width);
      if (prev && detail::tower_invariants_equal(*prev, cur)) return *prev;
      prev = std::move(cur);
      prev_width = width;
    } catch (const detail::NeedWindow& e) {
      last_problem = e.what();
      prev.reset();
    } catch (const RangeExceeded& e) {
      last_problem = e.what();
      prev.reset();
    }
  }
  throw NoStabilization("no window up to " + std::to_string(pol.max_width) +
                        " stabilized the tower: " + last_problem);
}

// The finite quotient M / f^k M alone.
inline FiniteQuotient truncated_quotient(const BandedModule& m, int k,
                                         WindowPolicy pol = WindowPolicy::from_env()) {
  EigTower t = eigen_tower(m, k, pol);
  return t.at(k);
}

// dim of the n̄^k-torsion of the dual Jacquet module, which is dual to
// M / f^k M; serves as the tower-independent dimension consistency check.
inline int dual_jacquet_dims(const BandedModule& m, int k,
                             WindowPolicy pol = WindowPolicy::from_env()) {
  return truncated_quotient(m, k, pol).dimension;
}

}  // namespace jacquetlab
