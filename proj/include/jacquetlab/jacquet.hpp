#pragma once

// Assembly of the Jacquet module from a stabilized tower: the stabilized
// generalized h-eigenspaces with their block actions of e, f, h, plus the
// increasing filtration by eigenvalue bound pulled back to window vectors,
// the Artin-Rees regime check, and exactness / structure reports.
//
// Everything below depth D is invisible: the window model computes modulo
// f^D M, eigenvalues below min(S) - 2(D-1) are truncated and flagged, and
// filtration data carries the same mod-f^D semantics.

#include "jacquetlab/tower.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace jacquetlab {

struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

struct CompletionEigenspace {
  Rational eigenvalue;
  int dimension = 0;
  int nilpotency = 0;   // order of (h - alpha) on the stabilized eigenspace
  int stab_depth = 0;
};

class JacquetModule {
 public:
  EigTower tower;
  int depth = 0;
  std::vector<CompletionEigenspace> spaces;  // stabilized, positive dimension, descending
  std::map<Rational, int> stabilized_dims;   // every stabilized candidate, including dim 0
  std::map<Rational, ExactMatrix> e_block;   // alpha -> (dim_{alpha+2} x dim_alpha)
  std::map<Rational, ExactMatrix> f_block;   // alpha -> (dim_{alpha-2} x dim_alpha)
  std::map<Rational, ExactMatrix> h_block;   // alpha -> (dim_alpha x dim_alpha)
  Rational reporting_floor;
  std::vector<std::string> truncation_notes;

  int dim_at(const Rational& alpha) const {
    auto it = stabilized_dims.find(alpha);
    return it == stabilized_dims.end() ? 0 : it->second;
  }
  int nilpotency_at(const Rational& alpha) const {
    for (const auto& s : spaces)
      if (s.eigenvalue == alpha) return s.nilpotency;
    return 0;
  }
  bool is_stabilized(const Rational& alpha) const { return stabilized_dims.count(alpha) > 0; }

  // Class of a window vector in Q_D expressed in the primary-component basis;
  // component_ranges gives (offset, dim) per eigenvalue in descending order.
  std::vector<Rational> component_coords(const SparseVec& window_vec) const {
    SparseVec cls = tower.at(depth).to_quotient(window_vec);
    auto sol = solver_->solve(cls);
    if (!sol) throw std::logic_error("quotient class escapes the primary decomposition");
    std::vector<Rational> out(p_cols_, Rational(0));
    for (const auto& [i, v] : *sol) out[i] = v;
    return out;
  }
  const std::vector<std::pair<Rational, std::pair<int, int>>>& component_ranges() const {
    return ranges_;
  }

  friend JacquetModule jacquet_module(const BandedModule&, int, WindowPolicy);

 private:
  std::shared_ptr<ColumnSolver> solver_;  // against the component basis matrix
  int p_cols_ = 0;
  std::vector<std::pair<Rational, std::pair<int, int>>> ranges_;
};

inline JacquetModule jacquet_module(const BandedModule& m, int depth,
                                    WindowPolicy pol = WindowPolicy::from_env()) {
  JacquetModule jm;
  jm.tower = eigen_tower(m, depth, pol);
  jm.depth = depth;
  jm.reporting_floor = jm.tower.reporting_floor;
  const FiniteQuotient& q = jm.tower.at(depth);
  const auto& comps = jm.tower.comps(depth);
  const OperatorWindow& win = *jm.tower.win;

  // Stabilized eigenvalues: constant dimensions from their stabilization
  // depth onward (verified), nilpotency read at depth D.
  for (const Rational& alpha : jm.tower.candidates(depth)) {
    int sd = stabilization_depth(jm.tower.seeds, alpha);
    if (sd > depth) continue;
    int d = jm.tower.eig_dim(sd, alpha);
    for (int k = sd; k <= depth; ++k)
      if (jm.tower.eig_dim(k, alpha) != d)
        throw std::logic_error("eigenspace dimension moved beyond its stabilization depth");
    jm.stabilized_dims[alpha] = d;
    if (d > 0) {
      CompletionEigenspace ce{alpha, d, 1, sd};
      for (const auto& pc : comps)
        if (pc.eigenvalue == alpha) ce.nilpotency = pc.nilpotency_order;
      jm.spaces.push_back(ce);
    }
  }
  std::sort(jm.spaces.begin(), jm.spaces.end(),
            [](const auto& a, const auto& b) { return a.eigenvalue > b.eigenvalue; });

  // Component basis matrix P over Q_D coordinates (descending eigenvalues).
  int qdim = q.dimension;
  ExactMatrix p(qdim, qdim);
  int off = 0;
  for (const auto& pc : comps) {
    for (int j = 0; j < pc.dimension; ++j)
      for (const auto& [i, v] : pc.basis.basis()[j]) p.set(i, off + j, v);
    jm.ranges_.push_back({pc.eigenvalue, {off, pc.dimension}});
    off += pc.dimension;
  }
  jm.p_cols_ = off;
  jm.solver_ = std::make_shared<ColumnSolver>(p);

  auto range_of = [&](const Rational& alpha) -> std::optional<std::pair<int, int>> {
    for (const auto& [a, r] : jm.ranges_)
      if (a == alpha) return r;
    return std::nullopt;
  };

  // Block actions by lift-apply-project at depth D. The action must respect
  // the grading exactly: e raises by 2, f lowers by 2, h preserves.
  for (const auto& [g, shift] :
       std::vector<std::pair<Gen, Rational>>{{Gen::E, 2}, {Gen::F, -2}, {Gen::H, 0}}) {
    for (const auto& pc : comps) {
      auto src = *range_of(pc.eigenvalue);
      auto tgt = range_of(pc.eigenvalue + shift);
      ExactMatrix block(tgt ? tgt->second : 0, src.second);
      for (int j = 0; j < src.second; ++j) {
        // Lift the component basis vector to the window through the
        // representative coordinates.
        SparseVec window_vec;
        for (const auto& [i, v] : pc.basis.basis()[j])
          window_vec[q.rep_coords[i]] = v;
        SparseVec image = win.apply_exact(g, window_vec);
        std::vector<Rational> coords = jm.component_coords(image);
        for (int i = 0; i < qdim; ++i) {
          if (coords[i] == 0) continue;
          if (!tgt || i < tgt->first || i >= tgt->first + tgt->second) {
            std::ostringstream os;
            os << "action of " << gen_name(g) << " violates the eigenvalue grading at "
               << rat_str(pc.eigenvalue);
            throw std::logic_error(os.str());
          }
          block.set(i - tgt->first, j, coords[i]);
        }
      }
      if (!jm.is_stabilized(pc.eigenvalue)) continue;
      bool target_stabilized = !tgt || jm.is_stabilized(pc.eigenvalue + shift);
      if (g == Gen::E) jm.e_block.emplace(pc.eigenvalue, std::move(block));
      if (g == Gen::F) {
        if (pc.eigenvalue - 2 < jm.reporting_floor)
          jm.truncation_notes.push_back("f from " + rat_str(pc.eigenvalue) +
                                        " is truncated at the reporting floor");
        jm.f_block.emplace(pc.eigenvalue, std::move(block));
      }
      if (g == Gen::H) {
        // (h - alpha) nilpotent on the block, matching the recorded order.
        ExactMatrix hb = block;
        Subspace full(hb.cols());
        for (int i = 0; i < hb.cols(); ++i) full.insert(SparseVec{{i, Rational(1)}});
        int order = nilpotency_order(hb, pc.eigenvalue, full);
        for (const auto& s : jm.spaces)
          if (s.eigenvalue == pc.eigenvalue && s.nilpotency != order)
            throw std::logic_error("h-block nilpotency mismatch");
        jm.h_block.emplace(pc.eigenvalue, std::move(hb));
      }
      (void)target_stabilized;
    }
  }

  // n-finiteness: iterating e out of the spectrum annihilates every space.
  for (const auto& s : jm.spaces) {
    Rational a = s.eigenvalue;
    ExactMatrix acc = ExactMatrix::identity(s.dimension);
    for (int steps = 0; steps < depth + 8 && acc.rows() > 0; ++steps) {
      auto it = jm.e_block.find(a);
      if (it == jm.e_block.end()) break;
      acc = it->second * acc;
      a += 2;
      if (acc.is_zero()) break;
    }
    if (!acc.is_zero() && acc.rows() > 0)
      throw std::logic_error("n-finiteness failed: e does not annihilate " +
                             rat_str(s.eigenvalue));
  }
  return jm;
}

// ---------------------------------------------------------------------------
// The increasing filtration F_beta by eigenvalue bound (integer-difference
// order), pulled back to window vectors, mod f^D M.

class Filtration {
 public:
  explicit Filtration(const JacquetModule& jm) : jm_(&jm) {
    const OperatorWindow& win = *jm.tower.win;
    const int n = win.size();
    // Per depth: component coefficients of every window coordinate.
    for (int k = 1; k <= jm.depth; ++k) {
      const auto& comps = jm.tower.comps(k);
      int qdim = jm.tower.at(k).dimension;
      ExactMatrix p(qdim, qdim);
      int off = 0;
      std::vector<std::pair<Rational, std::pair<int, int>>> ranges;
      for (const auto& pc : comps) {
        for (int j = 0; j < pc.dimension; ++j)
          for (const auto& [i, v] : pc.basis.basis()[j]) p.set(i, off + j, v);
        ranges.push_back({pc.eigenvalue, {off, pc.dimension}});
        off += pc.dimension;
      }
      ColumnSolver solver(p);
      ExactMatrix c(qdim, n);
      for (int j = 0; j < n; ++j) {
        SparseVec cls = jm.tower.at(k).to_quotient(SparseVec{{j, Rational(1)}});
        auto sol = solver.solve(cls);
        if (!sol) throw std::logic_error("window coordinate escapes the decomposition");
        for (const auto& [i, v] : *sol) c.set(i, j, v);
      }
      coeff_.push_back(std::move(c));
      ranges_.push_back(std::move(ranges));
    }
  }

  const JacquetModule& jm() const { return *jm_; }

  // Membership in F_beta: zero component in every generalized eigenspace
  // whose eigenvalue is not <= beta in the integer-difference order, at every
  // depth k <= D (the depth-D condition already implies the shallower ones;
  // checking them all doubles as an equivariance cross-check).
  bool member(const SparseVec& window_vec, const Rational& beta) const {
    for (int k = jm_->depth; k >= 1; --k)
      if (!member_at_depth(window_vec, beta, k)) return false;
    return true;
  }
  bool member_at_depth(const SparseVec& window_vec, const Rational& beta, int k) const {
    const ExactMatrix& c = coeff_[k - 1];
    SparseVec y = c.apply(window_vec);
    for (const auto& [a, r] : ranges_[k - 1]) {
      if (leq_int(a, beta)) continue;
      for (int i = r.first; i < r.first + r.second; ++i)
        if (vec_get(y, i) != 0) return false;
    }
    return true;
  }

  // Basis of F_beta restricted to coordinates with safe radius >= r.
  const Subspace& restricted(const Rational& beta, int min_radius) const {
    auto key = std::make_pair(beta, min_radius);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const OperatorWindow& win = *jm_->tower.win;
    std::vector<int> allowed;
    for (int j = 0; j < win.size(); ++j)
      if (win.safe_radius(j) >= min_radius) allowed.push_back(j);
    // Stack the forbidden component rows at depth D over the allowed columns.
    const ExactMatrix& c = coeff_.back();
    std::vector<int> rows;
    for (const auto& [a, r] : ranges_.back())
      if (!leq_int(a, beta))
        for (int i = r.first; i < r.first + r.second; ++i) rows.push_back(i);
    ExactMatrix cond(static_cast<int>(rows.size()), static_cast<int>(allowed.size()));
    for (int jj = 0; jj < static_cast<int>(allowed.size()); ++jj)
      for (int ii = 0; ii < static_cast<int>(rows.size()); ++ii)
        cond.set(ii, jj, c.at(rows[ii], allowed[jj]));
    Subspace ker = kernel_cokernel(cond).kernel;
    Subspace out(win.size());
    for (const auto& v : ker.basis()) {
      SparseVec mapped;
      for (const auto& [j, val] : v) mapped[allowed[j]] = val;
      out.insert(std::move(mapped));
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  // Representatives of Gr_gamma = F_gamma / F_{gamma-1} on the restricted
  // window, as honest members of F_gamma.
  const std::vector<SparseVec>& graded_reps(const Rational& gamma, int min_radius) const {
    auto key = std::make_pair(gamma, min_radius);
    auto it = gr_cache_.find(key);
    if (it != gr_cache_.end()) return it->second;
    const Subspace& below = restricted(gamma - 1, min_radius);
    const Subspace& at = restricted(gamma, min_radius);
    Subspace span(at.ambient());
    for (const auto& v : below.basis()) span.insert(v);
    std::vector<SparseVec> reps;
    for (const auto& v : at.basis()) {
      SparseVec w = span.reduce(v);
      if (w.empty()) continue;
      // Pivot-normalize for determinism.
      vec_scale(w, Rational(1) / w.begin()->second);
      reps.push_back(w);
      span.insert(w);
    }
    return gr_cache_.emplace(key, std::move(reps)).first->second;
  }

 private:
  const JacquetModule* jm_;
  std::vector<ExactMatrix> coeff_;  // per depth
  std::vector<std::vector<std::pair<Rational, std::pair<int, int>>>> ranges_;
  mutable std::map<std::pair<Rational, int>, Subspace> cache_;
  mutable std::map<std::pair<Rational, int>, std::vector<SparseVec>> gr_cache_;
};

// Membership of a module element in F_beta(M), the public predicate.
inline bool f_filtration_membership(const Filtration& fil, const LatVec& elem,
                                    const Rational& beta) {
  return fil.member(fil.jm().tower.win->to_indexed(elem), beta);
}

// ---------------------------------------------------------------------------
// Artin-Rees regime

struct ArtinReesResult {
  Rational alpha;
  int depth_k = 0;
  int quotient_dim = 0;  // dim F_{alpha-k} / (F_{-k}(U(nbar)) F_alpha), mod f^D M
  bool vanished = false;
};

// F_{-k}(U(nbar)) = span{f^j : 2j >= k} under the adjoint grading deg f^j = -2j.
// Images are generated per power j from sources interior enough for j exact
// applications; f-preimages of interior vectors only shrink inward, so this
// covers everything the window can certify.
inline ArtinReesResult artin_rees_check(const Filtration& fil, const Rational& alpha, int k) {
  const JacquetModule& jm = fil.jm();
  const OperatorWindow& win = *jm.tower.win;
  const Rational floor = jm.reporting_floor;

  int jmin = (k + 1) / 2;
  // Beyond this j the image f^j F_alpha is already inside f^D M on the window.
  Rational excess = (alpha - floor) / 2;
  int jmax = excess < 0 ? jmin : static_cast<int>(rat_floor(excess)) + 1;
  if (jmax < jmin) jmax = jmin;

  Subspace span(win.size());
  for (const auto& v : jm.tower.at(jm.depth).image.basis()) span.insert(v);

  for (int j = jmin; j <= jmax; ++j) {
    const Subspace& f_alpha = fil.restricted(alpha, j + 1);
    for (const auto& v : f_alpha.basis()) {
      SparseVec w = v;
      for (int step = 0; step < j; ++step) w = win.apply_exact(Gen::F, w);
      if (!fil.member(w, alpha - 2 * j))
        throw std::logic_error("module filtration compatibility failed under f");
      span.insert(w);
    }
  }
  int d2 = span.dim();
  const Subspace& target = fil.restricted(alpha - k, 1);
  for (const auto& v : target.basis()) span.insert(v);
  int d1 = span.dim();

  ArtinReesResult r;
  r.alpha = alpha;
  r.depth_k = k;
  r.quotient_dim = d1 - d2;
  r.vanished = (r.quotient_dim == 0);
  return r;
}

// Largest grid value alpha0 such that the quotient vanishes for every tested
// alpha <= alpha0 and every k <= kmax; scanned upward so the claim is
// downward-closed over the grid by construction.
inline std::optional<Rational> artin_rees_threshold(const Filtration& fil, int kmax) {
  const JacquetModule& jm = fil.jm();
  std::set<Rational> grid;
  for (const auto& [a, d] : jm.stabilized_dims) {
    grid.insert(a);
    grid.insert(a - 1);
  }
  std::optional<Rational> best;
  for (const Rational& a : grid) {
    bool all = true;
    for (int k = 1; k <= kmax && all; ++k)
      if (!artin_rees_check(fil, a, k).vanished) all = false;
    if (!all) break;
    best = a;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exactness and structure reports

struct ExactnessReport {
  struct Row {
    Rational alpha;
    int total = 0, sub = 0, quotient = 0;
    bool pass = false;
  };
  std::vector<Row> rows;
  bool window_maps_pass = false;
  bool pass = false;
};

inline ExactnessReport exactness_check(const ShortExactSequence& ses, int depth,
                                       WindowPolicy pol = WindowPolicy::from_env()) {
  ExactnessReport rep;
  JacquetModule total = jacquet_module(ses.total, depth, pol);
  std::vector<JacquetModule> parts;
  for (const auto& p : ses.sub_parts) parts.push_back(jacquet_module(p, depth, pol));
  JacquetModule quot = jacquet_module(ses.quotient, depth, pol);

  Rational floor = total.reporting_floor;
  for (const auto& p : parts) floor = std::max(floor, p.reporting_floor);
  // The quotient is finite-dimensional; its tower bottoms out rather than
  // truncating, so it does not constrain the comparison floor.

  std::set<Rational> alphas;
  for (const auto& s : total.spaces) alphas.insert(s.eigenvalue);
  for (const auto& p : parts)
    for (const auto& s : p.spaces) alphas.insert(s.eigenvalue);
  for (const auto& s : quot.spaces) alphas.insert(s.eigenvalue);

  rep.pass = true;
  for (auto it = alphas.rbegin(); it != alphas.rend(); ++it) {
    if (*it < floor) continue;
    ExactnessReport::Row row;
    row.alpha = *it;
    row.total = total.dim_at(*it);
    for (const auto& p : parts) row.sub += p.dim_at(*it);
    row.quotient = quot.dim_at(*it);
    row.pass = (row.total == row.sub + row.quotient);
    rep.rows.push_back(row);
    rep.pass = rep.pass && row.pass;
  }

  auto maps = ses.window_maps(policy_window(ses.total, 64));
  rep.window_maps_pass = (maps.projection * maps.inclusion).is_zero() &&
                         maps.sub_dim + maps.quotient_dim == maps.total_dim;
  rep.pass = rep.pass && rep.window_maps_pass;
  return rep;
}

struct StructureReport {
  std::vector<CompletionEigenspace> table;  // descending eigenvalues
  struct BlockRank {
    Rational from, to;
    int rank = 0;
  };
  std::vector<BlockRank> e_ranks, f_ranks;
  int chain_summands = 0;
  bool verma_pattern = false;
  bool semisimple = true;
  int max_nilpotency = 1;
  std::optional<Rational> top_nonsemisimple;
};

inline StructureReport structure_report(const JacquetModule& jm) {
  StructureReport rep;
  rep.table = jm.spaces;
  for (const auto& s : jm.spaces) {
    if (s.nilpotency > rep.max_nilpotency) rep.max_nilpotency = s.nilpotency;
    if (s.nilpotency > 1) {
      rep.semisimple = false;
      if (!rep.top_nonsemisimple) rep.top_nonsemisimple = s.eigenvalue;
    }
  }
  auto present = [&](const Rational& a) { return jm.dim_at(a) > 0; };
  for (const auto& s : jm.spaces) {
    if (present(s.eigenvalue + 2)) {
      auto it = jm.e_block.find(s.eigenvalue);
      if (it != jm.e_block.end())
        rep.e_ranks.push_back({s.eigenvalue, s.eigenvalue + 2, column_space(it->second).dim()});
    }
    if (jm.is_stabilized(s.eigenvalue - 2) && present(s.eigenvalue - 2)) {
      auto it = jm.f_block.find(s.eigenvalue);
      if (it != jm.f_block.end())
        rep.f_ranks.push_back({s.eigenvalue, s.eigenvalue - 2, column_space(it->second).dim()});
    }
  }

  // Connected components of the nonzero-block graph over present eigenvalues.
  std::map<Rational, Rational> parent;
  std::function<Rational(Rational)> find = [&](Rational a) {
    while (parent.at(a) != a) a = parent.at(a);
    return a;
  };
  for (const auto& s : jm.spaces) parent.emplace(s.eigenvalue, s.eigenvalue);
  auto unite = [&](const Rational& a, const Rational& b) {
    Rational ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  };
  for (const auto& r : rep.e_ranks)
    if (r.rank > 0) unite(r.from, r.to);
  for (const auto& r : rep.f_ranks)
    if (r.rank > 0) unite(r.from, r.to);
  std::set<Rational> roots;
  for (const auto& s : jm.spaces) roots.insert(find(s.eigenvalue));
  rep.chain_summands = static_cast<int>(roots.size());

  // Verma pattern: one multiplicity-one chain, injective f all the way down
  // to the reporting floor, semisimple h, no termination inside the range.
  bool dims_ok = !jm.spaces.empty();
  for (const auto& s : jm.spaces) dims_ok = dims_ok && s.dimension == 1;
  bool no_termination = true;
  for (const auto& [a, d] : jm.stabilized_dims)
    if (d == 0 && jm.dim_at(a + 2) > 0 && jm.is_stabilized(a)) no_termination = false;
  bool f_inj = true;
  for (const auto& s : jm.spaces)
    if (jm.is_stabilized(s.eigenvalue - 2) && jm.dim_at(s.eigenvalue - 2) > 0) {
      bool found = false;
      for (const auto& r : rep.f_ranks)
        if (r.from == s.eigenvalue) found = (r.rank == 1);
      f_inj = f_inj && found;
    }
  rep.verma_pattern = dims_ok && no_termination && f_inj && rep.semisimple &&
                      rep.chain_summands == 1;
  return rep;
}

}  // namespace jacquetlab
