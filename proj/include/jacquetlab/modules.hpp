#pragma once

// The catalog of rank-one weight modules, presented as banded operators on a
// step-2 lattice. Principal and discrete series use the K-type basis (Hc
// diagonal); finite-dimensional and Verma-pattern references are native in
// the split basis (h diagonal). Either way a module is six band lists plus a
// lattice, and the action below is the honest module action: band targets
// falling off the lattice are dropped only where the model makes that a
// genuine module law (vanishing boundary coefficient or an exhibited
// quotient), which the relation suite verifies.

#include "jacquetlab/errors.hpp"
#include "jacquetlab/lie.hpp"
#include "jacquetlab/linalg.hpp"
#include "jacquetlab/polynomial.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jacquetlab {

struct Band {
  Rational shift;  // target = n + shift; always even here
  RatPoly coeff;   // coefficient as a polynomial in the source lattice value n
};
using BandList = std::vector<Band>;

struct Lattice {
  Rational anchor;  // lattice = anchor + 2Z, clipped to [lo, hi] when present
  std::optional<Rational> lo, hi;

  bool contains(const Rational& v) const {
    if (!is_even_integer(v - anchor)) return false;
    if (lo && v < *lo) return false;
    if (hi && v > *hi) return false;
    return true;
  }
};

struct ModuleDescriptor {
  enum class Kind { ps, ds, fd, verma };
  Kind kind = Kind::ps;
  Rational lambda;             // ps
  int parity = 0;              // ps
  int lowest_type = 0;         // ds
  bool mirrored = false;       // ds bounded above instead of below (catalog-internal)
  int fd_m = 0;                // fd: highest weight m (serialized as "dim")
  Rational highest_weight;     // verma
  bool quotient_model = false; // interval quotient of a principal series (catalog-internal)

  std::string label() const {
    switch (kind) {
      case Kind::ps:
        return "ps(" + rat_str(lambda) + "," + std::to_string(parity) + ")" +
               (quotient_model ? "/quot" : "");
      case Kind::ds:
        return std::string(mirrored ? "ds-(" : "ds(") + std::to_string(lowest_type) + ")";
      case Kind::fd: return "fd(" + std::to_string(fd_m) + ")";
      case Kind::verma: return "verma(" + rat_str(highest_weight) + ")";
    }
    return "?";
  }
};

using LatVec = std::map<Rational, Rational>;  // lattice value -> coefficient

class BandedModule {
 public:
  ModuleDescriptor desc;
  Lattice lattice;
  std::map<Gen, BandList> bands;

  const BandList& band(Gen g) const { return bands.at(g); }

  // Exact module action of a single generator; no window involved.
  LatVec apply(Gen g, const LatVec& v) const {
    LatVec out;
    const BandList& bl = band(g);
    for (const auto& [n, c] : v) {
      for (const auto& b : bl) {
        Rational t = n + b.shift;
        if (!lattice.contains(t)) continue;
        Rational w = b.coeff(n) * c;
        if (w == 0) continue;
        auto it = out.find(t);
        if (it == out.end())
          out.emplace(t, w);
        else {
          it->second += w;
          if (it->second == 0) out.erase(it);
        }
      }
    }
    return out;
  }

  LatVec apply(const LieElement& x, const LatVec& v) const {
    LatVec out;
    auto acc = [&out](const LatVec& part, const Rational& s) {
      for (const auto& [n, c] : part) {
        auto it = out.find(n);
        Rational w = c * s;
        if (w == 0) continue;
        if (it == out.end())
          out.emplace(n, w);
        else {
          it->second += w;
          if (it->second == 0) out.erase(it);
        }
      }
    };
    if (x.e != 0) acc(apply(Gen::E, v), x.e);
    if (x.h != 0) acc(apply(Gen::H, v), x.h);
    if (x.f != 0) acc(apply(Gen::F, v), x.f);
    return out;
  }

  // Descriptor lambda for the Casimir dictionary (lambda^2 - 1)/2.
  Rational dictionary_lambda() const {
    switch (desc.kind) {
      case ModuleDescriptor::Kind::ps: return desc.lambda;
      case ModuleDescriptor::Kind::ds: return Rational(desc.lowest_type) - 1;
      case ModuleDescriptor::Kind::fd: return Rational(desc.fd_m) + 1;
      case ModuleDescriptor::Kind::verma: return desc.highest_weight + 1;
    }
    return 0;
  }
};

namespace detail {

inline RatPoly poly_n() { return RatPoly::x(); }
inline RatPoly poly_c(const Rational& c) { return RatPoly::constant(c); }

// K-type band family:  Hc v_n = n v_n,  X+/- v_n = ((lambda+1+/-n)/2) v_{n+/-2}.
inline std::map<Gen, BandList> ktype_bands(const Rational& lambda) {
  const RatPoly n = poly_n();
  const RatPoly up = (poly_c(lambda + 1) + n) * Rational(1, 2);    // (lambda+1+n)/2
  const RatPoly down = (poly_c(lambda + 1) - n) * Rational(1, 2);  // (lambda+1-n)/2
  std::map<Gen, BandList> b;
  b[Gen::Hc] = {{Rational(0), n}};
  b[Gen::Xp] = {{Rational(2), up}};
  b[Gen::Xm] = {{Rational(-2), down}};
  // Split triple through the Cayley combination.
  b[Gen::E] = {{Rational(0), n * Rational(1, 2)},
               {Rational(2), up * Rational(-1, 2)},
               {Rational(-2), down * Rational(1, 2)}};
  b[Gen::F] = {{Rational(0), n * Rational(1, 2)},
               {Rational(2), up * Rational(1, 2)},
               {Rational(-2), down * Rational(-1, 2)}};
  b[Gen::H] = {{Rational(2), up}, {Rational(-2), down}};
  return b;
}

// Split-native band family for highest-weight chains:
//   h v_n = n v_n,  f v_n = v_{n-2},  e v_n = (mu-n)(mu+n+2)/4 v_{n+2}.
inline std::map<Gen, BandList> chain_bands(const Rational& mu) {
  const RatPoly n = poly_n();
  const RatPoly ecoeff = (poly_c(mu) - n) * (poly_c(mu + 2) + n) * Rational(1, 4);
  std::map<Gen, BandList> b;
  b[Gen::H] = {{Rational(0), n}};
  b[Gen::F] = {{Rational(-2), poly_c(1)}};
  b[Gen::E] = {{Rational(2), ecoeff}};
  // Inverse Cayley: Hc = e + f, X+/- = (h -/+ (e - f))/2.
  b[Gen::Hc] = {{Rational(2), ecoeff}, {Rational(-2), poly_c(1)}};
  b[Gen::Xp] = {{Rational(0), n * Rational(1, 2)},
                {Rational(-2), poly_c(Rational(1, 2))},
                {Rational(2), ecoeff * Rational(-1, 2)}};
  b[Gen::Xm] = {{Rational(0), n * Rational(1, 2)},
                {Rational(-2), poly_c(Rational(-1, 2))},
                {Rational(2), ecoeff * Rational(1, 2)}};
  return b;
}

}  // namespace detail

inline BandedModule principal_series(const Rational& lambda, int parity) {
  if (parity != 0 && parity != 1) throw InputError("parity must be 0 or 1");
  BandedModule m;
  m.desc.kind = ModuleDescriptor::Kind::ps;
  m.desc.lambda = lambda;
  m.desc.parity = parity;
  m.lattice = Lattice{Rational(parity), std::nullopt, std::nullopt};
  m.bands = detail::ktype_bands(lambda);
  return m;
}

inline BandedModule discrete_series(int lowest_type, bool mirrored = false) {
  if (lowest_type < 1) throw InputError("discrete series lowest type must be >= 1");
  BandedModule m;
  m.desc.kind = ModuleDescriptor::Kind::ds;
  m.desc.lowest_type = lowest_type;
  m.desc.mirrored = mirrored;
  m.desc.lambda = Rational(lowest_type) - 1;
  const Rational lt(lowest_type);
  if (!mirrored)
    m.lattice = Lattice{lt, lt, std::nullopt};
  else
    m.lattice = Lattice{-lt, std::nullopt, -lt};
  m.bands = detail::ktype_bands(m.desc.lambda);
  return m;
}

inline BandedModule finite_dim(int mweight) {
  if (mweight < 0) throw InputError("finite_dim weight must be >= 0");
  BandedModule m;
  m.desc.kind = ModuleDescriptor::Kind::fd;
  m.desc.fd_m = mweight;
  const Rational mm(mweight);
  m.lattice = Lattice{mm, -mm, mm};
  m.bands = detail::chain_bands(mm);
  return m;
}

inline BandedModule verma_reference(const Rational& mu) {
  BandedModule m;
  m.desc.kind = ModuleDescriptor::Kind::verma;
  m.desc.highest_weight = mu;
  m.lattice = Lattice{mu, std::nullopt, mu};
  m.bands = detail::chain_bands(mu);
  return m;
}

// Interval quotient of a principal series: the K-type bands truncated to
// [lo, hi]. Legitimate exactly when span{n < lo} + span{n > hi} is invariant
// in the ambient module; used by the reducibility catalog.
inline BandedModule ps_interval_quotient(const Rational& lambda, int parity, const Rational& lo,
                                         const Rational& hi) {
  BandedModule m = principal_series(lambda, parity);
  m.desc.quotient_model = true;
  m.lattice.lo = lo;
  m.lattice.hi = hi;
  return m;
}

// ---------------------------------------------------------------------------
// Windows

struct Window {
  Rational lo, hi;
};

class OperatorWindow {
 public:
  OperatorWindow(const BandedModule& m, Window w) : mod_(&m), window_(w) {
    Rational lo = w.lo, hi = w.hi;
    if (m.lattice.lo && *m.lattice.lo > lo) lo = *m.lattice.lo;
    if (m.lattice.hi && *m.lattice.hi < hi) hi = *m.lattice.hi;
    // First lattice point >= lo: anchor + 2*ceil((lo - anchor)/2).
    Rational steps = (lo - m.lattice.anchor) / 2;
    Rational start = m.lattice.anchor - Rational(rat_floor(-steps)) * 2;
    for (Rational v = start; v <= hi; v += 2) coords_.push_back(v);
    if (coords_.empty()) throw InputError("empty window");
    low_artificial_ = !m.lattice.lo || *m.lattice.lo < coords_.front();
    high_artificial_ = !m.lattice.hi || *m.lattice.hi > coords_.back();
  }

  const BandedModule& module() const { return *mod_; }
  const std::vector<Rational>& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }
  bool low_edge_artificial() const { return low_artificial_; }
  bool high_edge_artificial() const { return high_artificial_; }

  int index_of(const Rational& v) const {
    auto it = std::lower_bound(coords_.begin(), coords_.end(), v);
    if (it == coords_.end() || *it != v) return -1;
    return static_cast<int>(it - coords_.begin());
  }

  // Number of band applications guaranteed exact when starting from column j.
  int safe_radius(int j) const {
    const int inf = std::numeric_limits<int>::max() / 4;
    int rlo = inf, rhi = inf;
    if (low_artificial_) {
      Rational d = (coords_[j] - coords_.front()) / 2;
      rlo = static_cast<int>(rat_floor(d));
    }
    if (high_artificial_) {
      Rational d = (coords_.back() - coords_[j]) / 2;
      rhi = static_cast<int>(rat_floor(d));
    }
    return std::min(rlo, rhi);
  }

  SparseVec to_indexed(const LatVec& v) const {
    SparseVec out;
    for (const auto& [n, c] : v) {
      int i = index_of(n);
      if (i < 0) throw RangeExceeded("vector leaves the materialized window at " + rat_str(n));
      out[i] = c;
    }
    return out;
  }
  LatVec to_lattice(const SparseVec& v) const {
    LatVec out;
    for (const auto& [i, c] : v) out[coords_.at(i)] = c;
    return out;
  }

  // Window truncation of a generator: out-of-window targets are dropped.
  ExactMatrix matrix(Gen g) const {
    ExactMatrix m(size(), size());
    const BandList& bl = mod_->band(g);
    for (int j = 0; j < size(); ++j) {
      const Rational n = coords_[j];
      for (const auto& b : bl) {
        Rational t = n + b.shift;
        if (!mod_->lattice.contains(t)) continue;
        int i = index_of(t);
        if (i < 0) continue;
        m.add(i, j, b.coeff(n));
      }
    }
    return m;
  }

  ExactMatrix matrix(const LieElement& x) const {
    ExactMatrix m(size(), size());
    if (x.e != 0) m = m + matrix(Gen::E) * x.e;
    if (x.h != 0) m = m + matrix(Gen::H) * x.h;
    if (x.f != 0) m = m + matrix(Gen::F) * x.f;
    return m;
  }

  // Exact application through the module law, landing back in window indices.
  SparseVec apply_exact(Gen g, const SparseVec& v) const {
    return to_indexed(mod_->apply(g, to_lattice(v)));
  }
  SparseVec apply_exact(const LieElement& x, const SparseVec& v) const {
    return to_indexed(mod_->apply(x, to_lattice(v)));
  }

 private:
  const BandedModule* mod_;
  Window window_;
  std::vector<Rational> coords_;
  bool low_artificial_ = false, high_artificial_ = false;
};

inline ExactMatrix operator_window_matrix(const BandedModule& m, const LieElement& x,
                                          Window w) {
  return OperatorWindow(m, w).matrix(x);
}
inline ExactMatrix operator_window_matrix(const BandedModule& m, Gen g, Window w) {
  return OperatorWindow(m, w).matrix(g);
}

// ---------------------------------------------------------------------------
// Relation and Casimir checks

struct RelationReport {
  bool pass = true;
  int interior_columns = 0;
  std::string details;
};

// [h,e] = 2e, [h,f] = -2f, [e,f] = h, exactly, on columns at band distance
// >= 2 from any artificial window edge.
inline RelationReport relations_check(const BandedModule& m, Window w) {
  OperatorWindow win(m, w);
  ExactMatrix E = win.matrix(Gen::E), H = win.matrix(Gen::H), F = win.matrix(Gen::F);
  ExactMatrix r1 = H * E - E * H - E * Rational(2);
  ExactMatrix r2 = H * F - F * H + F * Rational(2);
  ExactMatrix r3 = E * F - F * E - H;
  RelationReport rep;
  for (int j = 0; j < win.size(); ++j) {
    if (win.safe_radius(j) < 2) continue;
    ++rep.interior_columns;
    for (const ExactMatrix* r : {&r1, &r2, &r3}) {
      if (!r->column(j).empty()) {
        rep.pass = false;
        rep.details = "relation defect at column n = " + rat_str(win.coords()[j]);
        return rep;
      }
    }
  }
  if (rep.interior_columns == 0) {
    rep.pass = false;
    rep.details = "window has no interior";
  }
  return rep;
}

// Scalar of Omega = ef + fe + h^2/2 on interior columns.
inline Rational casimir_scalar(const BandedModule& m, Window w) {
  OperatorWindow win(m, w);
  ExactMatrix E = win.matrix(Gen::E), H = win.matrix(Gen::H), F = win.matrix(Gen::F);
  ExactMatrix omega = E * F + F * E + H * H * Rational(1, 2);
  std::optional<Rational> scalar;
  int interior = 0;
  for (int j = 0; j < win.size(); ++j) {
    if (win.safe_radius(j) < 2) continue;
    ++interior;
    SparseVec col = omega.column(j);
    Rational diag = vec_get(col, j);
    col.erase(j);
    if (!col.empty()) throw NonScalar("Casimir acts off-diagonally at n = " + rat_str(win.coords()[j]));
    if (!scalar)
      scalar = diag;
    else if (*scalar != diag)
      throw NonScalar("Casimir not scalar: " + rat_str(*scalar) + " vs " + rat_str(diag));
  }
  if (interior == 0) throw NonScalar("window has no interior columns");
  return *scalar;
}

// ---------------------------------------------------------------------------
// Reducibility catalog

struct ShortExactSequence {
  Rational lambda;
  BandedModule total;                   // ps(lambda, parity)
  std::vector<BandedModule> sub_parts;  // one-sided invariant pieces
  BandedModule quotient;                // interval quotient between the vanishing points

  struct WindowMaps {
    ExactMatrix inclusion;   // sub window -> total window
    ExactMatrix projection;  // total window -> quotient window
    int total_dim = 0, sub_dim = 0, quotient_dim = 0;
  };

  WindowMaps window_maps(Window w) const {
    OperatorWindow tw(total, w);
    std::vector<Rational> sub_coords;
    for (const auto& part : sub_parts) {
      OperatorWindow pw(part, w);
      sub_coords.insert(sub_coords.end(), pw.coords().begin(), pw.coords().end());
    }
    std::sort(sub_coords.begin(), sub_coords.end());
    OperatorWindow qw(quotient, w);
    WindowMaps maps;
    maps.total_dim = tw.size();
    maps.sub_dim = static_cast<int>(sub_coords.size());
    maps.quotient_dim = qw.size();
    maps.inclusion = ExactMatrix(maps.total_dim, maps.sub_dim);
    for (int j = 0; j < maps.sub_dim; ++j) maps.inclusion.set(tw.index_of(sub_coords[j]), j, 1);
    maps.projection = ExactMatrix(maps.quotient_dim, maps.total_dim);
    for (int j = 0; j < maps.total_dim; ++j) {
      int i = qw.index_of(tw.coords()[j]);
      if (i >= 0) maps.projection.set(i, j, 1);
    }
    return maps;
  }
};

// Invariant-subspace catalog at a reducibility point. The K-type bands
// vanish on-lattice only for positive integral lambda, where X- dies at
// n = lambda+1 and X+ at n = -(lambda+1); the two one-sided towers they cut
// off form the largest invariant subspace, and the middle interval is the
// finite-dimensional quotient.
inline std::vector<ShortExactSequence> exact_sequence_catalog(const Rational& lambda) {
  if (!is_integer(lambda) || lambda < 1)
    throw NoReducibility("no band coefficient vanishes on the lattice at lambda = " +
                         rat_str(lambda));
  const int l = static_cast<int>(numerator(lambda));
  const int parity = (l + 1) % 2;
  ShortExactSequence ses;
  ses.lambda = lambda;
  ses.total = principal_series(lambda, parity);
  ses.sub_parts = {discrete_series(l + 1), discrete_series(l + 1, /*mirrored=*/true)};
  ses.quotient = ps_interval_quotient(lambda, parity, Rational(1 - l), Rational(l - 1));
  return {ses};
}

}  // namespace jacquetlab
