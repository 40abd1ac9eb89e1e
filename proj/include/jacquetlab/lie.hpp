#pragma once

// The rank-one structure layer: bracket arithmetic over the split triple
// (e, h, f), the cocharacter grading deg(e) = +2, deg(h) = 0, deg(f) = -2,
// and the Cayley dictionary to the compact-adapted generators (Hc, X+, X-).
// The split triple is defined through the Cayley combination so that every
// catalog operator matrix is rational in the K-type basis.

#include "jacquetlab/rational.hpp"

#include <array>
#include <optional>
#include <string>

namespace jacquetlab {

// Generator names as they appear in serialized operator tables.
enum class Gen { E, H, F, Hc, Xp, Xm };

inline const char* gen_name(Gen g) {
  switch (g) {
    case Gen::E: return "e";
    case Gen::H: return "h";
    case Gen::F: return "f";
    case Gen::Hc: return "Hc";
    case Gen::Xp: return "Xp";
    case Gen::Xm: return "Xm";
  }
  return "?";
}

struct LieElement {
  Rational e{0}, h{0}, f{0};  // coordinates in the split basis

  static LieElement E() { return {1, 0, 0}; }
  static LieElement H() { return {0, 1, 0}; }
  static LieElement F() { return {0, 0, 1}; }

  LieElement operator+(const LieElement& o) const { return {e + o.e, h + o.h, f + o.f}; }
  LieElement operator-(const LieElement& o) const { return {e - o.e, h - o.h, f - o.f}; }
  LieElement operator*(const Rational& s) const { return {e * s, h * s, f * s}; }
  bool operator==(const LieElement& o) const { return e == o.e && h == o.h && f == o.f; }
  bool is_zero() const { return e == 0 && h == 0 && f == 0; }
};

struct CompactElement {
  Rational hc{0}, xp{0}, xm{0};

  static CompactElement Hc() { return {1, 0, 0}; }
  static CompactElement Xp() { return {0, 1, 0}; }
  static CompactElement Xm() { return {0, 0, 1}; }

  CompactElement operator+(const CompactElement& o) const {
    return {hc + o.hc, xp + o.xp, xm + o.xm};
  }
  CompactElement operator*(const Rational& s) const { return {hc * s, xp * s, xm * s}; }
  bool operator==(const CompactElement& o) const {
    return hc == o.hc && xp == o.xp && xm == o.xm;
  }
};

// [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieElement bracket(const LieElement& x, const LieElement& y) {
  return {Rational(2) * (x.h * y.e - x.e * y.h), x.e * y.f - x.f * y.e,
          Rational(2) * (x.f * y.h - x.h * y.f)};
}

// [Hc,X+] = 2X+, [Hc,X-] = -2X-, [X+,X-] = Hc.
inline CompactElement bracket(const CompactElement& x, const CompactElement& y) {
  return {x.xp * y.xm - x.xm * y.xp, Rational(2) * (x.hc * y.xp - x.xp * y.hc),
          Rational(2) * (x.xm * y.hc - x.hc * y.xm)};
}

// Pairing of the cocharacter with the root of a homogeneous element;
// nullopt marks non-homogeneous input. The normalization is <nu, alpha> = 2.
inline std::optional<int> grading_degree(const LieElement& x) {
  const bool he = x.e != 0, hh = x.h != 0, hf = x.f != 0;
  if (int(he) + int(hh) + int(hf) > 1) return std::nullopt;
  if (he) return 2;
  if (hf) return -2;
  return 0;  // h-multiples and zero
}

// Cayley dictionary:  e = (Hc - X+ + X-)/2,  f = (Hc + X+ - X-)/2,  h = X+ + X-.
// Expanding a e + b h + c f in the compact generators:
inline CompactElement to_compact(const LieElement& x) {
  const Rational a = x.e, b = x.h, c = x.f;
  return {(a + c) / 2, b + (c - a) / 2, b + (a - c) / 2};
}

// Inverse dictionary: Hc = e + f, X+ = (h + f - e)/2, X- = (h - f + e)/2.
inline LieElement to_split(const CompactElement& y) {
  const Rational p = y.hc, q = y.xp, r = y.xm;
  return {p + (r - q) / 2, (q + r) / 2, p + (q - r) / 2};
}

struct CayleyImages {
  CompactElement e, h, f;
};

inline CayleyImages cayley_split_generators() {
  CayleyImages c;
  c.e = CompactElement{Rational(1, 2), Rational(-1, 2), Rational(1, 2)};
  c.h = CompactElement{0, 1, 1};
  c.f = CompactElement{Rational(1, 2), Rational(1, 2), Rational(-1, 2)};
  return c;
}

}  // namespace jacquetlab
