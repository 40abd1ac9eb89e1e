#pragma once

// Univariate polynomials over Q: band coefficients, characteristic
// polynomials, and exhaustive rational root extraction.

#include "jacquetlab/rational.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace jacquetlab {

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(Rational c) : coeffs_{std::move(c)} { trim(); }
  explicit RatPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static RatPoly x() { return RatPoly(std::vector<Rational>{0, 1}); }
  static RatPoly constant(const Rational& c) { return RatPoly(c); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Rational(0);
  }

  Rational operator()(const Rational& v) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  RatPoly operator+(const RatPoly& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return RatPoly(std::move(c));
  }
  RatPoly operator-(const RatPoly& o) const { return *this + o * Rational(-1); }
  RatPoly operator*(const Rational& s) const {
    std::vector<Rational> c = coeffs_;
    for (auto& v : c) v *= s;
    return RatPoly(std::move(c));
  }
  RatPoly operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
      for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return RatPoly(std::move(c));
  }
  bool operator==(const RatPoly& o) const { return coeffs_ == o.coeffs_; }

  // Synthetic division by (x - r); remainder returned through *rem.
  RatPoly divide_linear(const Rational& r, Rational* rem = nullptr) const {
    if (is_zero()) {
      if (rem) *rem = 0;
      return {};
    }
    std::vector<Rational> q(coeffs_.size() > 1 ? coeffs_.size() - 1 : 0, Rational(0));
    Rational acc = coeffs_[degree()];
    for (int i = degree() - 1; i >= 0; --i) {
      q[i] = acc;
      acc = coeffs_[i] + acc * r;
    }
    if (rem) *rem = acc;
    return RatPoly(std::move(q));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;  // ascending powers, no trailing zeros
};

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> divs;
  if (n == 0) return divs;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

// All rational roots of p with multiplicities, via the rational-root bound on
// the primitive integer form of p; the returned map is exhaustive over Q.
inline std::map<Rational, int> rational_roots(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::map<Rational, int> roots;

  RatPoly cur = p;
  // Roots at zero.
  int vz = 0;
  while (!cur.is_zero() && cur.coeff(0) == 0) {
    Rational rem;
    cur = cur.divide_linear(0, &rem);
    ++vz;
  }
  if (vz > 0) roots[Rational(0)] = vz;
  if (cur.degree() < 1) return roots;

  // Primitive integer form.
  Integer den_lcm = 1;
  for (const auto& c : cur.coeffs()) den_lcm = lcm(den_lcm, denominator(c));
  std::vector<Integer> ic;
  ic.reserve(cur.coeffs().size());
  for (const auto& c : cur.coeffs()) ic.push_back(numerator(c * Rational(den_lcm)));
  Integer content = 0;
  for (const auto& v : ic) content = gcd(content, v);
  if (content > 1)
    for (auto& v : ic) v /= content;

  const auto ps = detail::positive_divisors(ic.front());
  const auto qs = detail::positive_divisors(ic.back());
  std::vector<Rational> candidates;
  for (const auto& pn : ps)
    for (const auto& qd : qs) {
      Rational c(pn, qd);
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& cand : candidates) {
    if (cur(cand) != 0) continue;
    int mult = 0;
    Rational rem;
    while (cur.degree() >= 1) {
      RatPoly next = cur.divide_linear(cand, &rem);
      if (rem != 0) break;
      cur = next;
      ++mult;
    }
    if (mult > 0) roots[cand] = mult;
  }
  return roots;
}

}  // namespace jacquetlab
