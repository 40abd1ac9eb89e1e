#include "jacquetlab/lie.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jacquetlab;

namespace {
LieElement random_elem(std::mt19937_64& rng) {
  return {jltest::random_rational(rng), jltest::random_rational(rng), jltest::random_rational(rng)};
}
}  // namespace

TEST_CASE("defining relations") {
  CHECK(bracket(LieElement::H(), LieElement::E()) == LieElement::E() * 2);
  CHECK(bracket(LieElement::E(), LieElement::F()) == LieElement::H());
  CHECK(bracket(LieElement::H(), LieElement::F()) == LieElement::F() * -2);
}

TEST_CASE("bracket is bilinear, antisymmetric, Jacobi") {
  std::mt19937_64 rng(jltest::test_seed() + 10);
  for (int trial = 0; trial < 30; ++trial) {
    LieElement x = random_elem(rng), y = random_elem(rng), z = random_elem(rng);
    Rational s = jltest::random_rational(rng);
    CHECK(bracket(x, y) == bracket(y, x) * -1);
    CHECK(bracket(x + z * s, y) == bracket(x, y) + bracket(z, y) * s);
    LieElement jac =
        bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("grading degree") {
  CHECK(grading_degree(LieElement::E()) == 2);
  CHECK(grading_degree(LieElement::F()) == -2);
  CHECK(grading_degree(LieElement::H()) == 0);
  CHECK(!grading_degree(LieElement::E() + LieElement::H()).has_value());
  // Additive under bracket on homogeneous pairs with nonzero bracket.
  LieElement he = bracket(LieElement::H(), LieElement::E());
  CHECK(grading_degree(he) == *grading_degree(LieElement::H()) + *grading_degree(LieElement::E()));
  LieElement ef = bracket(LieElement::E(), LieElement::F());
  CHECK(grading_degree(ef) == 0);
}

TEST_CASE("Cayley dictionary produces the split relations in the compact algebra") {
  auto img = cayley_split_generators();
  CHECK(img.e == CompactElement{Rational(1, 2), Rational(-1, 2), Rational(1, 2)});
  CHECK(img.f == CompactElement{Rational(1, 2), Rational(1, 2), Rational(-1, 2)});
  CHECK(img.h == CompactElement{0, 1, 1});
  // Relations verified through compact-side bracket arithmetic.
  CHECK(bracket(img.h, img.e) == img.e * 2);
  CHECK(bracket(img.e, img.f) == img.h);
  CHECK(bracket(img.h, img.f) == img.f * -2);
}

TEST_CASE("basis conversion is an exact involutive pair") {
  std::mt19937_64 rng(jltest::test_seed() + 11);
  for (int trial = 0; trial < 20; ++trial) {
    LieElement x = random_elem(rng);
    CHECK(to_split(to_compact(x)) == x);
    CompactElement y{jltest::random_rational(rng), jltest::random_rational(rng),
                     jltest::random_rational(rng)};
    CHECK(to_compact(to_split(y)) == y);
  }
  // Inverse images of (e, h, f) regenerate (Hc, X+, X-).
  CHECK(to_split(CompactElement::Hc()) == LieElement::E() + LieElement::F());
  CHECK(to_compact(to_split(CompactElement::Xp())) == CompactElement::Xp());
  CHECK(to_compact(to_split(CompactElement::Xm())) == CompactElement::Xm());
  // Bracket transported through the dictionary agrees with the split bracket.
  std::mt19937_64 rng2(jltest::test_seed() + 12);
  for (int trial = 0; trial < 20; ++trial) {
    LieElement x = random_elem(rng2), y = random_elem(rng2);
    CHECK(to_split(bracket(to_compact(x), to_compact(y))) == bracket(x, y));
  }
}
