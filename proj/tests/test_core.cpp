#include "jacquetlab/eigen.hpp"
#include "jacquetlab/linalg.hpp"
#include "jacquetlab/polynomial.hpp"
#include "jacquetlab/rational.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jacquetlab;

TEST_CASE("rational canonical form and parsing") {
  CHECK(rat_str(Rational(3, 6)) == "1/2");
  CHECK(rat_str(Rational(-4, 8)) == "-1/2");
  CHECK(rat_str(Rational(7)) == "7");
  CHECK(rat_str(Rational(0)) == "0");
  CHECK(denominator(Rational(-5, 10)) > 0);

  CHECK(rat_parse("3/4") == Rational(3, 4));
  CHECK(rat_parse("3/-4") == Rational(-3, 4));
  CHECK(rat_parse("-9") == Rational(-9));
  CHECK(rat_parse("-3/5") == Rational(-3, 5));
  CHECK(!rat_parse("x"));
  CHECK(!rat_parse("1/0"));
  CHECK(!rat_parse("1/2/3"));
  CHECK(!rat_parse(""));

  CHECK(rat_floor(Rational(-7, 2)) == -4);
  CHECK(rat_floor(Rational(7, 2)) == 3);
  CHECK(rat_mod1(Rational(-2, 5)) == Rational(3, 5));
  CHECK(rat_mod1(Rational(-8, 5)) == Rational(2, 5));
  CHECK(leq_int(Rational(-3, 2), Rational(1, 2)));
  CHECK(!leq_int(Rational(1, 2), Rational(-3, 2)));
  CHECK(!leq_int(Rational(0), Rational(1, 2)));
}

TEST_CASE("polynomial arithmetic and evaluation") {
  RatPoly x = RatPoly::x();
  RatPoly p = (x - RatPoly::constant(2)) * x * (x + RatPoly::constant(2));
  CHECK(p.degree() == 3);
  CHECK(p(Rational(2)) == 0);
  CHECK(p(Rational(3)) == 15);
  Rational rem;
  RatPoly q = p.divide_linear(2, &rem);
  CHECK(rem == 0);
  CHECK(q(Rational(1)) == 3);  // x(x+2) at 1
}

TEST_CASE("rational_roots on factored inputs") {
  RatPoly x = RatPoly::x();
  SECTION("(x-2)x(x+2)") {
    auto roots = rational_roots((x - RatPoly::constant(2)) * x * (x + RatPoly::constant(2)));
    REQUIRE(roots.size() == 3);
    CHECK(roots.at(Rational(2)) == 1);
    CHECK(roots.at(Rational(0)) == 1);
    CHECK(roots.at(Rational(-2)) == 1);
  }
  SECTION("x^2 + 1 has no rational roots") {
    RatPoly p = x * x + RatPoly::constant(1);
    CHECK(rational_roots(p).empty());
  }
  SECTION("(x - 1/2)^2 (x + 3/2)") {
    RatPoly a = x - RatPoly::constant(Rational(1, 2));
    RatPoly b = x + RatPoly::constant(Rational(3, 2));
    auto roots = rational_roots(a * a * b);
    REQUIRE(roots.size() == 2);
    CHECK(roots.at(Rational(1, 2)) == 2);
    CHECK(roots.at(Rational(-3, 2)) == 1);
  }
}

TEST_CASE("rational_roots recovers random linear factors") {
  std::mt19937_64 rng(jltest::test_seed());
  RatPoly x = RatPoly::x();
  for (int trial = 0; trial < 20; ++trial) {
    std::map<Rational, int> expected;
    RatPoly p = RatPoly::constant(jltest::random_rational(rng, 3, 2) + Rational(5));
    std::uniform_int_distribution<int> nfac(1, 4);
    int k = nfac(rng);
    for (int i = 0; i < k; ++i) {
      Rational r = jltest::random_rational(rng, 4, 3);
      expected[r]++;
      p = p * (x - RatPoly::constant(r));
    }
    auto roots = rational_roots(p);
    CHECK(roots == expected);
  }
}

TEST_CASE("kernel_cokernel on the stated cases") {
  SECTION("zero 3x3") {
    auto kc = kernel_cokernel(ExactMatrix::zero(3, 3));
    CHECK(kc.kernel.dim() == 3);
    CHECK(kc.cokernel.dim() == 3);
    CHECK(kc.rank == 0);
  }
  SECTION("identity 4x4") {
    auto kc = kernel_cokernel(ExactMatrix::identity(4));
    CHECK(kc.kernel.dim() == 0);
    CHECK(kc.cokernel.dim() == 0);
    CHECK(kc.rank == 4);
  }
  SECTION("rank-2 inclusion 3x2") {
    ExactMatrix a(3, 2);
    a.set(0, 0, 1);
    a.set(1, 1, 1);
    auto kc = kernel_cokernel(a);
    CHECK(kc.kernel.dim() == 0);
    CHECK(kc.cokernel.dim() == 1);
    CHECK(kc.rank == 2);
  }
}

TEST_CASE("rank-nullity property against the dense oracle") {
  std::mt19937_64 rng(jltest::test_seed() + 1);
  std::uniform_int_distribution<int> dims(1, 40);
  for (int trial = 0; trial < 25; ++trial) {
    int r = dims(rng), c = dims(rng);
    ExactMatrix a = jltest::random_sparse(rng, r, c, 0.25);
    auto kc = kernel_cokernel(a);
    int rank = jltest::dense_rank_oracle(a);
    CHECK(kc.rank == rank);
    CHECK(kc.kernel.dim() + rank == c);
    CHECK(kc.cokernel.dim() + rank == r);
    // Kernel vectors actually die.
    for (const auto& v : kc.kernel.basis()) CHECK(a.apply(v).empty());
  }
}

TEST_CASE("column solver") {
  std::mt19937_64 rng(jltest::test_seed() + 2);
  for (int trial = 0; trial < 15; ++trial) {
    ExactMatrix a = jltest::random_sparse(rng, 8, 5, 0.5);
    ColumnSolver solver(a);
    // A known combination is always solvable and reproduces b.
    SparseVec x;
    for (int j = 0; j < 5; ++j) x[j] = jltest::random_rational(rng);
    SparseVec b = a.apply(x);
    auto sol = solver.solve(b);
    REQUIRE(sol.has_value());
    SparseVec diff = a.apply(*sol);
    vec_add_scaled(diff, b, -1);
    CHECK(diff.empty());
  }
  ExactMatrix a(2, 1);
  a.set(0, 0, 1);
  ColumnSolver solver(a);
  CHECK(!solver.solve(SparseVec{{1, Rational(1)}}).has_value());
}

TEST_CASE("char_poly satisfies Cayley-Hamilton and known values") {
  ExactMatrix a(2, 2);
  a.set(0, 0, 3);
  a.set(1, 0, 1);
  a.set(1, 1, 3);  // Jordan block at 3
  RatPoly p = a.char_poly();
  CHECK(p.coeff(2) == 1);
  CHECK(p.coeff(1) == -6);
  CHECK(p.coeff(0) == 9);

  std::mt19937_64 rng(jltest::test_seed() + 3);
  for (int trial = 0; trial < 8; ++trial) {
    ExactMatrix m = jltest::random_sparse(rng, 6, 6, 0.4);
    RatPoly cp = m.char_poly();
    ExactMatrix acc = ExactMatrix::zero(6, 6);
    for (int d = cp.degree(); d >= 0; --d) acc = acc * m + ExactMatrix::identity(6) * cp.coeff(d);
    CHECK(acc.is_zero());
  }
}

TEST_CASE("primary decomposition on the stated cases") {
  SECTION("diag(1,1,5)") {
    ExactMatrix a(3, 3);
    a.set(0, 0, 1);
    a.set(1, 1, 1);
    a.set(2, 2, 5);
    auto comps = primary_decomposition(a, {Rational(1), Rational(5)});
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].eigenvalue == 5);
    CHECK(comps[0].dimension == 1);
    CHECK(comps[0].nilpotency_order == 1);
    CHECK(comps[1].eigenvalue == 1);
    CHECK(comps[1].dimension == 2);
    CHECK(comps[1].nilpotency_order == 1);
  }
  SECTION("2x2 Jordan block at 3") {
    ExactMatrix a(2, 2);
    a.set(0, 0, 3);
    a.set(1, 0, 1);
    a.set(1, 1, 3);
    auto comps = primary_decomposition(a, {Rational(3)});
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].dimension == 2);
    CHECK(comps[0].nilpotency_order == 2);
  }
  SECTION("rotation matrix has irrational spectrum") {
    ExactMatrix a(2, 2);
    a.set(0, 1, -1);
    a.set(1, 0, 1);
    CHECK_THROWS_AS(primary_decomposition(a, {Rational(0)}), IncompleteSpectrum);
  }
}

TEST_CASE("primary decomposition reassembles and stays invariant") {
  std::mt19937_64 rng(jltest::test_seed() + 4);
  std::uniform_int_distribution<int> pick(0, 2);
  const std::vector<Rational> eigs{Rational(0), Rational(2), Rational(-3, 2)};
  for (int trial = 0; trial < 10; ++trial) {
    // Random block-triangular matrix with prescribed rational spectrum.
    const int n = 6;
    ExactMatrix a(n, n);
    std::vector<Rational> diag(n);
    for (int i = 0; i < n; ++i) {
      diag[i] = eigs[pick(rng)];
      a.set(i, i, diag[i]);
      for (int j = i + 1; j < n; ++j) a.set(i, j, jltest::random_rational(rng, 3, 2));
    }
    auto comps = primary_decomposition(a, eigs);
    int total = 0;
    for (const auto& c : comps) {
      total += c.dimension;
      for (const auto& v : c.basis.basis()) CHECK(c.basis.contains(a.apply(v)));
    }
    CHECK(total == n);
  }
}

TEST_CASE("nilpotency_order") {
  SECTION("scalar action") {
    ExactMatrix a = ExactMatrix::identity(3) * Rational(5, 2);
    Subspace full(3);
    for (int i = 0; i < 3; ++i) full.insert(SparseVec{{i, Rational(1)}});
    CHECK(nilpotency_order(a, Rational(5, 2), full) == 1);
  }
  SECTION("3x3 Jordan block") {
    ExactMatrix a(3, 3);
    for (int i = 0; i < 3; ++i) a.set(i, i, Rational(1, 3));
    a.set(1, 0, 1);
    a.set(2, 1, 1);
    Subspace full(3);
    for (int i = 0; i < 3; ++i) full.insert(SparseVec{{i, Rational(1)}});
    CHECK(nilpotency_order(a, Rational(1, 3), full) == 3);
  }
  SECTION("wrong eigenvalue present") {
    ExactMatrix a(2, 2);
    a.set(0, 0, 1);
    a.set(1, 1, 2);
    Subspace full(2);
    full.insert(SparseVec{{0, Rational(1)}});
    full.insert(SparseVec{{1, Rational(1)}});
    CHECK_THROWS_AS(nilpotency_order(a, Rational(1), full), NotNilpotentOnSubspace);
  }
}

TEST_CASE("subspace scan order controls representatives") {
  // Non-pivot coordinates follow the scan order: with edge coordinates
  // scanned first, representatives concentrate in the middle.
  Subspace edge_first(5, {0, 4, 1, 3, 2});
  SparseVec v1{{0, Rational(1)}, {2, Rational(1)}};
  SparseVec v2{{4, Rational(1)}, {2, Rational(-1)}};
  edge_first.insert(v1);
  edge_first.insert(v2);
  auto nps = edge_first.non_pivots();
  REQUIRE(nps.size() == 3);
  CHECK(std::find(nps.begin(), nps.end(), 2) != nps.end());
  CHECK(std::find(nps.begin(), nps.end(), 0) == nps.end());
  CHECK(std::find(nps.begin(), nps.end(), 4) == nps.end());
}
