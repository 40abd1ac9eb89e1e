#include "jacquetlab/jacquet.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jacquetlab;

namespace {
Rational scalar_of(const ExactMatrix& m) {
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  return m.at(0, 0);
}
}  // namespace

TEST_CASE("J(finite_dim(m)) is the module itself") {
  for (int mw : {0, 2, 3}) {
    BandedModule fd = finite_dim(mw);
    JacquetModule jm = jacquet_module(fd, mw + 2);
    REQUIRE(static_cast<int>(jm.spaces.size()) == mw + 1);
    for (int j = 0; j <= mw; ++j) {
      const auto& s = jm.spaces[j];
      CHECK(s.eigenvalue == Rational(mw - 2 * j));
      CHECK(s.dimension == 1);
      CHECK(s.nilpotency == 1);
    }
    // Block actions match the chain model: with h-eigenvalue nu = m - 2j,
    // the composite scalars are ef = (j+1)(m-j) and fe = j(m-j+1).
    for (int j = 0; j <= mw; ++j) {
      Rational nu(mw - 2 * j);
      if (j < mw) {
        Rational ef = scalar_of(jm.e_block.at(nu - 2) * jm.f_block.at(nu));
        CHECK(ef == Rational(j + 1) * Rational(mw - j));
      }
      if (j > 0) {
        Rational fe = scalar_of(jm.f_block.at(nu + 2) * jm.e_block.at(nu));
        CHECK(fe == Rational(j) * Rational(mw - j + 1));
      }
      CHECK(scalar_of(jm.h_block.at(nu)) == nu);
    }
  }
}

TEST_CASE("J(discrete_series(2)) is a Verma-pattern chain") {
  JacquetModule jm = jacquet_module(discrete_series(2), 6);
  REQUIRE(!jm.spaces.empty());
  CHECK(jm.spaces.front().eigenvalue == Rational(-2));
  for (const auto& s : jm.spaces) {
    CHECK(s.dimension == 1);
    CHECK(s.nilpotency == 1);
  }
  StructureReport rep = structure_report(jm);
  CHECK(rep.chain_summands == 1);
  CHECK(rep.verma_pattern);
  CHECK(rep.semisimple);
  // f injective chain-downward, as in the Verma reference.
  for (const auto& r : rep.f_ranks) CHECK(r.rank == 1);
}

TEST_CASE("J of the Verma reference reproduces its own pattern") {
  JacquetModule jm = jacquet_module(verma_reference(Rational(-1, 2)), 5);
  CHECK(structure_report(jm).verma_pattern);
  CHECK(jm.spaces.front().eigenvalue == Rational(-1, 2));
}

TEST_CASE("J(ps(1/2, 0)): two multiplicity-one chains, h semisimple") {
  JacquetModule jm = jacquet_module(principal_series(Rational(1, 2), 0), 6);
  std::set<Rational> roots;
  for (const auto& s : jm.spaces) {
    CHECK(s.dimension == 1);
    CHECK(s.nilpotency == 1);
    roots.insert(rat_mod1(s.eigenvalue));
  }
  CHECK(jm.tower.seeds == std::vector<Rational>{Rational(-1, 2), Rational(-3, 2)});
  StructureReport rep = structure_report(jm);
  CHECK(rep.semisimple);
  CHECK(rep.chain_summands == 2);
  CHECK(!rep.verma_pattern);
}

TEST_CASE("J(fd(2)) structure: one terminating chain, not Verma pattern") {
  JacquetModule jm = jacquet_module(finite_dim(2), 5);
  StructureReport rep = structure_report(jm);
  CHECK(rep.table.size() == 3);
  CHECK(rep.chain_summands == 1);
  CHECK(rep.semisimple);
  CHECK(!rep.verma_pattern);
}

TEST_CASE("non-semisimplicity diagnostic at lambda = 1") {
  JacquetModule jm = jacquet_module(principal_series(Rational(1), 1), 6);
  StructureReport rep = structure_report(jm);
  // The completion at integral infinitesimal character couples the two
  // exponent chains; the diagnostic must fire.
  CHECK((rep.max_nilpotency >= 2 || rep.chain_summands == 1));
  CHECK(jm.tower.seeds == std::vector<Rational>{Rational(0), Rational(-2)});
}

TEST_CASE("filtration membership") {
  SECTION("finite_dim(2) eigenvectors") {
    JacquetModule jm = jacquet_module(finite_dim(2), 4);
    Filtration fil(jm);
    LatVec u2{{Rational(-2), Rational(1)}};  // lowest weight vector
    CHECK(f_filtration_membership(fil, u2, Rational(-2)));
    CHECK(!f_filtration_membership(fil, u2, Rational(-3)));
    LatVec u0{{Rational(2), Rational(1)}};
    CHECK(!f_filtration_membership(fil, u0, Rational(0)));
    CHECK(f_filtration_membership(fil, u0, Rational(2)));
  }
  SECTION("f lowers the filtration by 2 on ps(1/2, 0)") {
    JacquetModule jm = jacquet_module(principal_series(Rational(1, 2), 0), 5);
    Filtration fil(jm);
    const OperatorWindow& win = *jm.tower.win;
    // Graded representatives of F_beta are members; their f-images live two
    // steps lower.
    for (const auto& s : jm.spaces) {
      if (s.eigenvalue - 2 < jm.reporting_floor) continue;
      for (const auto& rep : fil.graded_reps(s.eigenvalue, 3)) {
        CHECK(fil.member(rep, s.eigenvalue));
        SparseVec fv = win.apply_exact(Gen::F, rep);
        CHECK(fil.member(fv, s.eigenvalue - 2));
      }
    }
  }
}

TEST_CASE("graded dimensions match the completion eigenspaces") {
  for (const BandedModule& m :
       {principal_series(Rational(1, 2), 0), discrete_series(2), finite_dim(3)}) {
    JacquetModule jm = jacquet_module(m, 5);
    Filtration fil(jm);
    for (const auto& s : jm.spaces) {
      CHECK(static_cast<int>(fil.graded_reps(s.eigenvalue, 2).size()) == s.dimension);
    }
  }
}

TEST_CASE("dual torsion dimensions agree with eigenspace sums") {
  BandedModule ps = principal_series(Rational(3, 5), 0);
  EigTower t = eigen_tower(ps, 4);
  for (int k = 1; k <= 4; ++k) {
    int sum = 0;
    for (const auto& pc : t.comps(k)) sum += pc.dimension;
    CHECK(dual_jacquet_dims(ps, k) == sum);
  }
}

TEST_CASE("Artin-Rees regime") {
  SECTION("finite_dim(2): everything below the lowest weight vanishes") {
    JacquetModule jm = jacquet_module(finite_dim(2), 4);
    Filtration fil(jm);
    for (int k : {1, 2, 3, 4}) {
      auto r = artin_rees_check(fil, Rational(-3), k);
      CHECK(r.quotient_dim == 0);
      CHECK(r.vanished);
    }
    auto r = artin_rees_check(fil, Rational(2), 2);
    CHECK(r.vanished);
  }
  SECTION("ps(1/2, 0) at alpha = -9/2, k = 2") {
    JacquetModule jm = jacquet_module(principal_series(Rational(1, 2), 0), 6);
    Filtration fil(jm);
    auto r = artin_rees_check(fil, Rational(-9, 2), 2);
    CHECK(r.quotient_dim == 0);
    CHECK(r.vanished);
  }
  SECTION("threshold exists on catalog modules") {
    for (const BandedModule& m : {discrete_series(2), finite_dim(2)}) {
      JacquetModule jm = jacquet_module(m, 5);
      Filtration fil(jm);
      auto a0 = artin_rees_threshold(fil, 3);
      REQUIRE(a0.has_value());
    }
  }
}

TEST_CASE("exactness of J across the reducibility catalog") {
  for (const Rational& lambda : {Rational(1), Rational(2)}) {
    auto ses = exact_sequence_catalog(lambda)[0];
    ExactnessReport rep = exactness_check(ses, 5);
    CHECK(rep.window_maps_pass);
    for (const auto& row : rep.rows) {
      INFO("lambda = " << rat_str(lambda) << " at alpha = " << rat_str(row.alpha));
      CHECK(row.pass);
    }
    CHECK(rep.pass);
  }
}
