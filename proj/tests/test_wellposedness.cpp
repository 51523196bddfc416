#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace bwreg;
using namespace bwreg::testutil;

namespace {

SpdMatrix scal2(double a) { return SpdMatrix(a * MatrixXd::Identity(2, 2)); }

}  // namespace

TEST_CASE("check_existence on the divergent two-matrix example") {
  SignedBarycenterProblem prob({scal2(1), scal2(9)}, {2.0, -1.0});
  ExistenceReport rep = check_existence(prob);
  CHECK(rep.a_min == doctest::Approx(2).epsilon(1e-14));
  CHECK(rep.b_max == doctest::Approx(3).epsilon(1e-14));
  CHECK(rep.margin == doctest::Approx(-1).epsilon(1e-14));
  CHECK_FALSE(rep.holds);
  CHECK_FALSE(rep.sgd_holds);
}

TEST_CASE("check_existence with all-positive weights always holds") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<SpdMatrix> mats;
    std::vector<double> weights;
    const int n = 4;
    for (int k = 0; k < n; ++k) {
      mats.push_back(random_spd(rng, 3));
      weights.push_back(1.0 / n);
    }
    ExistenceReport r = check_existence(SignedBarycenterProblem(mats, weights));
    CHECK(r.holds);
    CHECK(r.b_max == 0.0);
    double expected = 0.0;
    for (const SpdMatrix& m : mats)
      expected += std::sqrt(m.eigenvalues()(0)) / n;
    CHECK(r.margin == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("check_existence with coinciding stationary bounds") {
  SignedBarycenterProblem prob({scal2(4), scal2(1)}, {2.0, -1.0});
  ExistenceReport rep = check_existence(prob);
  CHECK(rep.a_min == doctest::Approx(4).epsilon(1e-14));
  CHECK(rep.b_max == doctest::Approx(1).epsilon(1e-14));
  CHECK(rep.margin == doctest::Approx(3).epsilon(1e-14));
  CHECK(rep.holds);
  CHECK(rep.stationary_lower == doctest::Approx(9).epsilon(1e-12));
  CHECK(rep.stationary_upper == doctest::Approx(9).epsilon(1e-12));
  // the forced stationary point
  CHECK((commuting_oracle(prob).mat() - 9 * MatrixXd::Identity(2, 2)).norm() <
        1e-12);
}

TEST_CASE("margin is linear in the weights") {
  std::mt19937_64 rng(42);
  SpdMatrix a = random_spd(rng, 3, 1.0, 1.0);  // sqrt(lmin) identical
  SpdMatrix b = random_spd(rng, 3, 1.0, 1.0);
  SpdMatrix c = random_spd(rng, 3, 2.0, 4.0);
  // shifting mass between two positives with equal sqrt(lambda_min)
  ExistenceReport r1 =
      check_existence(SignedBarycenterProblem({a, b, c}, {0.8, 0.4, -0.2}));
  ExistenceReport r2 =
      check_existence(SignedBarycenterProblem({a, b, c}, {0.4, 0.8, -0.2}));
  CHECK(r1.margin == doctest::Approx(r2.margin).epsilon(1e-12));
  // increasing a positive weight at the expense of the negative one
  ExistenceReport r3 =
      check_existence(SignedBarycenterProblem({a, b, c}, {0.9, 0.4, -0.3}));
  const double la = std::sqrt(a.eigenvalues()(0));
  const double lc = std::sqrt(c.eigenvalues()(2));
  CHECK(r3.margin == doctest::Approx(r1.margin + 0.1 * la - 0.1 * lc).epsilon(1e-10));
}

TEST_CASE("sgd condition implies the dominance condition") {
  std::mt19937_64 rng(43);
  int sgd_seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    SignedBarycenterProblem prob = random_feasible_problem(rng, 3, 4, false);
    ExistenceReport r = check_existence(prob);
    if (r.sgd_holds) {
      CHECK(r.holds);
      CHECK(r.sgd_margin <= r.margin + 1e-12);
      ++sgd_seen;
    }
    CHECK(r.holds == (r.margin > 0.0));
  }
  CHECK(sgd_seen > 0);
}

TEST_CASE("stationarity_residual closed forms") {
  std::mt19937_64 rng(44);
  SpdMatrix sigma = random_spd(rng, 4);
  CHECK(stationarity_residual(SignedBarycenterProblem({sigma}, {1.0}), sigma) <
        1e-10);

  SignedBarycenterProblem ex1({scal2(1), scal2(9)}, {2.0, -1.0});
  CHECK(stationarity_residual(ex1, SpdMatrix::Identity(2)) ==
        doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("commuting oracle is stationary with vanishing gradient") {
  std::mt19937_64 rng(45);
  for (int rep = 0; rep < 25; ++rep) {
    CommutingProblem cp = random_commuting_problem(rng, 4, 5);
    SpdMatrix sol = commuting_oracle(cp.problem);
    CHECK((sol.mat() - commuting_solution(cp).mat()).norm() < 1e-8);
    CHECK(stationarity_residual(cp.problem, sol) < 1e-9);
    CHECK(euclidean_gradient(cp.problem, sol).norm() < 1e-9);
  }
}

TEST_CASE("commuting oracle closed forms") {
  SignedBarycenterProblem prob({scal2(4), scal2(1)}, {2.0, -1.0});
  CHECK((commuting_oracle(prob).mat() - 9 * MatrixXd::Identity(2, 2)).norm() <
        1e-12);

  std::mt19937_64 rng(46);
  SpdMatrix sigma = random_spd(rng, 3);
  CHECK((commuting_oracle(SignedBarycenterProblem({sigma}, {1.0})).mat() -
         sigma.mat())
            .norm() < 1e-9);

  // weighted extrapolation matches the geodesic at t = 2
  SignedBarycenterProblem extra({scal2(1), scal2(9)}, {-1.0, 2.0});
  CHECK((commuting_oracle(extra).mat() - 25 * MatrixXd::Identity(2, 2)).norm() <
        1e-10);
  CHECK((commuting_oracle(extra).mat() - geodesic(scal2(1), scal2(9), 2.0).mat())
            .norm() < 1e-10);
}

TEST_CASE("commuting oracle rejects non-commuting or negative-direction input") {
  MatrixXd rot(2, 2);
  rot << 2, 1, 1, 2;
  SignedBarycenterProblem noncomm(
      {SpdMatrix(rot), SpdMatrix(Eigen::Vector2d(1, 4).asDiagonal().toDenseMatrix())},
      {0.5, 0.5});
  CHECK_THROWS_AS(commuting_oracle(noncomm), NotCommuting);

  // directional sum 2*1 - 1*3 < 0 in the second direction
  SignedBarycenterProblem negdir(
      {SpdMatrix(Eigen::Vector2d(4, 1).asDiagonal().toDenseMatrix()),
       SpdMatrix(Eigen::Vector2d(1, 9).asDiagonal().toDenseMatrix())},
      {2.0, -1.0});
  CHECK_THROWS_AS(commuting_oracle(negdir), NegativeDirection);
}

TEST_CASE("injectivity_radius") {
  CHECK(injectivity_radius(1) == doctest::Approx(1));
  CHECK(injectivity_radius(4) == doctest::Approx(2));
  CHECK(injectivity_radius(0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(injectivity_radius(0), NonPositive);
  CHECK_THROWS_AS(injectivity_radius(-1), NonPositive);
}

TEST_CASE("uniqueness ball flags on hand-built cases") {
  std::mt19937_64 rng(47);
  // tight cluster near 4*I_3
  std::vector<SpdMatrix> mats;
  for (int k = 0; k < 3; ++k) {
    MatrixXd bump = 0.01 * random_symmetric(rng, 3);
    mats.emplace_back(4 * MatrixXd::Identity(3, 3) + bump);
  }
  std::vector<double> weights = {1.2 / 1.0, 0.9 / 1.0, -1.1 / 1.0};
  SignedBarycenterProblem prob(mats, weights);
  SpdMatrix center(4 * MatrixXd::Identity(3, 3));

  const double lambda = [&] {
    double l = mats[0].eigenvalues()(0);
    for (const SpdMatrix& m : mats) l = std::min(l, m.eigenvalues()(0));
    return l;
  }();

  UniquenessReport good = check_uniqueness_ball(prob, center, 0.5, 0.1);
  CHECK(good.data_in_ball);                 // distances ~ 0.01 << 0.1
  CHECK(good.r_small_enough);               // 0.1 < 0.5 / 3.2
  CHECK(good.rho_below_injectivity);        // 0.5 < sqrt(lambda)/2 ~ 1
  CHECK(good.lambda_floor == doctest::Approx(lambda).epsilon(1e-12));
  CHECK(good.curvature_bound == doctest::Approx(1.5 / lambda).epsilon(1e-12));
  // mass ratio: mu+/mu- = 2.1/1.1 vs x/tanh(x) with x = 2*rho*sqrt(1.5/lambda)
  const double x = 2 * 0.5 * std::sqrt(1.5 / lambda);
  CHECK(good.mass_ratio_ok == (2.1 / 1.1 > x / std::tanh(x)));
  CHECK(good.all_hold == (good.data_in_ball && good.r_small_enough &&
                          good.rho_below_injectivity && good.ball_in_submanifold &&
                          good.mass_ratio_ok));

  // rho at the injectivity threshold fails (iii)
  UniquenessReport big_rho =
      check_uniqueness_ball(prob, center, std::sqrt(lambda), 0.1);
  CHECK_FALSE(big_rho.rho_below_injectivity);
  CHECK_FALSE(big_rho.all_hold);

  // tiny r fails (i)
  UniquenessReport tiny_r = check_uniqueness_ball(prob, center, 0.5, 1e-6);
  CHECK_FALSE(tiny_r.data_in_ball);
}

TEST_CASE("uniqueness mass-ratio condition is vacuous without negative weights") {
  std::mt19937_64 rng(48);
  std::vector<SpdMatrix> mats = {random_spd(rng, 3), random_spd(rng, 3)};
  SignedBarycenterProblem prob(mats, {0.5, 0.5});
  UniquenessReport rep =
      check_uniqueness_ball(prob, SpdMatrix::Identity(3), 0.2, 0.05);
  CHECK(rep.mass_ratio_ok);
}

TEST_CASE("no-local-maximum probe at stationary points") {
  std::mt19937_64 rng(49);
  for (int rep = 0; rep < 10; ++rep) {
    CommutingProblem cp = random_commuting_problem(rng, 3, 4);
    SpdMatrix sol = commuting_solution(cp);
    REQUIRE(stationarity_residual(cp.problem, sol) < 1e-8);
    const double f1 = objective(cp.problem, sol);
    const double f_lo = objective(cp.problem, SpdMatrix(0.99 * sol.mat()));
    const double f_hi = objective(cp.problem, SpdMatrix(1.01 * sol.mat()));
    CHECK(f_lo > f1);
    CHECK(f_hi > f1);
  }
}
