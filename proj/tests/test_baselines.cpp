#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bwreg/baselines.hpp"
#include "bwreg/solvers.hpp"
#include "test_util.hpp"

using namespace bwreg;
using namespace bwreg::testutil;

namespace {

SpdMatrix scal2(double a) { return SpdMatrix(a * MatrixXd::Identity(2, 2)); }

WeightedGraph triangle_pair() {
  // two disjoint unit triangles on 6 nodes
  WeightedGraph g;
  g.node_count = 6;
  g.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  return g;
}

}  // namespace

TEST_CASE("frobenius_mean") {
  FrobeniusMeanResult mid =
      frobenius_mean(SignedBarycenterProblem({scal2(2), scal2(4)}, {0.5, 0.5}));
  CHECK((mid.mean - 3 * MatrixXd::Identity(2, 2)).norm() < 1e-14);
  CHECK(mid.spd);

  FrobeniusMeanResult neg =
      frobenius_mean(SignedBarycenterProblem({scal2(1), scal2(9)}, {2.0, -1.0}));
  CHECK((neg.mean + 7 * MatrixXd::Identity(2, 2)).norm() < 1e-14);
  CHECK_FALSE(neg.spd);

  std::mt19937_64 rng(81);
  SpdMatrix sigma = random_spd(rng, 3);
  FrobeniusMeanResult single =
      frobenius_mean(SignedBarycenterProblem({sigma}, {1.0}));
  CHECK((single.mean - sigma.mat()).norm() < 1e-14);
  CHECK(single.spd);
}

TEST_CASE("log_euclidean_mean closed forms") {
  SpdMatrix half =
      log_euclidean_mean(SignedBarycenterProblem({scal2(1), scal2(9)}, {0.5, 0.5}));
  CHECK((half.mat() - 3 * MatrixXd::Identity(2, 2)).norm() < 1e-10);

  std::mt19937_64 rng(82);
  SpdMatrix sigma = random_spd(rng, 3);
  SpdMatrix single = log_euclidean_mean(SignedBarycenterProblem({sigma}, {1.0}));
  CHECK((single.mat() - sigma.mat()).norm() < 1e-9);

  SpdMatrix signed_mean =
      log_euclidean_mean(SignedBarycenterProblem({scal2(4), scal2(2)}, {2.0, -1.0}));
  CHECK((signed_mean.mat() - 8 * MatrixXd::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("log_euclidean_mean commuting reduction") {
  std::mt19937_64 rng(83);
  for (int rep = 0; rep < 10; ++rep) {
    CommutingProblem cp = random_commuting_problem(rng, 3, 4);
    SpdMatrix mean = log_euclidean_mean(cp.problem);
    VectorXd expected(3);
    for (int i = 0; i < 3; ++i) {
      double logsum = 0.0;
      for (size_t k = 0; k < cp.weights.size(); ++k)
        logsum += cp.weights[k] * std::log(cp.eigenvalues[k](i));
      expected(i) = std::exp(logsum);
    }
    MatrixXd target =
        cp.basis * expected.asDiagonal() * cp.basis.transpose();
    CHECK((mean.mat() - target).norm() < 1e-10);
  }
}

TEST_CASE("all means agree at a point mass") {
  std::mt19937_64 rng(84);
  SpdMatrix sigma = random_spd(rng, 3);
  SignedBarycenterProblem prob({sigma, sigma, sigma}, {0.2, 0.3, 0.5});
  CHECK((frobenius_mean(prob).mean - sigma.mat()).norm() < 1e-12);
  CHECK((log_euclidean_mean(prob).mat() - sigma.mat()).norm() < 1e-9);
  SolverConfig config;
  CHECK((solve(prob, config).solution.mat() - sigma.mat()).norm() < 1e-7);
}

TEST_CASE("degree_wasserstein examples") {
  CHECK(degree_wasserstein({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(degree_wasserstein({0, 0, 0}, {1, 1, 1}) == doctest::Approx(1));
  CHECK(degree_wasserstein({1, 2, 3}, {2, 3, 7}) == doctest::Approx(2));
  // input order must not matter (sorted internally)
  CHECK(degree_wasserstein({3, 1, 2}, {7, 2, 3}) == doctest::Approx(2));
  CHECK_THROWS_AS(degree_wasserstein({1, 2}, {1, 2, 3}), DimensionError);
}

TEST_CASE("degree_wasserstein metric properties") {
  std::mt19937_64 rng(85);
  std::uniform_real_distribution<double> unif(0.0, 5.0);
  for (int rep = 0; rep < 30; ++rep) {
    DegreeDistribution a(6), b(6), c(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = unif(rng);
      b[i] = unif(rng);
      c[i] = unif(rng);
    }
    CHECK(degree_wasserstein(a, b) == doctest::Approx(degree_wasserstein(b, a)));
    CHECK(degree_wasserstein(a, c) <=
          degree_wasserstein(a, b) + degree_wasserstein(b, c) + 1e-12);
    CHECK(degree_wasserstein(a, a) == 0.0);
  }
}

TEST_CASE("degree_distribution is the sorted weighted degrees") {
  WeightedGraph g;
  g.node_count = 4;
  g.edges = {{0, 1, 2.0}, {1, 2, 0.5}, {0, 3, 1.0}};
  DegreeDistribution deg = degree_distribution(g);
  REQUIRE(deg.size() == 4);
  // degrees: node0 3.0, node1 2.5, node2 0.5, node3 1.0 -> sorted
  CHECK(deg[0] == doctest::Approx(0.5));
  CHECK(deg[1] == doctest::Approx(1.0));
  CHECK(deg[2] == doctest::Approx(2.5));
  CHECK(deg[3] == doctest::Approx(3.0));
}

TEST_CASE("modularity on two disjoint triangles") {
  ModularityResult res = modularity(triangle_pair());
  CHECK(res.score == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(res.partition.size() == 6);
  CHECK(res.partition[0] == res.partition[1]);
  CHECK(res.partition[1] == res.partition[2]);
  CHECK(res.partition[3] == res.partition[4]);
  CHECK(res.partition[4] == res.partition[5]);
  CHECK(res.partition[0] != res.partition[3]);
}

TEST_CASE("modularity on K4 collapses to one community") {
  WeightedGraph k4;
  k4.node_count = 4;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.edges.push_back({i, j, 1.0});
  ModularityResult res = modularity(k4);
  CHECK(res.score == doctest::Approx(0).epsilon(1e-12));
  for (int c : res.partition) CHECK(c == res.partition[0]);
}

TEST_CASE("modularity on a single edge merges at the tie") {
  WeightedGraph g;
  g.node_count = 2;
  g.edges = {{0, 1, 1.0}};
  ModularityResult res = modularity(g);
  CHECK(res.score == doctest::Approx(0).epsilon(1e-12));
  CHECK(res.partition[0] == res.partition[1]);
}

TEST_CASE("modularity rejects empty graphs") {
  WeightedGraph g;
  g.node_count = 3;
  CHECK_THROWS_AS(modularity(g), EmptyGraph);
}

TEST_CASE("modularity score consistency on random graphs") {
  std::mt19937_64 rng(86);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 15; ++rep) {
    WeightedGraph g;
    g.node_count = 10;
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        if (unif(rng) < 0.3) g.edges.push_back({i, j, unif(rng) + 0.1});
    if (g.edges.empty()) continue;
    ModularityResult res = modularity(g);
    CHECK(res.score == doctest::Approx(modularity_score(g, res.partition))
                           .epsilon(1e-12));
    CHECK(res.score >= -0.5);
    CHECK(res.score <= 1.0);
  }
}

TEST_CASE("modularity recovers planted communities") {
  // two dense 5-cliques joined by a single weak edge
  WeightedGraph g;
  g.node_count = 10;
  for (int base : {0, 5})
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        g.edges.push_back({base + i, base + j, 1.0});
  g.edges.push_back({4, 5, 0.1});
  ModularityResult res = modularity(g);
  for (int i = 1; i < 5; ++i) CHECK(res.partition[i] == res.partition[0]);
  for (int i = 6; i < 10; ++i) CHECK(res.partition[i] == res.partition[5]);
  CHECK(res.partition[0] != res.partition[5]);
  CHECK(res.score > 0.4);
}
