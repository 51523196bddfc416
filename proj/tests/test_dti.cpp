#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bwreg/dti.hpp"
#include "test_util.hpp"

using namespace bwreg;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("helix_tangent closed forms") {
  const double s5 = std::sqrt(5.0);
  Eigen::Vector3d t0 = helix_tangent(0);
  CHECK((t0 - Eigen::Vector3d(0, 2 / s5, 1 / s5)).norm() < 1e-14);
  Eigen::Vector3d tpi = helix_tangent(kPi);
  CHECK((tpi - Eigen::Vector3d(0, -2 / s5, 1 / s5)).norm() < 1e-12);
  Eigen::Vector3d thalf = helix_tangent(kPi / 2);
  CHECK((thalf - Eigen::Vector3d(-2 / s5, 0, 1 / s5)).norm() < 1e-12);

  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unif(0.0, 2 * kPi);
  for (int rep = 0; rep < 20; ++rep)
    CHECK(std::abs(helix_tangent(unif(rng)).norm() - 1.0) < 1e-14);
}

TEST_CASE("helix_tensor isotropic case") {
  HelixParams params;
  params.lambda_parallel = 1.3;
  params.lambda_perp = 1.3;
  for (double t : {0.0, 1.0, 4.0}) {
    CHECK((helix_tensor(t, params).mat() - 1.3 * MatrixXd::Identity(3, 3)).norm() <
          1e-13);
  }
}

TEST_CASE("helix_tensor principal axis and spectrum") {
  HelixParams params;
  params.lambda_parallel = 2.0;
  params.lambda_perp = 0.5;
  SpdMatrix tensor = helix_tensor(0, params);
  Eigen::Vector3d axis = helix_tangent(0);
  CHECK((tensor.mat() * axis - 2.0 * axis).norm() < 1e-12);
  CHECK(tensor.eigenvalues()(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tensor.eigenvalues()(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tensor.eigenvalues()(2) == doctest::Approx(2.0).epsilon(1e-12));

  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> unif(0.0, 2 * kPi);
  for (int rep = 0; rep < 20; ++rep) {
    const double t = unif(rng);
    SpdMatrix m = helix_tensor(t, params);
    CHECK(std::abs(m.mat().determinant() - 2.0 * 0.25) < 1e-12);
    CHECK((m.mat() * helix_tangent(t) - 2.0 * helix_tangent(t)).norm() < 1e-12);
  }
}

TEST_CASE("generate_helix_dataset covariate grid") {
  HelixParams params;
  params.n = 2;
  RegressionDataset two = generate_helix_dataset(params);
  CHECK(two.covariates()[0](0) == doctest::Approx(0).epsilon(1e-14));
  CHECK(two.covariates()[1](0) == doctest::Approx(2 * kPi).epsilon(1e-14));

  params.n = 5;
  RegressionDataset five = generate_helix_dataset(params);
  for (int k = 0; k < 5; ++k) {
    CHECK(five.covariates()[k](0) ==
          doctest::Approx(k * kPi / 2).epsilon(1e-12));
    CHECK(five.responses()[k].eigenvalues()(0) ==
          doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("dti rgd leave-one-out matches a manual prediction") {
  HelixParams params;
  params.n = 11;
  SolverConfig config;
  config.max_iters = 200;
  std::vector<DtiTargetResult> res = run_dti_experiment(params, {5}, config, 1);
  REQUIRE(res.size() == 1);
  CHECK(res[0].target_index == 5);
  REQUIRE(res[0].final_estimate.has_value());

  // assemble the same leave-one-out regression by hand
  RegressionDataset full = generate_helix_dataset(params);
  std::vector<VectorXd> xs;
  std::vector<SpdMatrix> ys;
  for (int k = 0; k < full.size(); ++k) {
    if (k == 5) continue;
    xs.push_back(full.covariates()[k]);
    ys.push_back(full.responses()[k]);
  }
  Prediction manual = predict(full.covariates()[5], RegressionDataset(xs, ys), config);
  CHECK((res[0].final_estimate->mat() - manual.estimate.mat()).norm() < 1e-10);
  CHECK(res[0].bw_error_vs_truth ==
        doctest::Approx(bw_distance(manual.estimate, full.responses()[5]))
            .epsilon(1e-10));
}

TEST_CASE("dti leave-one-out error is small on a short arc") {
  // over a narrow parameter window the tensor field is nearly geodesic and
  // the regression reproduces the held-out sample
  HelixParams params;
  params.n = 11;
  params.t_min = 0.0;
  params.t_max = 0.05;
  SolverConfig config;
  config.max_iters = 300;
  std::vector<DtiTargetResult> res = run_dti_experiment(params, {5}, config, 1);
  CHECK(res[0].bw_error_vs_truth <= 1e-3);
}

TEST_CASE("dti sgd descent and variance contraction at n=1000") {
  HelixParams params;
  params.n = 1000;
  SolverConfig config;
  config.algorithm = Algorithm::kPairwiseSgd;
  config.max_iters = 100;
  config.trace_every = 10;
  config.seed = 7;
  std::vector<DtiTargetResult> res =
      run_dti_experiment(params, {200, 700}, config, 10);
  for (const DtiTargetResult& target : res) {
    REQUIRE(target.runs.size() == 10);
    for (const DtiRunCurve& run : target.runs) {
      REQUIRE(run.objectives.size() >= 2);
      CHECK(run.objectives.back() <= 0.5 * run.objectives.front());
    }
    REQUIRE(target.mean_objective.size() >= 3);
    CHECK(target.mean_objective.back() < target.mean_objective.front());
    // iteration 0 is deterministic (same start for every seed), so the
    // variance comparison starts at the first post-step record
    CHECK(target.std_objective.back() <= 1.1 * target.std_objective[1]);
  }
}

TEST_CASE("dti runs are seed deterministic") {
  HelixParams params;
  params.n = 200;
  SolverConfig config;
  config.algorithm = Algorithm::kPairwiseSgd;
  config.max_iters = 30;
  config.trace_every = 10;
  config.seed = 42;
  std::vector<DtiTargetResult> a = run_dti_experiment(params, {100}, config, 3);
  std::vector<DtiTargetResult> b = run_dti_experiment(params, {100}, config, 3);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].runs.size() == b[i].runs.size());
    for (size_t r = 0; r < a[i].runs.size(); ++r) {
      CHECK(a[i].runs[r].seed == b[i].runs[r].seed);
      CHECK(a[i].runs[r].objectives == b[i].runs[r].objectives);
    }
    // distinct seeds across runs
    CHECK(a[i].runs[0].seed != a[i].runs[1].seed);
  }
}

TEST_CASE("leave-one-out weights exclude the target and sum to one") {
  HelixParams params;
  params.n = 20;
  RegressionDataset data = generate_helix_dataset(params);
  const int target = 7;
  std::vector<VectorXd> xs;
  for (int k = 0; k < data.size(); ++k)
    if (k != target) xs.push_back(data.covariates()[k]);
  CHECK(static_cast<int>(xs.size()) == data.size() - 1);
  CovariateMoments m = fit_moments(xs);
  WeightSet w = global_weights(data.covariates()[target], m, xs);
  double sum = 0.0;
  for (double l : w.lambda) sum += l;
  CHECK(sum == doctest::Approx(1).epsilon(1e-12));
  CHECK(w.lambda.size() == xs.size());
}

TEST_CASE("helix params validation") {
  HelixParams bad;
  bad.n = 1;
  CHECK_THROWS_AS(generate_helix_dataset(bad), InvalidInput);
  HelixParams oblate;
  oblate.lambda_parallel = 0.4;
  oblate.lambda_perp = 0.5;
  CHECK_THROWS_AS(generate_helix_dataset(oblate), InvalidInput);
}
