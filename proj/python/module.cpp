#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bwreg/dti.hpp"
#include "bwreg/network.hpp"

namespace py = pybind11;
using namespace bwreg;

namespace {

SignedBarycenterProblem make_problem(const std::vector<MatrixXd>& matrices,
                                     const std::vector<double>& weights) {
  std::vector<SpdMatrix> spd;
  spd.reserve(matrices.size());
  for (const MatrixXd& m : matrices) spd.emplace_back(m);
  return SignedBarycenterProblem(std::move(spd), weights);
}

SolverConfig make_config(const std::string& algo, int max_iters, double eta,
                         double eta0, double grad_tol, std::uint64_t seed,
                         int trace_every, bool force) {
  SolverConfig config;
  config.algorithm = algo == "sgd" ? Algorithm::kPairwiseSgd : Algorithm::kRgd;
  config.max_iters = max_iters;
  if (eta > 0.0) config.eta = eta;
  config.eta0 = eta0;
  config.grad_tolerance = grad_tol;
  config.seed = seed;
  config.trace_every = trace_every;
  config.force = force;
  return config;
}

py::dict existence_dict(const ExistenceReport& r) {
  py::dict d;
  d["a_min"] = r.a_min;
  d["b_max"] = r.b_max;
  d["margin"] = r.margin;
  d["holds"] = r.holds;
  d["sgd_margin"] = r.sgd_margin;
  d["sgd_holds"] = r.sgd_holds;
  d["stationary_lower"] = r.stationary_lower;
  d["stationary_upper"] = r.stationary_upper;
  return d;
}

py::list trace_list(const SolverTrace& trace) {
  py::list out;
  for (const TraceRecord& rec : trace) {
    py::dict d;
    d["iter"] = rec.iter;
    d["objective"] = rec.objective;
    d["euclid_grad_fro"] = rec.euclid_grad_fro;
    d["bw_grad_norm"] = rec.bw_grad_norm;
    d["min_eigenvalue"] = rec.min_eigenvalue;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_bwreg, m) {
  m.doc() = "Bures-Wasserstein Fréchet regression on SPD matrices";

  // translators run newest-first, so the base class goes first
  py::register_exception<Error>(m, "BwregError");
  py::register_exception<NotSpdResult>(m, "NotSpdResultError");
  py::register_exception<ExistenceViolation>(m, "ExistenceViolation");

  m.def(
      "bw_distance_sq",
      [](const MatrixXd& a, const MatrixXd& b) {
        return bw_distance_sq(SpdMatrix(a), SpdMatrix(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "geodesic",
      [](const MatrixXd& a, const MatrixXd& b, double t) {
        return geodesic(SpdMatrix(a), SpdMatrix(b), t).mat();
      },
      py::arg("a"), py::arg("b"), py::arg("t"));
  m.def(
      "transport_map",
      [](const MatrixXd& a, const MatrixXd& b) {
        return transport_map(SpdMatrix(a), SpdMatrix(b)).mat();
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "geometric_mean",
      [](const MatrixXd& a, const MatrixXd& b) {
        return geometric_mean(SpdMatrix(a), SpdMatrix(b)).mat();
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "objective",
      [](const std::vector<MatrixXd>& matrices, const std::vector<double>& weights,
         const MatrixXd& s) {
        return objective(make_problem(matrices, weights), SpdMatrix(s));
      },
      py::arg("matrices"), py::arg("weights"), py::arg("s"));
  m.def(
      "euclidean_gradient",
      [](const std::vector<MatrixXd>& matrices, const std::vector<double>& weights,
         const MatrixXd& s) -> MatrixXd {
        return euclidean_gradient(make_problem(matrices, weights), SpdMatrix(s));
      },
      py::arg("matrices"), py::arg("weights"), py::arg("s"));
  m.def(
      "check_existence",
      [](const std::vector<MatrixXd>& matrices, const std::vector<double>& weights) {
        return existence_dict(check_existence(make_problem(matrices, weights)));
      },
      py::arg("matrices"), py::arg("weights"));
  m.def(
      "solve_barycenter",
      [](const std::vector<MatrixXd>& matrices, const std::vector<double>& weights,
         const std::string& algo, int max_iters, double eta, double eta0,
         double grad_tol, std::uint64_t seed, int trace_every, bool force) {
        const SolverResult result =
            solve(make_problem(matrices, weights),
                  make_config(algo, max_iters, eta, eta0, grad_tol, seed,
                              trace_every, force));
        py::dict out;
        out["solution"] = result.solution.mat();
        out["trace"] = trace_list(result.trace);
        out["converged"] = result.termination == Termination::kConverged;
        out["existence"] = existence_dict(result.existence);
        return out;
      },
      py::arg("matrices"), py::arg("weights"), py::arg("algo") = "rgd",
      py::arg("max_iters") = 100, py::arg("eta") = 0.0, py::arg("eta0") = 1.0,
      py::arg("grad_tol") = 1e-10, py::arg("seed") = 0, py::arg("trace_every") = 1,
      py::arg("force") = false);
  m.def(
      "global_weights",
      [](const std::vector<VectorXd>& covariates, const VectorXd& x) {
        const CovariateMoments moments = fit_moments(covariates);
        const WeightSet ws = global_weights(x, moments, covariates);
        return py::make_tuple(ws.s, ws.lambda);
      },
      py::arg("covariates"), py::arg("x"));
  m.def(
      "predict",
      [](const std::vector<VectorXd>& covariates,
         const std::vector<MatrixXd>& responses, const VectorXd& x,
         const std::string& algo, int max_iters, double eta, double eta0,
         double grad_tol, std::uint64_t seed, bool force) {
        std::vector<SpdMatrix> spd;
        for (const MatrixXd& r : responses) spd.emplace_back(r);
        RegressionDataset dataset(covariates, std::move(spd));
        const Prediction pred =
            predict(x, dataset,
                    make_config(algo, max_iters, eta, eta0, grad_tol, seed, 1, force));
        py::dict out;
        out["estimate"] = pred.estimate.mat();
        out["weights"] = pred.weights.lambda;
        out["existence"] = existence_dict(pred.existence);
        out["converged"] = pred.termination == Termination::kConverged;
        return out;
      },
      py::arg("covariates"), py::arg("responses"), py::arg("x"),
      py::arg("algo") = "rgd", py::arg("max_iters") = 100, py::arg("eta") = 0.0,
      py::arg("eta0") = 1.0, py::arg("grad_tol") = 1e-10, py::arg("seed") = 0,
      py::arg("force") = false);
  m.def(
      "commuting_oracle",
      [](const std::vector<MatrixXd>& matrices, const std::vector<double>& weights) {
        return commuting_oracle(make_problem(matrices, weights)).mat();
      },
      py::arg("matrices"), py::arg("weights"));
  m.def(
      "helix_tensor",
      [](double t, double lambda_parallel, double lambda_perp) {
        HelixParams params;
        params.lambda_parallel = lambda_parallel;
        params.lambda_perp = lambda_perp;
        return helix_tensor(t, params).mat();
      },
      py::arg("t"), py::arg("lambda_parallel") = 3.0, py::arg("lambda_perp") = 1.5);
  m.def("laplacian_to_spd",
        [](const MatrixXd& lap) { return laplacian_to_spd(lap).mat(); },
        py::arg("laplacian"));
}
