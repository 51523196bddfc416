#include "bwreg/network.hpp"

#include <cmath>

namespace bwreg {

namespace {

GraphRecovery graph_from_precision(const MatrixXd& precision, double weight_floor) {
  const int d = static_cast<int>(precision.rows());
  MatrixXd l_hat = precision - MatrixXd::Constant(d, d, 1.0 / d);
  l_hat = 0.5 * (l_hat + l_hat.transpose());
  GraphRecovery rec;
  rec.graph.node_count = d;
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) {
      const double w = -l_hat(u, v);
      if (w < 0.0) {
        rec.clamped_mass += -w;  // nonphysical positive off-diagonal
        continue;
      }
      if (w >= weight_floor) rec.graph.edges.push_back({u, v, w});
    }
  }
  return rec;
}

}  // namespace

MatrixXd laplacian(const WeightedGraph& graph) {
  if (graph.node_count <= 0) throw EmptyGraph("laplacian of an empty graph");
  MatrixXd l = MatrixXd::Zero(graph.node_count, graph.node_count);
  for (const WeightedEdge& e : graph.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= graph.node_count || e.v >= graph.node_count)
      throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("self-loops are not allowed");
    if (e.weight < 0.0) throw InvalidInput("edge weights must be nonnegative");
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
    l(e.u, e.u) += e.weight;
    l(e.v, e.v) += e.weight;
  }
  return l;
}

SpdMatrix laplacian_to_spd(const MatrixXd& lap, double rank_tolerance) {
  const int d = static_cast<int>(lap.rows());
  Eigendecomposition e = sym_eig(lap);
  const double lmax = e.eigenvalues.cwiseAbs().maxCoeff();
  int null_dim = 0;
  for (int i = 0; i < d; ++i)
    if (std::abs(e.eigenvalues(i)) <= rank_tolerance * std::max(lmax, 1.0)) ++null_dim;
  if (null_dim != 1)
    throw DisconnectedGraph("Laplacian zero eigenvalue has multiplicity " +
                            std::to_string(null_dim));
  const MatrixXd pinv = pseudo_inverse(lap, rank_tolerance);
  return SpdMatrix(pinv + MatrixXd::Constant(d, d, 1.0 / d));
}

GraphRecovery spd_to_graph(const SpdMatrix& s, double weight_floor) {
  return graph_from_precision(s.inverse(), weight_floor);
}

std::vector<TemporalPrediction> run_temporal_regression(
    const TemporalNetworkDataset& data, const std::vector<double>& queries,
    const SolverConfig& config) {
  if (data.taus.size() != data.graphs.size())
    throw InvalidInput("temporal dataset: tau/graph count mismatch");
  if (data.taus.size() < 2) throw InvalidInput("temporal dataset needs >= 2 steps");
  const int d = data.graphs.front().node_count;
  for (const WeightedGraph& g : data.graphs)
    if (g.node_count != d) throw DimensionError("temporal dataset: node count varies");

  std::vector<VectorXd> covariates;
  std::vector<SpdMatrix> responses;
  for (size_t t = 0; t < data.taus.size(); ++t) {
    covariates.push_back(VectorXd::Constant(1, data.taus[t]));
    responses.push_back(laplacian_to_spd(laplacian(data.graphs[t])));
  }
  const CovariateMoments moments = fit_moments(covariates);

  std::vector<TemporalPrediction> out;
  for (double tau : queries) {
    const WeightSet weights =
        global_weights(VectorXd::Constant(1, tau), moments, covariates);
    SignedBarycenterProblem prob(responses, weights.lambda);
    const ExistenceReport existence = check_existence(prob);

    // truth graph, if the query coincides with a training day
    const WeightedGraph* truth = nullptr;
    for (size_t t = 0; t < data.taus.size(); ++t)
      if (std::abs(data.taus[t] - tau) <= 1e-9) truth = &data.graphs[t];

    auto finish = [&](TemporalPrediction pred) {
      if (truth && !pred.solver_failed) {
        QueryMetrics qm;
        qm.degree_w1_vs_truth = degree_wasserstein(degree_distribution(pred.graph),
                                                   degree_distribution(*truth));
        qm.modularity_truth = modularity(*truth).score;
        qm.modularity_pred =
            pred.graph.edges.empty() ? 0.0 : modularity(pred.graph).score;
        pred.metrics = qm;
      }
      out.push_back(std::move(pred));
    };

    {  // Bures-Wasserstein regression
      TemporalPrediction pred;
      pred.tau = tau;
      pred.method = "bw";
      pred.existence = existence;
      try {
        SolverResult result = solve(prob, config);
        GraphRecovery rec = spd_to_graph(result.solution);
        pred.raw_mean = result.solution.mat();
        pred.spd = std::move(result.solution);
        pred.graph = std::move(rec.graph);
        pred.clamped_mass = rec.clamped_mass;
      } catch (const Error& err) {
        pred.solver_failed = true;
        pred.failure = err.what();
      }
      finish(std::move(pred));
    }
    {  // Frobenius (arithmetic) baseline; evaluated even when it leaves the cone
      TemporalPrediction pred;
      pred.tau = tau;
      pred.method = "frobenius";
      pred.existence = existence;
      FrobeniusMeanResult mean = frobenius_mean(prob);
      pred.raw_mean = mean.mean;
      try {
        GraphRecovery rec = graph_from_precision(pseudo_inverse(mean.mean), 1e-8);
        if (mean.spd) pred.spd = SpdMatrix(mean.mean);
        pred.graph = std::move(rec.graph);
        pred.clamped_mass = rec.clamped_mass;
      } catch (const Error& err) {
        pred.solver_failed = true;
        pred.failure = err.what();
      }
      finish(std::move(pred));
    }
    {  // log-Euclidean baseline
      TemporalPrediction pred;
      pred.tau = tau;
      pred.method = "log_euclidean";
      pred.existence = existence;
      try {
        SpdMatrix mean = log_euclidean_mean(prob);
        GraphRecovery rec = spd_to_graph(mean);
        pred.raw_mean = mean.mat();
        pred.spd = std::move(mean);
        pred.graph = std::move(rec.graph);
        pred.clamped_mass = rec.clamped_mass;
      } catch (const Error& err) {
        pred.solver_failed = true;
        pred.failure = err.what();
      }
      finish(std::move(pred));
    }
  }
  return out;
}

}  // namespace bwreg
