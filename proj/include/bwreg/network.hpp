#pragma once

#include <optional>
#include <string>

#include "bwreg/baselines.hpp"
#include "bwreg/frechet.hpp"

namespace bwreg {

// Graph Laplacian L = D - A; PSD with L 1 = 0.
MatrixXd laplacian(const WeightedGraph& graph);

// Sigma = L^dagger + (1/d) 11^T. Requires a connected-graph Laplacian
// (exactly one zero eigenvalue); its inverse is L + (1/d) 11^T.
SpdMatrix laplacian_to_spd(const MatrixXd& laplacian,
                           double rank_tolerance = kRankTolerance);

// Inverse transform: recover the graph from S via L = S^{-1} - (1/d) 11^T.
// Off-diagonal Laplacian entries give edge weights -L_uv; nonphysical
// positive off-diagonals are clamped to zero and their mass reported.
struct GraphRecovery {
  WeightedGraph graph;
  double clamped_mass = 0.0;
};

GraphRecovery spd_to_graph(const SpdMatrix& s, double weight_floor = 1e-8);

struct TemporalNetworkDataset {
  std::vector<double> taus;
  std::vector<WeightedGraph> graphs;
};

struct QueryMetrics {
  double degree_w1_vs_truth = 0.0;
  double modularity_pred = 0.0;
  double modularity_truth = 0.0;
};

struct TemporalPrediction {
  double tau = 0.0;
  std::string method;  // bw | frobenius | log_euclidean
  std::optional<SpdMatrix> spd;  // absent when a Euclidean mean left the cone
  MatrixXd raw_mean;             // whatever the method produced, pre-validation
  WeightedGraph graph;
  double clamped_mass = 0.0;
  ExistenceReport existence;
  bool solver_failed = false;
  std::string failure;
  std::optional<QueryMetrics> metrics;  // present when tau matches a data point
};

// Per-day regression over the temporal dataset: responses are the
// Laplacian-to-SPD transforms, covariate is tau. Produces predictions for
// the bw, frobenius and log_euclidean methods at every query; failures at
// one query do not abort the others.
std::vector<TemporalPrediction> run_temporal_regression(
    const TemporalNetworkDataset& data, const std::vector<double>& queries,
    const SolverConfig& config);

}  // namespace bwreg
