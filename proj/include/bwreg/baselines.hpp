#pragma once

#include <map>
#include <vector>

#include "bwreg/geometry.hpp"

namespace bwreg {

struct FrobeniusMeanResult {
  MatrixXd mean;  // sum_k lambda_k Sigma_k; symmetric, possibly indefinite
  bool spd = false;
};

// Arithmetic (Frobenius-metric) weighted mean. Signed weights can push the
// result out of the cone; spd reports whether it stayed inside.
FrobeniusMeanResult frobenius_mean(const SignedBarycenterProblem& prob);

// Log-Euclidean weighted mean exp(sum_k lambda_k log Sigma_k). Well defined
// for arbitrary real weights and always SPD. Serves as the geometric-mean
// style baseline; outputs are labeled log_euclidean.
SpdMatrix log_euclidean_mean(const SignedBarycenterProblem& prob);

// Sorted weighted node degrees of a graph.
using DegreeDistribution = std::vector<double>;

// 1-D W1 distance under the quantile coupling:
// (1/d) sum_l |a_sorted[l] - b_sorted[l]|.
double degree_wasserstein(DegreeDistribution a, DegreeDistribution b);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

struct WeightedGraph {
  int node_count = 0;
  std::vector<WeightedEdge> edges;  // undirected, no self-loops, weights >= 0
};

DegreeDistribution degree_distribution(const WeightedGraph& graph);

struct ModularityResult {
  double score = 0.0;
  std::vector<int> partition;  // node -> community id
};

// Greedy agglomerative modularity: repeatedly merge the community pair with
// the largest Delta Q, ties broken by the smallest index pair; merging
// continues while Delta Q >= 0.
ModularityResult modularity(const WeightedGraph& graph);

// Q for a given partition; used to cross-check the greedy result.
double modularity_score(const WeightedGraph& graph, const std::vector<int>& partition);

}  // namespace bwreg
