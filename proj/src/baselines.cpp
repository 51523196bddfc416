#include "bwreg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bwreg {

namespace {

void validate_graph(const WeightedGraph& graph) {
  if (graph.node_count <= 0) throw EmptyGraph("graph has no nodes");
  for (const WeightedEdge& e : graph.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= graph.node_count || e.v >= graph.node_count)
      throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("self-loops are not allowed");
    if (e.weight < 0.0 || !std::isfinite(e.weight))
      throw InvalidInput("edge weights must be finite and nonnegative");
  }
}

}  // namespace

FrobeniusMeanResult frobenius_mean(const SignedBarycenterProblem& prob) {
  MatrixXd mean = MatrixXd::Zero(prob.dim(), prob.dim());
  for (int k = 0; k < prob.size(); ++k)
    mean += prob.weights()[k] * prob.matrices()[k].mat();
  FrobeniusMeanResult result;
  result.mean = mean;
  result.spd = is_spd(mean, kSpdTolerance * std::max(1.0, mean.norm())).verdict;
  return result;
}

SpdMatrix log_euclidean_mean(const SignedBarycenterProblem& prob) {
  MatrixXd log_sum = MatrixXd::Zero(prob.dim(), prob.dim());
  for (int k = 0; k < prob.size(); ++k) {
    const SpdMatrix& m = prob.matrices()[k];
    if (m.min_eigenvalue() <= kSpdTolerance * m.max_eigenvalue())
      throw NearSingular("log_euclidean_mean: near-singular input");
    VectorXd logs = m.eigenvalues().array().log();
    log_sum += prob.weights()[k] * (m.eigenvectors() * logs.asDiagonal() *
                                    m.eigenvectors().transpose());
  }
  Eigendecomposition e = sym_eig(log_sum);
  VectorXd exps = e.eigenvalues.array().exp();
  return SpdMatrix(e.eigenvectors * exps.asDiagonal() * e.eigenvectors.transpose());
}

double degree_wasserstein(DegreeDistribution a, DegreeDistribution b) {
  if (a.size() != b.size())
    throw DimensionError("degree_wasserstein: distributions differ in length");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double total = 0.0;
  for (size_t l = 0; l < a.size(); ++l) total += std::abs(a[l] - b[l]);
  return total / static_cast<double>(a.size());
}

DegreeDistribution degree_distribution(const WeightedGraph& graph) {
  validate_graph(graph);
  DegreeDistribution degrees(graph.node_count, 0.0);
  for (const WeightedEdge& e : graph.edges) {
    degrees[e.u] += e.weight;
    degrees[e.v] += e.weight;
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

double modularity_score(const WeightedGraph& graph, const std::vector<int>& partition) {
  validate_graph(graph);
  if (partition.size() != static_cast<size_t>(graph.node_count))
    throw DimensionError("partition length mismatch");
  double m = 0.0;
  for (const WeightedEdge& e : graph.edges) m += e.weight;
  if (m <= 0.0) throw EmptyGraph("graph has no edge weight");

  std::vector<double> degree(graph.node_count, 0.0);
  for (const WeightedEdge& e : graph.edges) {
    degree[e.u] += e.weight;
    degree[e.v] += e.weight;
  }
  double intra = 0.0;  // sum over ordered intra-community pairs
  for (const WeightedEdge& e : graph.edges)
    if (partition[e.u] == partition[e.v]) intra += 2.0 * e.weight;
  std::map<int, double> tot;
  for (int v = 0; v < graph.node_count; ++v) tot[partition[v]] += degree[v];
  double null_term = 0.0;
  for (const auto& [c, t] : tot) null_term += (t / (2.0 * m)) * (t / (2.0 * m));
  return intra / (2.0 * m) - null_term;
}

ModularityResult modularity(const WeightedGraph& graph) {
  validate_graph(graph);
  double m = 0.0;
  for (const WeightedEdge& e : graph.edges) m += e.weight;
  if (m <= 0.0) throw EmptyGraph("modularity needs positive total edge weight");

  std::vector<int> community(graph.node_count);
  for (int v = 0; v < graph.node_count; ++v) community[v] = v;
  std::vector<bool> active(graph.node_count, true);
  std::vector<double> tot(graph.node_count, 0.0);
  for (const WeightedEdge& e : graph.edges) {
    tot[e.u] += e.weight;
    tot[e.v] += e.weight;
  }

  while (true) {
    // inter-community weights under the current assignment
    std::map<std::pair<int, int>, double> between;
    for (const WeightedEdge& e : graph.edges) {
      int c = community[e.u], d = community[e.v];
      if (c == d) continue;
      if (c > d) std::swap(c, d);
      between[{c, d}] += e.weight;
    }
    // best merge: largest Delta Q, lexicographic tie-break via strict compare
    double best_dq = -std::numeric_limits<double>::infinity();
    std::pair<int, int> best{-1, -1};
    std::vector<int> alive;
    for (int c = 0; c < graph.node_count; ++c)
      if (active[c]) alive.push_back(c);
    for (size_t a = 0; a < alive.size(); ++a) {
      for (size_t b = a + 1; b < alive.size(); ++b) {
        const int c = alive[a], d = alive[b];
        const auto it = between.find({c, d});
        const double e_cd = it == between.end() ? 0.0 : it->second;
        const double dq = e_cd / m - tot[c] * tot[d] / (2.0 * m * m);
        if (dq > best_dq) {
          best_dq = dq;
          best = {c, d};
        }
      }
    }
    if (best.first < 0 || best_dq < 0.0) break;
    for (int v = 0; v < graph.node_count; ++v)
      if (community[v] == best.second) community[v] = best.first;
    tot[best.first] += tot[best.second];
    active[best.second] = false;
  }

  // compact community ids
  std::map<int, int> renumber;
  for (int v = 0; v < graph.node_count; ++v)
    if (!renumber.count(community[v]))
      renumber[community[v]] = static_cast<int>(renumber.size());
  for (int v = 0; v < graph.node_count; ++v) community[v] = renumber[community[v]];

  ModularityResult result;
  result.score = modularity_score(graph, community);
  result.partition = std::move(community);
  return result;
}

}  // namespace bwreg
