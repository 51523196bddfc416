#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bwreg/geometry.hpp"
#include "bwreg/wellposedness.hpp"

namespace bwreg {

enum class Algorithm { kRgd, kPairwiseSgd };

enum class InitialPoint { kIdentity, kExplicit, kArithmeticMeanIfSpd };

enum class Termination { kConverged, kMaxIters };

struct SolverConfig {
  Algorithm algorithm = Algorithm::kRgd;
  int max_iters = 100;
  // RGD step size; unset means 1/L with L = sum_k |lambda_k|.
  std::optional<double> eta;
  // SGD uses the diminishing schedule eta_t = eta0 / sqrt(t+1), t = 0,1,...
  double eta0 = 1.0;
  double grad_tolerance = 1e-10;
  std::uint64_t seed = 0;
  int trace_every = 1;
  InitialPoint initial_point = InitialPoint::kIdentity;
  std::optional<SpdMatrix> explicit_initial;
  // Skip the existence check and run anyway; iterates may leave the cone,
  // in which case the solve throws NotSpdResult.
  bool force = false;
};

struct TraceRecord {
  int iter = 0;
  double objective = 0.0;
  double euclid_grad_fro = 0.0;
  double bw_grad_norm = 0.0;
  double min_eigenvalue = 0.0;
  double wall_ms = 0.0;
};

using SolverTrace = std::vector<TraceRecord>;

struct SolverResult {
  SpdMatrix solution;
  SolverTrace trace;
  Termination termination = Termination::kMaxIters;
  ExistenceReport existence;
};

// One Algorithm 1 update: S <- S~ S S~ with
// S~ = (1-eta) I + eta sum_k lambda_k GM(S^{-1}, Sigma_k).
SpdMatrix rgd_step(const SignedBarycenterProblem& prob, const SpdMatrix& s, double eta);

// Full-batch Riemannian gradient descent. Refuses infeasible problems
// unless config.force is set.
SolverResult solve_rgd(const SignedBarycenterProblem& prob, const SolverConfig& config);

// Index-pair sampler for the pairwise stochastic reformulation. Draws are
// a deterministic function of the seed and the call count: the generator
// is std::mt19937_64 and each draw consumes exactly one 53-bit uniform.
class PairSampler {
 public:
  PairSampler(const SignedBarycenterProblem& prob, std::uint64_t seed);

  bool has_negative() const { return !neg_cdf_.empty(); }

  // i with probability lambda_i^+ / mu_+, j with probability lambda_j^- / mu_-.
  // Throws NoNegativeWeights when the problem has no negative weights.
  std::pair<int, int> sample_pair();

  // Fallback for all-positive problems: a single index over the positive
  // weights. Not part of the pairwise scheme; documented extension.
  int sample_positive();

 private:
  double next_uniform();
  static int pick(const std::vector<double>& cdf, double u);

  const SignedBarycenterProblem& prob_;
  std::mt19937_64 rng_;
  std::vector<double> pos_cdf_;
  std::vector<double> neg_cdf_;
};

// One Algorithm 2 update with the sampled pair (i, j):
// S~ = (1-eta) I + eta (mu_+ GM(S^{-1},Sigma_i) - mu_- GM(S^{-1},Sigma_j)).
SpdMatrix sgd_step(const SignedBarycenterProblem& prob, const SpdMatrix& s, int i,
                   int j, double eta_t);

// Pairwise Riemannian SGD; always runs max_iters steps (no stochastic
// stopping rule). Requires the stricter per-pair condition unless forced.
// Problems with no negative weights fall back to single-index sampling.
SolverResult solve_pairwise_sgd(const SignedBarycenterProblem& prob,
                                const SolverConfig& config);

// Dispatch on config.algorithm.
SolverResult solve(const SignedBarycenterProblem& prob, const SolverConfig& config);

}  // namespace bwreg
