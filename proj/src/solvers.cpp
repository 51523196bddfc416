#include "bwreg/solvers.hpp"

#include <chrono>
#include <cmath>

namespace bwreg {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// sum_k lambda_k GM(S^{-1}, Sigma_k), sharing the factorization of S over k.
MatrixXd weighted_transport_sum(const SignedBarycenterProblem& prob,
                                const SpdMatrix& s) {
  const MatrixXd s_half = s.sqrt();
  const MatrixXd s_inv_half = s.inv_sqrt();
  MatrixXd sum = MatrixXd::Zero(s.dim(), s.dim());
  for (int k = 0; k < prob.size(); ++k)
    sum += prob.weights()[k] * psd_sqrt(s_half * prob.matrices()[k].mat() * s_half);
  return s_inv_half * sum * s_inv_half;
}

SpdMatrix congruence_update(const SpdMatrix& s, const MatrixXd& factor, int iter) {
  const MatrixXd next = factor * s.mat() * factor.transpose();
  SpdMatrix result = [&] {
    try {
      return SpdMatrix(next);
    } catch (const NotSpdResult&) {
      throw NotSpdResult("iterate left the SPD cone at iteration " +
                         std::to_string(iter));
    }
  }();
  // Forced runs on infeasible problems collapse towards the boundary;
  // stop once the absolute eigenvalue floor is crossed.
  if (result.min_eigenvalue() <= kSpdTolerance)
    throw NotSpdResult("iterate reached the cone boundary at iteration " +
                       std::to_string(iter));
  return result;
}

SpdMatrix initial_iterate(const SignedBarycenterProblem& prob,
                          const SolverConfig& config) {
  switch (config.initial_point) {
    case InitialPoint::kIdentity:
      return SpdMatrix::Identity(prob.dim());
    case InitialPoint::kExplicit:
      if (!config.explicit_initial)
        throw InvalidInput("explicit initial point requested but none given");
      if (config.explicit_initial->dim() != prob.dim())
        throw DimensionError("initial point dimension mismatch");
      return *config.explicit_initial;
    case InitialPoint::kArithmeticMeanIfSpd: {
      MatrixXd mean = MatrixXd::Zero(prob.dim(), prob.dim());
      for (int k = 0; k < prob.size(); ++k)
        mean += prob.weights()[k] * prob.matrices()[k].mat();
      try {
        return SpdMatrix(mean);
      } catch (const NotSpdResult&) {
        return SpdMatrix::Identity(prob.dim());
      }
    }
  }
  throw InvalidInput("unknown initial point policy");
}

TraceRecord make_record(const SignedBarycenterProblem& prob, const SpdMatrix& s,
                        int iter, Clock::time_point start) {
  TraceRecord rec;
  rec.iter = iter;
  rec.objective = objective(prob, s);
  const MatrixXd grad = euclidean_gradient(prob, s);
  rec.euclid_grad_fro = grad.norm();
  rec.bw_grad_norm = bw_gradient_norm(s, grad);
  rec.min_eigenvalue = s.min_eigenvalue();
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

}  // namespace

SpdMatrix rgd_step(const SignedBarycenterProblem& prob, const SpdMatrix& s,
                   double eta) {
  const MatrixXd factor =
      (1.0 - eta) * MatrixXd::Identity(s.dim(), s.dim()) +
      eta * weighted_transport_sum(prob, s);
  return congruence_update(s, factor, -1);
}

SolverResult solve_rgd(const SignedBarycenterProblem& prob,
                       const SolverConfig& config) {
  const auto start = Clock::now();
  ExistenceReport existence = check_existence(prob);
  if (!existence.holds && !config.force)
    throw ExistenceViolation("spectral dominance fails (margin " +
                             std::to_string(existence.margin) +
                             "); pass force to run anyway");

  const double eta = config.eta.value_or(1.0 / prob.smoothness_constant());
  if (eta <= 0.0) throw InvalidInput("step size must be positive");

  SpdMatrix s = initial_iterate(prob, config);
  SolverTrace trace;
  Termination termination = Termination::kMaxIters;
  const int d = prob.dim();

  for (int t = 0; t <= config.max_iters; ++t) {
    const MatrixXd transport_sum = weighted_transport_sum(prob, s);
    const MatrixXd grad = MatrixXd::Identity(d, d) - transport_sum;
    const double grad_fro = grad.norm();

    if (t % config.trace_every == 0 || t == config.max_iters ||
        grad_fro <= config.grad_tolerance) {
      TraceRecord rec;
      rec.iter = t;
      rec.objective = objective(prob, s);
      rec.euclid_grad_fro = grad_fro;
      rec.bw_grad_norm = bw_gradient_norm(s, grad);
      rec.min_eigenvalue = s.min_eigenvalue();
      rec.wall_ms = elapsed_ms(start);
      trace.push_back(rec);
    }
    if (grad_fro <= config.grad_tolerance) {
      termination = Termination::kConverged;
      break;
    }
    if (t == config.max_iters) break;

    const MatrixXd factor =
        (1.0 - eta) * MatrixXd::Identity(d, d) + eta * transport_sum;
    s = congruence_update(s, factor, t + 1);
  }
  return SolverResult{std::move(s), std::move(trace), termination, existence};
}

PairSampler::PairSampler(const SignedBarycenterProblem& prob, std::uint64_t seed)
    : prob_(prob), rng_(seed) {
  double acc = 0.0;
  for (int i : prob.positive_indices()) {
    acc += prob.weights()[i] / prob.positive_mass();
    pos_cdf_.push_back(acc);
  }
  pos_cdf_.back() = 1.0;
  if (!prob.negative_indices().empty()) {
    acc = 0.0;
    for (int j : prob.negative_indices()) {
      acc += -prob.weights()[j] / prob.negative_mass();
      neg_cdf_.push_back(acc);
    }
    neg_cdf_.back() = 1.0;
  }
}

double PairSampler::next_uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

int PairSampler::pick(const std::vector<double>& cdf, double u) {
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                   cdf.size() - 1));
}

std::pair<int, int> PairSampler::sample_pair() {
  if (neg_cdf_.empty())
    throw NoNegativeWeights("pairwise sampling needs a negative weight");
  const int i = prob_.positive_indices()[pick(pos_cdf_, next_uniform())];
  const int j = prob_.negative_indices()[pick(neg_cdf_, next_uniform())];
  return {i, j};
}

int PairSampler::sample_positive() {
  return prob_.positive_indices()[pick(pos_cdf_, next_uniform())];
}

SpdMatrix sgd_step(const SignedBarycenterProblem& prob, const SpdMatrix& s, int i,
                   int j, double eta_t) {
  if (eta_t < 0.0 || eta_t > 1.0) throw InvalidInput("sgd step size must be in [0,1]");
  const SpdMatrix s_inv(s.inverse());
  const MatrixXd direction =
      prob.positive_mass() * geometric_mean(s_inv, prob.matrices()[i]).mat() -
      prob.negative_mass() * geometric_mean(s_inv, prob.matrices()[j]).mat();
  const MatrixXd factor =
      (1.0 - eta_t) * MatrixXd::Identity(s.dim(), s.dim()) + eta_t * direction;
  return congruence_update(s, factor, -1);
}

SolverResult solve_pairwise_sgd(const SignedBarycenterProblem& prob,
                                const SolverConfig& config) {
  const auto start = Clock::now();
  ExistenceReport existence = check_existence(prob);
  const bool pure_positive = prob.negative_indices().empty();
  if (!pure_positive && !existence.sgd_holds && !config.force)
    throw ExistenceViolation("pairwise condition fails (sgd margin " +
                             std::to_string(existence.sgd_margin) +
                             "); pass force to run anyway");

  PairSampler sampler(prob, config.seed);
  SpdMatrix s = initial_iterate(prob, config);
  SolverTrace trace;
  trace.push_back(make_record(prob, s, 0, start));
  const int d = prob.dim();

  for (int t = 0; t < config.max_iters; ++t) {
    const double eta_t = config.eta0 / std::sqrt(static_cast<double>(t) + 1.0);
    MatrixXd direction;
    const MatrixXd s_half = s.sqrt();
    const MatrixXd s_inv_half = s.inv_sqrt();
    if (pure_positive) {
      const int i = sampler.sample_positive();
      direction = prob.positive_mass() * s_inv_half *
                  psd_sqrt(s_half * prob.matrices()[i].mat() * s_half) * s_inv_half;
    } else {
      const auto [i, j] = sampler.sample_pair();
      direction =
          s_inv_half *
          (prob.positive_mass() *
               psd_sqrt(s_half * prob.matrices()[i].mat() * s_half) -
           prob.negative_mass() *
               psd_sqrt(s_half * prob.matrices()[j].mat() * s_half)) *
          s_inv_half;
    }
    const MatrixXd factor =
        (1.0 - std::min(eta_t, 1.0)) * MatrixXd::Identity(d, d) +
        std::min(eta_t, 1.0) * direction;
    s = congruence_update(s, factor, t + 1);
    if ((t + 1) % config.trace_every == 0 || t + 1 == config.max_iters)
      trace.push_back(make_record(prob, s, t + 1, start));
  }
  return SolverResult{std::move(s), std::move(trace), Termination::kMaxIters,
                      existence};
}

SolverResult solve(const SignedBarycenterProblem& prob, const SolverConfig& config) {
  return config.algorithm == Algorithm::kRgd ? solve_rgd(prob, config)
                                             : solve_pairwise_sgd(prob, config);
}

}  // namespace bwreg
