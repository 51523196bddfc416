// bwreg: conditional Bures-Wasserstein barycenters and Fréchet regression
// on SPD matrices. Subcommands: check, barycenter, fit, network, dti.
//
// Exit codes: 0 success, 1 input error, 2 well-posedness refusal,
// 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bwreg/dti.hpp"
#include "bwreg/io.hpp"

namespace {

using namespace bwreg;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRefused = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string out_dir = "out";
  std::string algo = "rgd";
  int iters = 100;
  double eta = 0.0;  // 0 = auto (1/L)
  double eta0 = 1.0;
  double grad_tol = 1e-10;
  std::uint64_t seed = 0;
  int trace_every = 1;
  bool force = false;
};

SolverConfig make_config(const CommonOpts& opts) {
  SolverConfig config;
  if (opts.algo == "rgd") {
    config.algorithm = Algorithm::kRgd;
  } else if (opts.algo == "sgd") {
    config.algorithm = Algorithm::kPairwiseSgd;
  } else {
    throw InvalidInput("unknown algorithm '" + opts.algo + "'");
  }
  config.max_iters = opts.iters;
  if (opts.eta > 0.0) config.eta = opts.eta;
  config.eta0 = opts.eta0;
  config.grad_tolerance = opts.grad_tol;
  config.seed = opts.seed;
  config.trace_every = opts.trace_every;
  config.force = opts.force;
  return config;
}

json config_json(const CommonOpts& opts) {
  return json{{"algo", opts.algo},       {"iters", opts.iters},
              {"eta", opts.eta},         {"eta0", opts.eta0},
              {"grad_tol", opts.grad_tol}, {"seed", opts.seed},
              {"trace_every", opts.trace_every}, {"force", opts.force}};
}

// Loads CommonOpts fields from a JSON config file; explicit CLI flags
// override these values afterwards.
void load_config_file(const fs::path& path, CommonOpts& opts) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path.string());
  json cfg = json::parse(in);
  if (cfg.contains("out")) opts.out_dir = cfg["out"].get<std::string>();
  if (cfg.contains("algo")) opts.algo = cfg["algo"].get<std::string>();
  if (cfg.contains("iters")) opts.iters = cfg["iters"].get<int>();
  if (cfg.contains("eta")) opts.eta = cfg["eta"].get<double>();
  if (cfg.contains("eta0")) opts.eta0 = cfg["eta0"].get<double>();
  if (cfg.contains("grad_tol")) opts.grad_tol = cfg["grad_tol"].get<double>();
  if (cfg.contains("seed")) opts.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("trace_every")) opts.trace_every = cfg["trace_every"].get<int>();
  if (cfg.contains("force")) opts.force = cfg["force"].get<bool>();
}

void add_solver_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--algo", opts.algo, "rgd or sgd");
  cmd->add_option("--iters", opts.iters, "iteration budget");
  cmd->add_option("--eta", opts.eta, "rgd step size (default 1/sum|lambda|)");
  cmd->add_option("--eta0", opts.eta0, "sgd initial step size");
  cmd->add_option("--tol", opts.grad_tol, "gradient-norm stopping tolerance");
  cmd->add_option("--seed", opts.seed, "rng seed (sgd)");
  cmd->add_option("--trace-every", opts.trace_every, "trace recording stride");
  cmd->add_flag("--force", opts.force, "run even if the existence check fails");
}

void write_manifest(const std::string& subcommand, const CommonOpts& opts,
                    const std::vector<fs::path>& inputs) {
  io::RunManifestBuilder builder;
  builder.subcommand = subcommand;
  builder.config = config_json(opts);
  builder.seed = opts.seed;
  for (const fs::path& p : inputs)
    builder.input_digests.emplace_back(p.string(), io::file_digest(p));
  builder.write(opts.out_dir);
}

int cmd_check(const std::string& problem_file) {
  const SignedBarycenterProblem prob = io::load_problem(problem_file);
  const ExistenceReport report = check_existence(prob);
  std::cout << io::existence_report_json(report).dump(2) << "\n";
  return report.holds ? kExitOk : kExitRefused;
}

int cmd_barycenter(const std::string& problem_file, const CommonOpts& opts) {
  const SignedBarycenterProblem prob = io::load_problem(problem_file);
  if (opts.force)
    std::cerr << "warning: --force set; the existence check is skipped and "
                 "iterates may collapse to the cone boundary\n";
  const SolverResult result = solve(prob, make_config(opts));
  const fs::path out(opts.out_dir);
  io::save_matcsv(out / "barycenter.matcsv", result.solution.mat());
  io::save_trace_csv(out / "trace.csv", result.trace);
  io::write_text_atomic(out / "existence.json",
                        io::existence_report_json(result.existence).dump(2) + "\n");
  write_manifest("barycenter", opts, {problem_file});
  std::cout << "wrote " << (out / "barycenter.matcsv").string() << " ("
            << (result.termination == Termination::kConverged ? "converged"
                                                              : "max iters")
            << ")\n";
  return kExitOk;
}

int cmd_fit(const std::string& manifest_file, const std::vector<double>& queries,
            const CommonOpts& opts) {
  const RegressionDataset dataset = io::load_dataset(manifest_file);
  const fs::path out(opts.out_dir);
  const SolverConfig config = make_config(opts);
  int failures = 0, refusals = 0;
  for (size_t qi = 0; qi < queries.size(); ++qi) {
    const std::string stem = "query_" + std::to_string(qi);
    try {
      const Prediction pred =
          predict(VectorXd::Constant(1, queries[qi]), dataset, config);
      io::save_matcsv(out / (stem + ".matcsv"), pred.estimate.mat());
      io::save_trace_csv(out / (stem + "_trace.csv"), pred.trace);
      std::ostringstream weights_csv;
      weights_csv << "k,s_k,lambda_k\n";
      for (size_t k = 0; k < pred.weights.s.size(); ++k)
        weights_csv << k << ',' << io::format_double(pred.weights.s[k]) << ','
                    << io::format_double(pred.weights.lambda[k]) << '\n';
      io::write_text_atomic(out / (stem + "_weights.csv"), weights_csv.str());
      io::write_text_atomic(out / (stem + "_existence.json"),
                            io::existence_report_json(pred.existence).dump(2) + "\n");
    } catch (const ExistenceViolation& err) {
      std::cerr << "query " << queries[qi] << ": " << err.what() << "\n";
      ++refusals;
    } catch (const Error& err) {
      std::cerr << "query " << queries[qi] << ": " << err.what() << "\n";
      ++failures;
    }
  }
  write_manifest("fit", opts, {manifest_file});
  if (failures) return kExitNumerical;
  if (refusals) return kExitRefused;
  return kExitOk;
}

int cmd_network(const std::string& manifest_file, const std::vector<double>& queries,
                const CommonOpts& opts) {
  const TemporalNetworkDataset data = io::load_network_manifest(manifest_file);
  std::vector<double> qs = queries;
  if (qs.empty()) qs = data.taus;
  const auto predictions = run_temporal_regression(data, qs, make_config(opts));
  const fs::path out(opts.out_dir);

  std::ostringstream metrics;
  metrics << "t,method,degree_w1,modularity_pred,modularity_truth\n";
  for (const TemporalPrediction& pred : predictions) {
    const std::string stem =
        "tau_" + std::to_string(pred.tau) + "_" + pred.method;
    if (!pred.solver_failed) {
      io::save_matcsv(out / (stem + ".matcsv"), pred.raw_mean);
      io::save_edge_list(out / (stem + ".edges"), pred.graph);
    } else {
      std::cerr << "tau " << pred.tau << " [" << pred.method
                << "]: " << pred.failure << "\n";
    }
    if (pred.metrics) {
      metrics << io::format_double(pred.tau) << ',' << pred.method << ','
              << io::format_double(pred.metrics->degree_w1_vs_truth) << ','
              << io::format_double(pred.metrics->modularity_pred) << ','
              << io::format_double(pred.metrics->modularity_truth) << '\n';
    }
  }
  io::write_text_atomic(out / "metrics.csv", metrics.str());
  write_manifest("network", opts, {manifest_file});
  return kExitOk;
}

int cmd_dti(int n, const std::vector<int>& targets, int runs, int record_every,
            double lambda_parallel, double lambda_perp, const CommonOpts& opts) {
  HelixParams params;
  params.n = n;
  params.lambda_parallel = lambda_parallel;
  params.lambda_perp = lambda_perp;
  CommonOpts dti_opts = opts;
  dti_opts.trace_every = record_every;
  const auto results =
      run_dti_experiment(params, targets, make_config(dti_opts), runs);
  const fs::path out(opts.out_dir);

  for (const DtiTargetResult& tr : results) {
    std::ostringstream curves;
    curves << "run,iter,objective\n";
    for (size_t run = 0; run < tr.runs.size(); ++run)
      for (size_t r = 0; r < tr.runs[run].iters.size(); ++r)
        curves << run << ',' << tr.runs[run].iters[r] << ','
               << io::format_double(tr.runs[run].objectives[r]) << '\n';
    const std::string stem = "target_" + std::to_string(tr.target_index);
    io::write_text_atomic(out / (stem + "_objective.csv"), curves.str());

    // glyph data for external rendering
    json glyph;
    glyph["target_index"] = tr.target_index;
    glyph["covariate"] = tr.covariate;
    glyph["bw_error_vs_truth"] = tr.bw_error_vs_truth;
    const SpdMatrix& m = *tr.final_estimate;
    glyph["eigenvalues"] = std::vector<double>(
        m.eigenvalues().data(), m.eigenvalues().data() + m.dim());
    json vecs = json::array();
    for (int i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.dim(); ++j) row.push_back(m.eigenvectors()(i, j));
      vecs.push_back(row);
    }
    glyph["eigenvectors"] = vecs;
    io::write_text_atomic(out / (stem + "_glyph.json"), glyph.dump(2) + "\n");
    io::save_matcsv(out / (stem + ".matcsv"), m.mat());
  }
  write_manifest("dti", opts, {});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fréchet regression on SPD matrices under the Bures-Wasserstein metric"};
  app.require_subcommand(1);

  std::string problem_file, manifest_file;
  std::vector<double> queries;
  CommonOpts opts;

  auto* check = app.add_subcommand("check", "evaluate the existence conditions");
  check->add_option("problem", problem_file, "problem JSON file")->required();

  auto* bary = app.add_subcommand("barycenter", "solve a signed barycenter problem");
  bary->add_option("problem", problem_file, "problem JSON file")->required();
  add_solver_flags(bary, opts);

  auto* fit = app.add_subcommand("fit", "Fréchet regression predictions");
  fit->add_option("dataset", manifest_file, "dataset manifest JSON")->required();
  fit->add_option("--query", queries, "query covariates")->required();
  add_solver_flags(fit, opts);

  auto* network = app.add_subcommand("network", "temporal network regression");
  network->add_option("manifest", manifest_file, "network manifest JSON")->required();
  network->add_option("--query", queries, "query time indices (default: all taus)");
  add_solver_flags(network, opts);

  int dti_n = 100000, dti_runs = 10, dti_record = 10;
  double dti_lpar = 3.0, dti_lperp = 1.5;
  std::vector<int> dti_targets;
  auto* dti = app.add_subcommand("dti", "synthetic DTI helix experiment");
  dti->add_option("--n", dti_n, "number of tensors");
  dti->add_option("--targets", dti_targets, "held-out target indices")->required();
  dti->add_option("--runs", dti_runs, "independent runs per target");
  dti->add_option("--record-every", dti_record, "objective recording stride");
  dti->add_option("--lambda-parallel", dti_lpar, "principal tensor eigenvalue");
  dti->add_option("--lambda-perp", dti_lperp, "transverse tensor eigenvalue");
  add_solver_flags(dti, opts);
  opts.algo = "rgd";

  std::string config_file;
  for (CLI::App* sub : {bary, fit, network, dti})
    sub->add_option("--config", config_file,
                    "JSON config file; explicit flags override it");

  // the config file must be applied before flag parsing so flags win:
  // pre-scan for --config, load, then parse normally
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], opts);
      } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInput;
      }
      break;
    }
  }

  CLI11_PARSE(app, argc, argv);

  const char* log_level = std::getenv("BWREG_LOG");
  if (log_level && std::string(log_level) == "debug")
    std::cerr << "config: " << config_json(opts).dump() << "\n";

  try {
    if (check->parsed()) return cmd_check(problem_file);
    if (bary->parsed()) return cmd_barycenter(problem_file, opts);
    if (fit->parsed()) return cmd_fit(manifest_file, queries, opts);
    if (network->parsed()) return cmd_network(manifest_file, queries, opts);
    if (dti->parsed())
      return cmd_dti(dti_n, dti_targets, dti_runs, dti_record, dti_lpar, dti_lperp,
                     opts);
  } catch (const ExistenceViolation& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRefused;
  } catch (const NotSpdResult& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const NearSingular& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
