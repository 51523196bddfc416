#include "bwreg/io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bwreg::io {

namespace {

using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& err) {
    throw InvalidInput(path.string() + ": " + err.what());
  }
}

MatrixXd matrix_from_json(const json& rows) {
  const auto d = rows.size();
  if (d == 0) throw InvalidInput("empty matrix in manifest");
  MatrixXd m(d, d);
  for (size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) throw InvalidInput("matrix rows must have equal length");
    for (size_t j = 0; j < d; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

MatrixXd load_matcsv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                           ": bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput(path.string() + ": empty matrix file");
  const size_t d = rows.size();
  MatrixXd m(d, d);
  for (size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d)
      throw InvalidInput(path.string() + ":" + std::to_string(i + 1) +
                         ": expected " + std::to_string(d) + " values");
    for (size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
  }
  return 0.5 * (m + m.transpose());
}

void save_matcsv(const fs::path& path, const MatrixXd& m) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

SignedBarycenterProblem load_problem(const fs::path& path) {
  const json doc = parse_json_file(path);
  if (!doc.contains("weights")) throw InvalidInput(path.string() + ": missing weights");
  std::vector<double> weights = doc["weights"].get<std::vector<double>>();
  std::vector<SpdMatrix> matrices;
  if (doc.contains("matrices")) {
    for (const json& m : doc["matrices"]) matrices.emplace_back(matrix_from_json(m));
  } else if (doc.contains("matrix_files")) {
    const fs::path base = path.parent_path();
    for (const json& f : doc["matrix_files"])
      matrices.emplace_back(load_matcsv(base / f.get<std::string>()));
  } else {
    throw InvalidInput(path.string() + ": needs matrices or matrix_files");
  }
  return SignedBarycenterProblem(std::move(matrices), std::move(weights));
}

RegressionDataset load_dataset(const fs::path& path) {
  const json doc = parse_json_file(path);
  if (!doc.contains("covariates"))
    throw InvalidInput(path.string() + ": missing covariates");
  std::vector<VectorXd> covariates;
  for (const json& row : doc["covariates"]) {
    if (row.is_number()) {
      covariates.push_back(VectorXd::Constant(1, row.get<double>()));
    } else {
      VectorXd x(row.size());
      for (size_t i = 0; i < row.size(); ++i) x(i) = row[i].get<double>();
      covariates.push_back(std::move(x));
    }
  }
  std::vector<SpdMatrix> responses;
  if (doc.contains("responses")) {
    for (const json& m : doc["responses"]) responses.emplace_back(matrix_from_json(m));
  } else if (doc.contains("response_files")) {
    const fs::path base = path.parent_path();
    for (const json& f : doc["response_files"])
      responses.emplace_back(load_matcsv(base / f.get<std::string>()));
  } else {
    throw InvalidInput(path.string() + ": needs responses or response_files");
  }
  return RegressionDataset(std::move(covariates), std::move(responses));
}

WeightedGraph load_edge_list(const fs::path& path, int node_count, bool one_indexed) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  WeightedGraph graph;
  graph.node_count = node_count;
  std::string line;
  int lineno = 0;
  const int offset = one_indexed ? 1 : 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    std::istringstream ss(line);
    int u, v;
    double w = 1.0;
    if (!(ss >> u >> v))
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": bad edge");
    ss >> w;  // weight column is optional; default 1
    u -= offset;
    v -= offset;
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                         ": node index out of range");
    graph.edges.push_back({u, v, w});
  }
  return graph;
}

void save_edge_list(const fs::path& path, const WeightedGraph& graph) {
  std::ostringstream out;
  for (const WeightedEdge& e : graph.edges)
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
  write_text_atomic(path, out.str());
}

TemporalNetworkDataset load_network_manifest(const fs::path& path) {
  const json doc = parse_json_file(path);
  if (!doc.contains("node_count") || !doc.contains("graphs"))
    throw InvalidInput(path.string() + ": needs node_count and graphs");
  const int d = doc["node_count"].get<int>();
  const bool one_indexed = doc.value("one_indexed", false);
  const fs::path base = path.parent_path();
  TemporalNetworkDataset data;
  for (const json& entry : doc["graphs"]) {
    data.taus.push_back(entry.at("tau").get<double>());
    data.graphs.push_back(
        load_edge_list(base / entry.at("file").get<std::string>(), d, one_indexed));
  }
  return data;
}

void save_trace_csv(const fs::path& path, const SolverTrace& trace) {
  std::ostringstream out;
  out << "iter,objective,euclid_grad_fro,bw_grad_norm,min_eig,wall_ms\n";
  for (const TraceRecord& rec : trace) {
    out << rec.iter << ',' << format_double(rec.objective) << ','
        << format_double(rec.euclid_grad_fro) << ','
        << format_double(rec.bw_grad_norm) << ','
        << format_double(rec.min_eigenvalue) << ',' << format_double(rec.wall_ms)
        << '\n';
  }
  write_text_atomic(path, out.str());
}

json existence_report_json(const ExistenceReport& report) {
  return json{{"a_min", report.a_min},
              {"b_max", report.b_max},
              {"margin", report.margin},
              {"holds", report.holds},
              {"sgd_margin", report.sgd_margin},
              {"sgd_holds", report.sgd_holds},
              {"stationary_lower", report.stationary_lower},
              {"stationary_upper", report.stationary_upper}};
}

json uniqueness_report_json(const UniquenessReport& report) {
  return json{{"data_in_ball", report.data_in_ball},
              {"r_small_enough", report.r_small_enough},
              {"rho_below_injectivity", report.rho_below_injectivity},
              {"ball_in_submanifold", report.ball_in_submanifold},
              {"ball_check_mode", "sampled, sufficient-only"},
              {"mass_ratio_ok", report.mass_ratio_ok},
              {"all_hold", report.all_hold},
              {"lambda_floor", report.lambda_floor},
              {"curvature_bound", report.curvature_bound}};
}

std::string file_digest(const fs::path& path) {
  const std::string bytes = read_file(path);
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void RunManifestBuilder::write(const fs::path& out_dir) const {
  json inputs = json::object();
  for (const auto& [name, digest] : input_digests) inputs[name] = digest;
  const json doc{{"subcommand", subcommand},
                 {"config", config},
                 {"inputs", inputs},
                 {"seed", seed},
                 {"artifact_version", "0.1.0"},
                 {"timestamp", iso_timestamp()}};
  write_text_atomic(out_dir / "run_manifest.json", doc.dump(2) + "\n");
}

void write_text_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace bwreg::io
