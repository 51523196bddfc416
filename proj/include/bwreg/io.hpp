#pragma once

#include <filesystem>
#include <string>

#include "bwreg/frechet.hpp"
#include "bwreg/network.hpp"
#include "bwreg/wellposedness.hpp"

#include <nlohmann/json.hpp>

namespace bwreg::io {

namespace fs = std::filesystem;

// -- matcsv: d lines of d comma-separated floats; symmetrized on load ----

MatrixXd load_matcsv(const fs::path& path);
void save_matcsv(const fs::path& path, const MatrixXd& m);

// -- problem file (JSON): weights + inline matrices or matcsv references --

SignedBarycenterProblem load_problem(const fs::path& path);

// -- dataset manifest (JSON): covariates + inline responses or files ------

RegressionDataset load_dataset(const fs::path& path);

// -- edge lists: whitespace-separated "u v w" lines ----------------------

WeightedGraph load_edge_list(const fs::path& path, int node_count,
                             bool one_indexed = false);
void save_edge_list(const fs::path& path, const WeightedGraph& graph);

// network manifest (JSON): node_count, one_indexed flag, [{file, tau}...]
TemporalNetworkDataset load_network_manifest(const fs::path& path);

// -- trace CSV -----------------------------------------------------------

void save_trace_csv(const fs::path& path, const SolverTrace& trace);

// -- reports -------------------------------------------------------------

nlohmann::json existence_report_json(const ExistenceReport& report);
nlohmann::json uniqueness_report_json(const UniquenessReport& report);

// -- run manifest --------------------------------------------------------

// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
std::string file_digest(const fs::path& path);

struct RunManifestBuilder {
  std::string subcommand;
  nlohmann::json config;
  std::vector<std::pair<std::string, std::string>> input_digests;
  std::uint64_t seed = 0;

  void write(const fs::path& out_dir) const;
};

// Atomic text write: temp file in the same directory, then rename.
void write_text_atomic(const fs::path& path, const std::string& content);

// 17 significant digits, round-trip safe.
std::string format_double(double v);

}  // namespace bwreg::io
