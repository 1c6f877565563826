#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "symplrom/bounds.hpp"
#include "symplrom/textio.hpp"
#include "symplrom/wave2d.hpp"

namespace symplrom::pipeline {

// Default parameter sweep of the benchmark: mu_j = 1 + 0.1 j, j = 0..10.
std::vector<double> default_mu_values();

struct SnapshotsOptions {
  WaveModelConfig model;
  std::vector<double> mu_values = default_mu_values();
  bool include_initial = false;
  std::filesystem::path out_dir;
};

// Writes <out>/snapshots.symp plus the key=value sidecar
// <out>/snapshots.meta describing grid, parameters and column layout.
void run_snapshots(const SnapshotsOptions& opt);

struct BasisOptions {
  std::filesystem::path snapshots;
  std::string method = "csvd";  // csvd | rcsvd | rcsvd-real
  SketchConfig cfg;
  int repeat = 5;  // timing repetitions; the median is recorded
  std::filesystem::path out;
};

// Computes the basis, stores [VQ; VP] as a 2N x k SYMP matrix next to a
// .meta sidecar with the wall-clock record (basis computation only).
void run_basis(const BasisOptions& opt);

// Loads a basis written by run_basis.
OrthoSymplecticBasis load_basis(const std::filesystem::path& path);

struct BoundsOptions {
  std::filesystem::path snapshots;
  std::vector<Index> k_values;
  // Literal oversampling values or the token "threshold" (srft_threshold - k).
  std::vector<std::string> p_ovs_values;
  std::vector<Index> q_values;
  std::vector<std::uint64_t> seeds;
  Index s = 0;
  SketchKind kind = SketchKind::srft;
  int threads = 0;  // 0 = hardware concurrency
  std::filesystem::path out_dir;
};

// Runs the (k, p_ovs, q_pow, seed) sweep and writes bounds.csv (one row per
// cell), bounds_mean.csv (per-cell means over seeds), csvd.csv (reference
// errors/time) and spectrum.csv (singular values of X_c). Assumption
// violations and infeasible cells keep their row with empty bound fields.
void run_bounds(const BoundsOptions& opt);

struct RomOptions {
  std::filesystem::path snapshots;  // provides the model config via its sidecar
  std::filesystem::path basis;
  double mu_test = 1.35;
  std::filesystem::path out_dir;
};

// Full-order vs reduced-order simulation at mu_test; writes rom.csv with the
// per-step state error and both Hamiltonian traces.
void run_rom(const RomOptions& opt);

struct FiguresOptions {
  std::filesystem::path results_dir;
  std::filesystem::path out_dir;
};

// Turns sweep CSVs into whitespace-separated plot tables, one file per panel
// (projection errors, runtimes, deterministic/probabilistic effectivities,
// one per q value).
void run_figures(const FiguresOptions& opt);

// Definitive column sets of the CSV outputs (schema test anchors).
const std::vector<std::string>& bounds_csv_header();
const std::vector<std::string>& bounds_mean_csv_header();
const std::vector<std::string>& csvd_csv_header();
const std::vector<std::string>& rom_csv_header();

// Sidecar round-trip of the model config.
KeyValueMap model_to_keyvalues(const WaveModelConfig& model);
WaveModelConfig model_from_keyvalues(const KeyValueMap& kv);

}  // namespace symplrom::pipeline
