// Command line front end: snapshot generation, basis building, bound sweeps,
// ROM simulation and plot-table emission for the 2D wave benchmark.

#include <CLI11.hpp>
#include <iostream>

#include "symplrom/pipeline.hpp"

namespace {

using namespace symplrom;

constexpr int kExitOk = 0;
constexpr int kExitGeneric = 1;
constexpr int kExitArgument = 2;
constexpr int kExitRank = 3;
constexpr int kExitGap = 4;
constexpr int kExitAssumption = 5;
constexpr int kExitIo = 6;
constexpr int kExitStructure = 7;
constexpr int kExitNumeric = 8;

SketchKind parse_kind(const std::string& kind) {
  if (kind == "srft") return SketchKind::srft;
  if (kind == "gaussian") return SketchKind::gaussian;
  throw ArgumentError("unknown sketch kind '" + kind + "' (expected srft or gaussian)");
}

void add_model_options(CLI::App* cmd, WaveModelConfig& model, std::string& preset) {
  cmd->add_option("--preset", preset, "Model preset: desk (default) or paper");
  cmd->add_option("--n-xi1", model.n_xi1, "Interior grid points along xi1");
  cmd->add_option("--n-xi2", model.n_xi2, "Interior grid points along xi2");
  cmd->add_option("--xi1-extent", model.xi1_extent, "Domain extent along xi1");
  cmd->add_option("--xi2-extent", model.xi2_extent, "Domain extent along xi2");
  cmd->add_option("--nt", model.nt, "Time steps per trajectory");
  cmd->add_option("--u0-sup", model.u0_sup, "Bump width parameter");
  cmd->add_option("--bump-center-offset", model.bump_center_offset,
                  "Offset term in the initial bump argument");
}

void apply_preset(const CLI::App* cmd, const std::string& preset, WaveModelConfig& model) {
  if (preset.empty() || preset == "desk") return;
  if (preset != "paper") throw ArgumentError("unknown preset '" + preset + "'");
  // Full-scale benchmark: 50 x 300 grid points including the boundary, i.e.
  // 48 x 298 interior unknowns, 1500 steps per parameter.
  if (cmd->count("--n-xi1") == 0) model.n_xi1 = 48;
  if (cmd->count("--n-xi2") == 0) model.n_xi2 = 298;
  if (cmd->count("--nt") == 0) model.nt = 1500;
}

int dispatch(CLI::App& app, int argc, char** argv) {
  argv = app.ensure_utf8(argv);

  // ---- snapshots ----
  pipeline::SnapshotsOptions snap;
  std::string snap_preset;
  auto* snapshots_cmd =
      app.add_subcommand("snapshots", "Integrate the wave model and store the snapshot matrix");
  add_model_options(snapshots_cmd, snap.model, snap_preset);
  snapshots_cmd
      ->add_option("--mu", snap.mu_values, "Parameter values (default 1.0,1.1,...,2.0)")
      ->delimiter(',');
  snapshots_cmd->add_flag("--include-initial", snap.include_initial,
                          "Store states 0..nt-1 instead of 1..nt");
  snapshots_cmd
      ->add_option("--out", snap.out_dir, "Output directory")
      ->envname("SYMPLROM_OUT")
      ->required();

  // ---- basis ----
  pipeline::BasisOptions basis;
  std::string basis_kind = "srft";
  auto* basis_cmd = app.add_subcommand("basis", "Build an ortho-symplectic reduced basis");
  basis_cmd->add_option("--snapshots", basis.snapshots, "Snapshot .symp file")->required();
  basis_cmd->add_option("--method", basis.method, "csvd | rcsvd | rcsvd-real")->required();
  basis_cmd->add_option("--k", basis.cfg.k, "Pair count; the basis has 2k columns")->required();
  basis_cmd->add_option("--p-ovs", basis.cfg.p_ovs, "Oversampling (rcsvd variants)");
  basis_cmd->add_option("--q-pow", basis.cfg.q_pow, "Power iterations (rcsvd variants)");
  basis_cmd->add_option("--seed", basis.cfg.seed, "Sketch seed (required unless csvd)");
  basis_cmd->add_option("--kind", basis_kind, "Sketch kind: srft | gaussian");
  basis_cmd->add_flag("--stabilize", basis.cfg.stabilize,
                      "Re-orthonormalize between power iterations");
  basis_cmd->add_option("--repeat", basis.repeat, "Timing repetitions (median recorded)");
  basis_cmd->add_option("--out", basis.out, "Output basis file")
      ->envname("SYMPLROM_OUT")
      ->required();

  // ---- bounds ----
  pipeline::BoundsOptions bounds;
  std::string bounds_kind = "srft";
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Sweep (k, p_ovs, q_pow, seed) and evaluate all error bounds");
  bounds_cmd->add_option("--snapshots", bounds.snapshots, "Snapshot .symp file")->required();
  bounds_cmd->add_option("--k", bounds.k_values, "Basis pair counts")
      ->delimiter(',')
      ->required();
  bounds_cmd
      ->add_option("--p-ovs", bounds.p_ovs_values,
                   "Oversampling values; literal numbers or the token 'threshold'")
      ->delimiter(',')
      ->required();
  bounds_cmd->add_option("--q-pow", bounds.q_values, "Power iteration counts")
      ->delimiter(',')
      ->required();
  bounds_cmd->add_option("--seeds", bounds.seeds, "Sketch seeds, one run per seed")
      ->delimiter(',')
      ->required();
  bounds_cmd->add_option("--s", bounds.s, "Split parameter of the advanced bound");
  bounds_cmd->add_option("--kind", bounds_kind, "Sketch kind: srft | gaussian");
  bounds_cmd->add_option("--threads", bounds.threads, "Worker threads (0 = hardware)");
  bounds_cmd->add_option("--out", bounds.out_dir, "Output directory")
      ->envname("SYMPLROM_OUT")
      ->required();

  // ---- rom ----
  pipeline::RomOptions rom;
  auto* rom_cmd =
      app.add_subcommand("rom", "Simulate the full and reduced model at a test parameter");
  rom_cmd->add_option("--snapshots", rom.snapshots,
                      "Snapshot .symp file (its sidecar provides the model)")
      ->required();
  rom_cmd->add_option("--basis", rom.basis, "Basis file from the basis subcommand")->required();
  rom_cmd->add_option("--mu", rom.mu_test, "Test parameter value");
  rom_cmd->add_option("--out", rom.out_dir, "Output directory")
      ->envname("SYMPLROM_OUT")
      ->required();

  // ---- figures ----
  pipeline::FiguresOptions figures;
  auto* figures_cmd =
      app.add_subcommand("figures", "Emit whitespace-separated plot tables from sweep CSVs");
  figures_cmd->add_option("--results", figures.results_dir, "Directory with bounds outputs")
      ->required();
  figures_cmd->add_option("--out", figures.out_dir, "Output directory")
      ->envname("SYMPLROM_OUT")
      ->required();

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitArgument;
  }

  try {
    if (snapshots_cmd->parsed()) {
      apply_preset(snapshots_cmd, snap_preset, snap.model);
      pipeline::run_snapshots(snap);
    } else if (basis_cmd->parsed()) {
      basis.cfg.kind = parse_kind(basis_kind);
      if (basis.method != "csvd" && basis_cmd->count("--seed") == 0) {
        throw ArgumentError("basis: --seed is required for randomized methods");
      }
      pipeline::run_basis(basis);
    } else if (bounds_cmd->parsed()) {
      bounds.kind = parse_kind(bounds_kind);
      pipeline::run_bounds(bounds);
    } else if (rom_cmd->parsed()) {
      pipeline::run_rom(rom);
    } else if (figures_cmd->parsed()) {
      pipeline::run_figures(figures);
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const RankError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRank;
  } catch (const GapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGap;
  } catch (const AssumptionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssumption;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStructure;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneric;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symplrom: randomized symplectic basis generation toolkit"};
  app.set_config("--config", "", "Plain-text config file; command line flags take precedence");
  return dispatch(app, argc, argv);
}
