#include "symplrom/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "symplrom/snapshot_file.hpp"

namespace symplrom::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += format_double(values[i]);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(std::stod(item));
  return out;
}

// Runs fn(i) for i in [0, count) on a small worker pool; each cell is
// independent, so the result is identical to the sequential order.
void parallel_for(Index count, int threads, const std::function<void(Index)>& fn) {
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, std::min<int>(n, static_cast<int>(count)));
  if (n == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const Index i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<double> default_mu_values() {
  std::vector<double> mu;
  for (int j = 0; j <= 10; ++j) mu.push_back(static_cast<double>(10 + j) / 10.0);
  return mu;
}

KeyValueMap model_to_keyvalues(const WaveModelConfig& model) {
  KeyValueMap kv;
  kv["n_xi1"] = format_index(model.n_xi1);
  kv["n_xi2"] = format_index(model.n_xi2);
  kv["xi1_extent"] = format_double(model.xi1_extent);
  kv["xi2_extent"] = format_double(model.xi2_extent);
  kv["c"] = format_double(model.c);
  kv["u0_sup"] = format_double(model.u0_sup);
  kv["bump_center_offset"] = format_double(model.bump_center_offset);
  kv["nt"] = format_index(model.nt);
  return kv;
}

WaveModelConfig model_from_keyvalues(const KeyValueMap& kv) {
  WaveModelConfig model;
  const auto get = [&kv](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IoError(std::string("model sidecar: missing key ") + key);
    return it->second;
  };
  model.n_xi1 = static_cast<Index>(std::stoll(get("n_xi1")));
  model.n_xi2 = static_cast<Index>(std::stoll(get("n_xi2")));
  model.xi1_extent = std::stod(get("xi1_extent"));
  model.xi2_extent = std::stod(get("xi2_extent"));
  model.c = std::stod(get("c"));
  model.u0_sup = std::stod(get("u0_sup"));
  model.bump_center_offset = std::stod(get("bump_center_offset"));
  model.nt = static_cast<Index>(std::stoll(get("nt")));
  return model;
}

void run_snapshots(const SnapshotsOptions& opt) {
  opt.model.validate();
  if (opt.mu_values.empty()) throw ArgumentError("snapshots: need at least one mu value");
  std::filesystem::create_directories(opt.out_dir);

  const SnapshotMatrix xs =
      collect_snapshots(opt.model, opt.mu_values, opt.model.nt, opt.include_initial);
  save_matrix(opt.out_dir / "snapshots.symp", xs.data());

  KeyValueMap kv = model_to_keyvalues(opt.model);
  kv["rows"] = format_index(xs.full_dim());
  kv["cols"] = format_index(xs.num_snapshots());
  kv["mu_values"] = join_doubles(opt.mu_values);
  kv["include_initial"] = opt.include_initial ? "1" : "0";
  kv["format_version"] = format_u64(kSnapshotFormatVersion);
  save_key_values(opt.out_dir / "snapshots.meta", kv);
}

namespace {

OrthoSymplecticBasis build_by_method(const SnapshotMatrix& xs, const std::string& method,
                                     const SketchConfig& cfg) {
  if (method == "csvd") return csvd(xs, cfg.k);
  if (method == "rcsvd") return rcsvd(xs, cfg);
  if (method == "rcsvd-real") return rcsvd_real(xs, cfg);
  throw ArgumentError("unknown method '" + method + "' (expected csvd, rcsvd or rcsvd-real)");
}

}  // namespace

void run_basis(const BasisOptions& opt) {
  if (opt.repeat < 1) throw ArgumentError("basis: repeat must be >= 1");
  const SnapshotMatrix xs{load_matrix(opt.snapshots)};

  std::vector<double> times;
  OrthoSymplecticBasis basis;
  for (int r = 0; r < opt.repeat; ++r) {
    const auto t0 = Clock::now();
    basis = build_by_method(xs, opt.method, opt.cfg);
    times.push_back(seconds_since(t0));
  }
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];

  Matrix stacked(2 * basis.half_dim(), basis.pair_count());
  stacked.topRows(basis.half_dim()) = basis.VQ;
  stacked.bottomRows(basis.half_dim()) = basis.VP;
  if (opt.out.has_parent_path()) std::filesystem::create_directories(opt.out.parent_path());
  save_matrix(opt.out, stacked);

  KeyValueMap kv;
  kv["method"] = opt.method;
  kv["k"] = format_index(opt.cfg.k);
  kv["p_ovs"] = format_index(opt.cfg.p_ovs);
  kv["q_pow"] = format_index(opt.cfg.q_pow);
  kv["s"] = format_index(opt.cfg.s);
  kv["seed"] = format_u64(opt.cfg.seed);
  kv["kind"] = opt.cfg.kind == SketchKind::srft ? "srft" : "gaussian";
  kv["stabilize"] = opt.cfg.stabilize ? "1" : "0";
  kv["repeat"] = format_index(opt.repeat);
  kv["seconds_median"] = format_double(median);
  kv["seconds_all"] = join_doubles(times);
  kv["rows"] = format_index(2 * basis.half_dim());
  kv["cols"] = format_index(basis.pair_count());
  kv["snapshots"] = opt.snapshots.string();
  save_key_values(opt.out.string() + ".meta", kv);
}

OrthoSymplecticBasis load_basis(const std::filesystem::path& path) {
  const Matrix stacked = load_matrix(path);
  if (stacked.rows() % 2 != 0) throw IoError("load_basis: stored basis has odd row count");
  OrthoSymplecticBasis b;
  b.VQ = stacked.topRows(stacked.rows() / 2);
  b.VP = stacked.bottomRows(stacked.rows() / 2);
  return b;
}

const std::vector<std::string>& bounds_csv_header() {
  static const std::vector<std::string> header = {
      "k",        "p_ovs_label",  "p_ovs",       "l",
      "q_pow",    "s",            "seed",        "feasible",
      "assumption_ok",            "e_proj_frob", "e_proj_sq",
      "tail",     "eta_det",      "eta_det_adv", "eta_det_adv_sharp",
      "eta_prob", "eta_prob_adv", "eff_det",     "eff_det_adv",
      "eff_prob", "eff_prob_adv", "eff_det_literal",
      "eff_det_adv_literal",      "eff_prob_literal",
      "eff_prob_adv_literal",     "quasi_opt_c", "failure_prob",
      "basis_seconds",            "note"};
  return header;
}

const std::vector<std::string>& bounds_mean_csv_header() {
  static const std::vector<std::string> header = {
      "k", "p_ovs_label", "q_pow", "s", "n_seeds", "n_det_evaluated",
      "e_proj_frob_mean", "e_proj_sq_mean", "tail",
      "eta_det_mean", "eta_det_adv_mean", "eta_prob_mean", "eta_prob_adv_mean",
      "eff_det_mean", "eff_det_adv_mean", "eff_prob_mean", "eff_prob_adv_mean",
      "basis_seconds_mean"};
  return header;
}

const std::vector<std::string>& csvd_csv_header() {
  static const std::vector<std::string> header = {"k", "e_proj_frob", "e_proj_sq", "tail_sq",
                                                  "svd_seconds"};
  return header;
}

const std::vector<std::string>& rom_csv_header() {
  static const std::vector<std::string> header = {
      "t", "state_error_2", "fom_energy", "rom_energy", "fom_energy_drift", "rom_energy_drift"};
  return header;
}

namespace {

struct SweepCell {
  Index k;
  std::string p_label;
  Index p_ovs;  // resolved; negative means infeasible
  Index q;
  std::uint64_t seed;
};

Index resolve_p_ovs(const std::string& label, Index k, Index n_s) {
  if (label == "threshold") {
    if (k < 2) return -1;
    const Index l = srft_threshold(k, n_s);
    return (l <= n_s && l >= k) ? l - k : -1;
  }
  const Index p = static_cast<Index>(std::stoll(label));
  if (p < 0 || k + p > n_s) return -1;
  return p;
}

}  // namespace

void run_bounds(const BoundsOptions& opt) {
  if (opt.k_values.empty() || opt.p_ovs_values.empty() || opt.q_values.empty() ||
      opt.seeds.empty()) {
    throw ArgumentError("bounds: every sweep list must be non-empty");
  }
  const SnapshotMatrix xs{load_matrix(opt.snapshots)};
  const Index ns = xs.num_snapshots();
  std::filesystem::create_directories(opt.out_dir);

  const ComplexMatrix xc = complexify(xs);
  const auto t0 = Clock::now();
  const ComplexSvd xc_svd = svd(xc);
  const double svd_seconds = seconds_since(t0);
  const SingularSpectrum sigma = make_singular_spectrum(xc_svd.sigma, "X_c");

  {
    CsvWriter spectrum_csv(opt.out_dir / "spectrum.csv", {"j", "sigma"});
    for (Index j = 0; j < sigma.values.size(); ++j) {
      spectrum_csv.write_row({format_index(j + 1), format_double(sigma.values(j))});
    }
    spectrum_csv.finish();
  }

  {
    CsvWriter csvd_csv(opt.out_dir / "csvd.csv", csvd_csv_header());
    for (const Index k : opt.k_values) {
      const OrthoSymplecticBasis v = to_ortho_symplectic(xc_svd.U.leftCols(k));
      const ProjectionError e = projection_error(xs, v);
      const double tail = optimal_tail(sigma, k);
      csvd_csv.write_row({format_index(k), format_double(e.frob), format_double(e.squared),
                          format_double(tail * tail), format_double(svd_seconds)});
    }
    csvd_csv.finish();
  }

  std::vector<SweepCell> cells;
  for (const Index k : opt.k_values) {
    for (const auto& p_label : opt.p_ovs_values) {
      for (const Index q : opt.q_values) {
        for (const std::uint64_t seed : opt.seeds) {
          cells.push_back({k, p_label, resolve_p_ovs(p_label, k, ns), q, seed});
        }
      }
    }
  }

  std::vector<BoundReport> reports(cells.size());
  std::vector<bool> feasible(cells.size(), false);
  parallel_for(static_cast<Index>(cells.size()), opt.threads, [&](Index i) {
    const SweepCell& cell = cells[static_cast<std::size_t>(i)];
    if (cell.p_ovs < 0) return;
    SketchConfig cfg;
    cfg.k = cell.k;
    cfg.p_ovs = cell.p_ovs;
    cfg.q_pow = cell.q;
    cfg.seed = cell.seed;
    cfg.kind = opt.kind;
    cfg.s = std::min(opt.s, cfg.l() - cfg.k);
    reports[static_cast<std::size_t>(i)] = evaluate_rcsvd_bounds(xs, xc, xc_svd, cfg);
    feasible[static_cast<std::size_t>(i)] = true;
  });

  CsvWriter rows_csv(opt.out_dir / "bounds.csv", bounds_csv_header());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& cell = cells[i];
    if (!feasible[i]) {
      rows_csv.write_row({format_index(cell.k), cell.p_label, "", "", format_index(cell.q),
                          format_index(opt.s), format_u64(cell.seed), "0", "", "", "", "", "", "",
                          "", "", "", "", "", "", "", "", "", "", "", "", "", "",
                          "infeasible: l exceeds n_s or threshold undefined"});
      continue;
    }
    const BoundReport& r = reports[i];
    rows_csv.write_row({format_index(r.k), cell.p_label, format_index(r.p_ovs),
                        format_index(r.l), format_index(r.q_pow), format_index(r.s),
                        format_u64(r.seed), "1", r.assumption_ok ? "1" : "0",
                        CsvWriter::cell(r.e_proj_frob), CsvWriter::cell(r.e_proj_sq),
                        CsvWriter::cell(r.tail), CsvWriter::cell(r.eta_det),
                        CsvWriter::cell(r.eta_det_adv), CsvWriter::cell(r.eta_det_adv_sharp),
                        CsvWriter::cell(r.eta_prob), CsvWriter::cell(r.eta_prob_adv),
                        CsvWriter::cell(r.eff_det), CsvWriter::cell(r.eff_det_adv),
                        CsvWriter::cell(r.eff_prob), CsvWriter::cell(r.eff_prob_adv),
                        CsvWriter::cell(r.eff_det_literal), CsvWriter::cell(r.eff_det_adv_literal),
                        CsvWriter::cell(r.eff_prob_literal),
                        CsvWriter::cell(r.eff_prob_adv_literal), CsvWriter::cell(r.quasi_opt_c),
                        CsvWriter::cell(r.failure_prob), CsvWriter::cell(r.basis_seconds),
                        r.note});
  }
  rows_csv.finish();

  // Aggregate per (k, p_ovs_label, q, s) over seeds; the deterministic bound
  // columns average only the rows where the assumption held.
  struct Aggregate {
    Index n_seeds = 0, n_det = 0;
    double e_frob = 0, e_sq = 0, tail = 0;
    double eta_det = 0, eta_det_adv = 0, eta_prob = 0, eta_prob_adv = 0;
    double eff_det = 0, eff_det_adv = 0, eff_prob = 0, eff_prob_adv = 0;
    double seconds = 0;
  };
  std::map<std::tuple<Index, std::string, Index, Index>, Aggregate> groups;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!feasible[i]) continue;
    const BoundReport& r = reports[i];
    auto& g = groups[{r.k, cells[i].p_label, r.q_pow, r.s}];
    g.n_seeds += 1;
    g.e_frob += r.e_proj_frob;
    g.e_sq += r.e_proj_sq;
    g.tail = r.tail;
    g.eta_prob += r.eta_prob;
    g.eta_prob_adv += r.eta_prob_adv;
    g.eff_prob += r.eff_prob;
    g.eff_prob_adv += r.eff_prob_adv;
    g.seconds += r.basis_seconds;
    if (r.assumption_ok) {
      g.n_det += 1;
      g.eta_det += r.eta_det;
      g.eta_det_adv += r.eta_det_adv;
      g.eff_det += r.eff_det;
      g.eff_det_adv += r.eff_det_adv;
    }
  }
  CsvWriter mean_csv(opt.out_dir / "bounds_mean.csv", bounds_mean_csv_header());
  for (const auto& [key, g] : groups) {
    const auto& [k, p_label, q, s] = key;
    const double inv = 1.0 / static_cast<double>(g.n_seeds);
    const double inv_det = g.n_det > 0 ? 1.0 / static_cast<double>(g.n_det)
                                       : std::numeric_limits<double>::quiet_NaN();
    mean_csv.write_row({format_index(k), p_label, format_index(q), format_index(s),
                        format_index(g.n_seeds), format_index(g.n_det),
                        format_double(g.e_frob * inv), format_double(g.e_sq * inv),
                        format_double(g.tail), CsvWriter::cell(g.eta_det * inv_det),
                        CsvWriter::cell(g.eta_det_adv * inv_det), format_double(g.eta_prob * inv),
                        format_double(g.eta_prob_adv * inv), CsvWriter::cell(g.eff_det * inv_det),
                        CsvWriter::cell(g.eff_det_adv * inv_det), format_double(g.eff_prob * inv),
                        format_double(g.eff_prob_adv * inv), format_double(g.seconds * inv)});
  }
  mean_csv.finish();
}

void run_rom(const RomOptions& opt) {
  const KeyValueMap meta = load_key_values(opt.snapshots.parent_path() / "snapshots.meta");
  WaveModelConfig model = model_from_keyvalues(meta);
  model.c = opt.mu_test;
  std::filesystem::create_directories(opt.out_dir);

  const OrthoSymplecticBasis basis = load_basis(opt.basis);
  if (basis.half_dim() != model.dof()) {
    throw ArgumentError("rom: basis dimension " + std::to_string(2 * basis.half_dim()) +
                        " does not match the model dimension " + std::to_string(2 * model.dof()));
  }

  const LinearHamiltonianSystem fom = build_system(model);
  const Vector x0 = initial_state(model);
  const Trajectory full = implicit_midpoint(fom, x0, model.t0, model.t_end(), model.nt);

  const LinearHamiltonianSystem rom = reduce(fom, basis);
  const Vector xr0 = symplectic_inverse(basis) * x0;
  const Trajectory red = implicit_midpoint(rom, xr0, model.t0, model.t_end(), model.nt);

  const Matrix vmat = basis.assembled();
  CsvWriter csv(opt.out_dir / "rom.csv", rom_csv_header());
  const double e0_fom = full.hamiltonian_trace(0);
  const double e0_rom = red.hamiltonian_trace(0);
  for (Index n = 0; n <= model.nt; ++n) {
    const double err = (full.states.col(n) - vmat * red.states.col(n)).norm();
    csv.write_row({format_double(full.times(n)), format_double(err),
                   format_double(full.hamiltonian_trace(n)),
                   format_double(red.hamiltonian_trace(n)),
                   format_double(full.hamiltonian_trace(n) - e0_fom),
                   format_double(red.hamiltonian_trace(n) - e0_rom)});
  }
  csv.finish();
}

namespace {

double parse_cell(const CsvTable& table, std::size_t row, std::size_t col) {
  const std::string& text = table.rows[row][col];
  if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(text);
}

// Sort order for oversampling series: numeric ascending, "threshold" last.
bool p_label_less(const std::string& a, const std::string& b) {
  const bool ta = a == "threshold";
  const bool tb = b == "threshold";
  if (ta != tb) return tb;
  if (ta && tb) return false;
  return std::stoll(a) < std::stoll(b);
}

}  // namespace

void run_figures(const FiguresOptions& opt) {
  const auto mean_path = opt.results_dir / "bounds_mean.csv";
  const auto csvd_path = opt.results_dir / "csvd.csv";
  std::vector<std::string> missing;
  if (!std::filesystem::exists(mean_path)) missing.push_back(mean_path.string());
  if (!std::filesystem::exists(csvd_path)) missing.push_back(csvd_path.string());
  if (!missing.empty()) {
    std::string msg = "figures: missing inputs:";
    for (const auto& m : missing) msg += " " + m;
    throw IoError(msg);
  }
  const CsvTable mean = load_csv(mean_path);
  const CsvTable csvd_table = load_csv(csvd_path);
  std::filesystem::create_directories(opt.out_dir);

  const std::size_t col_k = mean.column("k");
  const std::size_t col_p = mean.column("p_ovs_label");
  const std::size_t col_q = mean.column("q_pow");

  std::set<Index> k_set, q_set;
  std::vector<std::string> p_labels;
  for (std::size_t r = 0; r < mean.rows.size(); ++r) {
    k_set.insert(static_cast<Index>(std::stoll(mean.rows[r][col_k])));
    q_set.insert(static_cast<Index>(std::stoll(mean.rows[r][col_q])));
    const std::string& p = mean.rows[r][col_p];
    if (std::find(p_labels.begin(), p_labels.end(), p) == p_labels.end()) p_labels.push_back(p);
  }
  std::sort(p_labels.begin(), p_labels.end(), p_label_less);

  const auto find_mean_cell = [&](Index k, const std::string& p, Index q,
                                  std::size_t col) -> double {
    for (std::size_t r = 0; r < mean.rows.size(); ++r) {
      if (static_cast<Index>(std::stoll(mean.rows[r][col_k])) == k && mean.rows[r][col_p] == p &&
          static_cast<Index>(std::stoll(mean.rows[r][col_q])) == q) {
        return parse_cell(mean, r, col);
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  const auto csvd_value = [&](Index k, const char* name) -> double {
    const std::size_t ck = csvd_table.column("k");
    const std::size_t cv = csvd_table.column(name);
    for (std::size_t r = 0; r < csvd_table.rows.size(); ++r) {
      if (static_cast<Index>(std::stoll(csvd_table.rows[r][ck])) == k) {
        return parse_cell(csvd_table, r, cv);
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  const auto write_panel = [&](const std::string& filename,
                               const std::vector<std::string>& series_names,
                               const std::function<double(Index, std::size_t)>& value) {
    std::string text = "# k";
    for (const auto& s : series_names) text += " " + s;
    text += "\n";
    for (const Index k : k_set) {
      text += format_index(k);
      for (std::size_t s = 0; s < series_names.size(); ++s) {
        const double v = value(k, s);
        text += " " + (std::isnan(v) ? std::string("nan") : format_double(v));
      }
      text += "\n";
    }
    std::ofstream out(opt.out_dir / filename, std::ios::trunc);
    if (!out) throw IoError("figures: cannot write " + (opt.out_dir / filename).string());
    out << text;
  };

  const std::size_t col_esq = mean.column("e_proj_sq_mean");
  const std::size_t col_sec = mean.column("basis_seconds_mean");
  const std::size_t col_effd = mean.column("eff_det_mean");
  const std::size_t col_effda = mean.column("eff_det_adv_mean");
  const std::size_t col_effp = mean.column("eff_prob_mean");
  const std::size_t col_effpa = mean.column("eff_prob_adv_mean");

  for (const Index q : q_set) {
    const std::string suffix = "_q" + format_index(q) + ".dat";

    std::vector<std::string> err_series = {"csvd"};
    for (const auto& p : p_labels) err_series.push_back("rcsvd_p" + p);
    write_panel("fig1_errors" + suffix, err_series, [&](Index k, std::size_t s) {
      if (s == 0) return csvd_value(k, "e_proj_sq");
      return find_mean_cell(k, p_labels[s - 1], q, col_esq);
    });
    write_panel("fig2_runtime" + suffix, err_series, [&](Index k, std::size_t s) {
      if (s == 0) return csvd_value(k, "svd_seconds");
      return find_mean_cell(k, p_labels[s - 1], q, col_sec);
    });

    std::vector<std::string> det_series, prob_series;
    for (const auto& p : p_labels) det_series.push_back("eff_det_adv_p" + p);
    for (const auto& p : p_labels) det_series.push_back("eff_det_p" + p);
    for (const auto& p : p_labels) prob_series.push_back("eff_prob_adv_p" + p);
    for (const auto& p : p_labels) prob_series.push_back("eff_prob_p" + p);
    const std::size_t np = p_labels.size();
    write_panel("fig3_eff_det" + suffix, det_series, [&](Index k, std::size_t s) {
      const std::string& p = p_labels[s % np];
      return find_mean_cell(k, p, q, s < np ? col_effda : col_effd);
    });
    write_panel("fig4_eff_prob" + suffix, prob_series, [&](Index k, std::size_t s) {
      const std::string& p = p_labels[s % np];
      return find_mean_cell(k, p, q, s < np ? col_effpa : col_effp);
    });
  }
}

}  // namespace symplrom::pipeline
