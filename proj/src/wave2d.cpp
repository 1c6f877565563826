#include "symplrom/wave2d.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <string>

namespace symplrom {

void WaveModelConfig::validate() const {
  if (n_xi1 < 3 || n_xi2 < 3) throw ArgumentError("WaveModelConfig: grid counts must be >= 3");
  if (c <= 0.0) throw ArgumentError("WaveModelConfig: wave speed must be positive");
  if (nt < 1) throw ArgumentError("WaveModelConfig: nt must be >= 1");
  if (xi1_extent <= 0.0 || xi2_extent <= 0.0) {
    throw ArgumentError("WaveModelConfig: domain extents must be positive");
  }
  if (u0_sup <= 0.0) throw ArgumentError("WaveModelConfig: u0_sup must be positive");
}

double bump_h(double s) {
  if (s <= 1.0) return 1.0 - 1.5 * s * s + 0.75 * s * s * s;
  if (s <= 2.0) {
    const double t = 2.0 - s;
    return 0.25 * t * t * t;
  }
  return 0.0;
}

double bump_dh(double s) {
  if (s <= 1.0) return -3.0 * s + 2.25 * s * s;
  if (s <= 2.0) {
    const double t = 2.0 - s;
    return -0.75 * t * t;
  }
  return 0.0;
}

Vector initial_state(const WaveModelConfig& cfg) {
  cfg.validate();
  const Index n = cfg.dof();
  Vector x0(2 * n);
  const double d1 = cfg.dx1();
  const double d2 = cfg.dx2();
  // Interior points ordered xi1-fastest: index = i1 + n_xi1 * i2.
  for (Index i2 = 0; i2 < cfg.n_xi2; ++i2) {
    const double xi2 = static_cast<double>(i2 + 1) * d2;
    const double arg = xi2 + 0.5 * cfg.bump_center_offset - 0.5 * cfg.u0_sup;
    const double s = 4.0 * std::abs(arg / cfg.u0_sup);
    const double u = bump_h(s);
    const double sign = (arg >= 0.0) ? -1.0 : 1.0;
    const double v = sign * (4.0 * cfg.c / cfg.u0_sup) * bump_dh(s);
    for (Index i1 = 0; i1 < cfg.n_xi1; ++i1) {
      const Index idx = i1 + cfg.n_xi1 * i2;
      x0(idx) = u;
      x0(n + idx) = v;
      (void)d1;
    }
  }
  return x0;
}

double LinearHamiltonianSystem::energy(const Vector& x) const {
  return 0.5 * x.dot(hamiltonian * x);
}

LinearHamiltonianSystem build_system(const WaveModelConfig& cfg) {
  cfg.validate();
  const Index n1 = cfg.n_xi1;
  const Index n2 = cfg.n_xi2;
  const Index n = n1 * n2;
  const double w1 = cfg.c * cfg.c / (cfg.dx1() * cfg.dx1());
  const double w2 = cfg.c * cfg.c / (cfg.dx2() * cfg.dx2());

  // Stiffness block mu^2 (D_x1x1 + D_x2x2): 2 on the diagonal and -1 on the
  // neighbours per direction, Dirichlet boundary eliminated.
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(10 * n));
  for (Index i2 = 0; i2 < n2; ++i2) {
    for (Index i1 = 0; i1 < n1; ++i1) {
      const Index idx = i1 + n1 * i2;
      trips.emplace_back(idx, idx, 2.0 * w1 + 2.0 * w2);
      if (i1 > 0) trips.emplace_back(idx, idx - 1, -w1);
      if (i1 < n1 - 1) trips.emplace_back(idx, idx + 1, -w1);
      if (i2 > 0) trips.emplace_back(idx, idx - n1, -w2);
      if (i2 < n2 - 1) trips.emplace_back(idx, idx + n1, -w2);
    }
  }
  // Momentum block is the identity.
  for (Index i = 0; i < n; ++i) trips.emplace_back(n + i, n + i, 1.0);

  LinearHamiltonianSystem sys;
  sys.half_dim = n;
  sys.mu = cfg.c;
  sys.hamiltonian.resize(2 * n, 2 * n);
  sys.hamiltonian.setFromTriplets(trips.begin(), trips.end());
  sys.hamiltonian.makeCompressed();
  return sys;
}

namespace {

// A = J H as a sparse matrix: row block i < N takes row N+i of H, the lower
// block takes -row i.
SparseMatrix poisson_times(const SparseMatrix& h, Index n) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(h.nonZeros()));
  for (int col = 0; col < h.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(h, col); it; ++it) {
      const Index r = it.row();
      if (r >= n) {
        trips.emplace_back(r - n, it.col(), it.value());
      } else {
        trips.emplace_back(r + n, it.col(), -it.value());
      }
    }
  }
  SparseMatrix a(h.rows(), h.cols());
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace

Trajectory implicit_midpoint(const LinearHamiltonianSystem& sys, const Vector& x0, double t0,
                             double t_end, Index nt) {
  if (nt < 1) throw ArgumentError("implicit_midpoint: nt must be >= 1");
  if (x0.size() != 2 * sys.half_dim) {
    throw ArgumentError("implicit_midpoint: state size does not match the system");
  }
  require_finite(x0, "implicit_midpoint");
  const Index dim = 2 * sys.half_dim;
  const double dt = (t_end - t0) / static_cast<double>(nt);

  const SparseMatrix a = poisson_times(sys.hamiltonian, sys.half_dim);
  SparseMatrix eye(dim, dim);
  eye.setIdentity();
  SparseMatrix lhs = eye - (0.5 * dt) * a;
  SparseMatrix rhs = eye + (0.5 * dt) * a;
  lhs.makeCompressed();

  Eigen::SparseLU<SparseMatrix> solver;
  solver.compute(lhs);
  if (solver.info() != Eigen::Success) {
    throw SolverError("implicit_midpoint: factorization of I - dt/2 J H failed");
  }

  Trajectory traj;
  traj.times.resize(nt + 1);
  traj.states.resize(dim, nt + 1);
  traj.hamiltonian_trace.resize(nt + 1);

  Vector x = x0;
  traj.times(0) = t0;
  traj.states.col(0) = x;
  traj.hamiltonian_trace(0) = sys.energy(x);
  for (Index step = 1; step <= nt; ++step) {
    x = solver.solve(rhs * x);
    if (solver.info() != Eigen::Success) {
      throw SolverError("implicit_midpoint: solve failed at step " + std::to_string(step));
    }
    traj.times(step) = t0 + dt * static_cast<double>(step);
    traj.states.col(step) = x;
    traj.hamiltonian_trace(step) = sys.energy(x);
  }
  return traj;
}

LinearHamiltonianSystem reduce(const LinearHamiltonianSystem& sys,
                               const OrthoSymplecticBasis& v) {
  if (v.half_dim() != sys.half_dim) {
    throw ArgumentError("reduce: basis dimension does not match the system");
  }
  const Matrix vmat = v.assembled();
  Matrix hr = vmat.transpose() * (sys.hamiltonian * vmat);
  hr = 0.5 * (hr + hr.transpose());  // kill roundoff asymmetry
  LinearHamiltonianSystem red;
  red.half_dim = v.pair_count();
  red.mu = sys.mu;
  red.hamiltonian = hr.sparseView();
  red.hamiltonian.makeCompressed();
  return red;
}

SnapshotMatrix collect_snapshots(const WaveModelConfig& base, const std::vector<double>& mu_values,
                                 Index nt, bool include_initial) {
  if (mu_values.empty()) throw ArgumentError("collect_snapshots: need at least one parameter");
  if (nt < 1) throw ArgumentError("collect_snapshots: nt must be >= 1");
  const Index n = base.dof();
  Matrix data(2 * n, nt * static_cast<Index>(mu_values.size()));
  Index col = 0;
  for (const double mu : mu_values) {
    WaveModelConfig cfg = base;
    cfg.c = mu;
    cfg.nt = nt;
    const LinearHamiltonianSystem sys = build_system(cfg);
    const Vector x0 = initial_state(cfg);
    const Trajectory traj = implicit_midpoint(sys, x0, cfg.t0, cfg.t_end(), nt);
    // The initial state is recoverable through V^+ x0, so by default only
    // the integrated states enter the snapshot matrix.
    const Index first = include_initial ? 0 : 1;
    data.middleCols(col, nt) = traj.states.middleCols(first, nt);
    col += nt;
  }
  return SnapshotMatrix(std::move(data));
}

}  // namespace symplrom
