#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "symplrom/symplectic.hpp"
#include "symplrom/types.hpp"

namespace symplrom {

using SparseMatrix = Eigen::SparseMatrix<double>;

// 2D linear wave benchmark on (0, xi1_extent) x (0, xi2_extent) with
// homogeneous Dirichlet boundary. n_xi1/n_xi2 count the interior grid points
// per axis, i.e. the unknowns; the full grid including the eliminated
// boundary has two more points per axis.
struct WaveModelConfig {
  Index n_xi1 = 10;
  Index n_xi2 = 60;
  double xi1_extent = 0.5;
  double xi2_extent = 3.0;
  double c = 1.5;                   // wave speed, the parameter mu in [1, 2]
  double u0_sup = 2.0;              // bump width
  double bump_center_offset = 3.0;  // offset term in the initial bump argument
  double t0 = 0.0;
  Index nt = 150;

  double t_end() const { return 2.0 / c; }
  Index dof() const { return n_xi1 * n_xi2; }  // N
  double dx1() const { return xi1_extent / static_cast<double>(n_xi1 + 1); }
  double dx2() const { return xi2_extent / static_cast<double>(n_xi2 + 1); }

  void validate() const;
};

// Piecewise cubic bump: 1 - 3/2 s^2 + 3/4 s^3 on [0,1], (2-s)^3/4 on (1,2],
// zero beyond. C^1 across the joints.
double bump_h(double s);

// Derivative of bump_h.
double bump_dh(double s);

// x0 = [u0 at interior grid points; v0 at interior grid points]; the velocity
// sign flips across the bump center so the data launch a traveling wave.
Vector initial_state(const WaveModelConfig& cfg);

// Linear dynamics xdot = J_{2N} H(mu) x with H symmetric.
struct LinearHamiltonianSystem {
  Index half_dim = 0;         // N
  SparseMatrix hamiltonian;   // H, 2N x 2N
  double mu = 0.0;

  double energy(const Vector& x) const;  // H(x) = x^T H x / 2
};

// H(mu) = blkdiag(mu^2 (D_x1x1 + D_x2x2), I) with three-point central
// difference stencils on the interior grid.
LinearHamiltonianSystem build_system(const WaveModelConfig& cfg);

struct Trajectory {
  Vector times;              // nt + 1 instants
  Matrix states;             // 2N x (nt + 1)
  Vector hamiltonian_trace;  // energy per instant
};

// Implicit midpoint rule x_{n+1} = (I - dt/2 A)^{-1} (I + dt/2 A) x_n with
// A = J H; one sparse factorization reused for every step. Symplectic, so
// the quadratic Hamiltonian is conserved up to solver roundoff.
Trajectory implicit_midpoint(const LinearHamiltonianSystem& sys, const Vector& x0, double t0,
                             double t_end, Index nt);

// Galerkin reduction: H_r = V^T H V (symmetrized), same Hamiltonian form in
// dimension 2k.
LinearHamiltonianSystem reduce(const LinearHamiltonianSystem& sys,
                               const OrthoSymplecticBasis& v);

// Integrates one trajectory per parameter value over [0, 2/mu] with nt steps
// and stacks the states after steps 1..nt (or 0..nt-1 with include_initial)
// column-wise, ordered by (parameter index, time index).
SnapshotMatrix collect_snapshots(const WaveModelConfig& base, const std::vector<double>& mu_values,
                                 Index nt, bool include_initial = false);

}  // namespace symplrom
