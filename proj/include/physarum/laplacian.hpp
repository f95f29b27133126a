#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "physarum/graph.hpp"

namespace physarum {

/// Network Poisson equation with the source grounded at pressure 0.
///
/// For every node j the balance reads
///
///   sum_i g_ij (p_i - p_j) = b_j,   g_ij = D_ij / L_ij,
///   b_source = +IN0, b_sink = -IN0, b_j = 0 otherwise.
///
/// Dropping the source row and column and negating gives `matrix * p = rhs`
/// with `matrix` the reduced weighted Laplacian (positive diagonal,
/// non-positive off-diagonals) and `rhs = -b` over the remaining nodes.
struct GroundedSystem {
  NodeId grounded_node = 0;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;

  /// Row of `node` in the reduced system. `node` must not be the grounded one.
  [[nodiscard]] Eigen::Index row_of(NodeId node) const noexcept {
    return node < grounded_node ? node : node - 1;
  }
  [[nodiscard]] Eigen::Index dimension() const noexcept { return rhs.size(); }
};

/// Throws NonFiniteConductivity for NaN/inf entries and SolveFailed for
/// collapsed (<= 0) ones; `conductivity` is indexed by EdgeId.
GroundedSystem assemble_grounded_system(const Graph& g, std::span<const double> conductivity,
                                        double in0);

/// Right-hand side b of the balance equations over all nodes.
std::vector<double> inflow_targets(const Graph& g, double in0);

/// max_j |sum_i g_ij (p_i - p_j) - b_j| over every node, grounded one included.
double poisson_residual(const Graph& g, std::span<const double> conductivity,
                        std::span<const double> pressure, double in0);

enum class SolveMethod {
  /// Dense Cholesky for dense systems, sparse Cholesky for sparse ones up to
  /// kDirectLimit unknowns, preconditioned conjugate gradient beyond.
  automatic,
  dense_cholesky,
  sparse_cholesky,
  conjugate_gradient,
};

inline constexpr std::size_t kDirectLimit = 2000;

/// Reusable pressure solver for one graph. The sparsity pattern and the
/// factorization workspace persist across calls; not thread-safe.
class PressureSolver {
 public:
  explicit PressureSolver(const Graph& g, SolveMethod method = SolveMethod::automatic);
  ~PressureSolver();
  PressureSolver(PressureSolver&&) noexcept;
  PressureSolver& operator=(PressureSolver&&) noexcept;

  /// Node pressures (length node_count, source entry exactly 0) satisfying
  /// poisson_residual <= tolerance * max(1, in0). Throws SolveFailed when the
  /// factorization breaks down or the residual bound cannot be met.
  std::vector<double> solve(std::span<const double> conductivity, double in0, double tolerance);

  /// Residual of the most recent successful solve.
  [[nodiscard]] double last_residual() const noexcept { return last_residual_; }
  [[nodiscard]] SolveMethod method() const noexcept { return method_; }

 private:
  struct Workspace;

  const Graph* graph_;
  SolveMethod method_;
  double last_residual_ = 0.0;
  std::unique_ptr<Workspace> ws_;
};

/// One-shot convenience wrapper over PressureSolver.
std::vector<double> solve_pressures(const Graph& g, std::span<const double> conductivity,
                                    double in0, double tolerance,
                                    SolveMethod method = SolveMethod::automatic);

}  // namespace physarum
