#include "physarum/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "physarum/error.hpp"

namespace physarum {

namespace {

void check_conductivity(const Graph& g, std::span<const double> conductivity) {
  if (conductivity.size() != g.edge_count()) {
    throw SolveFailed("conductivity vector has " + std::to_string(conductivity.size()) +
                      " entries for " + std::to_string(g.edge_count()) + " edges");
  }
  for (EdgeId e = 0; e < conductivity.size(); ++e) {
    const double d = conductivity[e];
    if (!std::isfinite(d)) {
      throw NonFiniteConductivity("conductivity of edge " + std::to_string(e) + " is not finite");
    }
    if (!(d > 0.0)) {
      throw SolveFailed("conductivity of edge " + std::to_string(e) + " collapsed to " +
                        std::to_string(d));
    }
  }
}

std::vector<double> scatter(const GroundedSystem& sys, const Eigen::VectorXd& reduced,
                            std::size_t node_count) {
  std::vector<double> p(node_count, 0.0);
  for (std::size_t n = 0; n < node_count; ++n) {
    if (n == sys.grounded_node) continue;
    p[n] = reduced[sys.row_of(static_cast<NodeId>(n))];
  }
  return p;
}

}  // namespace

std::vector<double> inflow_targets(const Graph& g, double in0) {
  std::vector<double> b(g.node_count(), 0.0);
  b[g.source()] = in0;
  b[g.sink()] = -in0;
  return b;
}

GroundedSystem assemble_grounded_system(const Graph& g, std::span<const double> conductivity,
                                        double in0) {
  check_conductivity(g, conductivity);
  GroundedSystem sys;
  sys.grounded_node = g.source();
  const auto dim = static_cast<Eigen::Index>(g.node_count() - 1);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    const double c = conductivity[id] / e.weight;
    const bool u_free = e.u != sys.grounded_node;
    const bool v_free = e.v != sys.grounded_node;
    if (u_free) triplets.emplace_back(sys.row_of(e.u), sys.row_of(e.u), c);
    if (v_free) triplets.emplace_back(sys.row_of(e.v), sys.row_of(e.v), c);
    if (u_free && v_free) {
      triplets.emplace_back(sys.row_of(e.u), sys.row_of(e.v), -c);
      triplets.emplace_back(sys.row_of(e.v), sys.row_of(e.u), -c);
    }
  }
  sys.matrix.resize(dim, dim);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());

  const auto b = inflow_targets(g, in0);
  sys.rhs.resize(dim);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (n != sys.grounded_node) sys.rhs[sys.row_of(static_cast<NodeId>(n))] = -b[n];
  }
  return sys;
}

double poisson_residual(const Graph& g, std::span<const double> conductivity,
                        std::span<const double> pressure, double in0) {
  auto balance = inflow_targets(g, in0);
  for (double& x : balance) x = -x;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    const double c = conductivity[id] / e.weight;
    balance[e.v] += c * (pressure[e.u] - pressure[e.v]);
    balance[e.u] += c * (pressure[e.v] - pressure[e.u]);
  }
  double worst = 0.0;
  for (double r : balance) worst = std::max(worst, std::abs(r));
  return std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
}

struct PressureSolver::Workspace {
  Eigen::MatrixXd dense;
  Eigen::LLT<Eigen::MatrixXd> dense_llt;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> sparse_llt;
  bool pattern_analyzed = false;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
};

PressureSolver::PressureSolver(const Graph& g, SolveMethod method)
    : graph_(&g), method_(method), ws_(std::make_unique<Workspace>()) {
  if (method_ == SolveMethod::automatic) {
    const std::size_t dim = g.node_count() - 1;
    if (dim > kDirectLimit) {
      method_ = SolveMethod::conjugate_gradient;
    } else {
      // Nonzeros of the reduced matrix against a dense one.
      const double fill = static_cast<double>(dim + 2 * g.edge_count()) /
                          static_cast<double>(dim * dim);
      method_ = fill > 0.1 ? SolveMethod::dense_cholesky : SolveMethod::sparse_cholesky;
    }
  }
}

PressureSolver::~PressureSolver() = default;
PressureSolver::PressureSolver(PressureSolver&&) noexcept = default;
PressureSolver& PressureSolver::operator=(PressureSolver&&) noexcept = default;

std::vector<double> PressureSolver::solve(std::span<const double> conductivity, double in0,
                                          double tolerance) {
  const Graph& g = *graph_;
  const GroundedSystem sys = assemble_grounded_system(g, conductivity, in0);
  const double bound = tolerance * std::max(1.0, in0);
  Eigen::VectorXd x;

  switch (method_) {
    case SolveMethod::dense_cholesky: {
      ws_->dense = Eigen::MatrixXd(sys.matrix);
      ws_->dense_llt.compute(ws_->dense);
      if (ws_->dense_llt.info() != Eigen::Success) {
        throw SolveFailed("grounded Laplacian is not positive definite");
      }
      x = ws_->dense_llt.solve(sys.rhs);
      // One refinement step recovers accuracy lost to badly scaled conductances.
      if (poisson_residual(g, conductivity, scatter(sys, x, g.node_count()), in0) > bound) {
        x += ws_->dense_llt.solve(sys.rhs - sys.matrix * x);
      }
      break;
    }
    case SolveMethod::sparse_cholesky: {
      if (!ws_->pattern_analyzed) {
        ws_->sparse_llt.analyzePattern(sys.matrix);
        ws_->pattern_analyzed = true;
      }
      ws_->sparse_llt.factorize(sys.matrix);
      if (ws_->sparse_llt.info() != Eigen::Success) {
        throw SolveFailed("grounded Laplacian is not positive definite");
      }
      x = ws_->sparse_llt.solve(sys.rhs);
      if (poisson_residual(g, conductivity, scatter(sys, x, g.node_count()), in0) > bound) {
        x += ws_->sparse_llt.solve(sys.rhs - sys.matrix * x);
      }
      break;
    }
    case SolveMethod::conjugate_gradient:
    case SolveMethod::automatic: {
      auto& cg = ws_->cg;
      cg.setMaxIterations(std::max<Eigen::Index>(10 * sys.dimension(), 1000));
      // Eigen's tolerance is relative to |rhs|; ask for well below the bound.
      cg.setTolerance(std::max(1e-2 * bound / sys.rhs.norm(), 1e-15));
      cg.compute(sys.matrix);
      x = cg.solve(sys.rhs);
      if (cg.info() == Eigen::NumericalIssue) throw SolveFailed("conjugate gradient broke down");
      break;
    }
  }

  auto pressure = scatter(sys, x, g.node_count());
  const double residual = poisson_residual(g, conductivity, pressure, in0);
  if (!(residual <= bound)) {
    throw SolveFailed("pressure residual " + std::to_string(residual) + " exceeds " +
                      std::to_string(bound));
  }
  last_residual_ = residual;
  return pressure;
}

std::vector<double> solve_pressures(const Graph& g, std::span<const double> conductivity,
                                    double in0, double tolerance, SolveMethod method) {
  PressureSolver solver(g, method);
  return solver.solve(conductivity, in0, tolerance);
}

}  // namespace physarum
