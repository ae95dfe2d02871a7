#pragma once

// Manufactured solution, error norms, convergence studies and table output.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quadcurl/solver.hpp"

namespace quadcurl {

/// psi = g(x) g(y), g(t) = sin^3(pi t) = (3 sin(pi t) - sin(3 pi t)) / 4,
/// u = curl psi, f = curl (Laplacian^2 psi + psi).
struct ExactFields {
  double u1, u2;
  double curl;
  double cc1, cc2;  // curl curl u
  double f1, f2;
};

namespace manufactured {
/// n-th derivative of g.
double g(int n, double t);
ExactFields at(double x, double y);
}  // namespace manufactured

struct ErrorNorms {
  double l2 = 0.0;
  double curl = 0.0;
  double curl2 = 0.0;
};

/// Continuous errors of the discrete solution x against the manufactured solution.
ErrorNorms error_norms(const Discretization& d, const Eigen::VectorXd& x, int quad_order);

/// Same for an arbitrary exact field.
using FieldFn = std::function<ExactFields(double, double)>;
ErrorNorms error_norms(const Discretization& d, const Eigen::VectorXd& x, const FieldFn& exact, int quad_order);

struct DiscreteNorms {
  double v = 0.0;  // |||u - u_h|||_V
  double w = 0.0;  // |||curl curl (u - u_h)|||_W
};

/// Mid-line and cell-center norms; rectangular meshes only.
DiscreteNorms discrete_norms(const Discretization& d, const Eigen::VectorXd& x, const FieldFn& exact,
                             int line_points = 10);

/// max over interior Sigma basis functions q of |(u_h, grad q)| / (||u_h|| ||grad q||).
double divergence_consistency(const Discretization& d, const Eigen::VectorXd& x, int quad_order);

/// Rates log2(e[i-1]/e[i]); element 0 is NaN.
std::vector<double> convergence_rates(const std::vector<double>& errors);

struct StudyConfig {
  Family family = Family::New;
  Shape shape = Shape::Rectangle;
  int k = 2;
  std::vector<int> ns{20, 40, 80, 160};
  int quad_order = 12;
  SolverOptions solver;
};

/// Throws InvalidArgument/UnsupportedCombination for an invalid configuration.
void validate(const StudyConfig& c);

struct StudyRow {
  int n = 0;
  double h = 0.0;
  std::size_t dofs = 0;
  ErrorNorms err;
  std::optional<DiscreteNorms> discrete;
  double residual = 0.0;
  double seconds = 0.0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;

  [[nodiscard]] std::vector<double> column(const std::string& name) const;
  [[nodiscard]] std::vector<double> rates(const std::string& name) const { return convergence_rates(column(name)); }
};

/// Runs one mesh level.
StudyRow run_level(const StudyConfig& c, int n);

using ProgressFn = std::function<void(const StudyRow&)>;
StudyResult run_study(const StudyConfig& c, const ProgressFn& progress = {});

std::string format_csv(const StudyResult& r);
std::string format_markdown(const StudyResult& r);

}  // namespace quadcurl
