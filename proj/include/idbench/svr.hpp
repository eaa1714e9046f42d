#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

// Epsilon support vector regression with an RBF kernel.
namespace idbench::svr {

struct SvrConfig {
  double c = 1.0;
  double epsilon = 0.1;
  double tolerance = 1e-3;
  std::size_t max_iterations = 10000;

  void validate() const;  // throws ConfigError
};

struct Model {
  double c = 1.0;
  double epsilon = 0.1;
  double tolerance = 1e-3;
  double gamma = 1.0;
  std::size_t input_dim = 0;
  std::vector<std::size_t> kept;  // input features with nonzero spread
  std::vector<double> mean;       // per kept feature
  std::vector<double> stddev;
  std::vector<std::vector<double>> support;  // standardized support vectors
  std::vector<double> coef;                  // alpha - alpha*, |coef| <= c
  double rho = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double kkt_gap = 0.0;  // max violating pair gap at exit

  // Kernel expansion sum_i coef_i k(s_i, x) - rho; not clamped.
  double predict(std::span<const double> x) const;
  std::vector<double> standardize(std::span<const double> x) const;
};

// Standardizes the features (population stddev), drops constant ones, sets
// gamma = 1 / kept features and solves the dual with second-order working
// set selection. Throws ValidationError for fewer than two rows, ragged rows
// or non-finite values.
Model fit(const std::vector<std::vector<double>>& x, std::span<const double> y, const SvrConfig& cfg = {});

std::string to_json(const Model& m);
Model model_from_json(std::string_view text);

}  // namespace idbench::svr
