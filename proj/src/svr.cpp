#include "idbench/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "idbench/errors.hpp"

namespace idbench::svr {

void SvrConfig::validate() const {
  if (!(c > 0.0)) throw ConfigError("C must be positive");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
}

namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    d += t * t;
  }
  return std::exp(-gamma * d);
}

constexpr double kTau = 1e-12;

}  // namespace

std::vector<double> Model::standardize(std::span<const double> x) const {
  if (x.size() != input_dim)
    throw ValidationError("expected " + std::to_string(input_dim) + " features, got " + std::to_string(x.size()));
  std::vector<double> z(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) z[k] = (x[kept[k]] - mean[k]) / stddev[k];
  return z;
}

double Model::predict(std::span<const double> x) const {
  const std::vector<double> z = standardize(x);
  double f = -rho;
  for (std::size_t i = 0; i < support.size(); ++i) f += coef[i] * rbf(support[i], z, gamma);
  return f;
}

Model fit(const std::vector<std::vector<double>>& x, std::span<const double> y, const SvrConfig& cfg) {
  cfg.validate();
  const std::size_t l = x.size();
  if (l < 2) throw ValidationError("fit needs at least two training rows");
  if (y.size() != l) throw ValidationError("feature and target counts differ");
  const std::size_t dim = x[0].size();
  for (std::size_t i = 0; i < l; ++i) {
    if (x[i].size() != dim) throw ValidationError("ragged feature rows");
    if (!std::isfinite(y[i])) throw ValidationError("non-finite target");
    for (double v : x[i])
      if (!std::isfinite(v)) throw ValidationError("non-finite feature");
  }

  Model m;
  m.c = cfg.c;
  m.epsilon = cfg.epsilon;
  m.tolerance = cfg.tolerance;
  m.input_dim = dim;
  for (std::size_t k = 0; k < dim; ++k) {
    double mu = 0.0;
    for (const auto& row : x) mu += row[k];
    mu /= static_cast<double>(l);
    double var = 0.0;
    for (const auto& row : x) var += (row[k] - mu) * (row[k] - mu);
    const double sd = std::sqrt(var / static_cast<double>(l));
    if (sd > 1e-12 * std::max(1.0, std::abs(mu))) {
      m.kept.push_back(k);
      m.mean.push_back(mu);
      m.stddev.push_back(sd);
    }
  }
  m.gamma = m.kept.empty() ? 1.0 : 1.0 / static_cast<double>(m.kept.size());

  std::vector<std::vector<double>> z(l);
  for (std::size_t i = 0; i < l; ++i) z[i] = m.standardize(x[i]);
  std::vector<double> kmat(l * l);
  for (std::size_t i = 0; i < l; ++i) {
    kmat[i * l + i] = 1.0;
    for (std::size_t j = i + 1; j < l; ++j) kmat[i * l + j] = kmat[j * l + i] = rbf(z[i], z[j], m.gamma);
  }

  // Variables 0..l-1 carry alpha (sign +1), l..2l-1 carry alpha* (sign -1).
  const std::size_t n = 2 * l;
  const double C = cfg.c;
  std::vector<double> a(n, 0.0), g(n), sign(n);
  for (std::size_t t = 0; t < l; ++t) {
    sign[t] = 1.0;
    sign[t + l] = -1.0;
    g[t] = cfg.epsilon - y[t];
    g[t + l] = cfg.epsilon + y[t];
  }
  auto q = [&](std::size_t i, std::size_t j) { return sign[i] * sign[j] * kmat[(i % l) * l + (j % l)]; };
  auto at_upper = [&](std::size_t t) { return a[t] >= C; };
  auto at_lower = [&](std::size_t t) { return a[t] <= 0.0; };

  std::size_t iter = 0;
  double gap = 0.0;
  for (;;) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (sign[t] > 0 ? !at_upper(t) : !at_lower(t)) {
        const double v = -sign[t] * g[t];
        if (v >= gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n && i < n; ++t) {
      if (sign[t] > 0 ? at_lower(t) : at_upper(t)) continue;
      const double v = sign[t] * g[t];
      gmax2 = std::max(gmax2, v);
      const double diff = gmax + v;
      if (diff > 0.0) {
        double quad = q(i, i) + q(t, t) - 2.0 * sign[i] * sign[t] * q(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -diff * diff / quad;
        if (obj <= best) {
          best = obj;
          j = t;
        }
      }
    }
    gap = i < n ? gmax + gmax2 : 0.0;
    if (i == n || j == n || gap < cfg.tolerance) {
      m.converged = true;
      break;
    }
    if (iter >= cfg.max_iterations) break;
    ++iter;

    const double old_i = a[i], old_j = a[j];
    if (sign[i] != sign[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-g[i] - g[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = diff;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > C) {
          a[i] = C;
          a[j] = C - diff;
        }
      } else if (a[j] > C) {
        a[j] = C;
        a[i] = C + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (g[i] - g[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > C) {
        if (a[i] > C) {
          a[i] = C;
          a[j] = sum - C;
        }
      } else if (a[j] < 0.0) {
        a[j] = 0.0;
        a[i] = sum;
      }
      if (sum > C) {
        if (a[j] > C) {
          a[j] = C;
          a[i] = sum - C;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = sum;
      }
    }
    const double di = a[i] - old_i, dj = a[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) g[t] += q(i, t) * di + q(j, t) * dj;
  }
  m.iterations = iter;
  m.kkt_gap = gap;

  double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = sign[t] * g[t];
    if (at_upper(t)) {
      if (sign[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (sign[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  m.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;

  for (std::size_t t = 0; t < l; ++t) {
    const double beta = a[t] - a[t + l];
    if (beta != 0.0) {
      m.support.push_back(z[t]);
      m.coef.push_back(beta);
    }
  }
  return m;
}

std::string to_json(const Model& m) {
  nlohmann::json j = {
      {"kind", "epsilon-svr"}, {"kernel", "rbf"},          {"c", m.c},
      {"epsilon", m.epsilon},  {"tolerance", m.tolerance}, {"gamma", m.gamma},
      {"input_dim", m.input_dim}, {"kept", m.kept},        {"mean", m.mean},
      {"stddev", m.stddev},    {"support", m.support},     {"coef", m.coef},
      {"rho", m.rho},          {"converged", m.converged}, {"iterations", m.iterations},
      {"kkt_gap", m.kkt_gap},
  };
  return j.dump(2);
}

Model model_from_json(std::string_view text) {
  Model m;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.at("kind") != "epsilon-svr" || j.at("kernel") != "rbf") throw ParseError("not an RBF epsilon-SVR model", 0);
    j.at("c").get_to(m.c);
    j.at("epsilon").get_to(m.epsilon);
    j.at("tolerance").get_to(m.tolerance);
    j.at("gamma").get_to(m.gamma);
    j.at("input_dim").get_to(m.input_dim);
    j.at("kept").get_to(m.kept);
    j.at("mean").get_to(m.mean);
    j.at("stddev").get_to(m.stddev);
    j.at("support").get_to(m.support);
    j.at("coef").get_to(m.coef);
    j.at("rho").get_to(m.rho);
    j.at("converged").get_to(m.converged);
    j.at("iterations").get_to(m.iterations);
    j.at("kkt_gap").get_to(m.kkt_gap);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  if (m.kept.size() != m.mean.size() || m.kept.size() != m.stddev.size() || m.support.size() != m.coef.size())
    throw ParseError("model JSON: inconsistent array lengths", 0);
  for (std::size_t k : m.kept)
    if (k >= m.input_dim) throw ParseError("model JSON: kept index out of range", 0);
  for (const auto& s : m.support)
    if (s.size() != m.kept.size()) throw ParseError("model JSON: support vector dimension", 0);
  return m;
}

}  // namespace idbench::svr
