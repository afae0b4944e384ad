#include "credrj/conditionals.hpp"

#include <stdexcept>

namespace credrj {

namespace {

void check_nonneg_sigma(double sigma) {
  if (!(sigma >= 0.0)) throw std::domain_error("conditional: sigma must be >= 0");
}

NormalParams from_precision(double numerator, double precision) {
  if (!(precision > 0.0)) throw std::domain_error("conditional: non-positive precision");
  return {numerator / precision, 1.0 / precision};
}

}  // namespace

NormalParams cond_alpha_centred(const LossPanel& panel, std::size_t i, double mu,
                                const std::vector<double>& beta, double tau_alpha, double sigma) {
  if (i >= panel.rows()) throw std::invalid_argument("cond_alpha_centred: row index out of range");
  if (beta.size() != panel.cols())
    throw std::invalid_argument("cond_alpha_centred: beta length mismatch");
  check_nonneg_sigma(sigma);
  double data = panel.row_sum_er(i);
  for (std::size_t j = 0; j < panel.cols(); ++j) data -= beta[j] * panel.sum_e(i, j);
  const double precision = tau_alpha + sigma * panel.row_sum_e(i);
  return from_precision(0.5 * tau_alpha * mu + sigma * data, precision);
}

NormalParams cond_beta_centred(const LossPanel& panel, std::size_t j, double mu,
                               const std::vector<double>& alpha, double tau_beta, double sigma) {
  if (j >= panel.cols()) throw std::invalid_argument("cond_beta_centred: column index out of range");
  if (alpha.size() != panel.rows())
    throw std::invalid_argument("cond_beta_centred: alpha length mismatch");
  check_nonneg_sigma(sigma);
  double data = panel.col_sum_er(j);
  for (std::size_t i = 0; i < panel.rows(); ++i) data -= alpha[i] * panel.sum_e(i, j);
  const double precision = tau_beta + sigma * panel.col_sum_e(j);
  return from_precision(0.5 * tau_beta * mu + sigma * data, precision);
}

NormalParams cond_mu_centred(const std::vector<double>& alpha, const std::vector<double>& beta,
                             double tau_alpha, double tau_beta, double c) {
  if (alpha.empty() || beta.empty())
    throw std::invalid_argument("cond_mu_centred: effect vectors must be non-empty");
  double sum_alpha = 0.0, sum_beta = 0.0;
  for (double x : alpha) sum_alpha += x;
  for (double x : beta) sum_beta += x;
  const double m = static_cast<double>(alpha.size());
  const double n = static_cast<double>(beta.size());
  const double precision = c + 0.25 * m * tau_alpha + 0.25 * n * tau_beta;
  return from_precision(0.5 * tau_alpha * sum_alpha + 0.5 * tau_beta * sum_beta, precision);
}

GammaParams cond_tau_alpha(const std::vector<double>& alpha, double mu, double a, double b) {
  double ss = 0.0;
  for (double x : alpha) {
    const double d = x - 0.5 * mu;
    ss += d * d;
  }
  return {a + 0.5 * static_cast<double>(alpha.size()), b + 0.5 * ss};
}

GammaParams cond_tau_beta(const std::vector<double>& beta, double mu, double a, double b) {
  return cond_tau_alpha(beta, mu, a, b);
}

GammaParams cond_sigma(const LossPanel& panel, ModelId model, const ParamVector& params,
                       double a, double b) {
  if (params.alpha.size() != panel.rows() || params.beta.size() != panel.cols())
    throw std::invalid_argument("cond_sigma: params/panel dimension mismatch");
  double rss = 0.0;
  for (std::size_t i = 0; i < panel.rows(); ++i) {
    for (std::size_t j = 0; j < panel.cols(); ++j) {
      if (panel.cell_count(i, j) == 0) continue;
      const double fit = fit_value(model, params, i, j);
      for (std::size_t t = 0; t < panel.reps(); ++t) {
        if (!panel.active(i, j, t)) continue;
        const double r = panel.ratio(i, j, t) - fit;
        rss += panel.exposure(i, j, t) * r * r;
      }
    }
  }
  return {a + 0.5 * static_cast<double>(panel.active_count()), b + 0.5 * rss};
}

NormalParams cond_mu_noncentred(const LossPanel& panel, const std::vector<double>& alpha,
                                const std::vector<double>& beta, double sigma, double tau_mu) {
  if (alpha.size() != panel.rows() || beta.size() != panel.cols())
    throw std::invalid_argument("cond_mu_noncentred: effect length mismatch");
  check_nonneg_sigma(sigma);
  double data = panel.total_sum_er();
  for (std::size_t i = 0; i < panel.rows(); ++i) data -= alpha[i] * panel.row_sum_e(i);
  for (std::size_t j = 0; j < panel.cols(); ++j) data -= beta[j] * panel.col_sum_e(j);
  const double precision = tau_mu + sigma * panel.total_sum_e();
  return from_precision(sigma * data, precision);
}

MvnDiagParams cond_alpha_block(const LossPanel& panel, double mu,
                               const std::vector<double>& beta, double sigma, double tau_alpha0) {
  if (beta.size() != panel.cols())
    throw std::invalid_argument("cond_alpha_block: beta length mismatch");
  check_nonneg_sigma(sigma);
  const std::size_t m = panel.rows();
  MvnDiagParams out;
  out.mean.resize(m - 1);
  out.precision_diag.resize(m - 1);
  for (std::size_t i = 1; i < m; ++i) {
    double data = panel.row_sum_er(i) - mu * panel.row_sum_e(i);
    for (std::size_t j = 0; j < panel.cols(); ++j) data -= beta[j] * panel.sum_e(i, j);
    const double precision = tau_alpha0 + sigma * panel.row_sum_e(i);
    if (!(precision > 0.0)) throw std::domain_error("cond_alpha_block: non-positive precision");
    out.precision_diag[i - 1] = precision;
    out.mean[i - 1] = sigma * data / precision;
  }
  return out;
}

MvnDiagParams cond_beta_block(const LossPanel& panel, double mu,
                              const std::vector<double>& alpha, double sigma, double tau_beta0) {
  if (alpha.size() != panel.rows())
    throw std::invalid_argument("cond_beta_block: alpha length mismatch");
  check_nonneg_sigma(sigma);
  const std::size_t n = panel.cols();
  MvnDiagParams out;
  out.mean.resize(n - 1);
  out.precision_diag.resize(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    double data = panel.col_sum_er(j) - mu * panel.col_sum_e(j);
    for (std::size_t i = 0; i < panel.rows(); ++i) data -= alpha[i] * panel.sum_e(i, j);
    const double precision = tau_beta0 + sigma * panel.col_sum_e(j);
    if (!(precision > 0.0)) throw std::domain_error("cond_beta_block: non-positive precision");
    out.precision_diag[j - 1] = precision;
    out.mean[j - 1] = sigma * data / precision;
  }
  return out;
}

}  // namespace credrj
