#include "credrj/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace credrj {

AcfSeries autocorrelation(std::span<const double> series, int max_lag) {
  const std::size_t n = series.size();
  if (max_lag < 0) throw std::invalid_argument("autocorrelation: max_lag must be >= 0");
  if (n <= static_cast<std::size_t>(max_lag))
    throw std::invalid_argument("autocorrelation: series must be longer than max_lag");
  double mean = 0.0, lo = series[0], hi = series[0];
  for (double x : series) {
    mean += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  mean /= static_cast<double>(n);
  if (lo == hi) throw std::invalid_argument("autocorrelation: constant series");
  double denom = 0.0;
  for (double x : series) {
    const double d = x - mean;
    denom += d * d;
  }
  if (denom == 0.0) throw std::invalid_argument("autocorrelation: constant series");

  AcfSeries out;
  out.ci_band = 1.96 / std::sqrt(static_cast<double>(n));
  out.lags.reserve(static_cast<std::size_t>(max_lag) + 1);
  out.values.reserve(static_cast<std::size_t>(max_lag) + 1);
  out.lags.push_back(0);
  out.values.push_back(1.0);
  for (int k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t)
      num += (series[t] - mean) * (series[t + static_cast<std::size_t>(k)] - mean);
    out.lags.push_back(k);
    out.values.push_back(num / denom);
  }
  return out;
}

HpdInterval hpd_interval(std::vector<double> samples, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("hpd_interval: level must be in (0, 1)");
  if (samples.size() < 20) throw std::invalid_argument("hpd_interval: need at least 20 samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  auto window = static_cast<std::size_t>(std::ceil(level * static_cast<double>(n)));
  window = std::min(std::max<std::size_t>(window, 1), n);
  std::size_t best = 0;
  double best_width = samples[window - 1] - samples[0];
  for (std::size_t i = 1; i + window <= n; ++i) {
    const double width = samples[i + window - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {samples[best], samples[best + window - 1], level};
}

double effective_sample_size(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) return static_cast<double>(n);
  const int max_lag = static_cast<int>(std::min<std::size_t>(n - 1, 2000));
  const AcfSeries acf = autocorrelation(series, max_lag);
  double sum = 0.0;
  for (int k = 1; k <= max_lag; ++k) {
    const double v = acf.values[static_cast<std::size_t>(k)];
    if (v <= 0.0) break;
    sum += v;
  }
  const double ess = static_cast<double>(n) / (1.0 + 2.0 * sum);
  return std::clamp(ess, 1.0, static_cast<double>(n));
}

namespace {

// Regularized lower incomplete gamma by series expansion (x < s + 1).
double gamma_p_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (s + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized upper incomplete gamma by continued fraction (x >= s + 1).
double gamma_q_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 1000; ++k) {
    const double an = -static_cast<double>(k) * (static_cast<double>(k) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double stat = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    stat = std::max(stat, std::abs(static_cast<double>(ia) / na -
                                   static_cast<double>(ib) / nb));
  }
  return stat;
}

template <typename T>
std::vector<T> thin_series(const std::vector<T>& series, std::size_t thin) {
  std::vector<T> out;
  out.reserve(series.size() / thin + 1);
  for (std::size_t t = 0; t < series.size(); t += thin) out.push_back(series[t]);
  return out;
}

}  // namespace

double gamma_q(double s, double x) {
  if (!(s > 0.0) || x < 0.0) throw std::domain_error("gamma_q: need s > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  return x < s + 1.0 ? 1.0 - gamma_p_series(s, x) : gamma_q_cf(s, x);
}

MultichainDiagnostic multichain_diagnostic(const std::vector<std::vector<int>>& indicator_chains,
                                           const std::vector<std::vector<double>>& log_post_traces,
                                           std::size_t thin) {
  const std::size_t chains = indicator_chains.size();
  if (chains < 2) throw std::invalid_argument("multichain_diagnostic: need at least 2 chains");
  if (log_post_traces.size() != chains)
    throw std::invalid_argument("multichain_diagnostic: one log-posterior trace per chain");
  if (thin < 1) thin = 1;
  const std::size_t len = indicator_chains[0].size();
  for (std::size_t c = 0; c < chains; ++c)
    if (indicator_chains[c].size() != len || log_post_traces[c].size() != len)
      throw std::invalid_argument("multichain_diagnostic: chains must have equal length");
  if (len == 0) throw std::invalid_argument("multichain_diagnostic: empty chains");

  MultichainDiagnostic out;

  // The 5% level applies to the diagnostic as a whole: Bonferroni split
  // across the chi-square test and the KS chain pairs.
  const double alpha = 0.05;
  const std::size_t pairs = chains * (chains - 1) / 2;
  const double alpha_each = alpha / static_cast<double>(1 + pairs);

  // Visit-count homogeneity across chains.
  std::vector<std::vector<int>> thinned_ind;
  for (const auto& chain : indicator_chains) thinned_ind.push_back(thin_series(chain, thin));
  std::vector<std::array<double, 3>> counts(chains, {0.0, 0.0, 0.0});
  std::array<double, 3> pooled{0.0, 0.0, 0.0};
  double grand = 0.0;
  for (std::size_t c = 0; c < chains; ++c)
    for (int k : thinned_ind[c]) {
      if (k < 0 || k > 2)
        throw std::invalid_argument("multichain_diagnostic: indicator values must be 0..2");
      counts[c][static_cast<std::size_t>(k)] += 1.0;
      pooled[static_cast<std::size_t>(k)] += 1.0;
      grand += 1.0;
    }
  int models_present = 0;
  for (double p : pooled)
    if (p > 0.0) ++models_present;
  if (models_present >= 2) {
    double stat = 0.0;
    for (std::size_t c = 0; c < chains; ++c) {
      double row_total = 0.0;
      for (double x : counts[c]) row_total += x;
      for (std::size_t k = 0; k < 3; ++k) {
        if (pooled[k] == 0.0) continue;
        const double expected = row_total * pooled[k] / grand;
        const double d = counts[c][k] - expected;
        stat += d * d / expected;
      }
    }
    const double df = static_cast<double>((chains - 1) * static_cast<std::size_t>(models_present - 1));
    out.chi_square_stat = stat;
    out.chi_square_pvalue = gamma_q(0.5 * df, 0.5 * stat);
    out.chi_square_pass = out.chi_square_pvalue >= alpha_each;
  }

  // Worst pairwise KS on the thinned log-posterior traces.
  std::vector<std::vector<double>> thinned_lp;
  for (const auto& trace : log_post_traces) thinned_lp.push_back(thin_series(trace, thin));
  const double nn = static_cast<double>(thinned_lp[0].size());
  // Asymptotic Kolmogorov tail: Q(lambda) = 2 exp(-2 lambda^2).
  const double lambda = std::sqrt(-0.5 * std::log(0.5 * alpha_each));
  out.ks_critical = lambda * std::sqrt((nn + nn) / (nn * nn));
  for (std::size_t c1 = 0; c1 < chains; ++c1)
    for (std::size_t c2 = c1 + 1; c2 < chains; ++c2)
      out.ks_stat = std::max(out.ks_stat, ks_statistic(thinned_lp[c1], thinned_lp[c2]));
  out.ks_pass = out.ks_stat < out.ks_critical;
  return out;
}

}  // namespace credrj
