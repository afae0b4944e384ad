#ifndef CREDRJ_DIAGNOSTICS_HPP
#define CREDRJ_DIAGNOSTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace credrj {

struct AcfSeries {
  std::vector<int> lags;
  std::vector<double> values;  // values[0] == 1
  double ci_band = 0.0;        // 1.96 / sqrt(N)
};

/// Sample autocorrelation of a mean-centred series up to max_lag.
/// Throws on a constant series (zero variance).
AcfSeries autocorrelation(std::span<const double> series, int max_lag);

struct HpdInterval {
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.0;
};

/// Shortest contiguous window of the sorted samples containing
/// ceil(level * N) points. Requires N >= 20 and level in (0, 1).
HpdInterval hpd_interval(std::vector<double> samples, double level);

/// N / (1 + 2 * sum of autocorrelations), summed while they stay positive;
/// clamped to [1, N].
double effective_sample_size(std::span<const double> series);

struct MultichainDiagnostic {
  double chi_square_stat = 0.0;
  double chi_square_pvalue = 1.0;
  bool chi_square_pass = true;
  double ks_stat = 0.0;
  double ks_critical = 0.0;
  bool ks_pass = true;
};

/// Agreement checks across >= 2 equal-length chains: a chi-square
/// homogeneity test on model-visit counts and the worst pairwise
/// two-sample KS statistic on the log-posterior traces, both at the 5%
/// level. Series are thinned first so the independence assumptions of the
/// reference distributions roughly hold for MCMC output.
MultichainDiagnostic multichain_diagnostic(const std::vector<std::vector<int>>& indicator_chains,
                                           const std::vector<std::vector<double>>& log_post_traces,
                                           std::size_t thin = 25);

/// Regularized upper incomplete gamma Q(s, x); used for chi-square
/// p-values and exposed for tests.
double gamma_q(double s, double x);

}  // namespace credrj

#endif
