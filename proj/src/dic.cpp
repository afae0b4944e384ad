#include "credrj/dic.hpp"

#include <algorithm>
#include <stdexcept>

#include "credrj/densities.hpp"

namespace credrj {

namespace {

double central_value(std::vector<double>& draws, CentralTendency central) {
  if (central == CentralTendency::mean) {
    double sum = 0.0;
    for (double x : draws) sum += x;
    return sum / static_cast<double>(draws.size());
  }
  const std::size_t n = draws.size();
  std::sort(draws.begin(), draws.end());
  return n % 2 == 1 ? draws[n / 2] : 0.5 * (draws[n / 2 - 1] + draws[n / 2]);
}

}  // namespace

DicReport compute_dic(const Chain& chain, const LossPanel& panel, ModelId model,
                      CentralTendency central) {
  if (chain.empty()) throw std::invalid_argument("compute_dic: empty chain");
  const std::size_t m = panel.rows();
  const std::size_t n = panel.cols();
  const std::size_t draws = chain.size();

  ParamVector centre;
  centre.alpha.assign(m, 0.0);
  centre.beta.assign(n, 0.0);
  std::vector<double> buf(draws);
  auto fill = [&](auto getter) {
    for (std::size_t r = 0; r < draws; ++r) buf[r] = getter(chain[r].params);
    return central_value(buf, central);
  };

  double mean_dev = 0.0;
  for (const auto& rec : chain) {
    if (rec.model != model) throw std::invalid_argument("compute_dic: mixed-model chain");
    mean_dev += rec.deviance;
  }
  mean_dev /= static_cast<double>(draws);

  centre.mu = fill([](const ParamVector& p) { return p.mu; });
  centre.sigma = fill([](const ParamVector& p) { return p.sigma; });
  for (std::size_t i = 0; i < m; ++i)
    centre.alpha[i] = fill([i](const ParamVector& p) { return p.alpha[i]; });
  for (std::size_t j = 0; j < n; ++j)
    centre.beta[j] = fill([j](const ParamVector& p) { return p.beta[j]; });
  if (model == ModelId::K_centred) {
    centre.tau_alpha = fill([](const ParamVector& p) { return p.tau_alpha; });
    centre.tau_beta = fill([](const ParamVector& p) { return p.tau_beta; });
  }

  DicReport report;
  report.model = model;
  report.mean_deviance = mean_dev;
  report.deviance_at_mean = deviance(panel, model, centre);
  report.p_d = report.mean_deviance - report.deviance_at_mean;
  report.dic = report.deviance_at_mean + 2.0 * report.p_d;
  return report;
}

std::vector<DicReport> rank_models(std::vector<DicReport> reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const DicReport& a, const DicReport& b) {
    if (a.dic != b.dic) return a.dic < b.dic;
    if (a.p_d != b.p_d) return a.p_d < b.p_d;
    return static_cast<int>(a.model) < static_cast<int>(b.model);
  });
  return reports;
}

}  // namespace credrj
