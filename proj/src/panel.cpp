#include "credrj/panel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace credrj {

LossPanel::LossPanel(std::size_t m, std::size_t n, std::size_t s,
                     std::vector<double> ratio, std::vector<double> exposure)
    : m_(m), n_(n), s_(s), ratio_(std::move(ratio)), exposure_(std::move(exposure)) {
  if (m_ < 2 || n_ < 2 || s_ < 1)
    throw std::invalid_argument("LossPanel: need m >= 2, n >= 2, s >= 1");
  const std::size_t cells = m_ * n_ * s_;
  if (ratio_.size() != cells || exposure_.size() != cells)
    throw std::invalid_argument("LossPanel: ratio/exposure size does not match m*n*s");

  se_.assign(m_ * n_, 0.0);
  ser_.assign(m_ * n_, 0.0);
  serr_.assign(m_ * n_, 0.0);
  sle_.assign(m_ * n_, 0.0);
  count_.assign(m_ * n_, 0);
  col_count_.assign(n_, 0);
  row_se_.assign(m_, 0.0);
  col_se_.assign(n_, 0.0);
  row_ser_.assign(m_, 0.0);
  col_ser_.assign(n_, 0.0);

  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t ij = i * n_ + j;
      for (std::size_t t = 0; t < s_; ++t) {
        const std::size_t c = idx(i, j, t);
        const double e = exposure_[c];
        if (!(e >= 0.0) || !std::isfinite(e))
          throw std::invalid_argument("LossPanel: exposure must be finite and >= 0 at cell (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(t) + ")");
        if (e == 0.0) {
          ratio_[c] = 0.0;  // inactive; value is never read
          continue;
        }
        const double r = ratio_[c];
        if (!std::isfinite(r))
          throw std::invalid_argument("LossPanel: non-finite loss ratio at active cell (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(t) + ")");
        se_[ij] += e;
        ser_[ij] += e * r;
        serr_[ij] += e * r * r;
        sle_[ij] += std::log(e);
        ++count_[ij];
        ++col_count_[j];
        ++active_count_;
      }
      row_se_[i] += se_[ij];
      col_se_[j] += se_[ij];
      row_ser_[i] += ser_[ij];
      col_ser_[j] += ser_[ij];
      total_se_ += se_[ij];
      total_ser_ += ser_[ij];
      total_serr_ += serr_[ij];
      total_sle_ += sle_[ij];
    }
  }
}

}  // namespace credrj
