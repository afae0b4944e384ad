#ifndef CREDRJ_PANEL_HPP
#define CREDRJ_PANEL_HPP

#include <cstddef>
#include <vector>

namespace credrj {

/// Loss-ratio panel on an m x n x s grid (row factors x column factors x
/// replications). A cell is active iff its exposure is positive; inactive
/// cells carry no information and never enter any sum.
///
/// Per-(i,j) sufficient statistics over active replications are cached at
/// construction: sum_e = sum_t E, sum_er = sum_t E*R, sum_err = sum_t E*R^2,
/// sum_log_e = sum_t log E, and the active count.
class LossPanel {
 public:
  LossPanel(std::size_t m, std::size_t n, std::size_t s,
            std::vector<double> ratio, std::vector<double> exposure);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t reps() const { return s_; }

  double ratio(std::size_t i, std::size_t j, std::size_t t) const {
    return ratio_[idx(i, j, t)];
  }
  double exposure(std::size_t i, std::size_t j, std::size_t t) const {
    return exposure_[idx(i, j, t)];
  }
  bool active(std::size_t i, std::size_t j, std::size_t t) const {
    return exposure_[idx(i, j, t)] > 0.0;
  }

  std::size_t active_count() const { return active_count_; }
  std::size_t cell_count(std::size_t i, std::size_t j) const { return count_[i * n_ + j]; }

  double sum_e(std::size_t i, std::size_t j) const { return se_[i * n_ + j]; }
  double sum_er(std::size_t i, std::size_t j) const { return ser_[i * n_ + j]; }
  double sum_err(std::size_t i, std::size_t j) const { return serr_[i * n_ + j]; }
  double sum_log_e(std::size_t i, std::size_t j) const { return sle_[i * n_ + j]; }

  double row_sum_e(std::size_t i) const { return row_se_[i]; }
  double col_sum_e(std::size_t j) const { return col_se_[j]; }
  double row_sum_er(std::size_t i) const { return row_ser_[i]; }
  double col_sum_er(std::size_t j) const { return col_ser_[j]; }
  double total_sum_e() const { return total_se_; }
  double total_sum_er() const { return total_ser_; }
  double total_sum_err() const { return total_serr_; }
  double total_sum_log_e() const { return total_sle_; }

  bool col_all_inactive(std::size_t j) const { return col_count_[j] == 0; }

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t t) const {
    return (i * n_ + j) * s_ + t;
  }

  std::size_t m_, n_, s_;
  std::vector<double> ratio_, exposure_;
  std::vector<double> se_, ser_, serr_, sle_;
  std::vector<std::size_t> count_, col_count_;
  std::vector<double> row_se_, col_se_, row_ser_, col_ser_;
  double total_se_ = 0.0, total_ser_ = 0.0, total_serr_ = 0.0, total_sle_ = 0.0;
  std::size_t active_count_ = 0;
};

}  // namespace credrj

#endif
