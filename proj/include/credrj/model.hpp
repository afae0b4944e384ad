#ifndef CREDRJ_MODEL_HPP
#define CREDRJ_MODEL_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "credrj/panel.hpp"

namespace credrj {

/// Competing mean structures for the panel. The first three use the corner
/// constraint alpha[0] = beta[0] = 0; the centred variant gives every effect
/// a free level shrunk towards mu/2.
enum class ModelId {
  M1_full,             // mu + alpha_i + beta_j
  M2_state_only,       // mu + alpha_i
  M3_occupation_only,  // mu + beta_j
  K_centred,           // alpha_i + beta_j with hierarchical tau's
};

/// 0-based index into per-model arrays (move matrix, prior offsets);
/// only defined for the three corner-point models.
int model_index(ModelId model);
ModelId model_from_index(int k);
std::string model_name(ModelId model);

std::size_t free_parameter_count(ModelId model, std::size_t m, std::size_t n);

struct ParamVector {
  double mu = 0.0;
  std::vector<double> alpha;  // length m; alpha[0] == 0 for corner models
  std::vector<double> beta;   // length n; beta[0] == 0 for corner models
  double sigma = 1.0;         // observation precision scale
  double tau_alpha = 0.0;     // K_centred only
  double tau_beta = 0.0;      // K_centred only
};

struct PriorConfig {
  double a = 1e-3;  // gamma shape for sigma (and tau's in the centred model)
  double b = 1e-3;  // gamma rate
  double c = 1e-3;  // precision of the mu prior, centred model
  double tau_mu = 1e-3;
  double tau_alpha0 = 1e-3;
  double tau_beta0 = 1e-3;
  // log p(M_k), k = M1, M2, M3, up to a shared constant.
  std::array<double, 3> model_log_prior{0.0, 0.0, 0.0};
};

/// Throws std::invalid_argument on dimension/model mismatch and
/// std::domain_error on non-positive scale parameters.
void validate_params(const LossPanel& panel, ModelId model, const ParamVector& params);

/// Mean response for cell (i, j) under the given model.
double fit_value(ModelId model, const ParamVector& params, std::size_t i, std::size_t j);

}  // namespace credrj

#endif
