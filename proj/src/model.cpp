#include "credrj/model.hpp"

#include <stdexcept>

namespace credrj {

int model_index(ModelId model) {
  switch (model) {
    case ModelId::M1_full: return 0;
    case ModelId::M2_state_only: return 1;
    case ModelId::M3_occupation_only: return 2;
    case ModelId::K_centred: break;
  }
  throw std::invalid_argument("model_index: centred model has no move-matrix index");
}

ModelId model_from_index(int k) {
  switch (k) {
    case 0: return ModelId::M1_full;
    case 1: return ModelId::M2_state_only;
    case 2: return ModelId::M3_occupation_only;
  }
  throw std::invalid_argument("model_from_index: index must be 0, 1, or 2");
}

std::string model_name(ModelId model) {
  switch (model) {
    case ModelId::M1_full: return "M1";
    case ModelId::M2_state_only: return "M2";
    case ModelId::M3_occupation_only: return "M3";
    case ModelId::K_centred: return "K";
  }
  return "?";
}

std::size_t free_parameter_count(ModelId model, std::size_t m, std::size_t n) {
  switch (model) {
    case ModelId::M1_full: return 1 + (m - 1) + (n - 1) + 1;
    case ModelId::M2_state_only: return 1 + (m - 1) + 1;
    case ModelId::M3_occupation_only: return 1 + (n - 1) + 1;
    case ModelId::K_centred: return 1 + m + n + 3;
  }
  return 0;
}

void validate_params(const LossPanel& panel, ModelId model, const ParamVector& params) {
  if (params.alpha.size() != panel.rows() || params.beta.size() != panel.cols())
    throw std::invalid_argument("params/panel dimension mismatch: alpha needs length " +
                                std::to_string(panel.rows()) + ", beta length " +
                                std::to_string(panel.cols()));
  if (!(params.sigma > 0.0)) throw std::domain_error("sigma must be > 0");

  auto all_zero = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != 0.0) return false;
    return true;
  };
  switch (model) {
    case ModelId::M1_full:
      if (params.alpha[0] != 0.0 || params.beta[0] != 0.0)
        throw std::invalid_argument("corner constraint violated: alpha[0] and beta[0] must be 0");
      break;
    case ModelId::M2_state_only:
      if (params.alpha[0] != 0.0)
        throw std::invalid_argument("corner constraint violated: alpha[0] must be 0");
      if (!all_zero(params.beta))
        throw std::invalid_argument("M2 has no occupation effects; beta must be all zero");
      break;
    case ModelId::M3_occupation_only:
      if (params.beta[0] != 0.0)
        throw std::invalid_argument("corner constraint violated: beta[0] must be 0");
      if (!all_zero(params.alpha))
        throw std::invalid_argument("M3 has no state effects; alpha must be all zero");
      break;
    case ModelId::K_centred:
      if (!(params.tau_alpha > 0.0) || !(params.tau_beta > 0.0))
        throw std::domain_error("centred model needs tau_alpha > 0 and tau_beta > 0");
      break;
  }
}

double fit_value(ModelId model, const ParamVector& params, std::size_t i, std::size_t j) {
  switch (model) {
    case ModelId::M1_full: return params.mu + params.alpha[i] + params.beta[j];
    case ModelId::M2_state_only: return params.mu + params.alpha[i];
    case ModelId::M3_occupation_only: return params.mu + params.beta[j];
    case ModelId::K_centred: return params.alpha[i] + params.beta[j];
  }
  return 0.0;
}

}  // namespace credrj
