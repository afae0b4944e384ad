#ifndef CREDRJ_IO_HPP
#define CREDRJ_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "credrj/model.hpp"
#include "credrj/panel.hpp"

namespace credrj {

/// Panel plus the label metadata it was built from.
struct Dataset {
  LossPanel panel;
  std::vector<std::string> state_labels;
  std::vector<std::string> occupation_labels;
  std::vector<int> years;
};

struct IngestResult {
  Dataset fit;
  std::optional<Dataset> holdout;
  std::vector<std::string> dropped_occupations;
};

/// Reads a CSV with header state,occupation,year,loss,exposure ('#' lines
/// skipped), builds the dense masked panel with R = loss/exposure on active
/// cells, drops occupation columns with no active cell anywhere, and splits
/// off the holdout year when given. Errors carry line numbers.
IngestResult ingest(const std::string& csv_path, std::optional<int> holdout_year = std::nullopt);

struct ExposureLaw {
  enum class Kind { log_uniform, constant };
  Kind kind = Kind::log_uniform;
  double lo = 10.0;
  double hi = 1e4;
};

struct SimulatedPanel {
  LossPanel panel;
  ModelId model;
  ParamVector truth;
  std::vector<double> losses;  // cell losses, kept so CSV round-trips bit-exactly
};

/// Draws exposures from the law and responses from N(fit, 1/(sigma*E)).
/// The stored ratio is loss/exposure so a write/ingest round trip is exact.
SimulatedPanel simulate(ModelId model, const ParamVector& truth, std::size_t m, std::size_t n,
                        std::size_t s, const ExposureLaw& law, std::uint64_t seed);

void write_panel_csv(const std::string& path, const SimulatedPanel& sim,
                     const std::string& config_hash);

/// 17-significant-digit formatting; round-trips doubles exactly.
std::string fmt_double(double x);

/// Minimal sectioned key=value config file. '#' and ';' start comments.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  const std::string& raw_text() const { return raw_; }

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::string raw_;
};

/// FNV-1a over the config text plus any seed override; stamped into every
/// artifact header.
std::string config_hash(const std::string& config_text, std::optional<std::uint64_t> seed_override);

}  // namespace credrj

#endif
