#include "credrj/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "credrj/rng.hpp"

namespace credrj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, std::size_t line_no, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse " + what +
                                " from '" + s + "'");
  }
}

int parse_int(const std::string& s, std::size_t line_no, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse " + what +
                                " from '" + s + "'");
  }
}

struct RawRow {
  std::string state, occupation;
  int year;
  double loss, exposure;
  std::size_t line_no;
};

Dataset build_dataset(const std::vector<RawRow>& rows,
                      const std::vector<std::string>& states,
                      const std::vector<std::string>& occupations,
                      const std::vector<int>& years) {
  const std::size_t m = states.size();
  const std::size_t n = occupations.size();
  const std::size_t s = years.size();
  std::map<std::string, std::size_t> state_idx, occ_idx;
  std::map<int, std::size_t> year_idx;
  for (std::size_t i = 0; i < m; ++i) state_idx[states[i]] = i;
  for (std::size_t j = 0; j < n; ++j) occ_idx[occupations[j]] = j;
  for (std::size_t t = 0; t < s; ++t) year_idx[years[t]] = t;

  std::vector<double> ratio(m * n * s, 0.0), exposure(m * n * s, 0.0);
  for (const auto& row : rows) {
    const auto si = state_idx.find(row.state);
    const auto oj = occ_idx.find(row.occupation);
    const auto yt = year_idx.find(row.year);
    if (si == state_idx.end() || oj == occ_idx.end() || yt == year_idx.end()) continue;
    const std::size_t c = (si->second * n + oj->second) * s + yt->second;
    exposure[c] = row.exposure;
    ratio[c] = row.exposure > 0.0 ? row.loss / row.exposure : 0.0;
  }
  return Dataset{LossPanel(m, n, s, std::move(ratio), std::move(exposure)), states, occupations,
                 years};
}

}  // namespace

IngestResult ingest(const std::string& csv_path, std::optional<int> holdout_year) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("ingest: cannot open " + csv_path);

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<RawRow> rows;
  std::set<std::tuple<std::string, std::string, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      const auto header = split_csv_line(t);
      if (header.size() != 5 || header[0] != "state" || header[1] != "occupation" ||
          header[2] != "year" || header[3] != "loss" || header[4] != "exposure")
        throw std::invalid_argument("ingest: line " + std::to_string(line_no) +
                                    ": expected header state,occupation,year,loss,exposure");
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_line(t);
    if (fields.size() != 5)
      throw std::invalid_argument("ingest: line " + std::to_string(line_no) +
                                  ": expected 5 fields, got " + std::to_string(fields.size()));
    RawRow row;
    row.state = fields[0];
    row.occupation = fields[1];
    row.year = parse_int(fields[2], line_no, "year");
    row.loss = parse_double(fields[3], line_no, "loss");
    row.exposure = parse_double(fields[4], line_no, "exposure");
    row.line_no = line_no;
    if (row.state.empty() || row.occupation.empty())
      throw std::invalid_argument("ingest: line " + std::to_string(line_no) +
                                  ": empty state or occupation id");
    if (row.loss < 0.0 || row.exposure < 0.0)
      throw std::invalid_argument("ingest: line " + std::to_string(line_no) +
                                  ": negative loss or exposure");
    if (!seen.insert({row.state, row.occupation, row.year}).second)
      throw std::invalid_argument("ingest: line " + std::to_string(line_no) +
                                  ": duplicate (state, occupation, year) key");
    rows.push_back(std::move(row));
  }
  if (!header_seen || rows.empty()) throw std::invalid_argument("ingest: no data rows in " + csv_path);

  // First-appearance order for factors, ascending years.
  std::vector<std::string> states, occupations;
  std::vector<int> years;
  for (const auto& row : rows) {
    if (std::find(states.begin(), states.end(), row.state) == states.end())
      states.push_back(row.state);
    if (std::find(occupations.begin(), occupations.end(), row.occupation) == occupations.end())
      occupations.push_back(row.occupation);
    if (std::find(years.begin(), years.end(), row.year) == years.end()) years.push_back(row.year);
  }
  std::sort(years.begin(), years.end());

  // Drop occupation columns with no exposure anywhere (all years).
  std::map<std::string, double> occ_exposure;
  for (const auto& row : rows) occ_exposure[row.occupation] += row.exposure;
  std::vector<std::string> kept, dropped;
  for (const auto& occ : occupations)
    (occ_exposure[occ] > 0.0 ? kept : dropped).push_back(occ);

  std::vector<int> fit_years = years;
  std::vector<int> holdout_years;
  if (holdout_year) {
    const auto it = std::find(fit_years.begin(), fit_years.end(), *holdout_year);
    if (it == fit_years.end())
      throw std::invalid_argument("ingest: holdout year " + std::to_string(*holdout_year) +
                                  " not present in " + csv_path);
    fit_years.erase(it);
    holdout_years.push_back(*holdout_year);
    if (fit_years.empty())
      throw std::invalid_argument("ingest: holdout year leaves no fitting years");
  }

  IngestResult out{build_dataset(rows, states, kept, fit_years), std::nullopt, dropped};
  for (std::size_t j = 0; j < kept.size(); ++j)
    if (out.fit.panel.col_all_inactive(j))
      throw std::invalid_argument("ingest: occupation '" + kept[j] +
                                  "' has no active cell in the fitting years");
  if (holdout_year)
    out.holdout = build_dataset(rows, states, kept, holdout_years);
  return out;
}

SimulatedPanel simulate(ModelId model, const ParamVector& truth, std::size_t m, std::size_t n,
                        std::size_t s, const ExposureLaw& law, std::uint64_t seed) {
  if (m < 2 || n < 2 || s < 1)
    throw std::invalid_argument("simulate: need m >= 2, n >= 2, s >= 1");
  if (truth.alpha.size() != m || truth.beta.size() != n)
    throw std::invalid_argument("simulate: truth dimensions do not match m, n");
  if (!(truth.sigma > 0.0)) throw std::domain_error("simulate: sigma must be > 0");
  if (law.kind == ExposureLaw::Kind::log_uniform && !(law.lo > 0.0 && law.hi >= law.lo))
    throw std::invalid_argument("simulate: log-uniform law needs 0 < lo <= hi");
  if (law.kind == ExposureLaw::Kind::constant && !(law.lo > 0.0))
    throw std::invalid_argument("simulate: constant exposure must be > 0");

  ChainRng rng(seed);
  std::vector<double> ratio(m * n * s, 0.0), exposure(m * n * s, 0.0), losses(m * n * s, 0.0);
  const double log_lo = std::log(law.lo);
  const double log_hi = std::log(law.hi);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double fit = fit_value(model, truth, i, j);
      for (std::size_t t = 0; t < s; ++t) {
        const std::size_t c = (i * n + j) * s + t;
        const double e = law.kind == ExposureLaw::Kind::constant
                             ? law.lo
                             : std::exp(log_lo + (log_hi - log_lo) * rng.uniform());
        const double r = rng.normal(fit, 1.0 / (truth.sigma * e));
        exposure[c] = e;
        losses[c] = r * e;
        ratio[c] = losses[c] / e;  // matches what ingest will recompute
      }
    }
  return SimulatedPanel{LossPanel(m, n, s, std::move(ratio), std::move(exposure)), model, truth,
                        std::move(losses)};
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_panel_csv(const std::string& path, const SimulatedPanel& sim,
                     const std::string& hash) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_panel_csv: cannot open " + path);
  out << "# config_hash=" << hash << "\n";
  out << "state,occupation,year,loss,exposure\n";
  const auto& p = sim.panel;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      for (std::size_t t = 0; t < p.reps(); ++t) {
        const std::size_t c = (i * p.cols() + j) * p.reps() + t;
        out << "S" << (i + 1) << ",O" << (j + 1) << "," << (t + 1) << ","
            << fmt_double(sim.losses[c]) << "," << fmt_double(p.exposure(i, j, t)) << "\n";
      }
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  cfg.raw_ = text;
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    const auto comment = t.find_first_of("#;");
    if (comment != std::string::npos) t = trim(t.substr(0, comment));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unterminated section");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    cfg.values_[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

std::string KeyValueConfig::get(const std::string& section, const std::string& key,
                                const std::string& fallback) const {
  const auto s = values_.find(section);
  if (s == values_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double KeyValueConfig::get_double(const std::string& section, const std::string& key,
                                  double fallback) const {
  if (!has(section, key)) return fallback;
  return parse_double(get(section, key, ""), 0, section + "." + key);
}

std::int64_t KeyValueConfig::get_int(const std::string& section, const std::string& key,
                                     std::int64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key, "");
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse integer " + section + "." + key + " from '" +
                                v + "'");
  }
}

std::vector<double> KeyValueConfig::get_list(const std::string& section,
                                             const std::string& key) const {
  std::vector<double> out;
  if (!has(section, key)) return out;
  const std::string v = get(section, key, "");
  std::stringstream ss(v);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(parse_double(trim(field), 0, key));
  return out;
}

std::string config_hash(const std::string& config_text,
                        std::optional<std::uint64_t> seed_override) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  mix(config_text);
  if (seed_override) mix("seed=" + std::to_string(*seed_override));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace credrj
