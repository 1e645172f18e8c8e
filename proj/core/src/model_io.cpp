#include "jnk/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jnk {

namespace {
constexpr double kSymTol = 1e-8;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ModelSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("model spec must be a JSON object");
  ModelSpec spec;
  try {
    spec.coef_names = j.at("coef_names").get<std::vector<std::string>>();
    spec.coefs = j.at("coefs").get<std::vector<double>>();
    auto rows = j.at("covar").get<std::vector<std::vector<double>>>();
    spec.covar = Matrix(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != spec.covar.cols) throw std::runtime_error("dimension mismatch: ragged covar");
      for (std::size_t k = 0; k < rows[i].size(); ++k) spec.covar(i, k) = rows[i][k];
    }
    for (auto& [name, range] : j.at("var_ranges").items()) {
      auto pair = range.get<std::vector<double>>();
      if (pair.size() != 2) throw std::runtime_error("var_range for '" + name + "' must be [min, max]");
      spec.var_ranges[name] = {pair[0], pair[1]};
    }
    if (j.contains("group_label")) spec.group_label = j.at("group_label").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("parse failure: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}
}  // namespace

void ModelSpec::validate() {
  const std::size_t n = coef_names.size();
  if (coefs.size() != n || covar.rows != n || covar.cols != n)
    throw std::runtime_error("dimension mismatch: names, coefs and covar must agree");
  if (!covar.is_symmetric(kSymTol)) throw std::runtime_error("asymmetric covariance");
  covar.symmetrize();
  for (std::size_t i = 0; i < n; ++i)
    if (covar(i, i) < 0.0) throw std::runtime_error("negative variance diagonal at '" + coef_names[i] + "'");
  for (const auto& [name, range] : var_ranges)
    if (!(range.first < range.second))
      throw std::runtime_error("invalid var_range for '" + name + "': min must be < max");
}

std::size_t ModelSpec::index_of(const std::string& name) const {
  auto it = std::find(coef_names.begin(), coef_names.end(), name);
  if (it == coef_names.end()) throw std::runtime_error("parameter not found: " + name);
  return static_cast<std::size_t>(it - coef_names.begin());
}

void PosteriorDrawMatrix::validate() const {
  if (draws.cols != param_names.size())
    throw std::runtime_error("dimension mismatch: draw columns vs parameter names");
  if (draws.rows == 0) throw std::runtime_error("empty body");
  if (burn_in >= draws.rows) throw std::runtime_error("burn_in exceeds draw count");
  if (thin == 0) throw std::runtime_error("thin must be positive");
  std::size_t retained = (draws.rows - burn_in + thin - 1) / thin;
  if (retained < 2) throw std::runtime_error("fewer than 2 draws remain after burn-in/thinning");
}

ModelSpec model_spec_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("parse failure: ") + e.what());
  }
  return spec_from_json(j);
}

ModelSpec load_model_spec(const std::string& path) {
  return model_spec_from_json_text(read_file(path));
}

std::vector<ModelSpec> load_model_specs(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("parse failure: ") + e.what());
  }
  std::vector<ModelSpec> specs;
  if (j.is_array()) {
    for (const auto& item : j) specs.push_back(spec_from_json(item));
  } else {
    specs.push_back(spec_from_json(j));
  }
  return specs;
}

std::string serialize_model_spec(const ModelSpec& spec) {
  nlohmann::json j;
  j["coef_names"] = spec.coef_names;
  j["coefs"] = spec.coefs;
  nlohmann::json covar = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.covar.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < spec.covar.cols; ++k) row.push_back(spec.covar(i, k));
    covar.push_back(row);
  }
  j["covar"] = covar;
  if (spec.group_label) j["group_label"] = *spec.group_label;
  nlohmann::json ranges = nlohmann::json::object();
  for (const auto& [name, range] : spec.var_ranges)
    ranges[name] = nlohmann::json::array({range.first, range.second});
  j["var_ranges"] = ranges;
  return j.dump(2) + "\n";
}

PosteriorDrawMatrix posterior_from_csv_text(const std::string& text, std::size_t burn_in,
                                            std::size_t thin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty body");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  PosteriorDrawMatrix pdm;
  pdm.param_names = split(line, ',');
  pdm.burn_in = burn_in;
  pdm.thin = thin;

  std::vector<double> values;
  std::size_t nrows = 0;
  const std::size_t ncols = pdm.param_names.size();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != ncols)
      throw std::runtime_error("dimension mismatch: row " + std::to_string(nrows + 1) + " has " +
                               std::to_string(cells.size()) + " cells");
    for (const auto& cell : cells) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric cell '" + cell + "' in row " + std::to_string(nrows + 1));
      }
      if (pos != cell.size())
        throw std::runtime_error("non-numeric cell '" + cell + "' in row " + std::to_string(nrows + 1));
      values.push_back(v);
    }
    ++nrows;
  }
  if (nrows == 0) throw std::runtime_error("empty body");
  pdm.draws = Matrix(nrows, ncols);
  pdm.draws.data = std::move(values);
  pdm.validate();
  return pdm;
}

PosteriorDrawMatrix load_posterior_csv(const std::string& path, std::size_t burn_in,
                                       std::size_t thin) {
  return posterior_from_csv_text(read_file(path), burn_in, thin);
}

std::string resolve_interaction_name(const std::vector<std::string>& names, const std::string& a,
                                     const std::string& b, const std::optional<std::string>& c) {
  std::vector<std::string> want = {a, b};
  if (c) want.push_back(*c);
  std::sort(want.begin(), want.end());

  std::vector<std::string> matches;
  for (const auto& name : names) {
    if (name.find(':') == std::string::npos) continue;
    auto parts = split(name, ':');
    if (parts.size() != want.size()) continue;
    std::sort(parts.begin(), parts.end());
    if (parts == want) matches.push_back(name);
  }
  std::string request = a + ":" + b + (c ? ":" + *c : "");
  if (matches.empty()) throw std::runtime_error("interaction term not found: " + request);
  if (matches.size() > 1) throw std::runtime_error("ambiguous interaction term: " + request);
  return matches.front();
}

std::vector<FocalView> derive_role_views(const std::vector<std::string>& spec_names,
                                         const std::string& theta_1, const std::string& theta_2,
                                         const std::optional<std::string>& theta_3) {
  auto index_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(spec_names.begin(), spec_names.end(), name);
    if (it == spec_names.end()) throw std::runtime_error("parameter not found: " + name);
    return static_cast<std::size_t>(it - spec_names.begin());
  };

  std::vector<FocalView> views;
  if (!theta_3) {
    std::string inter = resolve_interaction_name(spec_names, theta_1, theta_2);
    for (auto [focal, mod] : {std::pair{theta_1, theta_2}, std::pair{theta_2, theta_1}}) {
      FocalView v;
      v.focal = focal;
      v.moderators = {mod};
      v.idx_main = index_of(focal);
      v.idx_two_way = {index_of(inter)};
      v.order = 2;
      views.push_back(std::move(v));
    }
    return views;
  }

  std::string triple = resolve_interaction_name(spec_names, theta_1, theta_2, *theta_3);
  const std::array<std::string, 3> thetas = {theta_1, theta_2, *theta_3};
  for (std::size_t k = 0; k < 3; ++k) {
    FocalView v;
    v.focal = thetas[k];
    for (std::size_t j = 0; j < 3; ++j)
      if (j != k) v.moderators.push_back(thetas[j]);
    v.idx_main = index_of(v.focal);
    for (const auto& mod : v.moderators)
      v.idx_two_way.push_back(index_of(resolve_interaction_name(spec_names, v.focal, mod)));
    v.idx_three_way = index_of(triple);
    v.order = 3;
    views.push_back(std::move(v));
  }
  return views;
}

}  // namespace jnk
