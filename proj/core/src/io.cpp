#include "qring/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qring/drive.hpp"

namespace qring {

namespace {

using nlohmann::json;

std::string header(const std::string& config_json) {
  std::string cfg = config_json.empty() ? "{}" : config_json;
  return "# schema=1\n# config=" + cfg + "\n";
}

json parse_config(const std::string& config_json) {
  if (config_json.empty()) return json::object();
  return json::parse(config_json);
}

json energy_json(const cplx& e) { return json::array({e.real(), e.imag()}); }

json amplitudes_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(json::array({v(i).real(), v(i).imag()}));
  return arr;
}

template <typename State>
json state_json(const State& s) {
  json j;
  j["energy"] = energy_json(s.energy);
  j["gamma_over_gamma0"] = s.decay_rate();
  j["m"] = s.momentum ? json(*s.momentum) : json(nullptr);
  if constexpr (std::is_same_v<State, SingleExcState>) {
    j["irrep"] = s.irrep ? json(*s.irrep) : json(nullptr);
  } else {
    j["irrep"] = nullptr;
  }
  j["amplitudes"] = amplitudes_json(s.amplitudes);
  return j;
}

template <typename State>
std::string states_json_impl(const std::vector<State>& states, const std::string& config_json) {
  json j;
  j["schema"] = 1;
  j["config"] = parse_config(config_json);
  j["states"] = json::array();
  for (const auto& s : states) j["states"].push_back(state_json(s));
  return j.dump();
}

template <typename State>
std::string states_csv_impl(const std::vector<State>& states, const std::string& config_json) {
  std::ostringstream os;
  os << header(config_json);
  os << "index,m,irrep,dw,gamma_over_gamma0,lifetime_enhancement\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    os << i << ',';
    os << (s.momentum ? std::to_string(*s.momentum) : "") << ',';
    if constexpr (std::is_same_v<State, SingleExcState>) {
      os << (s.irrep ? *s.irrep : "");
    }
    os << ',' << format_number(s.energy.real()) << ',' << format_number(s.decay_rate()) << ','
       << format_number(units::gamma0 / s.decay_rate()) << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string table_to_csv(const Table& t, const std::string& config_json) {
  std::ostringstream os;
  os << header(config_json);
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
  }
  os << ",error\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      os << format_number(t.rows[r][c]) << (c + 1 < t.rows[r].size() ? "," : "");
    }
    os << ',' << (r < t.row_error.size() ? t.row_error[r] : "") << '\n';
  }
  return os.str();
}

std::string table_to_json(const Table& t, const std::string& config_json) {
  json j;
  j["schema"] = 1;
  j["config"] = parse_config(config_json);
  j["columns"] = t.columns;
  j["rows"] = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        r.push_back(nullptr);
      } else {
        r.push_back(v);
      }
    }
    j["rows"].push_back(r);
  }
  j["row_errors"] = t.row_error;
  return j.dump();
}

std::string states_to_json(const std::vector<SingleExcState>& states,
                           const std::string& config_json) {
  return states_json_impl(states, config_json);
}

std::string states_to_json(const std::vector<DoubleExcState>& states,
                           const std::string& config_json) {
  return states_json_impl(states, config_json);
}

std::string states_to_csv(const std::vector<SingleExcState>& states,
                          const std::string& config_json) {
  return states_csv_impl(states, config_json);
}

std::string states_to_csv(const std::vector<DoubleExcState>& states,
                          const std::string& config_json) {
  return states_csv_impl(states, config_json);
}

std::string map_to_csv(const FarFieldMap& map, const std::string& config_json) {
  std::ostringstream os;
  os << header(config_json);
  os << "theta,phi,value,mask\n";
  for (int i = 0; i < map.values.rows(); ++i) {
    for (int j = 0; j < map.values.cols(); ++j) {
      const bool masked = map.mask(i, j);
      os << format_number(map.grid.theta(i)) << ',' << format_number(map.grid.phi(j)) << ','
         << (masked ? "nan" : format_number(map.values(i, j))) << ',' << (masked ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

std::string map_to_json(const FarFieldMap& map, const std::string& config_json) {
  json j;
  j["schema"] = 1;
  j["config"] = parse_config(config_json);
  j["grid"]["theta"] = std::vector<double>(map.grid.theta.data(),
                                           map.grid.theta.data() + map.grid.theta.size());
  j["grid"]["theta_weight"] =
      std::vector<double>(map.grid.theta_weight.data(),
                          map.grid.theta_weight.data() + map.grid.theta_weight.size());
  j["grid"]["phi"] =
      std::vector<double>(map.grid.phi.data(), map.grid.phi.data() + map.grid.phi.size());
  j["grid"]["phi_weight"] = map.grid.phi_weight;
  j["values"] = json::array();
  j["mask"] = json::array();
  for (int i = 0; i < map.values.rows(); ++i) {
    json row = json::array(), mrow = json::array();
    for (int jj = 0; jj < map.values.cols(); ++jj) {
      if (map.mask(i, jj)) {
        row.push_back(nullptr);
        mrow.push_back(1);
      } else {
        row.push_back(map.values(i, jj));
        mrow.push_back(0);
      }
    }
    j["values"].push_back(row);
    j["mask"].push_back(mrow);
  }
  return j.dump();
}

std::string scs_to_csv(const std::vector<ScsPoint>& points, const std::string& config_json) {
  std::ostringstream os;
  os << header(config_json);
  os << "detuning_over_gamma0,scs_normalized,error\n";
  for (const auto& p : points) {
    os << format_number(p.detuning) << ','
       << (p.ok ? format_number(p.scs_normalized) : "nan") << ','
       << (p.ok ? "" : "solver_failure") << '\n';
  }
  return os.str();
}

std::string scs_to_json(const std::vector<ScsPoint>& points, const std::string& config_json) {
  json j;
  j["schema"] = 1;
  j["config"] = parse_config(config_json);
  j["points"] = json::array();
  for (const auto& p : points) {
    json q;
    q["detuning_over_gamma0"] = p.detuning;
    q["scs_normalized"] = p.ok ? json(p.scs_normalized) : json(nullptr);
    q["ok"] = p.ok;
    j["points"].push_back(q);
  }
  return j.dump();
}

}  // namespace qring
