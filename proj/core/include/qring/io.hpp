#pragma once

#include <string>
#include <vector>

#include "qring/drive.hpp"
#include "qring/farfield.hpp"
#include "qring/sweep.hpp"

namespace qring {

/// Shortest stable formatting used in every CSV cell.
std::string format_number(double v);

/// CSV with the versioned header:  # schema=1  /  # config=<json>.
/// An `error` column is always appended (empty when the row succeeded).
std::string table_to_csv(const Table& t, const std::string& config_json);
std::string table_to_json(const Table& t, const std::string& config_json);

/// States serialize as {energy: [re, im], gamma_over_gamma0, m, irrep, amplitudes: [...]}.
std::string states_to_json(const std::vector<SingleExcState>& states,
                           const std::string& config_json);
std::string states_to_json(const std::vector<DoubleExcState>& states,
                           const std::string& config_json);
std::string states_to_csv(const std::vector<SingleExcState>& states,
                          const std::string& config_json);
std::string states_to_csv(const std::vector<DoubleExcState>& states,
                          const std::string& config_json);

/// Maps emit one row per node: theta, phi, value, mask (masked values print nan).
std::string map_to_csv(const FarFieldMap& map, const std::string& config_json);
std::string map_to_json(const FarFieldMap& map, const std::string& config_json);

std::string scs_to_csv(const std::vector<ScsPoint>& points, const std::string& config_json);
std::string scs_to_json(const std::vector<ScsPoint>& points, const std::string& config_json);

}  // namespace qring
