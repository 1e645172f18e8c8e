#pragma once

#include <array>
#include <string>
#include <vector>

namespace jnk {

//! Uniform moderator lattice: 1 axis (two-way) or 2 axes (three-way).
struct ModeratorGrid {
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axis_values;
  int range_size = 0;
};

struct ParamRow {
  std::array<double, 2> mod_vals{};  // only the first n_mods entries are used
  int n_mods = 1;
  double theta = 0.0;
  double se = 0.0;
  double p = 1.0;
  bool significant = false;
};

//! Conditional-effect table for one focal view. Rows are ordered
//! lexicographically by moderator values (first axis outer).
struct ParamTable {
  std::string focal;
  std::vector<std::string> moderator_names;
  std::vector<ParamRow> rows;
};

}  // namespace jnk
