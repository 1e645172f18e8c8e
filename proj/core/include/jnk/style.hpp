#pragma once

#include <cstdint>
#include <string>

namespace jnk {

struct Color {
  std::uint8_t r = 0, g = 0, b = 0;

  //! Parses "#RRGGBB". Throws on anything else.
  static Color from_hex(const std::string& hex);
  std::string to_hex() const;
};

//! Linear interpolation between two colors, t in [0,1].
Color lerp(const Color& a, const Color& b, double t);

//! Color and pattern defaults shared by all plot kinds.
struct StyleConfig {
  Color sig_color = {0x43, 0xCD, 0x80};      // seagreen3
  Color non_sig_color = {0xD2, 0x69, 0x1E};  // chocolate
  Color line_color = {0x00, 0x00, 0x00};
  Color color_low = {0x3B, 0x9A, 0xB2};
  Color color_mid = {0xEB, 0xCC, 0x2A};
  Color color_high = {0xF2, 0x1A, 0x00};
  Color color_grid = {0x00, 0x00, 0x00};
  double grid_density = 0.01;   // hatch stroke width, cell-width units
  double grid_spacing = 0.1;    // hatch line gap, cell-width units
  Color color_values = {0x66, 0x66, 0x66};  // grey40
  bool crosshatch_non_sig = true;
};

}  // namespace jnk
