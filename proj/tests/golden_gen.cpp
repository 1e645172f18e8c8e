// Regenerates the golden SVG fixtures. Run manually after an intentional
// rendering change: golden_gen <output-dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "golden_specs.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: golden_gen <output-dir>\n";
    return 2;
  }
  std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    std::cout << "wrote " << (dir / name).string() << "\n";
  };
  write("ribbon.svg", jnk::render_svg(jnk::golden::ribbon_spec(), 640, 480));
  write("heatmap_5x5.svg", jnk::render_svg(jnk::golden::heatmap_spec(), 640, 480));
  write("density_fan.svg", jnk::render_svg(jnk::golden::density_fan_spec(), 640, 480));
  return 0;
}
