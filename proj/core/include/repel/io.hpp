#pragma once

#include <string>

#include "repel/manifold.hpp"

namespace repel {

/// Shortest 17-significant-digit decimal; round-trips every double exactly.
std::string format_g17(double value);

/// Writes `index,coord_1,...,coord_d` rows at 17 significant digits.
void write_points_csv(const std::string& path, const Configuration& config);

/// Reads a points CSV written by write_points_csv (or hand-made with the same
/// header). Points are validated against the manifold and reduced. Malformed
/// rows raise ConfigError naming the row number.
Configuration read_points_csv(const std::string& path, const Manifold& manifold);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace repel
