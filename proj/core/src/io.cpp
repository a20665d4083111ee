#include "repel/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "repel/config.hpp"

namespace repel {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_points_csv(const std::string& path, const Configuration& config) {
  if (config.points.empty()) throw std::domain_error("write_points_csv: empty configuration");
  const std::size_t d = config.points.front().size();
  std::ostringstream out;
  out << "index";
  for (std::size_t k = 1; k <= d; ++k) out << ",coord_" << k;
  out << "\n";
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    out << i;
    for (double c : config.points[i]) out << "," << format_g17(c);
    out << "\n";
  }
  write_text_file(path, out.str());
}

Configuration read_points_csv(const std::string& path, const Manifold& manifold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open points file `" + path + "`");
  const int d = dim(manifold);

  Configuration config;
  std::string line;
  int row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line.rfind("index", 0) != 0)
        throw ConfigError("points row 1: expected a header starting with `index`", {}, row);
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fields_in(line);
    while (std::getline(fields_in, field, ',')) fields.push_back(field);
    if (static_cast<int>(fields.size()) != d + 1)
      throw ConfigError("points row " + std::to_string(row) + ": expected " +
                            std::to_string(d + 1) + " fields, got " +
                            std::to_string(fields.size()),
                        {}, row);
    Vec point(d);
    try {
      std::size_t used = 0;
      (void)std::stoll(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument(fields[0]);
      for (int k = 0; k < d; ++k) {
        const double value = std::stod(fields[k + 1], &used);
        if (used != fields[k + 1].size() || !std::isfinite(value))
          throw std::invalid_argument(fields[k + 1]);
        point[k] = value;
      }
    } catch (const std::exception&) {
      throw ConfigError("points row " + std::to_string(row) + ": malformed numeric field", {},
                        row);
    }
    try {
      config.points.push_back(reduce_to_domain(manifold, point));
    } catch (const std::exception& error) {
      throw ConfigError("points row " + std::to_string(row) + ": " + error.what(), {}, row);
    }
  }
  if (config.points.empty())
    throw ConfigError("points file `" + path + "` contains no data rows");
  return config;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open `" + path + "` for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing `" + path + "`");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open `" + path + "` for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace repel
