#include "repel/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "repel/io.hpp"

namespace repel {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string normalized = value;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream in(normalized);
  std::vector<std::string> items;
  std::string item;
  while (in >> item) items.push_back(item);
  return items;
}

double parse_double(const std::string& value, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(parsed)) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key `" + key +
                          "` expects a finite number, got `" + value + "`",
                      key, line);
  }
}

long long parse_int(const std::string& value, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key `" + key +
                          "` expects an integer, got `" + value + "`",
                      key, line);
  }
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("line " + std::to_string(line) + ": key `" + key +
                        "` expects true or false, got `" + value + "`",
                    key, line);
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  bool saw_manifold = false;
  bool saw_kernel_t = false;

  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`, got `" +
                            trim(raw_line) + "`",
                        {}, line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value", key, line_no);

    if (key == "manifold.type") {
      if (value != "torus" && value != "bolza")
        throw ConfigError("line " + std::to_string(line_no) +
                              ": key `manifold.type` must be torus or bolza, got `" + value + "`",
                          key, line_no);
      config.manifold_type = value;
      saw_manifold = true;
    } else if (key == "manifold.periods") {
      config.periods.clear();
      for (const std::string& item : split_list(value)) {
        const double period = parse_double(item, key, line_no);
        if (!(period > 0.0))
          throw ConfigError("line " + std::to_string(line_no) +
                                ": key `manifold.periods` entries must be > 0",
                            key, line_no);
        config.periods.push_back(period);
      }
    } else if (key == "kernel.family") {
      if (value != "heat")
        throw ConfigError("line " + std::to_string(line_no) +
                              ": key `kernel.family` only supports heat, got `" + value + "`",
                          key, line_no);
      config.kernel_family = value;
    } else if (key == "kernel.t") {
      config.kernel_t = parse_double(value, key, line_no);
      if (!(config.kernel_t > 0.0))
        throw ConfigError("line " + std::to_string(line_no) + ": key `kernel.t` must be > 0",
                          key, line_no);
      saw_kernel_t = true;
    } else if (key == "n") {
      config.n_points = static_cast<int>(parse_int(value, key, line_no));
      if (config.n_points < 1)
        throw ConfigError("line " + std::to_string(line_no) + ": key `n` must be >= 1", key,
                          line_no);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(value, key, line_no));
    } else if (key == "deterministic") {
      config.deterministic = parse_bool(value, key, line_no);
    } else if (key == "eps_geo") {
      config.eps_geo = parse_double(value, key, line_no);
      if (!(config.eps_geo > 0.0))
        throw ConfigError("line " + std::to_string(line_no) + ": key `eps_geo` must be > 0", key,
                          line_no);
    } else if (key == "eps_spec") {
      config.eps_spec = parse_double(value, key, line_no);
      if (!(config.eps_spec > 0.0))
        throw ConfigError("line " + std::to_string(line_no) + ": key `eps_spec` must be > 0", key,
                          line_no);
    } else if (key == "optimize.max_iters") {
      config.optimize.max_iters = static_cast<int>(parse_int(value, key, line_no));
    } else if (key == "optimize.grad_tol") {
      config.optimize.grad_tol = parse_double(value, key, line_no);
    } else if (key == "optimize.armijo_c") {
      config.optimize.armijo_c = parse_double(value, key, line_no);
    } else if (key == "optimize.backtrack_factor") {
      config.optimize.backtrack_factor = parse_double(value, key, line_no);
    } else if (key == "optimize.initial_step") {
      config.optimize.initial_step = parse_double(value, key, line_no);
    } else if (key == "optimize.restarts") {
      config.optimize.restarts = static_cast<int>(parse_int(value, key, line_no));
    } else if (key == "verify.samples") {
      config.verify_samples = static_cast<int>(parse_int(value, key, line_no));
      if (config.verify_samples < 1)
        throw ConfigError("line " + std::to_string(line_no) + ": key `verify.samples` must be >= 1",
                          key, line_no);
    } else if (key == "diagnose.samples") {
      config.diagnose_samples = static_cast<int>(parse_int(value, key, line_no));
      if (config.diagnose_samples < 100)
        throw ConfigError("line " + std::to_string(line_no) +
                              ": key `diagnose.samples` must be >= 100",
                          key, line_no);
    } else if (key == "diagnose.baseline_samples") {
      config.baseline_samples = static_cast<int>(parse_int(value, key, line_no));
      if (config.baseline_samples < 1)
        throw ConfigError("line " + std::to_string(line_no) +
                              ": key `diagnose.baseline_samples` must be >= 1",
                          key, line_no);
    } else if (key == "sweep.n_list") {
      config.sweep_n.clear();
      for (const std::string& item : split_list(value)) {
        const int n = static_cast<int>(parse_int(item, key, line_no));
        if (n < 1)
          throw ConfigError("line " + std::to_string(line_no) +
                                ": key `sweep.n_list` entries must be >= 1",
                            key, line_no);
        config.sweep_n.push_back(n);
      }
    } else if (key == "group.element_cap") {
      const long long cap = parse_int(value, key, line_no);
      if (cap < 1)
        throw ConfigError("line " + std::to_string(line_no) + ": key `group.element_cap` must be >= 1",
                          key, line_no);
      config.element_cap = static_cast<std::size_t>(cap);
    } else if (key == "audit.radius") {
      config.audit_radius = parse_double(value, key, line_no);
      if (!(config.audit_radius > 0.0))
        throw ConfigError("line " + std::to_string(line_no) + ": key `audit.radius` must be > 0",
                          key, line_no);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key `" + key + "`", key,
                        line_no);
    }
  }

  if (!saw_manifold) throw ConfigError("missing required key `manifold.type`", "manifold.type");
  if (config.manifold_type == "torus" && config.periods.empty())
    throw ConfigError("missing required key `manifold.periods` for the torus model",
                      "manifold.periods");
  if (config.manifold_type == "bolza" && !config.periods.empty())
    throw ConfigError("key `manifold.periods` is not accepted with manifold.type = bolza",
                      "manifold.periods");
  if (!saw_kernel_t) throw ConfigError("missing required key `kernel.t`", "kernel.t");
  try {
    config.optimize.validate();
  } catch (const std::exception& error) {
    throw ConfigError(std::string("invalid optimizer parameters: ") + error.what(), "optimize");
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file `" + path + "`");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

Manifold RunConfig::make_manifold() const {
  if (manifold_type == "torus") return Manifold{Torus(periods)};
  if (manifold_type == "bolza") {
    BolzaSurface surface;
    surface.set_element_cap(element_cap);
    return Manifold{std::move(surface)};
  }
  throw ConfigError("unknown manifold type `" + manifold_type + "`", "manifold.type");
}

KernelPair RunConfig::make_kernel() const {
  const int dimension = manifold_type == "torus" ? static_cast<int>(periods.size()) : 2;
  return KernelPair(kernel_t, dimension);
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("manifold.type", manifold_type);
  if (!periods.empty()) {
    std::string list;
    for (std::size_t i = 0; i < periods.size(); ++i) {
      if (i) list += " ";
      list += format_g17(periods[i]);
    }
    out.emplace_back("manifold.periods", list);
  }
  out.emplace_back("kernel.family", kernel_family);
  out.emplace_back("kernel.t", format_g17(kernel_t));
  if (n_points > 0) out.emplace_back("n", std::to_string(n_points));
  out.emplace_back("seed", std::to_string(seed));
  out.emplace_back("deterministic", deterministic ? "true" : "false");
  out.emplace_back("eps_geo", format_g17(eps_geo));
  out.emplace_back("eps_spec", format_g17(eps_spec));
  out.emplace_back("optimize.max_iters", std::to_string(optimize.max_iters));
  out.emplace_back("optimize.grad_tol", format_g17(optimize.grad_tol));
  out.emplace_back("optimize.armijo_c", format_g17(optimize.armijo_c));
  out.emplace_back("optimize.backtrack_factor", format_g17(optimize.backtrack_factor));
  out.emplace_back("optimize.initial_step", format_g17(optimize.initial_step));
  out.emplace_back("optimize.restarts", std::to_string(optimize.restarts));
  out.emplace_back("verify.samples", std::to_string(verify_samples));
  out.emplace_back("diagnose.samples", std::to_string(diagnose_samples));
  out.emplace_back("diagnose.baseline_samples", std::to_string(baseline_samples));
  if (!sweep_n.empty()) {
    std::string list;
    for (std::size_t i = 0; i < sweep_n.size(); ++i) {
      if (i) list += " ";
      list += std::to_string(sweep_n[i]);
    }
    out.emplace_back("sweep.n_list", list);
  }
  out.emplace_back("group.element_cap", std::to_string(element_cap));
  out.emplace_back("audit.radius", format_g17(audit_radius));
  return out;
}

}  // namespace repel
