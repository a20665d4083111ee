#include "repel/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "repel/config.hpp"
#include "repel/diagnostics.hpp"
#include "repel/energy.hpp"
#include "repel/errors.hpp"
#include "repel/io.hpp"
#include "repel/optimize.hpp"
#include "repel/version.hpp"

namespace repel {

namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

RunConfig load_effective_config(const CommandOptions& options) {
  if (options.config_path.empty()) throw ConfigError("missing --config <path>");
  RunConfig config = load_run_config(options.config_path);
  if (options.seed_override) config.seed = *options.seed_override;
  if (options.force_nondeterministic) config.deterministic = false;
  return config;
}

Json envelope(const char* command, const RunConfig& config) {
  Json doc;
  doc["tool"] = Json{{"name", "repel"}, {"version", kVersion}};
  doc["command"] = command;
  Json echo;
  for (const auto& [key, value] : config.echo()) echo[key] = value;
  doc["config"] = std::move(echo);
  return doc;
}

Json energy_json(const EnergyReport& report) {
  Json out;
  out["value"] = report.value;
  out["tail_bound"] = report.tail_bound;
  Json conventions = Json::array();
  if (report.self_loops_exclude_identity) conventions.push_back("self-interaction-excluded-identity");
  if (report.constant_mode_excluded) conventions.push_back("constant-mode-excluded");
  out["conventions"] = std::move(conventions);
  return out;
}

void write_doc(const std::string& out_dir, const std::string& name, const Json& doc) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/" + name, doc.dump(2) + "\n");
}

void require_n(const RunConfig& config) {
  if (config.n_points < 1) throw ConfigError("missing required key `n`", "n");
}

SpectralBasis make_basis(const RunConfig& config, const Torus& torus, const KernelPair& kernel,
                         int n_points) {
  const double lambda_max =
      spectral_truncation(kernel, torus.periods(), n_points, config.eps_spec);
  return build_basis(torus, kernel, lambda_max);
}

int run_guarded(const char* command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& error) {
    std::cerr << command << ": config error: " << error.what() << "\n";
    return 1;
  } catch (const ResourceLimitError& error) {
    std::cerr << command << ": resource limit: " << error.what() << "\n";
    return 2;
  } catch (const UnsupportedModelError& error) {
    std::cerr << command << ": " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << command << ": error: " << error.what() << "\n";
    return 1;
  }
}

}  // namespace

int cmd_minimize(const CommandOptions& options) {
  return run_guarded("minimize", [&]() {
    const RunConfig config = load_effective_config(options);
    require_n(config);
    const Manifold manifold = config.make_manifold();
    const KernelPair kernel = config.make_kernel();
    OptimizeParams params = config.optimize;
    params.seed = config.seed;

    std::optional<SpectralBasis> basis;
    if (const auto* torus = std::get_if<Torus>(&manifold))
      basis = make_basis(config, *torus, kernel, config.n_points);

    const MultistartResult outcome = multistart(
        manifold, kernel, basis ? &*basis : nullptr, config.n_points, params, config.eps_geo);
    const OptimizeResult& best = outcome.best;

    Json doc = envelope("minimize", config);
    Json result;
    result["status"] = to_string(best.status);
    result["objective"] = basis ? "spectral" : "geometric";
    result["energy"] = energy_json(best.energy);
    result["residual_norm"] = best.residual_norm;
    result["iterations"] = best.iterations;
    result["certified_below_mean"] = best.certified_below_mean;
    result["mean_threshold"] = number_or_null(best.mean_threshold);
    if (basis) {
      result["basis_modes"] = basis->modes.size();
      result["basis_lambda_max"] = basis->lambda_max;
    }
    result["best_restart"] = outcome.best_index;
    Json restart_energies = Json::array();
    for (double e : outcome.final_energies) restart_energies.push_back(number_or_null(e));
    result["restart_energies"] = std::move(restart_energies);
    Json trace_energy = Json::array(), trace_residual = Json::array();
    for (const TracePoint& p : best.trace) {
      trace_energy.push_back(p.energy);
      trace_residual.push_back(p.residual);
    }
    result["trace"] = Json{{"energy", std::move(trace_energy)},
                           {"residual", std::move(trace_residual)}};
    doc["result"] = std::move(result);
    doc["outputs"] = Json{{"points_csv", "points.csv"}};

    write_doc(options.out_dir, "result.json", doc);
    std::filesystem::create_directories(options.out_dir);
    write_points_csv(options.out_dir + "/points.csv", best.config);

    std::cout << "minimize: " << to_string(best.status) << ", energy " << best.energy.value
              << ", residual " << best.residual_norm << "\n";
    return 0;
  });
}

int cmd_verify_pretrace(const CommandOptions& options) {
  return run_guarded("verify-pretrace", [&]() {
    const RunConfig config = load_effective_config(options);
    require_n(config);
    const Manifold manifold = config.make_manifold();
    const Torus& torus = require_torus(manifold, "verify-pretrace");
    const KernelPair kernel = config.make_kernel();
    const SpectralBasis basis = make_basis(config, torus, kernel, config.n_points);

    double max_abs_residual = 0.0;
    double max_budget = 0.0;
    bool pass = true;
    for (int s = 0; s < config.verify_samples; ++s) {
      const Configuration sample = uniform_random_configuration(
          manifold, config.n_points, config.seed + static_cast<std::uint64_t>(s));
      const PretraceReport report =
          pretrace_check(sample, torus, kernel, basis, config.eps_geo);
      max_abs_residual = std::max(max_abs_residual, std::fabs(report.residual));
      max_budget = std::max(max_budget, report.budget());
      pass = pass && std::fabs(report.residual) <= report.budget();
    }

    Json doc = envelope("verify-pretrace", config);
    doc["result"] = Json{{"samples", config.verify_samples},
                         {"basis_modes", basis.modes.size()},
                         {"basis_lambda_max", basis.lambda_max},
                         {"max_abs_residual", max_abs_residual},
                         {"tail_budget", max_budget},
                         {"pass", pass}};
    write_doc(options.out_dir, "pretrace.json", doc);
    std::cout << "verify-pretrace: " << (pass ? "PASS" : "FAIL") << ", max residual "
              << max_abs_residual << " vs budget " << max_budget << "\n";
    return 0;
  });
}

int cmd_diagnose(const CommandOptions& options) {
  return run_guarded("diagnose", [&]() {
    const RunConfig config = load_effective_config(options);
    if (options.points_path.empty()) throw ConfigError("missing --points <csv>");
    const Manifold manifold = config.make_manifold();
    const KernelPair kernel = config.make_kernel();
    const Configuration points = read_points_csv(options.points_path, manifold);

    Json doc = envelope("diagnose", config);
    doc["points"] = Json{{"path", options.points_path}, {"count", points.size()}};

    if (const auto* torus = std::get_if<Torus>(&manifold)) {
      const SpectralBasis basis = make_basis(config, *torus, kernel, points.size());
      const WeylReport weyl = weyl_report(points, basis);

      Json weyl_json;
      weyl_json["certified_below_mean"] = weyl.certified_below_mean;
      weyl_json["energy"] = weyl.energy;
      weyl_json["mean_threshold"] = weyl.mean_threshold;
      weyl_json["weight_sum_with_tail"] = weyl.weight_sum_with_tail;
      weyl_json["all_pass"] = weyl.all_pass;
      weyl_json["modes"] = weyl.rows.size();
      doc["weyl"] = std::move(weyl_json);

      std::ostringstream csv;
      csv << "mode_index,w_m,bound,pass\n";
      for (const WeylModeRow& row : weyl.rows) {
        std::string index;
        for (std::size_t k = 0; k < row.index.size(); ++k) {
          if (k) index += " ";
          index += std::to_string(row.index[k]);
        }
        csv << index << "," << format_g17(row.amplitude) << "," << format_g17(row.bound) << ","
            << (row.pass ? "true" : "false") << "\n";
      }
      std::filesystem::create_directories(options.out_dir);
      write_text_file(options.out_dir + "/weyl.csv", csv.str());

      const MeanEnergyReport mean = mean_energy_check(*torus, kernel, basis, points.size(),
                                                      config.diagnose_samples, config.seed);
      doc["mean_energy"] = Json{{"samples", mean.samples},
                                {"empirical_mean", mean.empirical_mean},
                                {"std_error", mean.std_error},
                                {"analytic_mean", mean.analytic_mean},
                                {"within_four_se", mean.within_four_se}};
      write_doc(options.out_dir, "diagnosis.json", doc);
      std::cout << "diagnose: certified=" << (weyl.certified_below_mean ? "true" : "false")
                << ", weyl all_pass=" << (weyl.all_pass ? "true" : "false") << "\n";
      return 0;
    }

    // hyperbolic model: no eigendata; report the geometric proxy only
    const auto& surface = std::get<BolzaSurface>(manifold);
    const NearestNeighborReport nn =
        nearest_neighbor_report(points, surface, config.baseline_samples, config.seed);
    doc["nearest_neighbor"] = Json{{"label", "heuristic"},
                                   {"min_nn", nn.min_nn},
                                   {"mean_nn", nn.mean_nn},
                                   {"baseline_mean_nn", nn.baseline_mean_nn},
                                   {"baseline_samples", nn.baseline_samples}};
    (void)kernel;
    write_doc(options.out_dir, "diagnosis.json", doc);
    std::cout << "diagnose: hyperbolic nearest-neighbor proxy written (heuristic)\n";
    return 0;
  });
}

int cmd_sweep(const CommandOptions& options) {
  return run_guarded("sweep", [&]() {
    const RunConfig config = load_effective_config(options);
    const Manifold manifold = config.make_manifold();
    const Torus& torus = require_torus(manifold, "sweep");
    const KernelPair kernel = config.make_kernel();

    std::ostringstream csv;
    csv << "N,best_energy,max_wm_sqrt_n,certified,max_bound_ratio,error\n";
    Json rows = Json::array();
    for (int n : config.sweep_n) {
      Json row;
      row["N"] = n;
      try {
        const SpectralBasis basis = make_basis(config, torus, kernel, n);
        OptimizeParams params = config.optimize;
        params.seed = config.seed;
        const MultistartResult outcome =
            multistart(manifold, kernel, &basis, n, params, config.eps_geo);
        const WeylReport weyl = weyl_report(outcome.best.config, basis);
        double max_wm_sqrt_n = 0.0;
        double max_ratio = 0.0;
        for (const WeylModeRow& mode_row : weyl.rows) {
          max_wm_sqrt_n = std::max(max_wm_sqrt_n, mode_row.amplitude * std::sqrt(double(n)));
          max_ratio = std::max(max_ratio, mode_row.amplitude / mode_row.bound);
        }
        csv << n << "," << format_g17(outcome.best.energy.value) << ","
            << format_g17(max_wm_sqrt_n) << ","
            << (outcome.best.certified_below_mean ? "true" : "false") << ","
            << format_g17(max_ratio) << ",\n";
        row["best_energy"] = outcome.best.energy.value;
        row["max_wm_sqrt_n"] = max_wm_sqrt_n;
        row["certified"] = outcome.best.certified_below_mean;
        row["max_bound_ratio"] = max_ratio;
        row["status"] = to_string(outcome.best.status);
      } catch (const std::exception& error) {
        std::string message = error.what();
        std::replace(message.begin(), message.end(), ',', ';');
        std::replace(message.begin(), message.end(), '\n', ' ');
        csv << n << ",,,,," << message << "\n";
        row["error"] = error.what();
      }
      rows.push_back(std::move(row));
    }
    std::filesystem::create_directories(options.out_dir);
    write_text_file(options.out_dir + "/sweep.csv", csv.str());
    Json doc = envelope("sweep", config);
    doc["rows"] = std::move(rows);
    doc["outputs"] = Json{{"sweep_csv", "sweep.csv"}};
    write_doc(options.out_dir, "sweep.json", doc);
    std::cout << "sweep: " << config.sweep_n.size() << " rows written\n";
    return 0;
  });
}

int cmd_group_audit(const CommandOptions& options) {
  return run_guarded("group-audit", [&]() {
    const RunConfig config = load_effective_config(options);
    const Manifold manifold = config.make_manifold();
    const BolzaSurface& surface = require_bolza(manifold, "group-audit");

    const double relation_residual = surface.relation_residual();
    const double area = surface.area_by_angle_defect();
    const double vertex_error = surface.vertex_equidistance_error();
    const auto elements = surface.elements_up_to(config.audit_radius);

    double min_abs_trace = std::numeric_limits<double>::infinity();
    for (const GroupElement& g : *elements)
      min_abs_trace = std::min(min_abs_trace, std::fabs(g.trace()));
    const double shortest_geodesic =
        elements->empty() ? std::numeric_limits<double>::quiet_NaN()
                          : 2.0 * std::acosh(0.5 * min_abs_trace);

    Json shells = Json::array();
    bool counts_even = true;
    const int shell_count = static_cast<int>(std::ceil(config.audit_radius));
    for (int k = 0; k < shell_count; ++k) {
      const double lo = k, hi = k + 1;
      long count = 0;
      for (const GroupElement& g : *elements)
        if (g.displacement >= lo && g.displacement < hi) ++count;
      counts_even = counts_even && (count % 2 == 0);
      shells.push_back(Json{{"displacement_min", lo}, {"displacement_max", hi}, {"count", count}});
    }

    const bool pass = relation_residual <= 1e-10 &&
                      std::fabs(area - surface.volume()) <= 1e-9 && counts_even;

    Json doc = envelope("group-audit", config);
    doc["result"] = Json{{"relation_residual", relation_residual},
                         {"vertex_equidistance_error", vertex_error},
                         {"area_by_angle_defect", area},
                         {"area_expected", surface.volume()},
                         {"systole_expected", surface.systole()},
                         {"shortest_closed_geodesic", number_or_null(shortest_geodesic)},
                         {"elements_within_radius", elements->size()},
                         {"audit_radius", config.audit_radius},
                         {"shells", std::move(shells)},
                         {"shell_counts_even", counts_even},
                         {"pass", pass}};
    write_doc(options.out_dir, "group_audit.json", doc);
    std::cout << "group-audit: " << (pass ? "PASS" : "FAIL") << ", relation residual "
              << relation_residual << "\n";
    return 0;
  });
}

}  // namespace repel
