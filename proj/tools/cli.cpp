#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "barcode_svg.hpp"
#include "socioplex/agent_store.hpp"
#include "socioplex/errors.hpp"
#include "socioplex/obstruction.hpp"
#include "socioplex/persistence.hpp"
#include "socioplex/r_metric.hpp"
#include "socioplex/socioplex_builder.hpp"
#include "socioplex/weight_calibration.hpp"

namespace socioplex::cli {

namespace {

// Raised for option combinations CLI11 cannot express; maps to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixSource {
  std::string dist_path;
  std::string agents_path;
  std::string agents_format;  // "", "csv", "json"
  std::string weights;
  bool calibrate = false;
  double grid = 0.05;
  std::string labels_path;
};

struct Common {
  std::optional<long long> seed;
  std::optional<std::size_t> simplex_cap;
};

AgentFormat parse_format(const std::string& name, const std::string& path) {
  if (name.empty()) return agent_format_from_path(path);
  return name == "csv" ? AgentFormat::csv : AgentFormat::json;
}

void add_matrix_source(CLI::App* sub, MatrixSource& src) {
  auto* dist = sub->add_option("--dist", src.dist_path, "Distance matrix JSON");
  auto* agents = sub->add_option("--agents", src.agents_path, "Agent file (CSV or JSON)");
  dist->excludes(agents);
  sub->add_option("--agents-format", src.agents_format,
                  "Agent file format (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--weights", src.weights, "Weights k1,k2,k3,k4,k5 summing to 1");
  sub->add_flag("--calibrate", src.calibrate, "Fit weights from recorded collaborations");
  sub->add_option("--grid", src.grid, "Simplex grid step for --calibrate");
  sub->add_option("--labels", src.labels_path, "Labelled pairs file for --calibrate");
}

Weights calibrated_weights(const AgentSet& agents, const MatrixSource& src, std::ostream& err) {
  CalibrationConfig config;
  config.grid_step = src.grid;
  LabelSet labels;
  if (src.labels_path.empty()) {
    config.label_source = LabelSource::d4_labels;
  } else {
    labels = load_label_pairs(src.labels_path);
  }
  const auto w = fit_weights(agents, config, labels);
  const auto& scored = config.label_source == LabelSource::d4_labels ? collaboration_labels(agents) : labels;
  err << "calibrated weights " << w.to_string() << " (AUC " << format_scale(score_weights(agents, w, scored))
      << ")\n";
  return w;
}

DistanceMatrix matrix_from(const MatrixSource& src, std::ostream& err) {
  if (!src.dist_path.empty()) {
    if (!src.weights.empty() || src.calibrate)
      throw UsageError("--weights/--calibrate apply to --agents input only");
    return load_distance_matrix(src.dist_path);
  }
  if (src.agents_path.empty()) throw UsageError("one of --dist or --agents is required");
  if (!src.weights.empty() && src.calibrate)
    throw UsageError("--weights and --calibrate are mutually exclusive");
  const auto agents = load_agents(src.agents_path, parse_format(src.agents_format, src.agents_path));
  Weights w;
  if (src.calibrate) {
    w = calibrated_weights(agents, src, err);
  } else if (!src.weights.empty()) {
    w = Weights::parse(src.weights);
  } else {
    err << "no --weights given; using equal weights " << w.to_string() << "\n";
  }
  return distance_matrix(agents, w);
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path);
  file << content;
  if (!file) throw IoError("write failed for " + path);
}

std::size_t simplex_cap(const Common& common) {
  if (common.simplex_cap) return *common.simplex_cap;
  if (const char* env = std::getenv("SOCIOPLEX_SIMPLEX_CAP"); env && *env) {
    std::size_t cap = 0;
    const std::string_view text(env);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || cap == 0)
      throw UsageError("SOCIOPLEX_SIMPLEX_CAP must be a positive integer, got \"" +
                       std::string(text) + "\"");
    return cap;
  }
  return kDefaultSimplexCap;
}

double threshold_from(const DistanceMatrix& m, double threshold, bool relative,
                      std::ostream& err) {
  const double absolute = resolve_threshold(m, threshold, relative);
  if (relative)
    err << "relative threshold " << format_scale(threshold) << " x diameter "
        << format_scale(diameter(m)) << " = " << format_scale(absolute) << "\n";
  return absolute;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Research-distance socioplexes and their persistent homology", "socioplex"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Reserved; accepted and ignored");
  app.add_option("--simplex-cap", common.simplex_cap,
                 "Maximum simplices in a filtration (env SOCIOPLEX_SIMPLEX_CAP)")
      ->check(CLI::PositiveNumber);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load and validate an agent file");
  std::string ingest_path, ingest_format, ingest_out, ingest_out_format;
  ingest->add_option("--agents", ingest_path, "Agent file (CSV or JSON)")->required();
  ingest->add_option("--format", ingest_format)->check(CLI::IsMember({"csv", "json"}));
  ingest->add_option("--out", ingest_out, "Write the loaded agents here");
  ingest->add_option("--out-format", ingest_out_format)->check(CLI::IsMember({"csv", "json"}));

  // distances
  auto* distances = app.add_subcommand("distances", "Pairwise research distances as JSON");
  MatrixSource dist_src;
  std::string dist_out;
  bool verify = false;
  add_matrix_source(distances, dist_src);
  distances->add_option("--out", dist_out, "Output path (default stdout)");
  distances->add_flag("--verify", verify, "Check the metric axioms; exit 1 on violations");

  // socioplex
  auto* socioplex = app.add_subcommand("socioplex", "Flag complex at a threshold");
  MatrixSource plex_src;
  double plex_threshold = 0.0;
  bool plex_relative = false;
  int plex_max_dim = 2;
  std::string plex_dot, plex_simplices;
  add_matrix_source(socioplex, plex_src);
  socioplex->add_option("--threshold", plex_threshold, "Threshold M")->required();
  socioplex->add_flag("--relative", plex_relative, "Threshold is a fraction of the diameter");
  socioplex->add_option("--max-dim", plex_max_dim)->check(CLI::NonNegativeNumber);
  socioplex->add_option("--dot", plex_dot, "Write the 1-skeleton as Graphviz DOT");
  socioplex->add_option("--simplices", plex_simplices, "Write the simplex list as JSON");

  // barcodes
  auto* bars = app.add_subcommand("barcodes", "Persistence barcodes of the Rips filtration");
  MatrixSource bar_src;
  int bar_max_dim = 2;
  double bar_max_scale = kInfinity;
  std::string bar_format = "text", bar_out, bar_mode = "twist";
  bool keep_zero = false, with_reps = false;
  add_matrix_source(bars, bar_src);
  bars->add_option("--max-dim", bar_max_dim)->check(CLI::NonNegativeNumber);
  bars->add_option("--max-scale", bar_max_scale, "Largest filtration value (default: unbounded)");
  bars->add_option("--format", bar_format, "Output format: text, json or svg")->check(CLI::IsMember({"text", "json", "svg"}));
  bars->add_option("--out", bar_out, "Output path (default stdout)");
  bars->add_flag("--keep-zero-length", keep_zero, "Keep bars with birth == death");
  bars->add_flag("--representatives", with_reps, "Include representative cycles (json)");
  bool all_dims = false;
  bars->add_flag("--all-dims", all_dims,
                 "Also print the top dimension (its bars are truncation artifacts)");
  bars->add_option("--reduction", bar_mode)->check(CLI::IsMember({"standard", "twist"}));

  // obstructions
  auto* obstructions = app.add_subcommand("obstructions", "Persistent cycles alive at a threshold");
  MatrixSource obs_src;
  double obs_threshold = 0.0, obs_min_persistence = 0.0;
  bool obs_relative = false, obs_voids = false;
  int obs_max_dim = 2;
  std::string obs_format = "table", obs_out;
  add_matrix_source(obstructions, obs_src);
  obstructions->add_option("--threshold", obs_threshold, "Working threshold M")->required();
  obstructions->add_flag("--relative", obs_relative, "Threshold is a fraction of the diameter");
  obstructions->add_option("--min-persistence", obs_min_persistence)
      ->check(CLI::NonNegativeNumber);
  obstructions->add_option("--max-dim", obs_max_dim)->check(CLI::Range(1, 3));
  obstructions->add_flag("--voids", obs_voids, "Also report 2-dimensional voids");
  obstructions->add_option("--format", obs_format, "Output format: table or json")->check(CLI::IsMember({"table", "json"}));
  obstructions->add_option("--out", obs_out, "Output path (default stdout)");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Fit weights by grid search on AUC");
  std::string cal_agents, cal_format, cal_labels;
  double cal_grid = 0.05;
  calibrate->add_option("--agents", cal_agents, "Agent file (CSV or JSON)")->required();
  calibrate->add_option("--grid", cal_grid, "Simplex grid step");
  calibrate->add_option("--labels", cal_labels,
                        "Pairs file (idA,idB per line); default: recorded collaborations");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (common.seed) err << "warning: --seed is accepted but unused; no step is randomized\n";

  try {
    if (ingest->parsed()) {
      const auto agents = load_agents(ingest_path, parse_format(ingest_format, ingest_path));
      const auto report = validate(agents);
      out << "agents: " << agents.size() << "\n";
      std::size_t errors = 0;
      for (const auto& issue : report.issues) {
        const bool warning = issue.reason.starts_with("dangling");
        if (!warning) ++errors;
        out << (warning ? "warning: " : "error: ") << issue.agent_id << ": " << issue.reason << "\n";
      }
      if (!ingest_out.empty()) {
        const auto fmt = ingest_out_format.empty() ? agent_format_from_path(ingest_out)
                                                   : parse_format(ingest_out_format, ingest_out);
        save_agents(agents, ingest_out, fmt);
      }
      return errors ? kExitDataError : kExitOk;
    }

    if (distances->parsed()) {
      const auto m = matrix_from(dist_src, err);
      if (verify) {
        const auto report = verify_metric(m, Weights::kSumTolerance);
        err << "metric check: " << report.triangle_violations.size() << " triangle, "
            << report.asymmetric.size() << " asymmetric, " << report.nonzero_diagonal.size()
            << " diagonal, " << report.negative.size() << " negative, "
            << report.zero_off_diagonal.size() << " zero off-diagonal\n";
        for (const auto& t : report.triangle_violations)
          err << "  d(" << m.ids()[t.i] << "," << m.ids()[t.k] << ") > d(" << m.ids()[t.i] << ","
              << m.ids()[t.j] << ") + d(" << m.ids()[t.j] << "," << m.ids()[t.k] << ")\n";
        emit(distance_matrix_to_json(m), dist_out, out);
        return report.ok() ? kExitOk : kExitDataError;
      }
      emit(distance_matrix_to_json(m), dist_out, out);
      return kExitOk;
    }

    if (socioplex->parsed()) {
      const auto m = matrix_from(plex_src, err);
      const double threshold = threshold_from(m, plex_threshold, plex_relative, err);
      const auto complex = build_socioplex(m, threshold, plex_max_dim);
      out << "threshold " << format_scale(threshold) << "\n";
      for (int d = 0; d <= complex.max_dim(); ++d)
        out << "dim " << d << ": " << complex.count(d) << "\n";
      if (!plex_dot.empty()) {
        std::ostringstream dot;
        write_dot(dot, m, threshold);
        emit(dot.str(), plex_dot, out);
      }
      if (!plex_simplices.empty()) emit(simplices_to_json(complex), plex_simplices, out);
      return kExitOk;
    }

    if (bars->parsed()) {
      const auto m = matrix_from(bar_src, err);
      const auto mode = bar_mode == "standard" ? ReductionMode::standard : ReductionMode::twist;
      PersistentHomology ph(build_filtration(m, bar_max_dim, bar_max_scale, simplex_cap(common)),
                            {mode, with_reps}, keep_zero);
      // The top dimension of a truncated Rips complex has no cofaces to kill its
      // classes, so those bars are not meaningful; report dimensions below it.
      PersistenceDiagram diagram = ph.diagram();
      if (bar_max_dim >= 1 && !all_dims) {
        std::erase_if(diagram.intervals,
                      [&](const Interval& i) { return i.dim >= bar_max_dim; });
      }
      if (bar_format == "text") {
        emit(diagram_to_text(diagram), bar_out, out);
      } else if (bar_format == "json") {
        if (with_reps) {
          std::vector<std::vector<Simplex>> reps;
          for (const auto& bar : diagram.intervals) {
            if (bar.dim == 0) {
              std::vector<Simplex> component;
              for (auto v : ph.component_vertices(bar)) component.push_back({{v}, 0.0});
              reps.push_back(std::move(component));
            } else {
              reps.push_back(ph.representative_cycle(bar));
            }
          }
          emit(diagram_to_json(diagram, &reps), bar_out, out);
        } else {
          emit(diagram_to_json(diagram), bar_out, out);
        }
      } else {
        SvgOptions svg;
        svg.allow_empty = true;
        if (std::isfinite(bar_max_scale)) svg.max_scale = bar_max_scale;
        emit(render_barcode_svg(diagram, svg), bar_out, out);
      }
      return kExitOk;
    }

    if (obstructions->parsed()) {
      const auto m = matrix_from(obs_src, err);
      const double threshold = threshold_from(m, obs_threshold, obs_relative, err);
      const int report_dim = obs_voids ? 2 : 1;
      const int filtration_dim = std::max(obs_max_dim, report_dim + 1);
      PersistentHomology ph(build_filtration(m, filtration_dim, kInfinity, simplex_cap(common)));
      const auto reports = find_obstructions(ph, m, threshold, {obs_min_persistence, report_dim});
      emit(obs_format == "json" ? obstructions_to_json(reports, m)
                                : obstructions_to_table(reports, m),
           obs_out, out);
      return kExitOk;
    }

    if (calibrate->parsed()) {
      const auto agents = load_agents(cal_agents, agent_format_from_path(cal_agents));
      MatrixSource src;
      src.grid = cal_grid;
      src.labels_path = cal_labels;
      const auto w = calibrated_weights(agents, src, err);
      out << w.to_string() << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace socioplex::cli
