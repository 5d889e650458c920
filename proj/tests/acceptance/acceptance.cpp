// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "oracles.hpp"
#include "socioplex/obstruction.hpp"
#include "socioplex/persistence.hpp"
#include "socioplex/r_metric.hpp"
#include "socioplex/socioplex_builder.hpp"

#ifdef SOCIOPLEX_HAVE_CLI
#include "cli.hpp"
#endif

using namespace socioplex;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

// Shared tally for the representative-cycle criterion.
struct RepresentativeTally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void check(const PersistentHomology& ph, const std::string& where) {
    for (const auto& bar : ph.diagram().of_dim(1)) {
      ++checked;
      const auto z = ph.representative_positions(bar);
      double top = 0.0;
      for (auto p : z) top = std::max(top, ph.filtration()[p].value);
      if (!chain_boundary(ph.filtration(), z).empty() || top != bar.birth) {
        if (!failed) first_failure = where;
        ++failed;
      }
    }
  }
};

RepresentativeTally g_reps;

bool betti_agree(const DistanceMatrix& m, const PersistenceDiagram& d, int max_dim,
                 std::string* where = nullptr) {
  for (double M : testing::distinct_scales(m)) {
    const auto beta = testing::dense_betti(m, max_dim, M);
    for (int k = 0; k <= max_dim; ++k)
      if (betti_at(d, M, k) != beta[static_cast<std::size_t>(k)]) {
        if (where)
          *where = "beta_" + std::to_string(k) + " at " + format_scale(M) + ": barcode " +
                   std::to_string(betti_at(d, M, k)) + ", oracle " +
                   std::to_string(beta[static_cast<std::size_t>(k)]);
        return false;
      }
  }
  return true;
}

Outcome example_table_fixture() {
  Outcome o;
  const auto start = Clock::now();
  const auto m = testing::example_table();
  const PersistentHomology ph(build_filtration(m, 2));
  const double t = seconds_since(start);
  const auto& d = ph.diagram();

  const auto h0 = d.of_dim(0);
  std::size_t unit = 0, essential = 0;
  for (const auto& i : h0) {
    if (i.birth == 0 && i.death == 1) ++unit;
    if (i.birth == 0 && i.essential()) ++essential;
  }
  o.require(h0.size() == 10 && unit == 9 && essential == 1, "H0 is not nine [0,1) plus one [0,inf)");

  std::multiset<std::pair<double, double>> h1;
  for (const auto& i : d.of_dim(1)) h1.emplace(i.birth, i.death);
  o.require(h1 == std::multiset<std::pair<double, double>>{{3, 9}, {4, 7}},
            "H1 is not exactly {[3,9), [4,7)}");

  std::string where;
  o.require(betti_agree(m, d, 2, &where), "rank oracle disagrees: " + where);

  const auto bm = boundary_matrix(ph.filtration());
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& p : ph.reduction().pairs) pairs.emplace(p.birth, p.death);
  o.require(pairs == testing::rank_pairing(bm.columns), "pairing differs from the rank oracle");

  g_reps.check(ph, "example table");
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
  if (o.pass)
    o.detail = "H0 9x[0,1) + [0,inf), H1 {[3,9),[4,7)}, oracle agrees; pipeline " +
               format_scale(std::round(t * 1e4) / 1e4) + " s, with oracle " +
               format_scale(std::round(seconds_since(start) * 100) / 100) + " s";
  return o;
}

Outcome betti_spot_checks() {
  Outcome o;
  const auto m = testing::example_table();
  const auto d = barcodes(build_filtration(m, 2));
  const std::vector<double> scales = {0, 1, 2, 4, 5, 7, 8};
  const std::vector<int> b0 = {10, 1, 1, 1, 1, 1, 1};
  const std::vector<int> b1 = {0, 0, 0, 2, 2, 1, 1};
  std::string got0, got1;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const auto oracle = testing::dense_betti(m, 2, scales[i]);
    const int x0 = betti_at(d, scales[i], 0), x1 = betti_at(d, scales[i], 1);
    got0 += (i ? "," : "") + std::to_string(x0);
    got1 += (i ? "," : "") + std::to_string(x1);
    o.require(oracle[0] == b0[i] && oracle[1] == b1[i],
              "oracle disagrees with the expected values at M=" + format_scale(scales[i]));
    o.require(x0 == b0[i] && x1 == b1[i], "barcode Betti numbers differ at M=" + format_scale(scales[i]));
  }
  if (o.pass) o.detail = "beta0={" + got0 + "} beta1={" + got1 + "}";
  return o;
}

Outcome square_obstruction() {
  Outcome o;
  const auto m = testing::square();
  const PersistentHomology ph(build_filtration(m, 2));
  const auto h1 = ph.diagram().of_dim(1);
  o.require(h1.size() == 1 && h1[0].birth == 1 && h1[0].death == 2, "H1 is not a single [1,2)");
  const auto reports = find_obstructions(ph, m, 1.5);
  o.require(reports.size() == 1, "expected one report, got " + std::to_string(reports.size()));
  if (reports.size() == 1) {
    const auto& r = reports[0];
    o.require(r.missing_links == std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {1, 3}},
              "missing links are not exactly AC and BD");
    o.require(r.threshold_gap == 0.5, "threshold_gap " + format_scale(r.threshold_gap));
  }
  g_reps.check(ph, "square");
  if (o.pass) o.detail = "H1 [1,2); missing A-C, B-D; gap 0.5";
  return o;
}

Outcome metric_theorem() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<std::size_t> size(1, 20);
  std::size_t violations = 0, pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto agents = testing::random_agents(rng, size(rng));
    const auto w = testing::random_weights(rng);
    const auto report = verify_metric(distance_matrix(agents, w), 1e-12);
    pairs += agents.size() * (agents.size() - 1) / 2;
    violations += report.triangle_violations.size() + report.asymmetric.size() +
                  report.nonzero_diagonal.size() + report.negative.size() +
                  report.zero_off_diagonal.size();
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "1000 sets, " + std::to_string(pairs) + " pairs, 0 violations";
  return o;
}

Outcome monotonicity() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 7.0);
  std::size_t checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = trial % 2 ? testing::random_matrix(rng, 4 + trial % 6)
                             : testing::random_real_matrix(rng, 4 + trial % 6);
    const auto f = build_filtration(m, 3);
    for (int k = 0; k < 5; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      const auto small = build_socioplex(m, a, 3);
      const auto large = build_socioplex(m, b, 3);
      for (int d = 0; d <= 3; ++d)
        for (const auto& s : small.simplices(d)) o.require(large.contains(s.vertices), "inclusion fails");
      for (double M : {a, b})
        for (int d = 0; d <= 3; ++d)
          o.require(f.prefix(M).simplices(d) == build_socioplex(m, M, 3).simplices(d),
                    "prefix differs from the socioplex");
      ++checks;
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " threshold pairs, inclusion and prefix exact";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::size_t scales = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    const auto m = trial % 2 ? testing::random_matrix(rng, n) : testing::random_real_matrix(rng, n);
    const int max_dim = 1 + trial % 2;
    const PersistentHomology ph(build_filtration(m, max_dim));
    std::string where;
    o.require(betti_agree(m, ph.diagram(), max_dim, &where),
              "trial " + std::to_string(trial) + ": " + where);
    scales += testing::distinct_scales(m).size();
    g_reps.check(ph, "random trial " + std::to_string(trial));
  }
  const double t = seconds_since(start);
  o.require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (o.pass)
    o.detail = "200 matrices, " + std::to_string(scales) + " scales, " +
               format_scale(std::round(t * 100) / 100) + " s";
  return o;
}

Outcome representative_contract() {
  Outcome o;
  o.require(g_reps.checked > 0, "no representatives were checked");
  o.require(g_reps.failed == 0,
            std::to_string(g_reps.failed) + " bad representatives, first in " + g_reps.first_failure);
  if (o.pass) o.detail = std::to_string(g_reps.checked) + " dim-1 cycles, boundary 0, max value = birth";
  return o;
}

Outcome performance() {
  Outcome o;
  std::mt19937_64 rng(50);
  const auto agents = testing::random_agents(rng, 50);
  const auto start = Clock::now();
  const auto m = distance_matrix(agents, Weights{});
  const PersistentHomology ph(build_filtration(m, 3));
  const double t = seconds_since(start);
  o.require(t < 10.0, "runtime " + std::to_string(t) + " s");
  if (o.pass)
    o.detail = std::to_string(ph.filtration().size()) + " simplices, " +
               std::to_string(ph.diagram().size()) + " bars, " +
               format_scale(std::round(t * 100) / 100) + " s";
  return o;
}

#ifdef SOCIOPLEX_HAVE_CLI
Outcome cli_determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / ("socioplex_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::mt19937_64 rng(9);
  const auto agents = (dir / "agents.csv").string();
  save_agents(testing::random_agents(rng, 15), agents, AgentFormat::csv);
  const auto matrix = (dir / "m.json").string();
  save_distance_matrix(testing::example_table(), matrix);

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const auto out_file = dir / "out";
  const std::vector<std::vector<std::string>> commands = {
      {"ingest", "--agents", agents, "--out", out_file.string() + ".json"},
      {"distances", "--agents", agents, "--verify"},
      {"socioplex", "--dist", matrix, "--threshold", "0.6", "--relative", "--dot", "-", "--simplices", "-"},
      {"barcodes", "--dist", matrix, "--format", "text"},
      {"barcodes", "--agents", agents, "--format", "json", "--representatives"},
      {"barcodes", "--dist", matrix, "--format", "svg"},
      {"obstructions", "--dist", matrix, "--threshold", "5", "--format", "json"},
      {"obstructions", "--agents", agents, "--threshold", "1.5"},
      {"calibrate", "--agents", agents, "--grid", "0.1"},
  };
  std::set<std::string> names;
  for (const auto& args : commands) {
    std::string first;
    for (int run = 0; run < 3; ++run) {
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      std::string blob = std::to_string(code) + '\n' + out.str() + '\n' + err.str();
      if (fs::exists(out_file.string() + ".json")) blob += slurp(out_file.string() + ".json");
      o.require(code == cli::kExitOk, args[0] + " exited " + std::to_string(code) + ": " + err.str());
      if (run == 0)
        first = blob;
      else
        o.require(blob == first, args[0] + " output differs between runs");
    }
    names.insert(args[0]);
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(names.size()) + " subcommands x 3 runs byte-identical";
  return o;
}
#endif

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"example-table barcodes", example_table_fixture},
      {"betti spot checks", betti_spot_checks},
      {"square obstruction", square_obstruction},
      {"metric theorem", metric_theorem},
      {"monotonicity and prefix", monotonicity},
      {"oracle equivalence", oracle_equivalence},
      {"representative cycles", representative_contract},
      {"performance smoke", performance},
#ifdef SOCIOPLEX_HAVE_CLI
      {"cli determinism", cli_determinism},
#else
      {"cli determinism", [] { return Outcome{false, "built without the CLI"}; }},
#endif
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].name << ": "
              << o.detail << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures ? 1 : 0;
}
