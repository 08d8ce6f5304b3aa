#include "covgrid/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "covgrid/corpus.hpp"
#include "covgrid/decomposition.hpp"
#include "covgrid/error.hpp"
#include "covgrid/io.hpp"
#include "covgrid/planner.hpp"

namespace covgrid {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

struct Overrides {
  std::optional<double> radius;
  std::optional<double> speed;
  std::optional<std::string> method;
  std::optional<std::string> mode;
  std::optional<std::size_t> exact_cap;
  bool free_endpoints = false;
  bool heuristic_fallback = false;
  bool direct_nonconvex = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::optional<std::size_t> env_exact_cap() {
  const char* raw = std::getenv("COVGRID_EXACT_CAP");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') {
    throw ValidationError(std::string("COVGRID_EXACT_CAP is not an integer: '") + raw + "'");
  }
  return static_cast<std::size_t>(v);
}

// Scenario file values, then COVGRID_EXACT_CAP, then explicit flags.
void apply(const Overrides& o, Scenario& sc) {
  if (o.radius) sc.radius = *o.radius;
  if (o.speed) sc.speed = *o.speed;
  if (o.method) sc.method = method_from_string(*o.method);
  if (o.mode) sc.mode = plan_mode_from_string(*o.mode);
  if (const auto cap = env_exact_cap()) sc.exact_cap = *cap;
  if (o.exact_cap) sc.exact_cap = *o.exact_cap;
  if (o.free_endpoints) sc.free_endpoints = true;
  if (!(sc.radius > 0.0)) throw ValidationError("footprint radius must be positive");
  if (!(sc.speed > 0.0)) throw ValidationError("airspeed must be positive");
}

Scenario load_scenario(const std::string& path, const Overrides& o) {
  Scenario sc = parse_scenario(read_file(path));
  apply(o, sc);
  return sc;
}

Decomposition decompose(const Scenario& sc, bool direct_nonconvex) {
  if (sc.method == Method::kSgd) return sgd_decompose(sc.polygon, sc.radius);
  return agd_decompose(sc.polygon, sc.radius, {direct_nonconvex});
}

std::string f3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string f2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

int cmd_decompose(const std::string& input, const std::string& output, const Overrides& o,
                  std::ostream& out) {
  const Scenario sc = load_scenario(input, o);
  const Decomposition d = decompose(sc, o.direct_nonconvex);
  if (!output.empty()) write_file(output, write_decomposition(d));
  out << d.cells.size() << " cells, " << d.channels.size() << " channels\n";
  out << "channel,y_b,y_t_adj,l,n,e,delta\n";
  for (std::size_t i = 0; i < d.channels.size(); ++i) {
    const ChannelTrace& c = d.channels[i];
    out << i + 1 << "," << f3(c.y_bottom) << "," << f3(c.y_top_adjusted) << "," << f3(c.length)
        << "," << c.cells << "," << f3(c.excess) << "," << f3(c.delta) << "\n";
  }
  return kExitOk;
}

int cmd_plan(const std::string& input, const std::string& output, const Overrides& o,
             std::ostream& out) {
  const std::string text = read_file(input);
  std::vector<Point> centers;
  Scenario sc{Polygon({{0, 0}, {1, 0}, {0, 1}})};
  const bool is_decomposition = text.find("\"cells\"") != std::string::npos;
  if (is_decomposition) {
    apply(o, sc);
    centers = read_decomposition(text).centers();
  } else {
    sc = parse_scenario(text);
    apply(o, sc);
    centers = decompose(sc, o.direct_nonconvex).centers();
  }
  if (centers.size() < 2) throw ValidationError("planning needs at least 2 cells");

  const DistanceMatrix m = distance_matrix(centers, sc.speed);
  const SolverOptions options{sc.exact_cap, sc.free_endpoints};
  std::string doc;
  out << "mode,cells,t_cov_s,optimal\n";
  if (sc.mode == PlanMode::kPaper) {
    const ArcSolution sol = solve_paper_mode(m, options);
    doc = write_arc_solution(sol);
    out << "paper," << m.size() << "," << f2(sol.t_cov) << "," << (sol.optimal ? "true" : "false")
        << "\n";
  } else {
    PathPlan plan;
    if (sc.mode == PlanMode::kHeuristic) {
      plan = heuristic_path(m, sc.free_endpoints);
    } else if (m.size() > sc.exact_cap && o.heuristic_fallback) {
      plan = heuristic_path(m, sc.free_endpoints);
    } else {
      plan = solve_valid_path(m, options);
    }
    doc = write_plan(plan);
    out << to_string(plan.mode) << "," << m.size() << "," << f2(plan.t_cov) << ","
        << (plan.optimal ? "true" : "false") << "\n";
  }
  if (!output.empty()) write_file(output, doc);
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SizeLimitExceeded*>(&e)) return kExitSizeLimit;
  if (dynamic_cast<const DegeneratePolygon*>(&e)) return kExitDegenerate;
  return kExitInputError;
}

int cmd_compare(const std::vector<std::string>& inputs, std::size_t random_cases,
                std::uint64_t seed, const std::string& output, const Overrides& o,
                std::ostream& out, std::ostream& err) {
  std::vector<ComparisonCase> rows;
  int status = kExitOk;
  auto run_case = [&](const std::string& name, const Scenario& sc) {
    rows.push_back({name, compare_methods(sc.polygon, sc.radius, sc.speed,
                                          {sc.exact_cap, sc.free_endpoints})});
  };
  for (const std::string& path : inputs) {
    try {
      run_case(std::filesystem::path(path).stem().string(), load_scenario(path, o));
    } catch (const std::exception& e) {
      err << "case " << path << ": " << e.what() << "\n";
      if (status == kExitOk) status = exit_code_for(e);
    }
  }
  for (std::size_t k = 0; k < random_cases; ++k) {
    const std::uint64_t case_seed = seed + k;
    Scenario sc{random_convex_polygon(case_seed)};
    try {
      apply(o, sc);
      run_case("random-" + std::to_string(case_seed), sc);
    } catch (const std::exception& e) {
      err << "case random-" << case_seed << ": " << e.what() << "\n";
      if (status == kExitOk) status = exit_code_for(e);
    }
  }
  const std::string csv = write_comparison_csv(rows);
  out << csv;
  if (!output.empty()) write_file(output, csv);
  return status;
}

int cmd_render(const std::string& input, const std::string& plan_path, const std::string& output,
               std::ostream& out) {
  const Decomposition d = read_decomposition(read_file(input));
  std::optional<PathPlan> plan;
  if (!plan_path.empty()) {
    plan = read_plan(read_file(plan_path));
    for (std::size_t i : plan->order) {
      if (i >= d.cells.size()) throw ValidationError("plan refers to a cell the decomposition lacks");
    }
  }
  const std::string svg = render_svg(d, plan);
  if (output.empty()) {
    out << svg;
  } else {
    write_file(output, svg);
  }
  return kExitOk;
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--r", o.radius, "Camera footprint radius in meters");
  cmd->add_option("--v", o.speed, "UAV airspeed in m/s");
  cmd->add_option("--method", o.method, "Decomposition method")
      ->check(CLI::IsMember({"agd", "sgd"}));
  cmd->add_option("--mode", o.mode, "Planning mode")
      ->check(CLI::IsMember({"paper", "valid", "heuristic"}));
  cmd->add_option("--exact-cap", o.exact_cap, "Largest instance solved exactly");
  cmd->add_flag("--free-endpoints", o.free_endpoints, "Let the solver choose start and end cells");
  cmd->add_flag("--direct-nonconvex", o.direct_nonconvex,
                "Sweep non-convex polygons directly instead of via their hull");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid decomposition and coverage-time planning for polygonal search areas",
               "covgrid"};
  app.require_subcommand(1);

  Overrides o;
  std::string input, output, plan_path;
  std::vector<std::string> inputs;
  std::size_t cases = 0;
  std::uint64_t seed = 1;

  CLI::App* decompose = app.add_subcommand("decompose", "Decompose a scenario polygon into cells");
  decompose->add_option("--input", input, "Scenario file (JSON or WKT)")->required();
  decompose->add_option("--output", output, "Decomposition JSON to write");
  add_overrides(decompose, o);

  CLI::App* plan = app.add_subcommand("plan", "Compute a visit order over the cells");
  plan->add_option("--input", input, "Scenario or decomposition JSON")->required();
  plan->add_option("--output", output, "Plan JSON to write");
  plan->add_flag("--heuristic-fallback", o.heuristic_fallback,
                 "Use the heuristic instead of failing above the exact cap");
  add_overrides(plan, o);

  CLI::App* compare = app.add_subcommand("compare", "Compare AGD against SGD as a CSV table");
  compare->add_option("--input", inputs, "Scenario files (repeatable)");
  compare->add_option("--cases", cases, "Number of random convex polygons to add");
  compare->add_option("--seed", seed, "Seed of the first random polygon");
  compare->add_option("--output", output, "CSV file to write as well");
  add_overrides(compare, o);

  CLI::App* render = app.add_subcommand("render", "Render a decomposition (and plan) as SVG");
  render->add_option("--input", input, "Decomposition JSON")->required();
  render->add_option("--plan", plan_path, "Plan JSON with a visit order");
  render->add_option("--output", output, "SVG file to write (default stdout)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*decompose) return cmd_decompose(input, output, o, out);
    if (*plan) return cmd_plan(input, output, o, out);
    if (*compare) {
      if (inputs.empty() && cases == 0) {
        throw ValidationError("compare needs --input files or --cases N");
      }
      return cmd_compare(inputs, cases, seed, output, o, out, err);
    }
    if (*render) return cmd_render(input, plan_path, output, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitInputError;
}

}  // namespace covgrid
