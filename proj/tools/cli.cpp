#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "projnorm/counterexample.hpp"
#include "projnorm/error.hpp"
#include "projnorm/mesh.hpp"
#include "projnorm/mesh_io.hpp"
#include "projnorm/projection.hpp"
#include "projnorm/report.hpp"

namespace projnorm::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma - start);
    items.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int to_int(std::string_view text) {
  const std::string s(trim(text));
  char* end = nullptr;
  errno = 0;
  const long value = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno == ERANGE || value < INT32_MIN || value > INT32_MAX) {
    throw UsageError("not an integer: '" + s + "'");
  }
  return static_cast<int>(value);
}

double to_real(std::string_view text) {
  const std::string s(trim(text));
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || errno == ERANGE) throw UsageError("not a number: '" + s + "'");
  return value;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << body;
  if (!file) throw UsageError("failed writing '" + path + "'");
}

std::string rad_to_deg(double radians) { return format_real(radians * 180.0 / M_PI, 12); }

// Commands.

struct MeshArgs {
  std::string kind;
  int rings = 1;
  double ratio = 0.1;
  int dim = 3;
  int cells = 1;
  std::string breakpoints;
  std::string out = "mesh.json";
};

int cmd_mesh(const MeshArgs& a, std::ostream& out) {
  SimplicialMesh mesh = [&] {
    if (a.kind == "counterexample2d") return build_counterexample_2d(a.rings, a.ratio);
    if (a.kind == "pyramid") return build_pyramid_partition(a.rings, a.ratio, a.dim);
    if (a.kind == "uniform") return build_uniform_square(a.cells);
    return build_interval_partition(parse_real_list(a.breakpoints));
  }();
  write_file(a.out, mesh_to_json(mesh));
  out << "dim " << mesh.dim() << '\n'
      << "vertices " << mesh.num_vertices() << '\n'
      << "simplices " << mesh.num_simplices() << '\n';
  if (mesh.dim() == 2) {
    const AngleStats angles = angle_stats(mesh);
    out << "min_angle_deg " << rad_to_deg(angles.min_angle) << '\n'
        << "max_angle_deg " << rad_to_deg(angles.max_angle) << '\n';
  }
  out << "wrote " << a.out << '\n';
  return kSuccess;
}

struct ProjectArgs {
  std::string mesh;
  bool oscillating = false;
  std::string values;
  std::string out = "report.json";
};

std::string read_values_argument(const std::string& values) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(values, ec)) return values;
  std::ifstream file(values);
  std::string body((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  std::replace(body.begin(), body.end(), '\n', ',');
  while (!body.empty() && (body.back() == ',' || std::isspace(static_cast<unsigned char>(body.back())))) {
    body.pop_back();
  }
  return body;
}

int cmd_project(const ProjectArgs& a, std::ostream& out) {
  const SimplicialMesh mesh = read_mesh_file(a.mesh);
  CellwiseConstant f;
  if (a.oscillating) {
    f = oscillating_data(mesh);
  } else {
    f.values = parse_real_list(read_values_argument(a.values));
  }
  const ProjectionReport report = make_projection_report(mesh, f);
  std::ostringstream body;
  write_report_json(body, mesh, report);
  write_file(a.out, body.str());
  out << "sup_norm " << format_real(report.sup_norm, 12) << '\n'
      << "residual " << format_real(report.residual, 3) << '\n'
      << "exact_operator_norm " << format_real(report.exact_norm.norm, 12) << '\n'
      << "wrote " << a.out << '\n';
  return kSuccess;
}

int cmd_norm(const std::string& mesh_path, std::ostream& out) {
  const SimplicialMesh mesh = read_mesh_file(mesh_path);
  const OperatorNorm exact = exact_operator_norm(mesh);
  const NormalizedSystem system =
      normalized_system(mesh, CellwiseConstant{std::vector<double>(mesh.num_simplices(), 1.0)});
  const double bound = inverse_infinity_norm_bound(system);
  const double c0 = min_neighbor_coefficient(mesh, system);
  out << "exact_operator_norm " << format_real(exact.norm, 12) << '\n'
      << "argmax_vertex " << exact.argmax << '\n'
      << "ainv_bound " << format_real(bound, 12) << '\n'
      << "c0 " << format_real(c0, 12) << '\n';
  if (mesh.dim() == 2) {
    const CoefficientBoundCheck prop = coefficient_bound_check(mesh);
    out << "coefficient_bound " << format_real(prop.bound, 12) << '\n'
        << "coefficient_bound_satisfied " << (prop.satisfied ? "true" : "false") << '\n';
  }
  out << "chain_exact_le_ainv_bound " << (exact.norm <= bound + 1e-8 ? "true" : "false") << '\n';
  return kSuccess;
}

struct ReproduceArgs {
  bool theorem = false;
  bool limit = false;
  bool pyramid = false;
  std::string rings;
  std::string ratios = "0.01";
  int dim = 0;
  std::string out;
  bool skip_exact = false;
};

void emit_csv(const ReproduceArgs& a, const std::vector<SweepRecord>& records, std::ostream& out) {
  std::ostringstream csv;
  write_sweep_csv(csv, records);
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_file(a.out, csv.str());
    out << "wrote " << a.out << " (" << records.size() << " rows)\n";
  }
}

std::string describe(const SweepRecord& r) {
  return "J=" + std::to_string(r.rings) + " t=" + format_real(r.ratio, 12) +
         " d=" + std::to_string(r.dim) + " sup_norm=" + format_real(r.sup_norm, 12);
}

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out, std::ostream& err) {
  if (a.theorem + a.limit + a.pyramid != 1) {
    throw UsageError("choose exactly one of --theorem, --limit, --pyramid");
  }
  if (a.rings.empty()) throw UsageError("--J is required");
  const std::vector<int> rings = parse_int_list(a.rings);
  const std::vector<double> ratios = parse_real_list(a.ratios);
  const SweepOptions options{!a.skip_exact};
  std::vector<SweepRecord> records;
  int failures = 0;

  if (a.theorem || a.limit) {
    if (a.dim != 0 && a.dim != 2) throw UsageError("--theorem and --limit are planar; use --d 2");
  }

  if (a.theorem) {
    for (double t : ratios) {
      for (const auto& r : growth_sweep(rings, t, 2, options)) records.push_back(r);
    }
    emit_csv(a, records, out);
    for (const auto& r : records) {
      if (!(r.sup_norm >= 2.0 * r.rings)) {
        err << "failing row: " << describe(r) << " < 2J=" << 2 * r.rings << '\n';
        ++failures;
      }
    }
  } else if (a.limit) {
    for (int J : rings) {
      const auto study = convergence_study(J, ratios, 2, options);
      records.insert(records.end(), study.begin(), study.end());
      std::vector<SweepRecord> by_ratio = study;
      std::stable_sort(by_ratio.begin(), by_ratio.end(),
                       [](const SweepRecord& x, const SweepRecord& y) { return x.ratio > y.ratio; });
      for (std::size_t k = 1; k < by_ratio.size(); ++k) {
        if (!(by_ratio[k].limit_error < by_ratio[k - 1].limit_error)) {
          err << "failing row: " << describe(by_ratio[k])
              << " limit_error=" << format_real(by_ratio[k].limit_error, 12)
              << " does not decrease from t=" << format_real(by_ratio[k - 1].ratio, 12) << '\n';
          ++failures;
        }
      }
    }
    emit_csv(a, records, out);
  } else {
    const int dim = a.dim == 0 ? 3 : a.dim;
    if (dim < 3) throw UsageError("--pyramid needs --d >= 3");
    if (rings.size() < 2) throw UsageError("--pyramid needs at least two J values");
    for (double t : ratios) {
      const auto sweep = growth_sweep(rings, t, dim, options);
      records.insert(records.end(), sweep.begin(), sweep.end());
      const double slope = growth_slope(sweep);
      out << "slope t=" << format_real(t, 12) << " d=" << dim << ' ' << format_real(slope, 12)
          << '\n';
      if (!(slope > 0.0)) {
        err << "failing sweep: t=" << format_real(t, 12) << " slope " << format_real(slope, 12)
            << " is not positive\n";
        ++failures;
      }
    }
    emit_csv(a, records, out);
  }

  if (failures > 0) {
    err << failures << " reproduction check(s) failed\n";
    return kReproductionFailed;
  }
  return kSuccess;
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  for (std::string_view item : split_commas(text)) {
    item = trim(item);
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      values.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots));
    const int hi = to_int(item.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + std::string(item) + "'");
    for (int v = lo; v <= hi; ++v) values.push_back(v);
  }
  return values;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> values;
  for (std::string_view item : split_commas(text)) values.push_back(to_real(item));
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"L-infinity stability of L2 projections onto linear splines"};
  app.name("projnorm_tool");
  app.require_subcommand(1);

  MeshArgs mesh_args;
  auto* mesh = app.add_subcommand("mesh", "build a mesh and write it as JSON");
  mesh->require_subcommand(1);
  auto* ce = mesh->add_subcommand("counterexample2d", "nested-squares triangulation T_J");
  ce->add_option("--J", mesh_args.rings, "number of rings")->required();
  ce->add_option("--t", mesh_args.ratio, "side ratio in (0,1)")->required();
  auto* py = mesh->add_subcommand("pyramid", "T_J joined with apexes e^3..e^d");
  py->add_option("--J", mesh_args.rings, "number of rings")->required();
  py->add_option("--t", mesh_args.ratio, "side ratio in (0,1)")->required();
  py->add_option("--d", mesh_args.dim, "dimension >= 3")->required();
  auto* un = mesh->add_subcommand("uniform", "n x n grid of the unit square");
  un->add_option("--n", mesh_args.cells, "cells per side")->required();
  auto* in = mesh->add_subcommand("interval", "1D partition");
  in->add_option("--breakpoints", mesh_args.breakpoints, "comma-separated breakpoints")->required();
  for (auto* sub : {ce, py, un, in}) {
    sub->add_option("--out", mesh_args.out, "output JSON path");
    sub->callback([&mesh_args, sub] { mesh_args.kind = sub->get_name(); });
  }

  ProjectArgs project_args;
  auto* project = app.add_subcommand("project", "project cellwise data and write a report");
  project->add_option("--mesh", project_args.mesh, "mesh JSON")->required();
  auto* osc = project->add_flag("--oscillating", project_args.oscillating, "f = (-1)^ring");
  auto* vals = project->add_option("--values", project_args.values,
                                   "comma-separated cell values, or a file of them");
  osc->excludes(vals);
  project->add_option("--out", project_args.out, "output JSON path");

  std::string norm_mesh;
  auto* norm = app.add_subcommand("norm", "exact operator norm and bounds");
  norm->add_option("--mesh", norm_mesh, "mesh JSON")->required();

  ReproduceArgs repro;
  auto* reproduce = app.add_subcommand("reproduce", "counterexample sweeps as CSV");
  reproduce->add_flag("--theorem", repro.theorem, "check sup_norm >= 2J");
  reproduce->add_flag("--limit", repro.limit, "check limit_error decreases with t");
  reproduce->add_flag("--pyramid", repro.pyramid, "measure growth for d >= 3");
  reproduce->add_option("--J", repro.rings, "ring counts, e.g. 1..8 or 2,4");
  reproduce->add_option("--t", repro.ratios, "ratios, comma-separated");
  reproduce->add_option("--d", repro.dim, "dimension");
  reproduce->add_option("--out", repro.out, "output CSV path (default: standard output)");
  reproduce->add_flag("--no-exact", repro.skip_exact, "skip the exact operator norm column");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (mesh->parsed()) return cmd_mesh(mesh_args, out);
    if (project->parsed()) {
      if (!project_args.oscillating && project_args.values.empty()) {
        throw UsageError("give --oscillating or --values");
      }
      return cmd_project(project_args, out);
    }
    if (norm->parsed()) return cmd_norm(norm_mesh, out);
    return cmd_reproduce(repro, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::SolveFailure ? kNumerical : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace projnorm::cli
