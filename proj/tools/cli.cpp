// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "degeo/export.hpp"
#include "degeo/geometry.hpp"
#include "degeo/inversion.hpp"
#include "degeo/lattice.hpp"
#include "degeo/parallel.hpp"
#include "degeo/regions.hpp"
#include "degeo/system.hpp"

namespace degeo::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string graph;
  std::string graph_file;
  int particles = 2;
  std::string w_file;
  std::string v;
  std::string v_file;
  std::uint64_t seed = 1;
  double deg_tol = 1e-9;
  double rank_tol = 1e-8;
  double inv_tol = 1e-7;
  std::string out;
  std::string format = "json";
  int threads = 0;
  std::string config;

  // region
  std::string level = "R";
  int n = 2000;
  // ratio
  int samples = 100000;
  double verdict_tol = 1e-6;
  // functional
  std::string plane = "square-middle";
  std::string center, d1, d2;
  int resolution = 41;
  double extent = 1.0;
  // scan
  std::string mode = "segment";
  std::string v2;
  std::string direction;
  std::string s_values = "-0.5,-1,-2,-5";
  std::string family = "tetra-axis";
  int grid = 101;
  double margin = 0.1;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse " + what + " entry '" + tok + "'");
    }
  }
  return out;
}

Vector to_vector(const std::vector<double>& xs) {
  return Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vector vector_arg(const std::string& text, int m, const std::string& what) {
  const Vector v = to_vector(parse_numbers(text, what));
  if (v.size() != m) {
    throw ConfigError(what + " has " + std::to_string(v.size()) + " entries, expected M=" +
                      std::to_string(m));
  }
  return v;
}

// Values from --config replace the corresponding flags.
void apply_config_file(RunConfig& c) {
  if (c.config.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(c.config));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid config file '" + c.config + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  auto text = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    const auto& x = j[key];
    if (x.is_string()) {
      dst = x.get<std::string>();
    } else if (x.is_array()) {
      std::string s;
      for (const auto& e : x) s += (s.empty() ? "" : ",") + std::to_string(e.get<double>());
      dst = s;
    } else {
      throw ConfigError(std::string("config key '") + key + "' must be a string or an array");
    }
  };
  try {
    text("graph", c.graph);
    text("graph_file", c.graph_file);
    if (j.contains("N")) c.particles = j["N"].get<int>();
    text("w_file", c.w_file);
    text("v", c.v);
    text("v_file", c.v_file);
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("deg_tol")) c.deg_tol = j["deg_tol"].get<double>();
    if (j.contains("rank_tol")) c.rank_tol = j["rank_tol"].get<double>();
    if (j.contains("inv_tol")) c.inv_tol = j["inv_tol"].get<double>();
    text("out", c.out);
    text("format", c.format);
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    text("level", c.level);
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("verdict_tol")) c.verdict_tol = j["verdict_tol"].get<double>();
    text("plane", c.plane);
    text("center", c.center);
    text("d1", c.d1);
    text("d2", c.d2);
    if (j.contains("resolution")) c.resolution = j["resolution"].get<int>();
    if (j.contains("extent")) c.extent = j["extent"].get<double>();
    text("mode", c.mode);
    text("v2", c.v2);
    text("direction", c.direction);
    text("s", c.s_values);
    text("family", c.family);
    if (j.contains("grid")) c.grid = j["grid"].get<int>();
    if (j.contains("margin")) c.margin = j["margin"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + c.config + "': " + e.what());
  }
}

struct Loaded {
  System system;
  std::string name;
  Vector v;
};

Loaded load(const RunConfig& c) {
  if (c.graph.empty() == c.graph_file.empty()) {
    throw ConfigError("give exactly one of --graph and --graph-file");
  }
  if (!(c.deg_tol > 0) || !(c.rank_tol > 0) || !(c.inv_tol > 0)) {
    throw ConfigError("tolerances must be positive");
  }
  Graph graph = c.graph.empty() ? read_graph_file(c.graph_file) : named_graph(c.graph);
  const int m = graph.vertex_count();
  SystemSpec spec{std::move(graph), c.particles, std::nullopt, c.deg_tol, c.rank_tol};
  if (!c.w_file.empty()) {
    const auto xs = parse_numbers(read_file(c.w_file), "interaction");
    if (static_cast<int>(xs.size()) != m * m) throw ConfigError("interaction file must hold M*M numbers");
    spec.interaction = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        xs.data(), m, m);
  }
  Vector v = Vector::Zero(m);
  if (!c.v.empty() && !c.v_file.empty()) throw ConfigError("give at most one of --v and --v-file");
  if (!c.v.empty()) v = vector_arg(c.v, m, "--v");
  if (!c.v_file.empty()) v = vector_arg(read_file(c.v_file), m, "--v-file");
  return {System(std::move(spec)), c.graph.empty() ? c.graph_file : c.graph, v};
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("cannot write '" + c.out + "'");
  f << text;
}

void require_format(const RunConfig& c, bool csv_ok) {
  if (c.format == "json") return;
  if (c.format == "csv" && csv_ok) return;
  throw ConfigError("unsupported --format '" + c.format + "' for this command");
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const Loaded l = load(c);
  const Classification cl = l.system.classify(l.v);
  emit(c, classify_json(l.name, cl, degeneracy_directions(cl.dc, c.rank_tol)), out);
  return kOk;
}

int cmd_region(const RunConfig& c, std::ostream& out) {
  require_format(c, true);
  const Loaded l = load(c);
  const RegionLevel level = parse_region_level(c.level);
  if (c.n < 1) throw ConfigError("--n must be at least 1");
  const Classification cl = l.system.classify(l.v);
  const RegionSample s = sample_region(cl.dc, level, c.n, c.seed, resolve_threads(c.threads));
  emit(c, c.format == "csv" ? point_cloud_csv(s) : point_cloud_json(l.name, s, l.system.sites(), l.system.particles()),
       out);
  return kOk;
}

int cmd_ratio(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const Loaded l = load(c);
  RatioOptions o;
  o.samples = c.samples;
  o.seed = c.seed;
  o.deg_tol = c.verdict_tol;
  o.inv_tol = c.inv_tol;
  o.threads = resolve_threads(c.threads);
  const RatioEstimate est = degeneracy_ratio(l.system, o);
  emit(c, ratio_json(l.name, est), out);
  return kOk;
}

int cmd_functional(const RunConfig& c, std::ostream& out) {
  require_format(c, true);
  const Loaded l = load(c);
  const int m = l.system.sites();
  Vector center, d1, d2;
  if (!c.center.empty() || !c.d1.empty() || !c.d2.empty()) {
    center = vector_arg(c.center, m, "--center");
    d1 = vector_arg(c.d1, m, "--d1");
    d2 = vector_arg(c.d2, m, "--d2");
  } else if (c.plane == "square-middle") {
    if (m != 4) throw ConfigError("plane 'square-middle' needs M=4");
    center = Vector::Constant(4, 0.5);
    d1 = 0.5 * Vector{{1.0, 1.0, -1.0, -1.0}};
    d2 = 0.5 * Vector{{1.0, -1.0, -1.0, 1.0}};
  } else {
    throw ConfigError("unknown plane '" + c.plane + "' (valid: square-middle, or --center/--d1/--d2)");
  }
  InversionOptions io;
  io.tol = c.inv_tol;
  const auto pts =
      functional_surface(l.system, center, d1, d2, c.resolution, c.extent, io, resolve_threads(c.threads));
  emit(c, c.format == "csv" ? functional_csv(pts) : functional_json(l.name, pts), out);
  return kOk;
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const Loaded l = load(c);
  const int m = l.system.sites();
  const int threads = resolve_threads(c.threads);
  if (c.mode == "segment") {
    if (c.v2.empty()) throw ConfigError("segment scan needs --v (v_I) and --v2 (v_II)");
    const ScanReport r = segment_scan(l.system, l.v, vector_arg(c.v2, m, "--v2"), c.grid, c.margin, threads);
    emit(c, scan_json(l.name, "segment", r), out);
  } else if (c.mode == "ray") {
    if (c.direction.empty()) throw ConfigError("ray scan needs --direction");
    const ScanReport r = ray_scan(l.system, l.v, vector_arg(c.direction, m, "--direction"),
                                  parse_numbers(c.s_values, "--s"), threads);
    emit(c, scan_json(l.name, "ray", r), out);
  } else if (c.mode == "sweep") {
    const PotentialFamily f = named_family(c.family, c.resolution);
    emit(c, sweep_json(structure_sweep(l.system, f, c.n, c.seed, threads)), out);
  } else {
    throw ConfigError("unknown scan mode '" + c.mode + "' (valid: segment, ray, sweep)");
  }
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Degeneracy geometry of lattice density functionals", "degeo"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--graph", c.graph, "Named graph (triangle, square, tetrahedron, ...)");
  app.add_option("--graph-file", c.graph_file, "Graph file: M, then lines 'i j [w]'");
  app.add_option("--N", c.particles, "Particle number");
  app.add_option("--w-file", c.w_file, "M x M density-density interaction");
  app.add_option("--v", c.v, "Potential, comma separated");
  app.add_option("--v-file", c.v_file, "Potential file");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--deg-tol", c.deg_tol, "Relative degeneracy tolerance");
  app.add_option("--rank-tol", c.rank_tol, "Relative rank tolerance for P");
  app.add_option("--inv-tol", c.inv_tol, "Inversion tolerance");
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--format", c.format, "json or csv");
  app.add_option("--threads", c.threads, "Worker threads (0: DEGEO_THREADS or hardware)");
  app.add_option("--config", c.config, "JSON file whose keys override flags");

  auto* classify = app.add_subcommand("classify", "Degeneracy class (g, kappa) at a potential");
  auto* region = app.add_subcommand("region", "Sample D_R, D_C or D as a point cloud");
  region->add_option("--level", c.level, "R, C or ensemble");
  region->add_option("--n", c.n, "Number of points");
  auto* ratio = app.add_subcommand("ratio", "Monte-Carlo degeneracy ratio");
  ratio->add_option("--samples", c.samples, "Accepted hypersimplex samples");
  ratio->add_option("--verdict-tol", c.verdict_tol, "Degeneracy threshold at the inverted potential");
  auto* functional = app.add_subcommand("functional", "Universal functional on a density plane");
  functional->add_option("--plane", c.plane, "Plane preset (square-middle)");
  functional->add_option("--center", c.center, "Plane center density");
  functional->add_option("--d1", c.d1, "First plane direction (sums to 0)");
  functional->add_option("--d2", c.d2, "Second plane direction (sums to 0)");
  functional->add_option("--resolution", c.resolution, "Grid points per axis");
  functional->add_option("--extent", c.extent, "Grid covers [-extent, extent]^2");
  auto* scan = app.add_subcommand("scan", "Segment, ray or family scans of potentials");
  scan->add_option("--mode", c.mode, "segment, ray or sweep");
  scan->add_option("--v2", c.v2, "Second segment endpoint v_II");
  scan->add_option("--direction", c.direction, "Ray direction");
  scan->add_option("--s", c.s_values, "Ray parameters, comma separated");
  scan->add_option("--family", c.family, "tetra-axis or square-diagonal");
  scan->add_option("--resolution", c.resolution, "Family parameter points");
  scan->add_option("--n", c.n, "D_R points per degenerate family member");
  scan->add_option("--grid", c.grid, "Segment grid points");
  scan->add_option("--margin", c.margin, "Segment margin beyond [0, 1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "degeo: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    apply_config_file(c);
    if (*classify) return cmd_classify(c, out);
    if (*region) return cmd_region(c, out);
    if (*ratio) return cmd_ratio(c, out);
    if (*functional) return cmd_functional(c, out);
    if (*scan) return cmd_scan(c, out);
  } catch (const ConfigError& e) {
    err << "degeo: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "degeo: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "degeo: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kConfigError;
}

}  // namespace degeo::cli
