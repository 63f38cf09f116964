#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "caputolab/caputolab.hpp"

#ifndef CAPUTOLAB_VERSION
#define CAPUTOLAB_VERSION "0.0.0"
#endif

namespace caputolab::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct ParamDef {
  std::string name;
  std::string default_value;
  std::string help;
};

const std::vector<ParamDef>& common_params() {
  static const std::vector<ParamDef> defs{
      {"out", ".", "output directory"},
      {"jobs", "0", "worker threads (0: hardware parallelism, 1: serial reference path)"},
      {"seed", "0", "random seed"},
  };
  return defs;
}

std::vector<ParamDef> weight_params() {
  const hnn::HnnParams defaults;
  std::vector<ParamDef> defs;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const std::string name = "w" + std::to_string(i) + std::to_string(j);
      defs.push_back({name, io::format_double(defaults.get(name)), "weight " + name});
    }
  }
  return defs;
}

std::vector<ParamDef> classify_params() {
  const dynamics::ClassifyTolerances tol;
  return {
      {"transient", io::format_double(tol.transient_fraction), "discarded leading fraction"},
      {"eps-close", io::format_double(tol.closing_error), "NPT closing-error bound"},
      {"cluster-width", io::format_double(tol.cluster_width), "maxima cluster width"},
      {"kmax", std::to_string(tol.max_clusters), "largest NPT period in maxima"},
      {"sign-threshold", io::format_double(tol.sign_threshold), "attractor-sign threshold"},
  };
}

std::vector<ParamDef> solver_params(const std::string& h, const std::string& T) {
  return {
      {"h", h, "step size"},
      {"T", T, "integration horizon"},
      {"corrector-iterations", "1", "corrector passes per step"},
      {"blowup", "1e6", "max-norm blow-up threshold"},
  };
}

std::vector<ParamDef> subcommand_params(const std::string& sub) {
  std::vector<ParamDef> defs;
  auto add = [&defs](const std::vector<ParamDef>& more) {
    defs.insert(defs.end(), more.begin(), more.end());
  };
  if (sub == "integrate") {
    defs = {{"ic", "0.493,0.366,-3.267", "initial state x1,x2,x3"},
            {"q", "0.99975", "fractional order"}};
    add(solver_params("0.01", "1000"));
    add(classify_params());
    add(weight_params());
  } else if (sub == "stability") {
    defs = {{"q", "0.99975", "fractional order in (0,1)"}};
    add(weight_params());
  } else if (sub == "divergence") {
    defs = {{"point", "0.1,0.1,0.1", "evaluation point"},
            {"center", "0,0,0", "Taylor expansion point"},
            {"qgrid", "0.05:0.95:19", "order grid lo:hi:count"},
            {"taylor-order", "5", "odd Taylor order (1,3,5,7)"}};
    add(weight_params());
  } else if (sub == "bifurcation") {
    defs = {{"param", "q", "swept parameter: q or w11..w33"},
            {"lo", "0.997", "sweep lower bound"},
            {"hi", "1", "sweep upper bound"},
            {"count", "60", "grid points"},
            {"q", "0.99925", "order used when sweeping a weight"},
            {"ics", "IC1=0.493,0.366,-3.267;IC2=0.001,0.001,0.001",
             "initial conditions id=x1,x2,x3 separated by ';'"}};
    add(solver_params("0.01", "1000"));
    add(classify_params());
    add(weight_params());
  } else if (sub == "basin") {
    defs = {{"q", "0.99975", "fractional order"},
            {"u-range", "-5:5", "range along x2"},
            {"v-range", "-5:5", "range along the in-plane direction"},
            {"nu", "40", "lattice points along u"},
            {"nv", "40", "lattice points along v"}};
    add(solver_params("0.01", "200"));
    add(classify_params());
    add(weight_params());
  } else if (sub == "hidden") {
    defs = {{"q", "0.99975", "fractional order"},
            {"radius", "0.1", "neighbourhood radius"},
            {"count", "50", "samples per equilibrium"}};
    add(solver_params("0.01", "500"));
    add(classify_params());
    add(weight_params());
  } else if (sub == "hdelay") {
    defs = {{"hlist", "0.05,0.025,0.01", "decreasing step sizes"},
            {"param", "q", "swept parameter: q or w11..w33"},
            {"lo", "0.997", "sweep lower bound"},
            {"hi", "1", "sweep upper bound"},
            {"count", "60", "grid points"},
            {"q", "0.99925", "order used when sweeping a weight"},
            {"ics",
             "ref:IC1=0.493,0.366,-3.267;ref:IC2=0.001,0.001,0.001;out:OUT+=2,2,2;out:OUT-=-2,-2,-2",
             "role:id=x1,x2,x3 separated by ';' (role ref or out)"},
            {"T", "500", "integration horizon"},
            {"corrector-iterations", "1", "corrector passes per step"},
            {"blowup", "1e6", "max-norm blow-up threshold"},
            {"transient", "0.5", "discarded leading fraction"},
            {"sign-threshold", "0.05", "attractor-sign threshold"}};
    add(weight_params());
  }
  add(common_params());
  return defs;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    parts.push_back(trim(cur));
  }
  if (!s.empty() && s.back() == sep) {
    parts.emplace_back();
  }
  return parts;
}

std::string json_scalar_text(const ordered_json& v, const std::string& key) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<long long>());
  }
  if (v.is_number()) {
    return io::format_double(v.get<double>());
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "1" : "0";
  }
  throw UsageError("config entry '" + key + "' must be a string or number");
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw UsageError("cannot read config file '" + path + "'");
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(is);
  } catch (const std::exception& e) {
    throw UsageError("malformed config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw UsageError("config file must hold a JSON object");
  }
  // A run manifest can be replayed directly: its resolved parameters live
  // under "parameters".
  const ordered_json& flat =
      doc.contains("parameters") && doc["parameters"].is_object() ? doc["parameters"] : doc;
  std::map<std::string, std::string> values;
  for (const auto& [key, value] : flat.items()) {
    values[key] = json_scalar_text(value, key);
  }
  return values;
}

hnn::Vec3 parse_vec3(const std::string& name, const std::string& text) {
  const std::vector<double> v = parse_list(name, text);
  if (v.size() != 3) {
    throw UsageError("--" + name + " needs three comma-separated numbers");
  }
  return {v[0], v[1], v[2]};
}

std::pair<double, double> parse_range(const std::string& name, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) {
    throw UsageError("--" + name + " must be lo:hi");
  }
  const double lo = parse_number(name, parts[0]);
  const double hi = parse_number(name, parts[1]);
  if (!(lo <= hi)) {
    throw UsageError("--" + name + ": lo must not exceed hi");
  }
  return {lo, hi};
}

void validate(const ResolvedCommand& cmd) {
  const std::string& sub = cmd.subcommand;
  const long jobs = cmd.integer("jobs");
  if (jobs < 0) {
    throw UsageError("--jobs must be >= 0");
  }
  (void)cmd.integer("seed");
  for (const auto& [name, value] : cmd.params) {
    if (hnn::HnnParams::is_weight_name(name)) {
      (void)cmd.number(name);
    }
  }
  auto positive = [&](const std::string& name) {
    if (!(cmd.number(name) > 0.0)) {
      throw UsageError("--" + name + " must be positive");
    }
  };
  auto order = [&](const std::string& name) {
    const double q = cmd.number(name);
    if (!(q > 0.0 && q <= 1.0)) {
      throw UsageError("--" + name + " must lie in (0, 1]");
    }
  };
  if (cmd.params.count("h")) positive("h");
  if (cmd.params.count("T")) positive("T");
  if (cmd.params.count("radius")) positive("radius");
  if (cmd.params.count("corrector-iterations") && cmd.integer("corrector-iterations") < 1) {
    throw UsageError("--corrector-iterations must be >= 1");
  }
  if (cmd.params.count("transient")) {
    const double f = cmd.number("transient");
    if (!(f >= 0.0 && f < 1.0)) {
      throw UsageError("--transient must lie in [0, 1)");
    }
  }
  for (const char* name : {"eps-close", "cluster-width", "sign-threshold", "blowup"}) {
    if (cmd.params.count(name)) positive(name);
  }
  if (cmd.params.count("kmax") && cmd.integer("kmax") < 1) {
    throw UsageError("--kmax must be >= 1");
  }

  if (sub == "integrate") {
    order("q");
    (void)parse_vec3("ic", cmd.get("ic"));
  } else if (sub == "stability") {
    const double q = cmd.number("q");
    if (!(q > 0.0 && q < 1.0)) {
      throw UsageError("--q must lie in (0, 1)");
    }
  } else if (sub == "divergence") {
    (void)parse_vec3("point", cmd.get("point"));
    (void)parse_vec3("center", cmd.get("center"));
    const GridSpec g = parse_grid(cmd.get("qgrid"));
    for (double q : g.values()) {
      if (!(q > 0.0 && q <= 1.0)) {
        throw UsageError("--qgrid values must lie in (0, 1]");
      }
    }
    const long k = cmd.integer("taylor-order");
    if (k != 1 && k != 3 && k != 5 && k != 7) {
      throw UsageError("--taylor-order must be 1, 3, 5 or 7");
    }
  } else if (sub == "bifurcation" || sub == "hdelay") {
    const std::string& param = cmd.get("param");
    if (param != "q" && !hnn::HnnParams::is_weight_name(param)) {
      throw UsageError("--param must be q or w11..w33");
    }
    if (!(cmd.number("lo") <= cmd.number("hi"))) {
      throw UsageError("--lo must not exceed --hi");
    }
    if (cmd.integer("count") < 2) {
      throw UsageError("--count must be >= 2");
    }
    if (param == "q") {
      if (!(cmd.number("lo") > 0.0 && cmd.number("hi") <= 1.0)) {
        throw UsageError("order sweep must stay within (0, 1]");
      }
    } else {
      order("q");
    }
    if (sub == "hdelay") {
      const std::vector<double> hs = cmd.list("hlist");
      if (hs.size() < 2) {
        throw UsageError("--hlist needs at least two step sizes");
      }
      for (std::size_t k = 0; k < hs.size(); ++k) {
        if (!(hs[k] > 0.0) || (k > 0 && !(hs[k] < hs[k - 1]))) {
          throw UsageError("--hlist must be positive and strictly decreasing");
        }
      }
    }
  } else if (sub == "basin") {
    order("q");
    (void)parse_range("u-range", cmd.get("u-range"));
    (void)parse_range("v-range", cmd.get("v-range"));
    if (cmd.integer("nu") < 2 || cmd.integer("nv") < 2) {
      throw UsageError("basin lattice must be at least 2x2");
    }
  } else if (sub == "hidden") {
    order("q");
    if (cmd.integer("count") < 1) {
      throw UsageError("--count must be >= 1");
    }
  }
}

hnn::HnnParams weights_of(const ResolvedCommand& cmd) {
  hnn::HnnParams params;
  for (const auto& [name, value] : cmd.params) {
    if (hnn::HnnParams::is_weight_name(name)) {
      params.set(name, cmd.number(name));
    }
  }
  return params;
}

SolverConfig solver_of(const ResolvedCommand& cmd) {
  SolverConfig config;
  if (cmd.params.count("h")) {
    config.h = cmd.number("h");
  }
  config.T = cmd.number("T");
  config.corrector_iterations = static_cast<int>(cmd.integer("corrector-iterations"));
  config.blowup_threshold = cmd.number("blowup");
  return config;
}

dynamics::ClassifyTolerances tolerances_of(const ResolvedCommand& cmd) {
  dynamics::ClassifyTolerances tol;
  tol.transient_fraction = cmd.number("transient");
  tol.closing_error = cmd.number("eps-close");
  tol.cluster_width = cmd.number("cluster-width");
  tol.max_clusters = static_cast<std::size_t>(cmd.integer("kmax"));
  tol.sign_threshold = cmd.number("sign-threshold");
  return tol;
}

std::vector<dynamics::InitialCondition> parse_ics(const std::string& text) {
  std::vector<dynamics::InitialCondition> ics;
  for (const std::string& item : split(text, ';')) {
    if (item.empty()) {
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--ics entries must look like id=x1,x2,x3");
    }
    const hnn::Vec3 x = parse_vec3("ics", item.substr(eq + 1));
    ics.push_back({trim(item.substr(0, eq)), {x[0], x[1], x[2]}});
  }
  if (ics.empty()) {
    throw UsageError("--ics is empty");
  }
  return ics;
}

std::vector<dynamics::RoledIc> parse_roled_ics(const std::string& text) {
  std::vector<dynamics::RoledIc> out;
  for (const std::string& item : split(text, ';')) {
    if (item.empty()) {
      continue;
    }
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw UsageError("--ics entries must look like ref:id=x1,x2,x3 or out:id=x1,x2,x3");
    }
    const std::string role = trim(item.substr(0, colon));
    if (role != "ref" && role != "out") {
      throw UsageError("--ics role must be 'ref' or 'out'");
    }
    auto ics = parse_ics(item.substr(colon + 1));
    out.push_back({ics.front(), role == "ref" ? dynamics::IcRole::reference
                                              : dynamics::IcRole::outside});
  }
  return out;
}

std::string vec_text(const hnn::Vec3& v) {
  return io::format_double(v[0]) + "," + io::format_double(v[1]) + "," + io::format_double(v[2]);
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << z.real();
  if (z.imag() != 0.0) {
    os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

struct RunContext {
  const ResolvedCommand& cmd;
  fs::path out_dir;
  std::ostream& out;
  std::vector<fs::path> outputs;
  ordered_json summary = ordered_json::object();

  fs::path file(const std::string& name) {
    fs::path p = out_dir / name;
    outputs.push_back(p);
    return p;
  }
};

void run_integrate(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  const hnn::Vec3 ic = parse_vec3("ic", cmd.get("ic"));
  const Trajectory traj =
      abm_integrate(hnn::make_ivp(weights_of(cmd), cmd.number("q"), ic), solver_of(cmd));
  io::write_file(ctx.file("trajectory.csv"),
                 [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
  const dynamics::TrajectoryClass cls = dynamics::classify_trajectory(traj, tolerances_of(cmd));
  ctx.summary["status"] = traj.completed() ? "completed" : "unbounded";
  if (!traj.completed()) {
    ctx.summary["unbounded_step"] = traj.unbounded_step();
  }
  ctx.summary["kind"] = std::string(dynamics::to_string(cls.kind));
  ctx.summary["period"] = cls.period;
  ctx.summary["positive_clusters"] = cls.positive_clusters;
  ctx.summary["closing_error"] = cls.closing_error;
  ctx.summary["attractor_sign"] = std::string(dynamics::to_string(cls.attractor_sign));
  ctx.out << "points " << traj.size() << "  status "
          << (traj.completed() ? "completed" : "unbounded") << '\n';
  ctx.out << "class " << dynamics::to_string(cls.kind);
  if (cls.kind == dynamics::TrajectoryKind::npt) {
    ctx.out << '(' << cls.period << ")  positive clusters " << cls.positive_clusters
            << "  closing error " << cls.closing_error;
  }
  ctx.out << "  attractor " << dynamics::to_string(cls.attractor_sign) << '\n';
  if (!cls.diagnostic.empty()) {
    ctx.out << "note: " << cls.diagnostic << '\n';
  }
}

void run_stability(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  const hnn::HnnParams params = weights_of(cmd);
  const double q = cmd.number("q");
  std::vector<std::string> diagnostics;
  const auto equilibria =
      hnn::find_equilibria(params, hnn::default_equilibrium_guesses(), {}, &diagnostics);
  ctx.out << std::left << std::setw(7) << "label" << std::setw(34) << "point"
          << std::setw(60) << "eigenvalues" << std::setw(11) << "alpha_min" << std::setw(10)
          << "q*" << "verdict(q=" << cmd.get("q") << ")\n";
  ordered_json rows = ordered_json::array();
  io::write_file(ctx.file("stability.csv"), [&](std::ostream& os) {
    os << "label,x1,x2,x3,lambda1_re,lambda1_im,lambda2_re,lambda2_im,lambda3_re,lambda3_im,"
          "alpha_min,critical_order,iota,verdict\n";
    for (const auto& eq : equilibria) {
      const auto spec = stability::eigenvalues_3x3(hnn::hnn_jacobian(eq.point, params));
      const auto rep = stability::stability_index(spec, q);
      os << hnn::to_string(eq.label) << ',' << vec_text(eq.point);
      for (const auto& z : spec.eigenvalues) {
        os << ',' << io::format_double(z.real()) << ',' << io::format_double(z.imag());
      }
      os << ',' << io::format_double(rep.alpha_min) << ',' << io::format_double(rep.critical_order)
         << ',' << io::format_double(rep.iota) << ',' << stability::to_string(rep.verdict) << '\n';

      std::ostringstream point;
      point << std::fixed << std::setprecision(6) << '(' << eq.point[0] << ", " << eq.point[1]
            << ", " << eq.point[2] << ')';
      std::string eig = complex_text(spec.eigenvalues[0]) + ", " +
                        complex_text(spec.eigenvalues[1]) + ", " +
                        complex_text(spec.eigenvalues[2]);
      ctx.out << std::left << std::setw(7) << hnn::to_string(eq.label) << std::setw(34)
              << point.str() << std::setw(60) << eig << std::setw(11) << std::fixed
              << std::setprecision(4) << rep.alpha_min << std::setw(10) << rep.critical_order
              << stability::to_string(rep.verdict) << '\n';
      ctx.out.unsetf(std::ios::floatfield);
      rows.push_back({{"label", std::string(hnn::to_string(eq.label))},
                      {"critical_order", rep.critical_order},
                      {"iota", rep.iota},
                      {"verdict", std::string(stability::to_string(rep.verdict))}});
    }
  });
  for (const auto& d : diagnostics) {
    ctx.out << "note: skipped guess: " << d << '\n';
  }
  ctx.summary["equilibria"] = rows;
}

void run_divergence(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  const hnn::HnnParams params = weights_of(cmd);
  const hnn::Vec3 point = parse_vec3("point", cmd.get("point"));
  const hnn::Vec3 center = parse_vec3("center", cmd.get("center"));
  const int order = static_cast<int>(cmd.integer("taylor-order"));
  const GridSpec grid = parse_grid(cmd.get("qgrid"));
  const double classical = stability::integer_divergence(params, point);
  bool reflected = false;
  bool all_positive = true;
  io::write_file(ctx.file("divergence.csv"), [&](std::ostream& os) {
    os << "q,div_q,div_integer\n";
    for (double q : grid.values()) {
      const auto d = stability::fractional_divergence(params, point, q, order, center);
      reflected = reflected || d.reflected;
      all_positive = all_positive && d.value > 0.0;
      os << io::format_double(q) << ',' << io::format_double(d.value) << ','
         << io::format_double(classical) << '\n';
    }
  });
  if (reflected) {
    ctx.out << "warning: point lies below the expansion centre in some coordinate; "
               "evaluated with the |x - c| reflection convention\n";
  }
  ctx.out << "integer divergence " << io::format_double(classical) << '\n';
  ctx.out << "fractional divergence positive on grid: " << (all_positive ? "yes" : "no") << '\n';
  ctx.summary["integer_divergence"] = classical;
  ctx.summary["all_positive"] = all_positive;
  ctx.summary["reflected"] = reflected;
}

dynamics::SweepSpec sweep_of(const ResolvedCommand& cmd) {
  dynamics::SweepSpec sweep;
  sweep.name = cmd.get("param");
  sweep.lo = cmd.number("lo");
  sweep.hi = cmd.number("hi");
  sweep.count = static_cast<std::size_t>(cmd.integer("count"));
  return sweep;
}

void run_bifurcation(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  dynamics::SweepOptions options;
  options.transient_fraction = cmd.number("transient");
  options.sign_threshold = cmd.number("sign-threshold");
  options.jobs = static_cast<std::size_t>(cmd.integer("jobs"));
  const auto family = dynamics::hnn_family(cmd.get("param"), weights_of(cmd), cmd.number("q"));
  const auto bd = dynamics::bifurcation_sweep(family, sweep_of(cmd), parse_ics(cmd.get("ics")),
                                              solver_of(cmd), options);
  io::write_file(ctx.file("bifurcation.csv"),
                 [&](std::ostream& os) { io::write_bifurcation_csv(os, bd); });
  std::size_t unbounded = 0;
  for (const auto& cell : bd.cells) {
    unbounded += cell.maxima.unbounded;
  }
  ctx.out << "cells " << bd.cells.size() << "  unbounded " << unbounded << '\n';
  ctx.summary["cells"] = bd.cells.size();
  ctx.summary["unbounded_cells"] = unbounded;
}

void run_basin(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  dynamics::PlaneSpec plane = dynamics::equilibrium_plane();
  std::tie(plane.u_lo, plane.u_hi) = parse_range("u-range", cmd.get("u-range"));
  std::tie(plane.v_lo, plane.v_hi) = parse_range("v-range", cmd.get("v-range"));
  plane.n_u = static_cast<std::size_t>(cmd.integer("nu"));
  plane.n_v = static_cast<std::size_t>(cmd.integer("nv"));
  dynamics::BasinOptions options;
  options.tolerances = tolerances_of(cmd);
  options.jobs = static_cast<std::size_t>(cmd.integer("jobs"));
  const auto grid =
      dynamics::basin_scan(plane, solver_of(cmd), cmd.number("q"), weights_of(cmd), options);
  io::write_file(ctx.file("basin.csv"), [&](std::ostream& os) { io::write_basin_csv(os, grid); });
  io::write_file(ctx.file("basin.pgm"), [&](std::ostream& os) { io::write_basin_pgm(os, grid); });
  std::map<std::string, std::size_t> counts;
  for (const auto& p : grid.points) {
    ++counts[std::string(dynamics::to_string(p.label))];
  }
  for (const auto& [label, n] : counts) {
    ctx.out << label << ' ' << n << '\n';
    ctx.summary["labels"][label] = n;
  }
}

void run_hidden(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  const hnn::HnnParams params = weights_of(cmd);
  const auto equilibria = hnn::find_equilibria(params, hnn::default_equilibrium_guesses());
  dynamics::HiddenTestOptions options;
  options.tolerances = tolerances_of(cmd);
  options.jobs = static_cast<std::size_t>(cmd.integer("jobs"));
  const auto report = dynamics::hidden_attractor_test(
      cmd.number("q"), equilibria, cmd.number("radius"),
      static_cast<std::size_t>(cmd.integer("count")),
      static_cast<std::uint64_t>(cmd.integer("seed")), solver_of(cmd), params, options);
  io::write_file(ctx.file("hidden.csv"), [&](std::ostream& os) {
    os << "equilibrium,sample,x1,x2,x3,label\n";
    for (const auto& tally : report.tallies) {
      for (std::size_t k = 0; k < tally.samples.size(); ++k) {
        os << hnn::to_string(tally.equilibrium.label) << ',' << k << ','
           << vec_text(tally.samples[k]) << ',' << dynamics::to_string(tally.outcomes[k]) << '\n';
      }
    }
  });
  for (const auto& tally : report.tallies) {
    ctx.out << hnn::to_string(tally.equilibrium.label) << ": plus " << tally.plus << "  minus "
            << tally.minus << "  undecided " << tally.undecided << "  unbounded "
            << tally.unbounded << '\n';
    ctx.summary["tallies"][std::string(hnn::to_string(tally.equilibrium.label))] = {
        {"plus", tally.plus},
        {"minus", tally.minus},
        {"undecided", tally.undecided},
        {"unbounded", tally.unbounded}};
  }
  for (const auto& f : report.findings) {
    ctx.out << "attractor " << dynamics::to_string(f.attractor) << ": "
            << dynamics::to_string(f.verdict) << '\n';
    ctx.summary["verdicts"][std::string(dynamics::to_string(f.attractor))] =
        std::string(dynamics::to_string(f.verdict));
  }
}

void run_hdelay(RunContext& ctx) {
  const auto& cmd = ctx.cmd;
  dynamics::HDelayOptions options;
  options.sweep.transient_fraction = cmd.number("transient");
  options.sweep.sign_threshold = cmd.number("sign-threshold");
  options.sweep.jobs = static_cast<std::size_t>(cmd.integer("jobs"));
  SolverConfig config;
  config.T = cmd.number("T");
  config.corrector_iterations = static_cast<int>(cmd.integer("corrector-iterations"));
  config.blowup_threshold = cmd.number("blowup");
  const auto family = dynamics::hnn_family(cmd.get("param"), weights_of(cmd), cmd.number("q"));
  const auto table = dynamics::h_delay_study(cmd.list("hlist"), parse_roled_ics(cmd.get("ics")),
                                             family, sweep_of(cmd), config, options);
  io::write_file(ctx.file("hdelay.csv"), [&](std::ostream& os) { io::write_shift_csv(os, table); });
  io::write_file(ctx.file("hdelay_detail.csv"),
                 [&](std::ostream& os) { io::write_shift_detail_csv(os, table); });
  for (std::size_t k = 0; k < table.datasets.size(); ++k) {
    io::write_file(ctx.file("hdelay_bifurcation_" + std::to_string(k + 1) + ".csv"),
                   [&](std::ostream& os) { io::write_bifurcation_csv(os, table.datasets[k]); });
  }
  ctx.out << std::left << std::setw(10) << "h" << std::setw(8) << "ic" << std::setw(10) << "ref"
          << std::setw(16) << "delta" << "residual\n";
  for (const auto& r : table.rows) {
    ctx.out << std::setw(10) << io::format_double(r.h) << std::setw(8) << r.ic_id << std::setw(10)
            << r.reference_id << std::setw(16) << r.shift.delta << r.shift.residual << '\n';
  }
}

ordered_json manifest_json(const ResolvedCommand& cmd, const RunContext& ctx, double seconds) {
  ordered_json m;
  m["tool"] = "caputolab";
  m["version"] = CAPUTOLAB_VERSION;
  m["subcommand"] = cmd.subcommand;
  m["seed"] = cmd.integer("seed");
  m["config_file"] = cmd.config_path;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : cmd.params) {
    params[k] = v;
  }
  m["parameters"] = params;
  ordered_json outputs = ordered_json::array();
  for (const auto& p : ctx.outputs) {
    outputs.push_back(p.filename().string());
  }
  m["outputs"] = outputs;
  m["summary"] = ctx.summary;
  m["wall_clock_seconds"] = seconds;
  return m;
}

}  // namespace

const std::string& ResolvedCommand::get(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) {
    throw UsageError("missing required parameter --" + name);
  }
  return it->second;
}

double ResolvedCommand::number(const std::string& name) const {
  return parse_number(name, get(name));
}

long ResolvedCommand::integer(const std::string& name) const {
  const std::string& text = get(name);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("--" + name + ": malformed integer '" + text + "'");
  }
  return value;
}

std::vector<double> ResolvedCommand::list(const std::string& name) const {
  return parse_list(name, get(name));
}

double parse_number(const std::string& name, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw UsageError("--" + name + ": malformed number '" + text + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& name, const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) {
    values.push_back(parse_number(name, part));
  }
  return values;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw UsageError("grid must look like lo:hi:count, got '" + text + "'");
  }
  GridSpec g;
  g.lo = parse_number("grid", parts[0]);
  g.hi = parse_number("grid", parts[1]);
  long count = 0;
  const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || count < 1) {
    throw UsageError("grid count must be a positive integer, got '" + parts[2] + "'");
  }
  if (!(g.lo <= g.hi)) {
    throw UsageError("grid lo must not exceed hi");
  }
  if (count == 1 && g.lo != g.hi) {
    throw UsageError("a single-point grid needs lo == hi");
  }
  g.count = static_cast<std::size_t>(count);
  return g;
}

std::vector<double> GridSpec::values() const {
  if (count == 1) {
    return {lo};
  }
  dynamics::SweepSpec sweep;
  sweep.lo = lo;
  sweep.hi = hi;
  sweep.count = count;
  return sweep.grid();
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"integrate", "stability",   "divergence", "bifurcation",
                                              "basin",     "hidden",      "hdelay"};
  return names;
}

ResolvedCommand parse_invocation(const std::vector<std::string>& argv) {
  CLI::App app{"Fractional-order Hopfield network laboratory (Caputo ABM integration)",
               "caputolab"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  struct Slot {
    std::string value;
  };
  std::map<std::string, std::map<std::string, Slot>> slots;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, CLI::App*> apps;
  for (const std::string& sub : subcommands()) {
    CLI::App* sc = app.add_subcommand(sub, "run the " + sub + " experiment");
    apps[sub] = sc;
    for (const ParamDef& def : subcommand_params(sub)) {
      sc->add_option("--" + def.name, slots[sub][def.name].value,
                     def.help + " (default " + def.default_value + ")");
    }
    sc->add_option("--config", config_paths[sub], "flat JSON file of parameters (or a manifest)");
  }

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    ResolvedCommand help;
    help.help_requested = true;
    const CLI::App* target = &app;
    for (const auto& [name, sc] : apps) {
      if (sc->parsed()) {
        target = sc;
      }
    }
    help.help_text = target->help();
    return help;
  } catch (const CLI::CallForAllHelp&) {
    ResolvedCommand help;
    help.help_requested = true;
    help.help_text = app.help("", CLI::AppFormatMode::All);
    return help;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  ResolvedCommand cmd;
  for (const auto& [name, sc] : apps) {
    if (sc->parsed()) {
      cmd.subcommand = name;
    }
  }
  CLI::App* sc = apps.at(cmd.subcommand);
  cmd.config_path = config_paths[cmd.subcommand];
  std::map<std::string, std::string> config;
  if (!cmd.config_path.empty()) {
    config = load_config(cmd.config_path);
  }
  const auto defs = subcommand_params(cmd.subcommand);
  for (const auto& [key, value] : config) {
    const bool known = std::any_of(defs.begin(), defs.end(),
                                   [&](const ParamDef& d) { return d.name == key; });
    if (!known) {
      throw UsageError("config file sets unknown parameter '" + key + "' for " + cmd.subcommand);
    }
  }
  for (const ParamDef& def : defs) {
    if (sc->count("--" + def.name) > 0) {
      cmd.params[def.name] = slots[cmd.subcommand][def.name].value;
    } else if (config.count(def.name)) {
      cmd.params[def.name] = config.at(def.name);
    } else {
      cmd.params[def.name] = def.default_value;
    }
  }
  validate(cmd);
  return cmd;
}

ExecutionResult execute(const ResolvedCommand& command, std::ostream& out, std::ostream& err) {
  ExecutionResult result;
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx{command, fs::path(command.get("out")), out, {}, ordered_json::object()};
  try {
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (!fs::is_directory(ctx.out_dir)) {
      err << "error: cannot create output directory '" << ctx.out_dir.string() << "'\n";
      result.exit_code = kExitFailure;
      return result;
    }
    const std::string& sub = command.subcommand;
    if (sub == "integrate") {
      run_integrate(ctx);
    } else if (sub == "stability") {
      run_stability(ctx);
    } else if (sub == "divergence") {
      run_divergence(ctx);
    } else if (sub == "bifurcation") {
      run_bifurcation(ctx);
    } else if (sub == "basin") {
      run_basin(ctx);
    } else if (sub == "hidden") {
      run_hidden(ctx);
    } else if (sub == "hdelay") {
      run_hdelay(ctx);
    } else {
      throw UsageError("unknown subcommand '" + sub + "'");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.manifest = ctx.out_dir / (sub + ".manifest.json");
    io::write_text_file(result.manifest, manifest_json(command, ctx, seconds).dump(2) + "\n");
    result.outputs = ctx.outputs;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    result.exit_code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kExitFailure;
  }
  return result;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  ResolvedCommand cmd;
  try {
    cmd = parse_invocation(argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }
  if (cmd.help_requested) {
    out << cmd.help_text;
    return kExitOk;
  }
  return execute(cmd, out, err).exit_code;
}

}  // namespace caputolab::cli
