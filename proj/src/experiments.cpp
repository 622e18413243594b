#include "sqg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "sqg/counterexample.hpp"
#include "sqg/field_io.hpp"
#include "sqg/inequality.hpp"
#include "sqg/operators.hpp"
#include "sqg/sobolev.hpp"

namespace sqg {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json defaults_for(const std::string& experiment) {
  const double pi = std::numbers::pi;
  json d = {
      {"experiment", experiment},
      {"K", 128},
      {"L", pi},
      {"dealias_fraction", 2.0 / 3.0},
      {"alpha", 0.4},
      {"inner_tol", 1e-11},
      {"outer_tol", 1e-7},
      {"max_inner", 400},
      {"max_outer", 60},
      {"gmres_restart", 40},
      {"smallness_threshold", 0.1},
      {"N_schedule", json::array()},
      {"inner_method", "gmres"},
      {"force", "single_mode"},
      {"force_file", ""},
      {"delta", 0.01},
      {"output_dir", "out"},
      {"seed", 42},
      {"j_max", 6},
      {"perturbation_scale", 1.0},
      {"eps_list", {0.5, 0.25, 0.125}},
      {"n_min", 3},
      {"n_max", 10},
      {"h_xi", 1.0 / 32.0},
      {"torus", false},
      {"torus_K", 1024},
      {"torus_L", 16.0 * pi},
      {"samples", 200},
      {"k_min", 0.0},
      {"k_max", 0.0},
      {"product_exponents", json::array()},
      {"commutator_exponents", json::array()},
      {"lemma_cases", 100},
      {"cancellation_cases", 50},
  };
  if (experiment == "continuity") {
    d["K"] = 64;
    d["force"] = "two_mode";
  } else if (experiment == "nonuniform") {
    d["delta"] = 0.02;
  } else if (experiment == "rlcheck") {
    d["n_min"] = 1;
    d["n_max"] = 12;
  } else if (experiment == "ineq-scan") {
    d["K"] = 64;
  }
  return d;
}

const std::vector<std::string> kExperiments = {"solve", "continuity", "nonuniform", "rlcheck", "ineq-scan"};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void write_text(const fs::path& path, const std::string& text, ExperimentOutcome& out) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  os.close();
  out.artifacts.push_back(path);
}

void write_json(const fs::path& path, const json& j, ExperimentOutcome& out) { write_text(path, j.dump(2) + "\n", out); }

void write_manifest(const ExperimentConfig& cfg, ExperimentOutcome& out) {
  json arts = json::array();
  for (const fs::path& p : out.artifacts) {
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64_file(p);
    arts.push_back({{"file", p.filename().string()}, {"fnv1a64", hex.str()}});
  }
  json m = {{"experiment", cfg.experiment()},
            {"config", cfg.resolved()},
            {"exit_code", out.exit_code},
            {"messages", out.messages},
            {"artifacts", arts}};
  const fs::path path = cfg.output_dir() / "manifest.json";
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << m.dump(2) << "\n";
}

fs::path prepare_output(const ExperimentConfig& cfg) {
  const fs::path dir = cfg.output_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("field 'output_dir': cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

// Runs body, turning solver failures into exit codes; the manifest is
// written either way.
template <typename Body>
ExperimentOutcome guarded(const ExperimentConfig& cfg, Body&& body) {
  const fs::path dir = prepare_output(cfg);
  ExperimentOutcome out;
  try {
    body(dir, out);
  } catch (const SmallnessViolation& e) {
    out.exit_code = kExitSmallness;
    out.messages.push_back(e.what());
  } catch (const NonConvergence& e) {
    out.exit_code = kExitNonConvergence;
    out.messages.push_back(e.what());
  }
  write_manifest(cfg, out);
  return out;
}

double annulus_k_max(const ExperimentConfig& cfg, const GridSpec& grid) {
  const double k = cfg.number("k_max");
  return k > 0.0 ? k : grid.wavenumber_unit() * std::floor(grid.dealias_index() / 2.0);
}

double annulus_k_min(const ExperimentConfig& cfg, const GridSpec& grid) {
  const double k = cfg.number("k_min");
  return k > 0.0 ? k : grid.wavenumber_unit();
}

}  // namespace

ExperimentConfig::ExperimentConfig(const std::string& experiment) {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end())
    throw ConfigError("field 'experiment': unknown experiment '" + experiment + "'");
  doc_ = defaults_for(experiment);
}

void ExperimentConfig::merge(const json& user) {
  if (!user.is_object()) throw ConfigError("configuration must be a JSON object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (!doc_.contains(it.key())) throw ConfigError("unknown field '" + it.key() + "'");
    if (it.key() == "experiment" && it.value() != doc_["experiment"])
      throw ConfigError("field 'experiment': config names '" + it.value().dump() + "' but '" +
                        doc_["experiment"].get<std::string>() + "' was requested");
    const json& def = doc_[it.key()];
    const bool ok = (def.is_number() && it.value().is_number()) || (def.is_boolean() && it.value().is_boolean()) ||
                    (def.is_string() && it.value().is_string()) || (def.is_array() && it.value().is_array());
    if (!ok) throw ConfigError("field '" + it.key() + "' has the wrong type (expected " + def.type_name() + ")");
    doc_[it.key()] = it.value();
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& doc, const std::string& experiment) {
  ExperimentConfig cfg(experiment);
  cfg.merge(doc);
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path, const std::string& experiment) {
  std::ifstream in(path);
  if (!in) throw ConfigError("field 'config': cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("field 'config': " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(doc, experiment);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (!doc_.contains(key)) throw ConfigError("unknown field '" + key + "'");
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::exception&) {
    parsed = value;
  }
  if (doc_[key].is_string() && !parsed.is_string()) parsed = value;
  merge(json{{key, parsed}});
}

double ExperimentConfig::number(const std::string& key) const {
  const json& v = doc_.at(key);
  if (!v.is_number()) throw ConfigError("field '" + key + "' must be a number");
  return v.get<double>();
}

int ExperimentConfig::integer(const std::string& key) const {
  const double x = number(key);
  if (x != std::floor(x) || std::abs(x) > 2e9) throw ConfigError("field '" + key + "' must be an integer");
  return static_cast<int>(x);
}

bool ExperimentConfig::flag(const std::string& key) const {
  const json& v = doc_.at(key);
  if (!v.is_boolean()) throw ConfigError("field '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string ExperimentConfig::text(const std::string& key) const {
  const json& v = doc_.at(key);
  if (!v.is_string()) throw ConfigError("field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  const json& v = doc_.at(key);
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError("field '" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> ExperimentConfig::scalar_keys() {
  std::vector<std::string> keys;
  const json d = defaults_for("solve");
  for (auto it = d.begin(); it != d.end(); ++it)
    if (it.key() != "experiment") keys.push_back(it.key());
  return keys;
}

GridSpec ExperimentConfig::grid() const {
  try {
    return make_grid(integer("K"), number("L"), number("dealias_fraction"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("fields 'K', 'L', 'dealias_fraction': ") + e.what());
  }
}

SolverConfig ExperimentConfig::solver() const {
  SolverConfig s;
  s.alpha = number("alpha");
  s.inner_tol = number("inner_tol");
  s.outer_tol = number("outer_tol");
  s.max_inner = integer("max_inner");
  s.max_outer = integer("max_outer");
  s.gmres_restart = integer("gmres_restart");
  s.smallness_threshold = number("smallness_threshold");
  s.N_schedule = numbers("N_schedule");
  const std::string m = text("inner_method");
  if (m == "gmres")
    s.method = InnerMethod::gmres;
  else if (m == "fixed_point")
    s.method = InnerMethod::fixed_point;
  else
    throw ConfigError("field 'inner_method' must be \"gmres\" or \"fixed_point\"");
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solver configuration: ") + e.what());
  }
  return s;
}

SpectralField build_force(const ExperimentConfig& cfg) {
  const GridSpec grid = cfg.grid();
  const double delta = cfg.number("delta");
  const double alpha = cfg.number("alpha");
  const double k = grid.wavenumber_unit();
  const std::string name = cfg.text("force");
  SpectralField f;
  if (name == "single_mode") {
    f = fractional_laplacian(SpectralField::from_function(grid, [k](double x1, double) { return std::sin(k * x1); }), alpha);
  } else if (name == "two_mode") {
    f = SpectralField::from_function(grid, [k](double x1, double x2) { return std::cos(k * x1) + std::cos(2.0 * k * x2); });
  } else if (name == "gaussian") {
    f = SpectralField::from_function(grid, [](double x1, double x2) { return std::exp(-(x1 * x1 + x2 * x2) / 2.0); });
    f.dealias();
  } else if (name == "random") {
    f = sample_band_limited(grid, k, std::min(4.0 * k, grid.dealias_wavenumber()), static_cast<std::uint64_t>(cfg.integer("seed")));
  } else if (name == "file") {
    const std::string path = cfg.text("force_file");
    try {
      f = io::read_field(fs::path(path), grid.dealias_fraction);
    } catch (const std::exception& e) {
      throw ConfigError("field 'force_file': " + std::string(e.what()));
    }
    return f;
  } else {
    throw ConfigError("field 'force': unknown force '" + name + "'");
  }
  return f * delta;
}

std::uint64_t fnv1a64_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 14];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

json field_norms(const SpectralField& u, const std::vector<double>& exponents) {
  json norms = json::array();
  for (double s : exponents) norms.push_back({{"s", s}, {"norm", hs_norm(u, s)}});
  return {{"K", u.grid().K}, {"L", u.grid().L}, {"bandwidth", u.bandwidth()}, {"norms", norms}};
}

ExperimentOutcome run_solve(const ExperimentConfig& cfg) {
  const SolverConfig solver = cfg.solver();
  const SpectralField f = build_force(cfg);
  return guarded(cfg, [&](const fs::path& dir, ExperimentOutcome& out) {
    const OuterResult res = outer_iterate(f, solver);
    io::write_field(dir / "theta.sqgf", res.theta, io::Representation::spectral);
    out.artifacts.push_back(dir / "theta.sqgf");
    write_text(dir / "report.json", res.report.to_json() + "\n", out);
    const double a = solver.alpha;
    json summary = field_norms(res.theta, {a, 2.0 - 2.0 * a, 0.0});
    summary["f_h_minus_alpha"] = res.report.f_h_minus_alpha;
    summary["f_h_crit"] = res.report.f_h_crit;
    summary["residual"] = res.report.residual;
    summary["relative_residual"] = res.report.f_h_minus_alpha > 0 ? res.report.residual / res.report.f_h_minus_alpha : 0.0;
    write_json(dir / "norms.json", summary, out);
  });
}

ExperimentOutcome run_continuity(const ExperimentConfig& cfg) {
  const GridSpec grid = cfg.grid();
  const SolverConfig solver = cfg.solver();
  const SpectralField f_inf = build_force(cfg);
  const double k = grid.wavenumber_unit();
  const double scale = cfg.number("delta") * cfg.number("perturbation_scale");
  SpectralField g(grid);
  if (scale != 0.0)
    g = sample_band_limited(grid, k, std::min(4.0 * k, grid.dealias_wavenumber()),
                            static_cast<std::uint64_t>(cfg.integer("seed")) + 7) *
        scale;
  const int j_max = cfg.integer("j_max");
  if (j_max < 1) throw ConfigError("field 'j_max' must be at least 1");
  const std::vector<double> eps_list = cfg.numbers("eps_list");
  return guarded(cfg, [&](const fs::path& dir, ExperimentOutcome& out) {
    const double a = solver.alpha;
    const SpectralField theta_inf = outer_iterate(f_inf, solver).theta;
    auto gap_row = [&](const SpectralField& fj) {
      const SpectralField d = fj - f_inf;
      const SpectralField gap = outer_iterate(fj, solver).theta - theta_inf;
      return std::array<double, 4>{hs_norm(d, -a), hs_norm(d, 2.0 - 4.0 * a), hs_norm(gap, a), hs_norm(gap, 2.0 - 2.0 * a)};
    };
    std::ostringstream csv;
    csv << "j,d_low,d_crit,gap_low,gap_crit\r\n";
    for (int j = 1; j <= j_max; ++j) {
      const auto r = gap_row(f_inf + g * std::exp2(-j));
      csv << j << ',' << num(r[0]) << ',' << num(r[1]) << ',' << num(r[2]) << ',' << num(r[3]) << "\r\n";
    }
    write_text(dir / "continuity.csv", csv.str(), out);
    std::ostringstream moll;
    moll << "eps,d_low,d_crit,gap_low,gap_crit\r\n";
    for (double eps : eps_list) {
      if (!(eps >= 0.0)) throw ConfigError("field 'eps_list' must hold nonnegative values");
      const auto r = gap_row(heat_smooth(f_inf, eps));
      moll << num(eps) << ',' << num(r[0]) << ',' << num(r[1]) << ',' << num(r[2]) << ',' << num(r[3]) << "\r\n";
    }
    write_text(dir / "continuity_mollified.csv", moll.str(), out);
  });
}

ExperimentOutcome run_nonuniform(const ExperimentConfig& cfg) {
  NonuniformConfig nc;
  nc.n_min = cfg.integer("n_min");
  nc.n_max = cfg.integer("n_max");
  nc.delta = cfg.number("delta");
  nc.alpha = cfg.number("alpha");
  nc.h = cfg.number("h_xi");
  if (nc.n_min < 1 || nc.n_max < nc.n_min) throw ConfigError("fields 'n_min', 'n_max' must satisfy 1 <= n_min <= n_max");
  if (!(nc.alpha > 0.0 && nc.alpha < 0.5)) throw ConfigError("field 'alpha' must lie in (0, 1/2) for this experiment");
  if (!(nc.delta >= 0.0)) throw ConfigError("field 'delta' must be nonnegative");
  if (cfg.flag("torus")) {
    TorusOptions t;
    try {
      t.grid = make_grid(cfg.integer("torus_K"), cfg.number("torus_L"), cfg.number("dealias_fraction"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("fields 'torus_K', 'torus_L': ") + e.what());
    }
    t.solver = cfg.solver();
    nc.torus = t;
  }
  try {
    build_phi(nc.h);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'h_xi': ") + e.what());
  }
  return guarded(cfg, [&](const fs::path& dir, ExperimentOutcome& out) {
    const NormTable table = nonuniform_experiment(nc);
    for (const std::string& w : table.warnings) out.messages.push_back("warning: " + w);
    std::ostringstream csv;
    table.write_csv(csv);
    write_text(dir / "nonuniform.csv", csv.str(), out);
    std::ostringstream plot;
    plot << "n,log2_d_crit,log2_g2_gap\r\n";
    std::vector<double> ns, dc, b12, bgh, b11;
    for (const NormRow& r : table.rows) {
      auto l2 = [](double x) { return x > 0.0 ? num(std::log2(x)) : std::string(); };
      plot << r.n << ',' << l2(r.d_crit) << ',' << l2(r.g2_gap) << "\r\n";
      ns.push_back(r.n);
      dc.push_back(r.d_crit);
      b12.push_back(r.b12);
      bgh.push_back(r.bgh);
      b11.push_back(r.b11);
    }
    write_text(dir / "nonuniform_plot.csv", plot.str(), out);
    json fits = {{"n_min", nc.n_min}, {"n_max", nc.n_max}};
    if (ns.size() >= 2 && nc.delta > 0.0) {
      fits["slope_d_crit"] = log2_slope(ns, dc);
      fits["slope_b12"] = log2_slope(ns, b12);
      fits["slope_bgh"] = log2_slope(ns, bgh);
      fits["b11_max_over_min"] = *std::max_element(b11.begin(), b11.end()) / *std::min_element(b11.begin(), b11.end());
    }
    write_json(dir / "nonuniform_fits.json", fits, out);
  });
}

ExperimentOutcome run_rlcheck(const ExperimentConfig& cfg) {
  const int n_min = cfg.integer("n_min"), n_max = cfg.integer("n_max");
  if (n_min < 1 || n_max < n_min) throw ConfigError("fields 'n_min', 'n_max' must satisfy 1 <= n_min <= n_max");
  PhiProfile phi;
  try {
    phi = build_phi(cfg.number("h_xi"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'h_xi': ") + e.what());
  }
  return guarded(cfg, [&](const fs::path& dir, ExperimentOutcome& out) {
    std::ostringstream csv;
    csv << "n,value2,limit2,rel_dev\r\n";
    for (int n = n_min; n <= n_max; ++n) {
      const RiemannLebesgue r = riemann_lebesgue_check(phi, n);
      csv << n << ',' << num(r.value2) << ',' << num(r.limit2) << ',' << num(r.rel_dev) << "\r\n";
    }
    write_text(dir / "rlcheck.csv", csv.str(), out);
    write_json(dir / "phi.json", {{"h_xi", phi.h}, {"l4_norm", phi.l4_norm}, {"square_h1", phi.square_h1}}, out);
  });
}

ExperimentOutcome run_inequality_scan(const ExperimentConfig& cfg) {
  const GridSpec grid = cfg.grid();
  const double alpha = cfg.number("alpha");
  const int samples = cfg.integer("samples");
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const double k_min = annulus_k_min(cfg, grid), k_max = annulus_k_max(cfg, grid);
  std::vector<double> pe = cfg.numbers("product_exponents");
  std::vector<double> ce = cfg.numbers("commutator_exponents");
  if (pe.empty()) {
    const auto d = operating_product_exponents(alpha);
    pe.assign(d.begin(), d.end());
  }
  if (ce.empty()) {
    const auto d = operating_commutator_exponents(alpha);
    ce.assign(d.begin(), d.end());
  }
  // Reject inadmissible tuples before any compute.
  try {
    if (pe.size() != 4) throw std::invalid_argument("product_exponents must hold 4 values");
    if (ce.size() != 6) throw std::invalid_argument("commutator_exponents must hold 6 values");
    validate_product_exponents({pe[0], pe[1], pe[2], pe[3]});
    validate_commutator_exponents({ce[0], ce[1], ce[2], ce[3], ce[4], ce[5]});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return guarded(cfg, [&](const fs::path& dir, ExperimentOutcome& out) {
    for (auto [kind, name, ex] : {std::tuple{EstimateKind::product, "product", pe},
                                  std::tuple{EstimateKind::commutator, "commutator", ce}}) {
      EstimateProbe probe = run_estimate_probe(kind, ex, grid, samples, seed, k_min, k_max);
      const std::string stem = std::string(name) + "_witness";
      io::write_field(dir / (stem + "_f.sqgf"), probe.witness_f, io::Representation::spectral);
      io::write_field(dir / (stem + "_g.sqgf"), probe.witness_g, io::Representation::spectral);
      out.artifacts.push_back(dir / (stem + "_f.sqgf"));
      out.artifacts.push_back(dir / (stem + "_g.sqgf"));
      probe.witness_files = {stem + "_f.sqgf", stem + "_g.sqgf"};
      write_text(dir / (std::string(name) + "_probe.json"), probe.to_json() + "\n", out);
    }

    // Interpolation inequality and smoothing bound on random cases.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(-1.0, 2.0), usig(0.0, 1.9), ueps(-3.0, 1.0);
    const int cases = cfg.integer("lemma_cases");
    int interp_pass = 0, scan_pass = 0;
    double worst_interp = 0.0;
    for (int i = 0; i < cases; ++i) {
      const SpectralField u = sample_band_limited(grid, k_min, k_max, seed + 100000 + static_cast<std::uint64_t>(i));
      const double s = us(rng), sigma = usig(rng), eps = std::exp2(ueps(rng)) / grid.wavenumber_unit();
      const InterpolationCheck c = interpolation_check(u, s, sigma, eps);
      interp_pass += c.holds;
      worst_interp = std::max(worst_interp, c.lhs / c.rhs);
      const double eps0 = std::min(1.0, smoothing_monotone_limit(sigma) / k_max);
      std::vector<double> seq;
      for (int m = 0; m < 8; ++m) seq.push_back(eps0 * std::exp2(-m));
      const auto rows = smoothing_limit_scan(u, s, sigma, seq);
      bool ok = true;
      for (std::size_t m = 0; m < rows.size(); ++m) {
        ok = ok && rows[m].within_bound;
        if (m > 0) ok = ok && rows[m].value < rows[m - 1].value;
      }
      scan_pass += ok;
    }
    write_json(dir / "smoothing.json",
               {{"cases", cases}, {"interpolation_pass", interp_pass}, {"scan_pass", scan_pass},
                {"worst_lhs_over_rhs", worst_interp}},
               out);

    // Cancellation of the advective pairing.
    const int ccases = cfg.integer("cancellation_cases");
    const double kq = grid.wavenumber_unit() * (grid.K / 4);
    double worst_rel = 0.0;
    for (int i = 0; i < ccases; ++i) {
      const SpectralField th = sample_band_limited(grid, grid.wavenumber_unit(), std::min(kq, grid.dealias_wavenumber()),
                                                   seed + 200000 + static_cast<std::uint64_t>(i));
      const VelocityField v = velocity_from_theta(th);
      const double vl2 = std::hypot(hs_norm(v.v1, 0.0), hs_norm(v.v2, 0.0));
      const double scale = std::pow(hs_norm(th, 0.0), 2) * vl2 / (2.0 * grid.L);
      worst_rel = std::max(worst_rel, cancellation_probe(th) / scale);
    }
    const bool cancel_ok = worst_rel <= 1e-10;
    write_json(dir / "cancellation.json", {{"cases", ccases}, {"worst_relative_pairing", worst_rel}, {"threshold", 1e-10}},
               out);
    if (interp_pass != cases || scan_pass != cases || !cancel_ok) {
      out.exit_code = kExitInequality;
      out.messages.push_back("an unconditional inequality failed: interpolation " + std::to_string(interp_pass) + "/" +
                             std::to_string(cases) + ", smoothing scan " + std::to_string(scan_pass) + "/" +
                             std::to_string(cases) + ", cancellation worst " + num(worst_rel));
    }
  });
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  const std::string e = cfg.experiment();
  if (e == "solve") return run_solve(cfg);
  if (e == "continuity") return run_continuity(cfg);
  if (e == "nonuniform") return run_nonuniform(cfg);
  if (e == "rlcheck") return run_rlcheck(cfg);
  return run_inequality_scan(cfg);
}

}  // namespace sqg
