// Command-line front end: closed-form exponents, Ulam sweeps, Monte Carlo
// sweeps, noise-induced-order detection, and coarse-fine certificates.
//
// Exit codes: 0 success (or certificate found), 1 no certificate,
// 2 usage/config error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nio/errors.hpp"
#include "nio/lyapunov.hpp"
#include "nio/map.hpp"
#include "nio/matrix.hpp"
#include "nio/montecarlo.hpp"
#include "nio/noise.hpp"
#include "nio/partition.hpp"
#include "nio/spectral.hpp"
#include "nio/ulam.hpp"

using nlohmann::json;

namespace {

// Shortest round-trip decimal form; locale-independent by construction.
std::string fmt(double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string fmt(int v) { return std::to_string(v); }

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw nio::IoError("cannot open " + path + " for writing");
  out << body;
  if (!out) throw nio::IoError("short write to " + path);
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

nio::BoundaryCondition parse_bc(const std::string& name) {
  return name == "reflecting" ? nio::BoundaryCondition::Reflecting
                              : nio::BoundaryCondition::Periodic;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value config lines with '#' comments; keys are the long option
// names. Values apply only to options not already given on the command
// line, so flags override the file.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nio::IoError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string entry = trim(line);
    if (entry.empty()) continue;
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw nio::DomainError(path + ":" + std::to_string(lineno) +
                             ": expected key = value");
    }
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw nio::DomainError(path + ":" + std::to_string(lineno) + ": bad key");
    }
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw nio::DomainError(path + ":" + std::to_string(lineno) +
                             ": unknown option '" + key + "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("NIO_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  std::uint64_t v = 0;
  auto res = std::from_chars(s, s + std::string(s).size(), v);
  if (res.ec != std::errc{} || *res.ptr != '\0') {
    throw nio::DomainError("NIO_SEED must be an unsigned integer");
  }
  return v;
}

std::uint64_t fnv1a(const unsigned char* data, std::size_t len,
                    std::uint64_t h = 1469598103934665603ULL) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t hash_doubles(std::initializer_list<double> values, std::uint64_t tail) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    h = fnv1a(reinterpret_cast<const unsigned char*>(&bits), sizeof(bits), h);
  }
  h = fnv1a(reinterpret_cast<const unsigned char*>(&tail), sizeof(tail), h);
  return h;
}

// Deterministic Ulam factor, optionally cached on disk keyed by the exact
// (alpha, beta, n) bits; sweeps reuse it across the whole xi grid.
nio::StochasticMatrix cached_deterministic(const std::optional<std::string>& cache_dir,
                                           const nio::MapSpec& map,
                                           const nio::Partition& p) {
  if (!cache_dir) return nio::deterministic_matrix(map, p);
  namespace fs = std::filesystem;
  fs::create_directories(*cache_dir);
  std::uint64_t key = hash_doubles({map.alpha(), map.beta()}, p.n());
  char name[64];
  std::snprintf(name, sizeof(name), "det-%016llx.ulam",
                static_cast<unsigned long long>(key));
  fs::path path = fs::path(*cache_dir) / name;
  if (fs::exists(path)) {
    nio::StochasticMatrix m = nio::StochasticMatrix::read_binary(path.string());
    if (m.n() == p.n()) return m;
  }
  nio::StochasticMatrix m = nio::deterministic_matrix(map, p);
  m.write_binary(path.string());
  return m;
}

json sample_to_json(const nio::CurveSample& s) {
  json j;
  j["xi"] = s.xi;
  j["lambda"] = s.lambda;
  j["residual"] = s.residual;
  j["variation"] = s.variation;
  j["iterations"] = s.iterations;
  if (s.coupling_k) {
    j["coupling_k"] = *s.coupling_k;
  } else {
    j["coupling_k"] = nullptr;
  }
  if (s.cf_bound) {
    j["cf_bound"] = *s.cf_bound;
  } else {
    j["cf_bound"] = nullptr;
  }
  j["error"] = s.error;
  return j;
}

json sign_changes_to_json(const nio::LyapunovCurve& curve) {
  json arr = json::array();
  for (const auto& [a, b] : nio::sign_changes(curve)) {
    arr.push_back(json::array({a, b}));
  }
  return arr;
}

std::string curve_csv(const nio::LyapunovCurve& curve) {
  std::string out = "xi,lambda,residual,variation,coupling_k,cf_bound\n";
  for (const nio::CurveSample& s : curve.samples) {
    out += fmt(s.xi);
    out += ',';
    out += fmt(s.lambda);
    out += ',';
    out += fmt(s.residual);
    out += ',';
    out += fmt(s.variation);
    out += ',';
    if (s.coupling_k) out += fmt(*s.coupling_k);
    out += ',';
    out += s.cf_bound ? fmt(*s.cf_bound) : "nan";
    out += '\n';
  }
  return out;
}

// Shared sweep settings for ulam-sweep and nio.
struct SweepArgs {
  double alpha = 5.0;
  double beta = 1.0;
  std::string bc = "periodic";
  std::size_t n = 1024;
  std::optional<double> xi;
  double xi_min = 0.01;
  double xi_max = 2.5;
  std::size_t xi_count = 40;
  double tol = 1e-10;
  int max_iter = 100000;
  int coupling_kmax = 64;
  std::optional<double> margin;
  std::optional<std::string> cache_dir;
  std::optional<std::string> csv_path;
  std::optional<std::string> json_path;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
  cmd->add_option("--alpha", a.alpha, "Map exponent alpha (> 1)")
      ->capture_default_str();
  cmd->add_option("--beta", a.beta, "Map factor beta in (0,1]")->capture_default_str();
  cmd->add_option("--bc", a.bc, "Boundary condition")
      ->check(CLI::IsMember({"periodic", "reflecting"}))
      ->capture_default_str();
  cmd->add_option("--n", a.n, "Partition size (even)")->capture_default_str();
  cmd->add_option("--xi", a.xi, "Single noise amplitude instead of a grid");
  cmd->add_option("--xi-min", a.xi_min, "Grid lower end")->capture_default_str();
  cmd->add_option("--xi-max", a.xi_max, "Grid upper end")->capture_default_str();
  cmd->add_option("--xi-count", a.xi_count, "Grid point count (log-spaced)")
      ->capture_default_str();
  cmd->add_option("--tol", a.tol, "Stationary solve L1 tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", a.max_iter, "Power iteration cap")
      ->capture_default_str();
  cmd->add_option("--coupling-kmax", a.coupling_kmax, "Coupling search depth")
      ->capture_default_str();
  cmd->add_option("--margin", a.margin,
                  "Sign margin for certification (default: 3x the lambda "
                  "difference against the half-resolution grid)");
  cmd->add_option("--cache-dir", a.cache_dir,
                  "Directory for cached deterministic factors");
  cmd->add_option("--csv", a.csv_path, "CSV output path");
  cmd->add_option("--json", a.json_path, "JSON report path");
}

std::vector<double> sweep_grid(const SweepArgs& a) {
  if (a.xi) {
    if (!(*a.xi > 0.0)) throw nio::AmplitudeError("xi must be positive");
    return {*a.xi};
  }
  return nio::log_spaced_grid(a.xi_min, a.xi_max, a.xi_count);
}

json sweep_config_json(const SweepArgs& a, const std::vector<double>& grid) {
  json j;
  j["alpha"] = a.alpha;
  j["beta"] = a.beta;
  j["bc"] = a.bc;
  j["n"] = a.n;
  j["xi_grid"] = grid;
  j["tol"] = a.tol;
  j["max_iter"] = a.max_iter;
  j["coupling_kmax"] = a.coupling_kmax;
  j["cache_dir"] = a.cache_dir ? json(*a.cache_dir) : json(nullptr);
  return j;
}

// Even partition size for the half-resolution margin estimate.
std::size_t half_n(std::size_t n) {
  std::size_t m = n / 2;
  if (m % 2 != 0) ++m;
  return std::max<std::size_t>(m, 2);
}

struct SweepResult {
  nio::LyapunovCurve curve;
  double margin = 0.0;
  std::optional<nio::NioCertificate> certificate;
};

SweepResult run_sweep(const SweepArgs& args, const std::vector<double>& grid,
                      bool certify_rows) {
  nio::MapSpec map(args.alpha, args.beta);
  nio::BoundaryCondition bc = parse_bc(args.bc);
  nio::Partition p(args.n);
  nio::CurveOptions opt;
  opt.tol = args.tol;
  opt.max_iter = args.max_iter;
  opt.coupling_k_max = args.coupling_kmax;

  nio::StochasticMatrix det = cached_deterministic(args.cache_dir, map, p);
  nio::LyapunovCurve curve = nio::lyapunov_curve(det, map, nio::NoiseKernel::Mother::Uniform,
                                                 bc, grid, opt);

  if (certify_rows && args.n <= nio::AnnealedOperator::kMaterializeLimit) {
    for (nio::CurveSample& s : curve.samples) {
      if (!s.coupling_k) continue;
      auto cert = nio::coarse_fine_certificate(
          map, nio::NoiseKernel(nio::NoiseKernel::Mother::Uniform, s.xi), bc, args.n,
          *s.coupling_k);
      s.cf_bound = cert.bound;
    }
  }

  SweepResult result;
  result.margin = 0.0;
  if (args.margin) {
    result.margin = *args.margin;
  } else {
    std::size_t m = half_n(args.n);
    nio::Partition ph(m);
    nio::CurveOptions hopt = opt;
    hopt.compute_coupling = false;
    nio::StochasticMatrix det_h = cached_deterministic(args.cache_dir, map, ph);
    nio::LyapunovCurve half = nio::lyapunov_curve(det_h, map, nio::NoiseKernel::Mother::Uniform,
                                                  bc, grid, hopt);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double a = curve.samples[i].lambda;
      double b = half.samples[i].lambda;
      if (std::isnan(a) || std::isnan(b)) continue;
      result.margin = std::max(result.margin, 3.0 * std::abs(a - b));
    }
  }
  result.certificate = nio::detect_nio(curve, result.margin);
  result.curve = std::move(curve);
  return result;
}

int run_tilde(double alpha_min, double alpha_max, std::size_t count, double tol,
              std::optional<double> alpha, double beta,
              const std::optional<std::string>& json_path) {
  json report;
  json config;
  config["alpha_min"] = alpha_min;
  config["alpha_max"] = alpha_max;
  config["count"] = count;
  config["tol"] = tol;
  config["beta"] = beta;
  config["alpha"] = alpha ? json(*alpha) : json(nullptr);
  report["config"] = config;

  if (alpha) {
    double v = nio::tilde_lambda(*alpha, beta);
    std::cout << "tilde_lambda(" << fmt(*alpha) << ", " << fmt(beta)
              << ") = " << fmt(v) << "\n";
    report["value"] = v;
    report["grid"] = json::array();
    report["enclosure"] = nullptr;
  } else {
    if (count < 2) throw nio::DomainError("grid needs at least 2 points");
    json grid = json::array();
    std::cout << "alpha,lambda_tilde\n";
    for (std::size_t i = 0; i < count; ++i) {
      double t = static_cast<double>(i) / static_cast<double>(count - 1);
      double a = alpha_min + t * (alpha_max - alpha_min);
      double v = nio::tilde_lambda(a, beta);
      std::cout << fmt(a) << "," << fmt(v) << "\n";
      grid.push_back(json{{"alpha", a}, {"lambda_tilde", v}});
    }
    nio::AlphaInterval enc = nio::find_alpha_tilde(alpha_min, alpha_max, tol);
    std::cout << "alpha_tilde_enclosure," << fmt(enc.lo) << "," << fmt(enc.hi) << "\n";
    report["value"] = nullptr;
    report["grid"] = grid;
    report["enclosure"] = json{{"lo", enc.lo}, {"hi", enc.hi}};
  }
  if (json_path) write_json_file(*json_path, report);
  return 0;
}

int run_ulam_sweep(const SweepArgs& args, bool no_certify) {
  std::vector<double> grid = sweep_grid(args);
  bool certify = !no_certify && args.n <= nio::AnnealedOperator::kMaterializeLimit;
  SweepResult result = run_sweep(args, grid, certify);

  std::string csv = curve_csv(result.curve);
  if (args.csv_path) {
    write_text_file(*args.csv_path, csv);
  } else {
    std::cout << csv;
  }

  json report;
  report["config"] = sweep_config_json(args, grid);
  report["config"]["certify"] = certify;
  report["margin"] = result.margin;
  json samples = json::array();
  for (const nio::CurveSample& s : result.curve.samples) {
    samples.push_back(sample_to_json(s));
  }
  report["samples"] = samples;
  report["sign_changes"] = sign_changes_to_json(result.curve);
  if (result.certificate) {
    json cert;
    cert["xi_pos"] = result.certificate->positive.xi;
    cert["lambda_pos"] = result.certificate->positive.lambda;
    cert["xi_neg"] = result.certificate->negative.xi;
    cert["lambda_neg"] = result.certificate->negative.lambda;
    cert["margin"] = result.certificate->margin;
    report["certificate"] = cert;
  } else {
    report["certificate"] = nullptr;
  }
  if (args.json_path) write_json_file(*args.json_path, report);

  if (args.csv_path) {
    std::cout << "wrote " << *args.csv_path << " (" << grid.size() << " rows)\n";
  }
  if (result.certificate) {
    std::cout << "sign change: lambda(" << fmt(result.certificate->positive.xi)
              << ") = " << fmt(result.certificate->positive.lambda) << " > 0 > lambda("
              << fmt(result.certificate->negative.xi)
              << ") = " << fmt(result.certificate->negative.lambda) << "\n";
  } else {
    std::cout << "sign change: none (margin " << fmt(result.margin) << ")\n";
  }
  return 0;
}

int run_nio(const SweepArgs& args, int orbits, int steps, int burn_in,
            std::uint64_t seed) {
  std::vector<double> grid = sweep_grid(args);
  SweepResult result = run_sweep(args, grid, false);

  json report;
  report["config"] = sweep_config_json(args, grid);
  report["config"]["orbits"] = orbits;
  report["config"]["steps"] = steps;
  report["config"]["burn_in"] = burn_in;
  report["config"]["seed"] = seed;
  report["margin"] = result.margin;
  json samples = json::array();
  for (const nio::CurveSample& s : result.curve.samples) {
    samples.push_back(sample_to_json(s));
  }
  report["samples"] = samples;
  report["sign_changes"] = sign_changes_to_json(result.curve);

  int exit_code = 1;
  if (result.certificate) {
    exit_code = 0;
    const nio::NioCertificate& c = *result.certificate;
    nio::MapSpec map(args.alpha, args.beta);
    nio::BoundaryCondition bc = parse_bc(args.bc);
    nio::McConfig mc;
    mc.orbits = orbits;
    mc.length = steps;
    mc.burn_in = burn_in;
    mc.seed = seed;
    auto cross = [&](double xi) {
      return nio::finite_time_lyapunov(
          map, nio::NoiseKernel(nio::NoiseKernel::Mother::Uniform, xi), bc, mc);
    };
    nio::McEstimate mc_pos = cross(c.positive.xi);
    nio::McEstimate mc_neg = cross(c.negative.xi);
    json cert;
    cert["xi_pos"] = c.positive.xi;
    cert["lambda_pos"] = c.positive.lambda;
    cert["residual_pos"] = c.positive.residual;
    cert["xi_neg"] = c.negative.xi;
    cert["lambda_neg"] = c.negative.lambda;
    cert["residual_neg"] = c.negative.residual;
    cert["margin"] = c.margin;
    cert["mc_pos"] = json{{"mean", mc_pos.mean},
                          {"stderr", mc_pos.stderr_},
                          {"rejected", mc_pos.rejected}};
    cert["mc_neg"] = json{{"mean", mc_neg.mean},
                          {"stderr", mc_neg.stderr_},
                          {"rejected", mc_neg.rejected}};
    cert["mc_sign_agreement"] =
        (mc_pos.mean + 3.0 * mc_pos.stderr_ > 0.0) &&
        (mc_neg.mean - 3.0 * mc_neg.stderr_ < 0.0);
    report["certificate"] = cert;
    std::cout << "certificate: lambda(" << fmt(c.positive.xi) << ") = "
              << fmt(c.positive.lambda) << " > 0 > lambda(" << fmt(c.negative.xi)
              << ") = " << fmt(c.negative.lambda) << " (margin " << fmt(c.margin)
              << ")\n";
    std::cout << "mc cross-check: " << fmt(mc_pos.mean) << " +/- "
              << fmt(mc_pos.stderr_) << " at xi = " << fmt(c.positive.xi) << ", "
              << fmt(mc_neg.mean) << " +/- " << fmt(mc_neg.stderr_)
              << " at xi = " << fmt(c.negative.xi) << "\n";
  } else {
    report["certificate"] = nullptr;
    std::cout << "certificate: none (margin " << fmt(result.margin) << ")\n";
  }
  if (args.json_path) write_json_file(*args.json_path, report);
  return exit_code;
}

int run_mc_sweep(double alpha, std::optional<double> alpha_min,
                 std::optional<double> alpha_max, std::size_t alpha_count, double beta,
                 const std::string& bc_name, std::optional<double> xi, double xi_min,
                 double xi_max, std::size_t xi_count, int orbits, int steps,
                 int burn_in, std::uint64_t seed,
                 const std::optional<std::string>& csv_path,
                 const std::optional<std::string>& json_path) {
  std::vector<double> alphas;
  if (alpha_min && alpha_max) {
    if (alpha_count < 2) throw nio::DomainError("alpha grid needs at least 2 points");
    for (std::size_t i = 0; i < alpha_count; ++i) {
      double t = static_cast<double>(i) / static_cast<double>(alpha_count - 1);
      alphas.push_back(*alpha_min + t * (*alpha_max - *alpha_min));
    }
  } else {
    alphas.push_back(alpha);
  }
  std::vector<double> xis =
      xi ? std::vector<double>{*xi} : nio::log_spaced_grid(xi_min, xi_max, xi_count);

  nio::McConfig config;
  config.orbits = orbits;
  config.length = steps;
  config.burn_in = burn_in;
  config.seed = seed;
  nio::McGrid grid = nio::heatmap_sweep(alphas, xis, beta,
                                        nio::NoiseKernel::Mother::Uniform,
                                        parse_bc(bc_name), config);

  std::string csv = "alpha,xi,mean,stderr,rejected\n";
  json cells = json::array();
  double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (std::size_t x = 0; x < xis.size(); ++x) {
      const nio::McCell& cell = grid.cell(a, x);
      bool failed = !cell.error.empty();
      double mean = failed ? nan : cell.estimate.mean;
      double se = failed ? nan : cell.estimate.stderr_;
      int rejected = failed ? orbits : cell.estimate.rejected;
      csv += fmt(alphas[a]);
      csv += ',';
      csv += fmt(xis[x]);
      csv += ',';
      csv += fmt(mean);
      csv += ',';
      csv += fmt(se);
      csv += ',';
      csv += fmt(rejected);
      csv += '\n';
      cells.push_back(json{{"alpha", alphas[a]},
                           {"xi", xis[x]},
                           {"mean", mean},
                           {"stderr", se},
                           {"rejected", rejected},
                           {"error", cell.error}});
    }
  }
  if (csv_path) {
    write_text_file(*csv_path, csv);
    std::cout << "wrote " << *csv_path << " (" << alphas.size() * xis.size()
              << " rows)\n";
  } else {
    std::cout << csv;
  }
  if (json_path) {
    json report;
    json cfg;
    cfg["alpha_grid"] = alphas;
    cfg["xi_grid"] = xis;
    cfg["beta"] = beta;
    cfg["bc"] = bc_name;
    cfg["orbits"] = orbits;
    cfg["steps"] = steps;
    cfg["burn_in"] = burn_in;
    cfg["seed"] = seed;
    report["config"] = cfg;
    report["cells"] = cells;
    write_json_file(*json_path, report);
  }
  return 0;
}

int run_certify(double alpha, double beta, const std::string& bc_name, std::size_t n,
                double xi, std::optional<int> depth, int kmax,
                const std::optional<std::string>& json_path) {
  if (n > nio::AnnealedOperator::kMaterializeLimit) {
    throw nio::DomainError("certify needs n <= 2048 (dense matrix powers)");
  }
  nio::MapSpec map(alpha, beta);
  nio::NoiseKernel kernel(nio::NoiseKernel::Mother::Uniform, xi);
  nio::BoundaryCondition bc = parse_bc(bc_name);
  int i;
  if (depth) {
    i = *depth;
  } else {
    nio::Partition p(n);
    auto k = nio::coupling_time(nio::annealed_operator(map, kernel, bc, p), kmax);
    if (!k) {
      throw nio::NonConvergence(kmax, std::numeric_limits<double>::quiet_NaN());
    }
    i = *k;
  }
  nio::CoarseFineCertificate cert = nio::coarse_fine_certificate(map, kernel, bc, n, i);

  json report;
  json config;
  config["alpha"] = alpha;
  config["beta"] = beta;
  config["bc"] = bc_name;
  config["n"] = n;
  config["xi"] = xi;
  config["i"] = i;
  config["coupling_kmax"] = kmax;
  report["config"] = config;
  report["delta"] = cert.delta;
  report["xi"] = cert.xi;
  report["i"] = cert.i;
  report["discrete_norms"] = cert.discrete_norms;
  report["bound"] = cert.bound;
  report["valid"] = cert.valid;
  if (json_path) write_json_file(*json_path, report);

  std::cout << "coarse-fine bound = " << fmt(cert.bound) << " (C_" << cert.i << " = "
            << fmt(cert.discrete_norms.back()) << " + " << fmt(2 * cert.i + 1)
            << " * delta/xi), " << (cert.valid ? "valid" : "not valid") << "\n";
  return cert.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Stationary densities, Lyapunov exponents, and noise-induced order for the "
      "noisy map family 2*beta*|x|^alpha - 1 on [-1,1]"};
  app.require_subcommand(1);

  auto* tilde = app.add_subcommand(
      "tilde", "Closed-form large-noise exponent and the alpha-tilde enclosure");
  double t_alpha_min = 2.0, t_alpha_max = 4.0, t_tol = 1e-7, t_beta = 1.0;
  std::size_t t_count = 21;
  std::optional<double> t_alpha;
  std::optional<std::string> t_json;
  tilde->add_option("--alpha", t_alpha, "Evaluate at a single alpha");
  tilde->add_option("--alpha-min", t_alpha_min, "Grid/bracket lower end")
      ->capture_default_str();
  tilde->add_option("--alpha-max", t_alpha_max, "Grid/bracket upper end")
      ->capture_default_str();
  tilde->add_option("--count", t_count, "Grid point count")->capture_default_str();
  tilde->add_option("--tol", t_tol, "Bisection enclosure width")
      ->capture_default_str();
  tilde->add_option("--beta", t_beta, "Map factor beta")->capture_default_str();
  tilde->add_option("--json", t_json, "JSON report path");
  std::string t_config;
  tilde->add_option("--config", t_config,
                  "Config file (key=value lines, '#' comments)");

  auto* sweep = app.add_subcommand(
      "ulam-sweep", "Lyapunov curve over a noise grid via the Ulam operator");
  SweepArgs sweep_args;
  bool no_certify = false;
  add_sweep_options(sweep, sweep_args);
  sweep->add_flag("--no-certify", no_certify,
                  "Skip per-row coarse-fine bounds (cf_bound column becomes nan)");
  std::string s_config;
  sweep->add_option("--config", s_config,
                  "Config file (key=value lines, '#' comments)");

  auto* mc = app.add_subcommand("mc-sweep",
                                "Finite-time Lyapunov averages over orbit ensembles");
  double m_alpha = 5.0, m_beta = 1.0, m_xi_min = 0.01, m_xi_max = 2.5;
  std::optional<double> m_alpha_min, m_alpha_max, m_xi;
  std::size_t m_alpha_count = 9, m_xi_count = 40;
  std::string m_bc = "periodic";
  int m_orbits = 200, m_steps = 10000, m_burn_in = 0;
  std::uint64_t m_seed = 0;
  std::optional<std::string> m_csv, m_json;
  mc->add_option("--alpha", m_alpha, "Single map exponent")->capture_default_str();
  mc->add_option("--alpha-min", m_alpha_min, "Alpha grid lower end");
  mc->add_option("--alpha-max", m_alpha_max, "Alpha grid upper end");
  mc->add_option("--alpha-count", m_alpha_count, "Alpha grid point count")
      ->capture_default_str();
  mc->add_option("--beta", m_beta, "Map factor beta")->capture_default_str();
  mc->add_option("--bc", m_bc, "Boundary condition")
      ->check(CLI::IsMember({"periodic", "reflecting"}))
      ->capture_default_str();
  mc->add_option("--xi", m_xi, "Single noise amplitude instead of a grid");
  mc->add_option("--xi-min", m_xi_min, "Grid lower end")->capture_default_str();
  mc->add_option("--xi-max", m_xi_max, "Grid upper end")->capture_default_str();
  mc->add_option("--xi-count", m_xi_count, "Grid point count (log-spaced)")
      ->capture_default_str();
  mc->add_option("--orbits", m_orbits, "Orbits per estimate")->capture_default_str();
  mc->add_option("--steps", m_steps, "Steps per orbit")->capture_default_str();
  mc->add_option("--burn-in", m_burn_in, "Discarded initial steps")
      ->capture_default_str();
  mc->add_option("--seed", m_seed, "RNG seed (NIO_SEED overrides)")
      ->capture_default_str();
  mc->add_option("--csv", m_csv, "CSV output path (default stdout)");
  mc->add_option("--json", m_json, "JSON report path");
  std::string m_config;
  mc->add_option("--config", m_config,
                  "Config file (key=value lines, '#' comments)");

  auto* nio_cmd = app.add_subcommand(
      "nio", "Detect noise-induced order: Ulam sweep plus Monte Carlo cross-check");
  SweepArgs nio_args;
  nio_args.xi_min = 0.01;
  nio_args.xi_max = 2.5;
  int n_orbits = 200, n_steps = 10000, n_burn_in = 0;
  std::uint64_t n_seed = 0;
  add_sweep_options(nio_cmd, nio_args);
  nio_cmd->add_option("--orbits", n_orbits, "Cross-check orbits")
      ->capture_default_str();
  nio_cmd->add_option("--steps", n_steps, "Cross-check steps per orbit")
      ->capture_default_str();
  nio_cmd->add_option("--burn-in", n_burn_in, "Cross-check burn-in")
      ->capture_default_str();
  nio_cmd->add_option("--seed", n_seed, "Cross-check seed (NIO_SEED overrides)")
      ->capture_default_str();
  std::string n_config;
  nio_cmd->add_option("--config", n_config,
                  "Config file (key=value lines, '#' comments)");

  auto* certify = app.add_subcommand(
      "certify", "Coarse-fine contraction certificate for the annealed operator");
  double c_alpha = 5.0, c_beta = 1.0, c_xi = 0.5;
  std::size_t c_n = 1024;
  std::string c_bc = "periodic";
  std::optional<int> c_depth;
  int c_kmax = 64;
  std::optional<std::string> c_json;
  certify->add_option("--alpha", c_alpha, "Map exponent alpha")->capture_default_str();
  certify->add_option("--beta", c_beta, "Map factor beta")->capture_default_str();
  certify->add_option("--bc", c_bc, "Boundary condition")
      ->check(CLI::IsMember({"periodic", "reflecting"}))
      ->capture_default_str();
  certify->add_option("--n", c_n, "Partition size (even, at most 2048)")
      ->capture_default_str();
  certify->add_option("--xi", c_xi, "Noise amplitude")->capture_default_str();
  certify->add_option("--i", c_depth, "Certificate depth (default: coupling time)");
  certify->add_option("--coupling-kmax", c_kmax, "Coupling search depth")
      ->capture_default_str();
  certify->add_option("--json", c_json, "JSON report path");
  std::string c_config;
  certify->add_option("--config", c_config,
                  "Config file (key=value lines, '#' comments)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tilde && !t_config.empty()) apply_config(tilde, t_config);
    if (*sweep && !s_config.empty()) apply_config(sweep, s_config);
    if (*mc && !m_config.empty()) apply_config(mc, m_config);
    if (*nio_cmd && !n_config.empty()) apply_config(nio_cmd, n_config);
    if (*certify && !c_config.empty()) apply_config(certify, c_config);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nio::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*tilde) {
      return run_tilde(t_alpha_min, t_alpha_max, t_count, t_tol, t_alpha, t_beta,
                       t_json);
    }
    if (*sweep) {
      return run_ulam_sweep(sweep_args, no_certify);
    }
    if (*mc) {
      if (auto s = env_seed()) m_seed = *s;
      return run_mc_sweep(m_alpha, m_alpha_min, m_alpha_max, m_alpha_count, m_beta,
                          m_bc, m_xi, m_xi_min, m_xi_max, m_xi_count, m_orbits,
                          m_steps, m_burn_in, m_seed, m_csv, m_json);
    }
    if (*nio_cmd) {
      if (auto s = env_seed()) n_seed = *s;
      return run_nio(nio_args, n_orbits, n_steps, n_burn_in, n_seed);
    }
    if (*certify) {
      return run_certify(c_alpha, c_beta, c_bc, c_n, c_xi, c_depth, c_kmax, c_json);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nio::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
