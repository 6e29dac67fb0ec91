// Acceptance gate for the noise-induced-order pipeline. Each criterion
// prints exactly one PASS/FAIL line; the exit code is the number of
// failures. The CLI binary under test is argv[1].

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
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
#include "../support/eigen_oracle.hpp"
#include "../support/oracles.hpp"
#include "../support/subprocess.hpp"

using nio::BoundaryCondition;
using nio::MapSpec;
using nio::NoiseKernel;
using nio::Partition;
using nlohmann::json;

namespace {

std::string g_cli;
std::string g_tmp;

std::string cli(const std::string& args) {
  return testsupport::shell_quote(g_cli) + " " + args;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

NoiseKernel uniform_kernel(double xi) {
  return NoiseKernel(NoiseKernel::Mother::Uniform, xi);
}

std::string fmt1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

Outcome criterion_enclosure() {
  std::string out = g_tmp + "/tilde.json";
  auto r = testsupport::run_command(
      cli("tilde --tol 1e-7 --json " + testsupport::shell_quote(out)));
  if (r.exit_code != 0) return {false, "exit code " + std::to_string(r.exit_code)};
  json j = json::parse(testsupport::read_file(out));
  double lo = j["enclosure"]["lo"].get<double>();
  double hi = j["enclosure"]["hi"].get<double>();
  bool pass = lo <= hi && lo >= 2.67834 && hi <= 2.67835;
  return {pass, "enclosure [" + fmt1(lo) + ", " + fmt1(hi) + "]"};
}

Outcome criterion_exact_uniform() {
  Partition p(1024);
  auto op = nio::annealed_operator(MapSpec(5.0, 1.0), uniform_kernel(2.0),
                                   BoundaryCondition::Periodic, p);
  nio::StationarySolve solve = nio::stationary_density(op);
  double l1 = solve.density.l1_distance(nio::Density::uniform(1024));
  double lambda = nio::lyapunov_from_density(MapSpec(5.0, 1.0), solve.density);
  double target = std::log(10.0) - 4.0;
  bool pass = l1 <= 1e-10 && std::abs(lambda - target) <= 1e-6;
  return {pass, "L1 deviation " + fmt1(l1) + ", lambda " + fmt1(lambda)};
}

Outcome criterion_nio_positive() {
  std::string out = g_tmp + "/nio5.json";
  auto r = testsupport::run_command(
      cli("nio --alpha 5 --n 1024 --xi-min 0.05 --xi-max 2.0 --xi-count 12 "
          "--seed 0 --json " + testsupport::shell_quote(out)));
  if (r.exit_code != 0) return {false, "exit code " + std::to_string(r.exit_code)};
  json j = json::parse(testsupport::read_file(out));
  if (!j["certificate"].is_object()) return {false, "no certificate in report"};
  const json& c = j["certificate"];
  double lp = c["lambda_pos"].get<double>();
  double ln = c["lambda_neg"].get<double>();
  bool agree = c["mc_sign_agreement"].get<bool>();
  bool pass = lp > 0.0 && ln < 0.0 && agree;
  return {pass, "lambda(" + fmt1(c["xi_pos"].get<double>()) + ") = " + fmt1(lp) +
                    ", lambda(" + fmt1(c["xi_neg"].get<double>()) + ") = " +
                    fmt1(ln) + ", mc sign agreement " +
                    (agree ? "yes" : "no")};
}

Outcome criterion_negative_control() {
  std::string out = g_tmp + "/nio2.json";
  auto r = testsupport::run_command(
      cli("nio --alpha 2 --n 1024 --xi-min 0.05 --xi-max 2.0 --xi-count 12 "
          "--seed 0 --json " + testsupport::shell_quote(out)));
  json j = json::parse(testsupport::read_file(out));
  bool pass = r.exit_code == 1 && j["certificate"].is_null();
  return {pass, "exit code " + std::to_string(r.exit_code)};
}

Outcome criterion_bv_bounds() {
  const double alphas[5] = {1.6, 2.0, 2.7, 3.5, 5.0};
  const double betas[2] = {1.0, 0.75};
  const double xis[4] = {0.1, 0.3, 0.7, 1.3};
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    double alpha = alphas[t % 5];
    double beta = betas[(t / 5) % 2];
    double xi = xis[t % 4];
    BoundaryCondition bc =
        t % 2 == 0 ? BoundaryCondition::Periodic : BoundaryCondition::Reflecting;
    Partition p(128);
    MapSpec map(alpha, beta);
    NoiseKernel kernel = uniform_kernel(xi);
    nio::StationarySolve solve =
        nio::stationary_density(nio::annealed_operator(map, kernel, bc, p));
    double var = nio::variation(solve.density);
    double bv = nio::bv_norm(solve.density);
    double kernel_bv = kernel.variation() + 1.0;
    if (var > 1.0 / xi + 1e-10) {
      return {false, "Var " + fmt1(var) + " above 1/xi at alpha " + fmt1(alpha) +
                         ", xi " + fmt1(xi)};
    }
    if (bv > kernel_bv + 1e-8) {
      return {false, "BV " + fmt1(bv) + " above kernel BV at alpha " +
                         fmt1(alpha) + ", xi " + fmt1(xi)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) + " triples within Var and BV bounds"};
}

Outcome criterion_monotone_contraction() {
  const std::vector<double> xis = {0.2, 0.3, 0.5, 0.8};
  const int k_max = 4;
  std::vector<std::vector<double>> norms;
  std::vector<int> couplings;
  for (double xi : xis) {
    Partition p(256);
    nio::StochasticMatrix m = nio::annealed_matrix(
        MapSpec(5.0, 1.0), uniform_kernel(xi), BoundaryCondition::Periodic, p);
    std::vector<double> row;
    for (int k = 1; k <= k_max; ++k) row.push_back(nio::v0_contraction_norm(m, k));
    norms.push_back(row);
    auto ct = nio::coupling_time(m, 64);
    if (!ct) return {false, "no coupling within 64 steps at xi " + fmt1(xi)};
    couplings.push_back(*ct);
  }
  for (int k = 0; k < k_max; ++k) {
    for (std::size_t a = 0; a < xis.size(); ++a) {
      for (std::size_t b = a + 1; b < xis.size(); ++b) {
        if (norms[a][k] < 1.0 && !(norms[b][k] < 1.0)) {
          return {false, "contraction at k " + std::to_string(k + 1) +
                             " lost from xi " + fmt1(xis[a]) + " to " +
                             fmt1(xis[b])};
        }
      }
    }
  }
  for (std::size_t a = 1; a < couplings.size(); ++a) {
    if (couplings[a] > couplings[a - 1]) {
      return {false, "coupling time grew with the amplitude"};
    }
  }
  return {true, "C_k below one preserved upward on the grid, coupling times " +
                    std::to_string(couplings.front()) + " down to " +
                    std::to_string(couplings.back())};
}

Outcome criterion_coarse_fine() {
  MapSpec map(5.0, 1.0);
  NoiseKernel kernel = uniform_kernel(0.5);
  // Coupling depth: the first power whose discrete norm is at most 1/2 on
  // the coarse grid; the single-step support-coupling time gives a bound
  // too weak to certify, since C_1 is 1 - 2 delta at every resolution.
  Partition coarse(256);
  nio::StochasticMatrix m =
      nio::annealed_matrix(map, kernel, BoundaryCondition::Periodic, coarse);
  int depth = 0;
  for (int k = 1; k <= 16; ++k) {
    if (nio::v0_contraction_norm(m, k) <= 0.5) {
      depth = k;
      break;
    }
  }
  if (depth == 0) return {false, "no power reached norm 1/2 by k = 16"};
  double prev = 2.0;
  double bound_fine = 0.0;
  std::string trail;
  for (std::size_t n : {std::size_t{256}, std::size_t{512}, std::size_t{1024}}) {
    nio::CoarseFineCertificate cert = nio::coarse_fine_certificate(
        map, kernel, BoundaryCondition::Periodic, n, depth);
    if (cert.bound > prev + 1e-12) {
      return {false, "bound increased at n " + std::to_string(n)};
    }
    prev = cert.bound;
    bound_fine = cert.bound;
    if (!trail.empty()) trail += " >= ";
    trail += fmt1(cert.bound);
  }
  bool pass = bound_fine < 1.0;
  return {pass, "i = " + std::to_string(depth) + ", bounds " + trail};
}

Outcome criterion_oracles() {
  MapSpec map(5.0, 1.0);
  NoiseKernel kernel = uniform_kernel(0.3);
  Partition p(16);
  nio::StochasticMatrix m =
      nio::annealed_matrix(map, kernel, BoundaryCondition::Periodic, p);
  const std::int64_t samples = 1000000;
  double worst_pull = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    std::vector<double> freq = testsupport::mc_transition_row(
        map, kernel, BoundaryCondition::Periodic, p, i, samples, 2024);
    for (std::size_t j = 0; j < p.n(); ++j) {
      double prob = m.at(i, j);
      if (prob == 0.0) {
        if (freq[j] != 0.0) {
          return {false, "mass outside the support at entry " +
                             std::to_string(i) + "," + std::to_string(j)};
        }
        continue;
      }
      double sigma = std::sqrt(prob * (1.0 - prob) / samples);
      double pull = std::abs(freq[j] - prob) /
                    (sigma + 1.0 / static_cast<double>(samples));
      if (pull > worst_pull) worst_pull = pull;
      if (std::abs(freq[j] - prob) >
          4.0 * sigma + 1.0 / static_cast<double>(samples)) {
        return {false, "entry " + std::to_string(i) + "," + std::to_string(j) +
                           " off by " + fmt1(std::abs(freq[j] - prob)) +
                           " against sigma " + fmt1(sigma)};
      }
    }
  }

  Partition fine(128);
  auto op = nio::annealed_operator(map, uniform_kernel(0.5),
                                   BoundaryCondition::Periodic, fine);
  nio::PowerOptions opt;
  opt.tol = 1e-11;
  nio::StationarySolve solve = nio::stationary_density(op, opt);
  nio::Density oracle = testsupport::eigen_stationary(op.materialize());
  double l1 = solve.density.l1_distance(oracle);
  bool pass = l1 <= 1e-8;
  return {pass, "worst MC pull " + fmt1(worst_pull) + " sigma, eigensolver L1 " +
                    fmt1(l1)};
}

Outcome criterion_mc_determinism() {
  std::string base =
      "mc-sweep --seed 7 --xi-min 0.05 --xi-max 2.0 --xi-count 8 --csv ";
  std::vector<std::string> files;
  std::vector<std::string> prefixes = {"", "", "NIO_THREADS=1 ", "NIO_THREADS=4 ",
                                       "NIO_THREADS=8 "};
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    std::string f = g_tmp + "/mc" + std::to_string(i) + ".csv";
    auto r = testsupport::run_command(
        prefixes[i] + cli(base + testsupport::shell_quote(f)));
    if (r.exit_code != 0) {
      return {false, "run " + std::to_string(i) + " exit code " +
                         std::to_string(r.exit_code)};
    }
    files.push_back(testsupport::read_file(f));
  }
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i] != files[0]) {
      return {false, "run " + std::to_string(i) + " differs from run 0"};
    }
  }
  return {true, "5 runs byte-identical across thread counts 1, 4, 8"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: nio_acceptance <cli-binary>\n");
    return 9;
  }
  g_cli = argv[1];
  g_tmp = testsupport::make_temp_dir();

  struct Criterion {
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"alpha-tilde enclosure inside [2.67834, 2.67835]", 1.0,
       criterion_enclosure},
      {"exact-uniform regime at xi = 2, n = 1024", 30.0,
       criterion_exact_uniform},
      {"noise-induced order certified with MC sign agreement", 300.0,
       criterion_nio_positive},
      {"negative control at alpha = 2 yields no certificate", 300.0,
       criterion_negative_control},
      {"stationary Var and BV bounds over 20 parameter triples", 120.0,
       criterion_bv_bounds},
      {"discrete contraction is preserved toward larger amplitudes", 60.0,
       criterion_monotone_contraction},
      {"coarse-fine certificate below one, non-increasing in n", 120.0,
       criterion_coarse_fine},
      {"MC transition and eigensolver oracles", 180.0, criterion_oracles},
      {"mc-sweep byte determinism across runs and thread counts", 120.0,
       criterion_mc_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool in_time = secs <= criteria[i].limit_seconds;
    bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %zu: %s; %s (%.1f s%s)\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].title, outcome.detail.c_str(), secs,
                in_time ? "" : ", over the time limit");
    std::fflush(stdout);
  }
  return failures;
}
