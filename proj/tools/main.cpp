// fockmaj: region scans, conjecture scanner and spectrum comparisons.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "fockmaj/errors.hpp"
#include "fockmaj/kk_series.hpp"
#include "fockmaj/scan.hpp"
#include "selftest.hpp"

using namespace fockmaj;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTruncated = 3;

struct ScanOptions {
  std::string eta = "0.01:1:100";
  std::string lambda = "0:0.99:100";
  int kmax = 6;
  double trunc_tol = 1e-12;
  unsigned workers = 1;
  std::string out;
  std::string format = "csv";
};

void add_scan_options(CLI::App* cmd, ScanOptions& o) {
  cmd->add_option("--eta", o.eta, "eta range min:max:steps")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "lambda range min:max:steps")->capture_default_str();
  cmd->add_option("--kmax", o.kmax, "largest k tried")->capture_default_str();
  cmd->add_option("--trunc-tol", o.trunc_tol, "truncation tolerance")->capture_default_str();
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv, json or matrix")
      ->check(CLI::IsMember({"csv", "json", "matrix"}))
      ->capture_default_str();
}

int run_scan_command(const ScanOptions& o, ScanMode mode) {
  ScanGrid grid;
  try {
    grid.eta = AxisRange::parse(o.eta);
    grid.lambda = AxisRange::parse(o.lambda);
    grid.kmax = o.kmax;
    grid.trunc_tol = o.trunc_tol;
    grid.mode = mode;
    grid.validate();
  } catch (const std::exception& e) {
    std::cerr << "fockmaj: " << e.what() << "\n";
    return kExitConfig;
  }

  const ScanResult result = run_scan(grid, o.workers);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      std::cerr << "fockmaj: cannot open " << o.out << "\n";
      return kExitConfig;
    }
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  if (o.format == "json") write_json(os, result);
  else if (o.format == "matrix") write_matrix(os, result);
  else write_csv(os, result);
  os.flush();

  if (result.any_truncated()) {
    std::cerr << "fockmaj: some points could not be resolved at trunc_tol (min_k = -2)\n";
    return kExitTruncated;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorization scans for filtered two-mode squeezed vacuum"};
  app.set_version_flag("--version", FOCKMAJ_VERSION_STRING);
  app.require_subcommand(1);

  ScanOptions min_k, tvd, entropy;
  auto* cmd_min_k = app.add_subcommand("scan-min-k", "smallest k with thermal majorizing the subtracted spectrum");
  add_scan_options(cmd_min_k, min_k);
  auto* cmd_tvd = app.add_subcommand("scan-tvd", "-log10 of the total-variation bound for k = 1");
  add_scan_options(cmd_tvd, tvd);
  auto* cmd_entropy = app.add_subcommand("scan-entropy", "smallest k that does not lower the entropy");
  add_scan_options(cmd_entropy, entropy);

  int conj_k = 2;
  std::size_t conj_n = 200;
  auto* cmd_conj = app.add_subcommand("conjecture", "scan the c_n coefficients for negative values");
  cmd_conj->add_option("--k", conj_k, "photons added on each mode")->required()->check(CLI::Range(1, 64));
  cmd_conj->add_option("--n", conj_n, "number of coefficients")->capture_default_str();

  std::string spec_a, spec_b;
  double cmp_lambda = 0.5, cmp_tol = 1e-12;
  bool bits = false;
  auto* cmd_cmp = app.add_subcommand("compare", "compare two scheme spectra");
  cmd_cmp->add_option("specA", spec_a, "e.g. dual(8,8)")->required();
  cmd_cmp->add_option("specB", spec_b, "e.g. multi(-1,2)")->required();
  cmd_cmp->add_option("--lambda", cmp_lambda, "squeezing lambda in [0, 1)")->required();
  cmd_cmp->add_option("--trunc-tol", cmp_tol, "truncation tolerance")->capture_default_str();
  cmd_cmp->add_flag("--bits", bits, "report entropies in bits");

  std::uint64_t seed = 20240601;
  auto* cmd_self = app.add_subcommand("selftest", "randomized property checks");
  cmd_self->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*cmd_min_k) return run_scan_command(min_k, ScanMode::MinK);
    if (*cmd_tvd) return run_scan_command(tvd, ScanMode::TvdBound);
    if (*cmd_entropy) return run_scan_command(entropy, ScanMode::Entropy);

    if (*cmd_conj) {
      const ConjectureResult r = conjecture_scan(conj_k, conj_n);
      std::cout << "k=" << conj_k << " n<" << conj_n << ": ";
      if (r.all_nonneg) std::cout << "no negative coefficient\n";
      else std::cout << "first negative coefficient at n=" << *r.first_negative << "\n";
      return 0;
    }

    if (*cmd_cmp) {
      CompareReport r = run_compare(spec_a, spec_b, cmp_lambda, cmp_tol);
      if (bits) {
        r.entropy_a /= std::log(2.0);
        r.entropy_b /= std::log(2.0);
      }
      write_report(std::cout, r);
      if (bits) std::cout << "(entropies in bits)\n";
      return 0;
    }

    if (*cmd_self) return run_selftest(seed, std::cout) == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "fockmaj: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "fockmaj: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationTooCoarse& e) {
    std::cerr << "fockmaj: " << e.what() << "\n";
    return kExitTruncated;
  } catch (const std::exception& e) {
    std::cerr << "fockmaj: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
