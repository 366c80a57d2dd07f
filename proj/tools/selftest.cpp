#include "selftest.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "fockmaj/errors.hpp"
#include "fockmaj/filtration.hpp"
#include "fockmaj/majorization.hpp"
#include "fockmaj/random_ops.hpp"

using namespace fockmaj;

namespace {

struct Tally {
  std::ostream& out;
  int failed = 0;

  void check(const std::string& name, int cases, int bad) {
    out << (bad == 0 ? "ok   " : "FAIL ") << name << " (" << cases - bad << "/" << cases
        << ")\n";
    failed += bad;
  }
};

}  // namespace

int run_selftest(std::uint64_t seed, std::ostream& out) {
  Rng rng(seed);
  Tally t{out};
  constexpr std::size_t N = 64;
  constexpr double tol = 1e-10;

  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const FilterOp f = random_standard_amplifying(rng, 64);
    const double lambda = 0.1 * double(1 + i % 9);
    const ProbVector tau = thermal_eigenvalues(lambda, 1e-12);
    const ProbVector sigma = filtered_fock_distribution(lambda, f, identity_op(64));
    const auto D = build_circulant_d(lambda, f, identity_op(64), sigma.size());
    const auto s = apply_circulant(D, tau.values().first(std::min(tau.size(), sigma.size())));
    bool ok = D.is_stochastic() && majorizes(tau, sigma.sorted_descending(), tol);
    for (std::size_t n = 0; n < s.size(); ++n) ok = ok && std::abs(s[n] - sigma[n]) <= 1e-10;
    bad += !ok;
  }
  t.check("circulant certificate", 50, bad);

  bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [f, g] = random_jointly_amplifying_pair(rng, N);
    const double lambda = 0.1 * double(1 + i % 9);
    bad += !majorizes(thermal_eigenvalues(lambda, 1e-12), filtered_schmidt(lambda, f, g), tol);
  }
  t.check("jointly amplifying pairs", 100, bad);

  bad = 0;
  for (int i = 0; i < 100; ++i) {
    const FilterOp f = random_fock_preserving(rng, N);
    const FilterOp g = random_fock_preserving(rng, 2 * N + 4);
    bad += !is_fock_preserving(concat(g, f));
  }
  t.check("concatenation keeps Fock-preserving", 100, bad);

  bad = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<int> kvec;
    ProbVector sigma;
    const double lambda = 0.1 * double(1 + i % 9);
    for (;;) {
      kvec = random_kvec(rng, 4, 3);
      try {
        sigma = scheme_spectrum(lambda, SingleMulti{kvec});
        break;
      } catch (const ZeroState&) {
      }
    }
    bad += !majorizes(thermal_eigenvalues(lambda, 1e-12), sigma, tol);
  }
  t.check("concatenated ladder schemes", 100, bad);

  out << (t.failed == 0 ? "selftest passed" : "selftest FAILED") << " (seed " << seed << ")\n";
  return t.failed;
}
