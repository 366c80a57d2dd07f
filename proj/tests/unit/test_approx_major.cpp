#include <doctest.h>

#include <cmath>
#include <random>

#include "fockmaj/approx_major.hpp"
#include "fockmaj/errors.hpp"
#include "fockmaj/filtration.hpp"
#include "fockmaj/majorization.hpp"

using namespace fockmaj;

namespace {

// m_n by a ratio recurrence instead of log-gamma closed form.
std::vector<double> oracle_m(double lambda, double mu, int k, std::size_t N) {
  std::vector<double> m(N);
  double c = 1.0 / k;  // (k+n-1)!/(k! n!) mu^n
  const double pref = std::pow(1 - mu, k + 1) / (1 - lambda) / mu;
  for (std::size_t n = 0; n < N; ++n) {
    if (n > 0) c *= mu * (k + double(n) - 1) / double(n);
    m[n] = pref * c * (k * mu + n * mu - n * lambda);
  }
  return m;
}

double oracle_tail(double lambda, double mu, int k, std::size_t p) {
  const auto m = oracle_m(lambda, mu, k, 6000);
  long double s = 0;
  for (std::size_t n = m.size(); n-- > p;) s += m[n];
  return double(s);
}

}  // namespace

TEST_CASE("m-vector") {
  const auto ideal = m_vector(RealisticParams::make(0.5, 0.5, 1), 30);
  for (std::size_t n = 0; n < 30; ++n) CHECK(ideal[n] == doctest::Approx(0.5 * std::pow(0.5, double(n))).epsilon(1e-13));

  const auto m = m_vector(RealisticParams::make(0.5, 0.4, 1), 30);
  CHECK(m[0] == doctest::Approx(0.72).epsilon(1e-14));
  CHECK(m[3] > 0.0);
  CHECK(std::abs(m[4]) < 1e-17);
  CHECK(m[5] < 0.0);

  for (int k = 1; k <= 3; ++k) {
    const auto ours = m_vector(RealisticParams::make(0.7, 0.3, k), 200);
    const auto ref = oracle_m(0.7, 0.3, k, 200);
    for (std::size_t n = 0; n < 200; ++n) CHECK(ours[n] == doctest::Approx(ref[n]).epsilon(1e-11));
  }
}

TEST_CASE("m-vector agrees with the circulant of the Kraus amplitudes") {
  for (int k = 1; k <= 3; ++k) {
    const double lambda = 0.5, mu = 0.4;
    const auto add = make_standard(OpKind::KrausAdd, {{"g", lambda / mu}, {"k", double(k)}}, 400);
    const auto D = build_circulant_d(lambda, add, identity_op(400), 400);
    const auto m = m_vector(RealisticParams::make(lambda, mu, k), 400);
    for (std::size_t n = 0; n < 400; ++n) CHECK(std::abs(D.d()[n] - m[n]) <= 1e-10);
  }
}

TEST_CASE("closed-form partial sums against brute-force tails") {
  for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double mu = frac * lambda;
      for (int k = 1; k <= 3; ++k) {
        const RealisticParams p = RealisticParams::make(lambda, mu, k);
        for (std::size_t idx : {1, 2, 3, 7, 20}) {
          CHECK(std::abs(sigma_partial_sum_closed(p, double(idx)) - oracle_tail(lambda, mu, k, idx)) <= 1e-10);
        }
      }
    }
  }
  const RealisticParams p1 = RealisticParams::make(0.5, 0.4, 1);
  CHECK(sigma_partial_sum_closed(p1, 3) == doctest::Approx(0.0064).epsilon(1e-12));
  CHECK(sigma_partial_sum_closed(RealisticParams::make(0.5, 0.4, 2), 3) == doctest::Approx(0.11008).epsilon(1e-12));
  CHECK(sigma_partial_sum_closed(RealisticParams::make(0.5, 0.4, 3), 3) == doctest::Approx(0.24832).epsilon(1e-12));
  for (double pp : {1.0, 2.5, 4.0, 9.0}) {
    CHECK(sigma_partial_sum_closed(p1, pp) == doctest::Approx(sigma_partial_sum_k1(0.5, 0.4, pp)).epsilon(1e-12));
    CHECK(sigma_partial_sum_closed(RealisticParams::make(0.6, 0.6, 1), pp) ==
          doctest::Approx(std::pow(0.6, pp)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sigma_partial_sum_closed(p1, 0.5), DomainError);
}

TEST_CASE("hypergeometric series") {
  // 2F1(1, 1; 2; z) = -ln(1-z)/z and 2F1(1, b; b; z) = 1/(1-z).
  CHECK(hyp2f1_one(1, 2, 0.5) == doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-14));
  CHECK(hyp2f1_one(3.5, 3.5, 0.9) == doctest::Approx(10.0).epsilon(1e-13));
  CHECK_THROWS_AS(hyp2f1_one(1, 2, 1.0), DomainError);
}

TEST_CASE("p* and its minimality") {
  CHECK(p_star(0.5, 0.4) == doctest::Approx(0.2 / 0.06 - 1 / std::log(0.4)).epsilon(1e-12));
  CHECK_THROWS_AS(p_star(0.5, 0.5), DegenerateIdeal);
  for (double lambda : {0.3, 0.5, 0.8}) {
    for (double mu : {0.1, 0.2, 0.25}) {
      const double ps = p_star(lambda, mu);
      const double at = sigma_partial_sum_k1(lambda, mu, ps);
      CHECK(at <= sigma_partial_sum_k1(lambda, mu, ps + 0.1));
      CHECK(at <= sigma_partial_sum_k1(lambda, mu, ps - 0.1));
    }
  }
  CHECK(p_star(0.5, 0.4999) > 1000.0);
}

TEST_CASE("nu upper bound") {
  CHECK(nu_upper_bound(0.6, 0.4) == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(nu_upper_bound(0.5, 0.4) == doctest::Approx(0.00512).epsilon(1e-12));
  CHECK(nu_upper_bound(0.5, 0.35) == doctest::Approx(0.029663128727854617).epsilon(1e-12));
  CHECK(nu_upper_bound(0.5, 0.5) == 0.0);
  CHECK(std::log10(nu_upper_bound(0.5, 0.35)) == doctest::Approx(log10_nu_upper_bound(0.5, 0.35)).epsilon(1e-12));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double lambda = 0.05 + 0.9 * u(rng);
    const double mu = lambda * (0.05 + 0.9 * u(rng));
    const RealisticParams p = RealisticParams::make(lambda, mu, 1);
    const EpsDecomposition e = eps_decompose(p, required_length(p, 1e-13), 1e-13);
    CHECK(e.nu <= nu_upper_bound(lambda, mu) + 1e-10);
  }
}

TEST_CASE("entropy continuity bound") {
  CHECK(entropy_continuity_bound(0.0, 1.0) == 0.0);
  CHECK(entropy_continuity_bound(0.1, 1.0) == doctest::Approx(0.650165946782896).epsilon(1e-13));
  CHECK_THROWS_AS(entropy_continuity_bound(0.6, 1.0), DomainError);
  CHECK_THROWS_AS(entropy_continuity_bound(0.1, 0.05), DomainError);
}

TEST_CASE("eps decomposition") {
  SUBCASE("ideal case") {
    const RealisticParams p = RealisticParams::make(0.5, 0.5, 1);
    const EpsDecomposition e = eps_decompose(p, required_length(p, 1e-13), 1e-13);
    CHECK(e.nu == 0.0);
    CHECK(e.alpha == 1.0);
    for (double x : e.eps) CHECK(x == 0.0);
    CHECK(e.delta <= 1e-12);
  }
  SUBCASE("lambda 0.5, mu 0.4") {
    const RealisticParams p = RealisticParams::make(0.5, 0.4, 1);
    const EpsDecomposition e = eps_decompose(p, required_length(p, 1e-13), 1e-13);
    CHECK(e.nu > 0.0);
    CHECK(e.nu == doctest::Approx(0.00512).epsilon(1e-9));
    CHECK(e.alpha == doctest::Approx(1.0 + e.nu).epsilon(1e-15));
    for (std::size_t n = 0; n < e.m.size(); ++n) CHECK((e.eps[n] > 0.0) == (e.m[n] < 0.0));
    double msum = 0.0;
    for (double x : e.m) msum += x;
    CHECK(std::abs(msum - 1.0) <= 1e-10);
    CHECK(majorizes(e.tau, e.s, 1e-12));
    CHECK(e.delta <= e.nu + 1e-10);
  }
  SUBCASE("window too short") {
    const RealisticParams p = RealisticParams::make(0.9, 0.5, 1);
    CHECK_THROWS_AS(eps_decompose(p, 5, 1e-12), TruncationTooCoarse);
  }
}

TEST_CASE("continuity bound covers the entropy gap") {
  const RealisticParams p = RealisticParams::make(0.5, 0.45, 1);
  const EpsDecomposition e = eps_decompose(p, required_length(p, 1e-13), 1e-13);
  REQUIRE(e.nu <= 0.5);
  const double ncap = std::max(mean_photon_number(e.sigma), mean_photon_number(e.s));
  CHECK(std::abs(shannon_entropy(e.sigma) - shannon_entropy(e.s)) <= entropy_continuity_bound(e.nu, ncap));
}

TEST_CASE("realistic addition and subtraction are equivalent") {
  for (double g : {1.25, 2.0, 4.0}) {
    for (int k = 1; k <= 2; ++k) {
      for (int j = 1; j <= 9; ++j) {
        const double lambda = 0.1 * j;
        const auto add = make_standard(OpKind::KrausAdd, {{"g", g}, {"k", double(k)}}, 64);
        const auto sub = make_standard(OpKind::KrausSub, {{"eta", 1.0 / g}, {"k", double(k)}}, 64);
        CHECK(compare(filtered_schmidt(lambda, add, identity_op(64)),
                      filtered_schmidt(lambda, sub, identity_op(64)), 1e-10) == MajorOrder::Equivalent);
      }
    }
  }
}

TEST_CASE("a tiny nu bound implies numerical majorization") {
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double eta = 0.05 * i, lambda = 0.0495 * j;
      if (eta == 1.0 || log10_nu_upper_bound(lambda, eta * lambda) > -7.0) continue;
      const auto sub = make_standard(OpKind::KrausSub, {{"eta", eta}, {"k", 1}}, 64);
      CHECK(majorizes(thermal_eigenvalues(lambda, 1e-12), filtered_schmidt(lambda, sub, identity_op(64)), 1e-10));
    }
  }
}
