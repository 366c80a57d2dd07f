#include "fockmaj/approx_major.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fockmaj/errors.hpp"
#include "fockmaj/filter_ops.hpp"
#include "fockmaj/filtration.hpp"
#include "fockmaj/summation.hpp"

namespace fockmaj {

namespace {

// Index from which m_n < 0 (k mu / (lambda - mu)), with the same guard
// against landing a hair below an integer as the amplifying threshold.
double sign_change(const RealisticParams& p) {
  return p.k * p.mu / (p.lambda - p.mu);
}

}  // namespace

RealisticParams RealisticParams::make(double lambda, double mu, int k) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  if (!(mu > 0.0 && mu <= lambda)) throw DomainError("mu must lie in (0, lambda]");
  if (k < 1) throw DomainError("k must be a positive integer");
  return RealisticParams{lambda, mu, k};
}

RealisticParams RealisticParams::from_addition(double lambda, double g, int k) {
  if (!(g >= 1.0)) throw DomainError("gain g must be >= 1");
  return make(lambda, lambda / g, k);
}

RealisticParams RealisticParams::from_subtraction(double lambda, double eta, int k) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("eta must lie in (0, 1]");
  return make(lambda, eta * lambda, k);
}

std::vector<double> m_vector(const RealisticParams& p, std::size_t N) {
  const double k = p.k;
  const double log_pref = (k + 1.0) * std::log1p(-p.mu) - std::log1p(-p.lambda) -
                          std::lgamma(k + 1.0);
  const double log_mu = std::log(p.mu);
  std::vector<double> m(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double n = double(i);
    const double lin = k * p.mu + n * (p.mu - p.lambda);
    if (lin == 0.0) continue;
    const double log_abs = log_pref + (n - 1.0) * log_mu + std::lgamma(k + n) -
                           std::lgamma(n + 1.0) + std::log(std::abs(lin));
    m[i] = std::copysign(std::exp(log_abs), lin);
  }
  return m;
}

double hyp2f1_one(double b, double c, double z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("hypergeometric series diverges for |z| >= 1");
  if (!(c > 0.0)) throw DomainError("hypergeometric series needs c > 0");
  CompensatedSum sum;
  double term = 1.0;
  sum += term;
  for (int j = 0; j < 1'000'000; ++j) {
    term *= (b + j) / (c + j) * z;
    sum += term;
    // Once (b+j)/(c+j) |z| < 1 the remainder is a dominated geometric tail.
    const double ratio = std::abs((b + j + 1) / (c + j + 1) * z);
    if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) < 1e-18 * std::abs(sum.value())) {
      return sum.value();
    }
  }
  throw DomainError("hypergeometric series failed to converge");
}

double sigma_partial_sum_closed(const RealisticParams& p, double pidx) {
  if (!(pidx >= 1.0)) throw DomainError("partial sum index must be >= 1");
  if (!(p.mu < 1.0)) throw DomainError("partial sums diverge for mu >= 1");
  const double k = p.k;
  const double log_mu = std::log(p.mu);
  const double base = pidx * log_mu + k * std::log1p(-p.mu) + std::lgamma(k + pidx);
  double t1 = 0.0;
  if (p.mu < p.lambda) {
    t1 = -std::exp(base + std::log(p.lambda - p.mu) - std::log1p(-p.lambda) - log_mu -
                   std::lgamma(k + 1.0) - std::lgamma(pidx));
  }
  const double f = hyp2f1_one(k + pidx, pidx + 1.0, p.mu);
  const double t2 = std::exp(base + std::log(f) - std::lgamma(pidx + 1.0) - std::lgamma(k));
  return t1 + t2;
}

double sigma_partial_sum_k1(double lambda, double mu, double pidx) {
  const double c = (lambda - mu) * (1.0 - mu) / ((1.0 - lambda) * mu);
  return std::pow(mu, pidx) * (1.0 - c * pidx);
}

double p_star(double lambda, double mu) {
  if (mu == lambda) throw DegenerateIdeal("p* diverges in the ideal case mu == lambda");
  RealisticParams::make(lambda, mu, 1);
  return mu * (1.0 - lambda) / ((1.0 - mu) * (lambda - mu)) - 1.0 / std::log(mu);
}

namespace {

// Exact nu = mu^x (lambda-mu)/(1-lambda) applies when x = mu/(lambda-mu) is an integer.
bool integer_branch(double lambda, double mu, double& x) {
  x = mu / (lambda - mu);
  return std::abs(x - std::round(x)) < 1e-9;
}

}  // namespace

double log10_nu_upper_bound(double lambda, double mu) {
  RealisticParams::make(lambda, mu, 1);
  if (mu == lambda) return -std::numeric_limits<double>::infinity();
  const double log10_mu = std::log10(mu);
  double x = 0.0;
  if (integer_branch(lambda, mu, x)) {
    return std::round(x) * log10_mu + std::log10((lambda - mu) / (1.0 - lambda));
  }
  const double c = (lambda - mu) * (1.0 - mu) / ((1.0 - lambda) * mu);
  return log10_mu / c + std::log10(c) - std::log10(std::numbers::e) -
         std::log10(std::abs(std::log(mu)));
}

double nu_upper_bound(double lambda, double mu) {
  return std::pow(10.0, log10_nu_upper_bound(lambda, mu));
}

double entropy_continuity_bound(double delta, double Ncap) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw DomainError("continuity bound needs 0 <= delta <= 1/2");
  }
  if (!(Ncap > 0.0 && Ncap >= delta)) throw DomainError("continuity bound needs Ncap >= delta > 0");
  return binary_entropy(delta) + Ncap * binary_entropy(delta / Ncap);
}

std::size_t required_length(const RealisticParams& p, double trunc_tol) {
  std::size_t N = 1;
  if (!p.ideal()) {
    const double x = sign_change(p);
    N = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x))));
  }
  constexpr std::size_t kMax = std::size_t{1} << 20;
  // Past the sign change the tail is single-signed and shrinks monotonically.
  std::size_t step = 1;
  while (std::abs(sigma_partial_sum_closed(p, double(N))) >= trunc_tol) {
    N += step;
    step = std::min<std::size_t>(step * 2, 64);
    if (N > kMax) throw TruncationTooCoarse("m-vector tail does not reach the tolerance");
  }
  return N;
}

EpsDecomposition eps_decompose(const RealisticParams& p, std::size_t N, double trunc_tol) {
  if (N == 0) throw TruncationTooCoarse("eps_decompose needs N >= 1");
  const double omitted = std::abs(sigma_partial_sum_closed(p, double(N)));
  if (!(omitted < trunc_tol)) {
    throw TruncationTooCoarse("m-vector tail beyond N exceeds trunc_tol");
  }
  if (!p.ideal() && double(N) < sign_change(p)) {
    throw TruncationTooCoarse("window ends before the sign change of m");
  }

  EpsDecomposition out;
  out.m = m_vector(p, N);
  out.eps.resize(N);
  CompensatedSum nu;
  for (std::size_t n = 0; n < N; ++n) {
    out.eps[n] = out.m[n] < 0.0 ? -out.m[n] : 0.0;
    nu += out.eps[n];
  }
  // Past the window every m_n has the sign of the tail sum.
  const double tail = sigma_partial_sum_closed(p, double(N));
  if (tail < 0.0) nu += -tail;
  out.nu = nu.value();
  out.alpha = 1.0 + out.nu;
  out.d.resize(N);
  for (std::size_t n = 0; n < N; ++n) out.d[n] = std::max(out.m[n], 0.0) / out.alpha;

  std::vector<double> tau(N);
  for (std::size_t n = 0; n < N; ++n) tau[n] = (1.0 - p.lambda) * std::pow(p.lambda, double(n));
  out.tau = ProbVector(tau, std::pow(p.lambda, double(N)), "thermal");

  std::vector<double> s(N);
  for (std::size_t i = 0; i < N; ++i) {
    CompensatedSum acc;
    for (std::size_t j = 0; j <= i; ++j) acc += out.d[i - j] * tau[j];
    s[i] = acc.value();
  }
  const double s_mass = compensated_sum(s);
  out.s = ProbVector(std::move(s), std::max(0.0, 1.0 - s_mass) + 1e-15, "repaired");

  // The filtered spectrum from the Kraus amplitudes, independent of m.
  const FilterOp add = make_standard(OpKind::KrausAdd, {{"g", p.lambda / p.mu}, {"k", double(p.k)}}, N);
  out.sigma = filtered_fock_distribution(p.lambda, add, identity_op(N), trunc_tol)
                  .with_label("filtered");

  out.delta = total_variation_distance(out.sigma, out.s);
  const double slack = 1e-10 + out.sigma.tail_bound() + out.s.tail_bound();
  if (out.delta > out.nu + slack) {
    throw std::logic_error("eps_decompose: total variation exceeds nu");
  }
  return out;
}

}  // namespace fockmaj
