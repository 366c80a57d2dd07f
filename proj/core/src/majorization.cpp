#include "fockmaj/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fockmaj/errors.hpp"
#include "fockmaj/summation.hpp"

namespace fockmaj {

std::string_view order_name(MajorOrder order) {
  switch (order) {
    case MajorOrder::Majorizes: return "majorizes";
    case MajorOrder::MajorizedBy: return "majorized-by";
    case MajorOrder::Equivalent: return "equivalent";
    case MajorOrder::Incomparable: return "incomparable";
  }
  return "incomparable";
}

MajorOrder mirror(MajorOrder order) {
  switch (order) {
    case MajorOrder::Majorizes: return MajorOrder::MajorizedBy;
    case MajorOrder::MajorizedBy: return MajorOrder::Majorizes;
    default: return order;
  }
}

double majorization_margin(const ProbVector& p, const ProbVector& q) {
  const ProbVector ps = p.sorted_descending();
  const ProbVector qs = q.sorted_descending();
  const std::size_t n = std::max(ps.size(), qs.size());
  CompensatedSum sp, sq;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t K = 0; K < n; ++K) {
    sp += ps.at(K);
    sq += qs.at(K);
    margin = std::min(margin, sp.value() - sq.value());
  }
  return n == 0 ? 0.0 : margin;
}

bool majorizes(const ProbVector& p, const ProbVector& q, double tol) {
  const double tails = p.tail_bound() + q.tail_bound();
  if (tol < tails) {
    throw TruncationTooCoarse("majorizes: tolerance " + std::to_string(tol) +
                              " is below the combined tail bound " + std::to_string(tails));
  }
  return majorization_margin(p, q) >= -tol;
}

MajorOrder compare(const ProbVector& p, const ProbVector& q, double tol) {
  const bool pq = majorizes(p, q, tol);
  const bool qp = majorizes(q, p, tol);
  if (pq && qp) return MajorOrder::Equivalent;
  if (pq) return MajorOrder::Majorizes;
  if (qp) return MajorOrder::MajorizedBy;
  return MajorOrder::Incomparable;
}

CirculantStochastic::CirculantStochastic(std::vector<double> d) : d_(std::move(d)) {
  bool nonneg = true;
  for (double& x : d_) {
    if (!std::isfinite(x)) throw DomainError("CirculantStochastic: non-finite entry");
    if (x < -kNegativeSlack) nonneg = false;
    else if (x < 0.0) x = 0.0;
  }
  sum_ = compensated_sum(d_);
  stochastic_ = nonneg && std::abs(sum_ - 1.0) <= kSumTolerance;
}

double CirculantStochastic::min_entry() const noexcept {
  double m = 0.0;
  for (double x : d_) m = std::min(m, x);
  return m;
}

namespace {

// logw[n] = n log(lambda) + log |phi_n|^2 ; d from the shifted weights.
CirculantStochastic circulant_from_log_weights(double lambda, std::span<const double> logw) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError("build_circulant_d: lambda must lie in [0, 1)");
  }
  const std::size_t N = logw.size();
  std::vector<double> d(N, 0.0);
  if (lambda == 0.0) {
    // Only tau_0 is non-zero; D tau = d, so the certificate is the point mass
    // when phi_0 != 0.
    if (N == 0 || logw[0] == -std::numeric_limits<double>::infinity()) {
      throw ZeroNormalization("build_circulant_d: amplitude at n = 0 vanishes for lambda = 0");
    }
    d[0] = 1.0;
    return CirculantStochastic(std::move(d));
  }
  const double top = N ? *std::max_element(logw.begin(), logw.end())
                       : -std::numeric_limits<double>::infinity();
  if (!std::isfinite(top)) {
    throw ZeroNormalization("build_circulant_d: all amplitudes vanish on the window");
  }
  std::vector<double> w(N);
  for (std::size_t n = 0; n < N; ++n) w[n] = std::exp(logw[n] - top);
  const double norm = (1.0 - lambda) * compensated_sum(w);
  if (!(norm > 0.0)) throw ZeroNormalization("build_circulant_d: normalization underflows");
  for (std::size_t n = 0; n < N; ++n) {
    const double prev = n ? lambda * w[n - 1] : 0.0;
    d[n] = (w[n] - prev) / norm;
  }
  return CirculantStochastic(std::move(d));
}

}  // namespace

CirculantStochastic build_circulant_d(double lambda, std::span<const double> amplitudes,
                                      std::size_t N) {
  std::vector<double> logw(N, -std::numeric_limits<double>::infinity());
  const double log_lambda = lambda > 0.0 ? std::log(lambda) : 0.0;
  for (std::size_t n = 0; n < N && n < amplitudes.size(); ++n) {
    const double a = amplitudes[n];
    if (!(a >= 0.0)) throw DomainError("build_circulant_d: amplitudes must be non-negative");
    if (a > 0.0) logw[n] = double(n) * log_lambda + 2.0 * std::log(a);
  }
  return circulant_from_log_weights(lambda, logw);
}

CirculantStochastic build_circulant_d(double lambda, const FilterOp& f, const FilterOp& g,
                                      std::size_t N) {
  const FilterOp fr = f.size() >= N ? f : f.resized(N);
  const FilterOp gr = g.size() >= N ? g : g.resized(N);
  std::vector<double> logw(N);
  const double log_lambda = lambda > 0.0 ? std::log(lambda) : 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    logw[n] = double(n) * log_lambda + 2.0 * (fr.log_profile()[n] + gr.log_profile()[n]);
  }
  return circulant_from_log_weights(lambda, logw);
}

std::vector<double> apply_circulant(const CirculantStochastic& D, std::span<const double> p) {
  const auto d = D.d();
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CompensatedSum s;
    const std::size_t jmin = i + 1 > d.size() ? i + 1 - d.size() : 0;
    for (std::size_t j = jmin; j <= i; ++j) s += d[i - j] * p[j];
    out[i] = s.value();
  }
  return out;
}

std::vector<double> apply_circulant(const CirculantStochastic& D, const ProbVector& p) {
  return apply_circulant(D, p.values());
}

}  // namespace fockmaj
