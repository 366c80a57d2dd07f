#include "fockmaj/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fockmaj/errors.hpp"
#include "fockmaj/summation.hpp"

namespace fockmaj {

namespace {

void require_lambda(double lambda, const char* where) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError(std::string(where) + ": lambda must lie in [0, 1), got " +
                      std::to_string(lambda));
  }
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

ProbVector::ProbVector(std::vector<double> values, double tail_bound, std::string label)
    : values_(std::move(values)), tail_bound_(tail_bound), label_(std::move(label)) {
  if (!(tail_bound_ >= 0.0) || !std::isfinite(tail_bound_)) {
    throw DomainError("ProbVector: tail bound must be finite and non-negative");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("ProbVector: entries must be finite and non-negative");
    }
  }
  const double s = mass();
  if (s > 1.0 + kNormalizationSlack) {
    throw DomainError("ProbVector: entries sum to " + std::to_string(s) + " > 1");
  }
  if (s + tail_bound_ < 1.0 - kNormalizationSlack) {
    throw DomainError("ProbVector: entries plus tail bound sum to less than 1");
  }
}

double ProbVector::mass() const noexcept { return compensated_sum(values_); }

ProbVector ProbVector::sorted_descending() const {
  std::vector<std::size_t> order(values_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t a, std::size_t b) { return values_[a] > values_[b]; });
  std::vector<double> sorted;
  sorted.reserve(values_.size());
  for (std::size_t i : order) sorted.push_back(values_[i]);
  ProbVector out;
  out.values_ = std::move(sorted);
  out.tail_bound_ = tail_bound_;
  out.label_ = label_;
  return out;
}

ProbVector ProbVector::with_label(std::string label) const {
  ProbVector out = *this;
  out.label_ = std::move(label);
  return out;
}

TmsvParams TmsvParams::from_lambda(double lambda) {
  require_lambda(lambda, "TmsvParams");
  return TmsvParams{lambda};
}

TmsvParams TmsvParams::from_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("TmsvParams: r must be >= 0");
  const double t = std::tanh(r);
  return from_lambda(t * t);
}

double TmsvParams::r() const { return std::atanh(std::sqrt(lambda)); }

double TmsvParams::squeezing_db() const { return fockmaj::squeezing_db(lambda); }

ProbVector thermal_eigenvalues(double lambda, double trunc_tol) {
  require_lambda(lambda, "thermal_eigenvalues");
  if (!(trunc_tol > 0.0)) throw DomainError("thermal_eigenvalues: trunc_tol must be positive");
  if (lambda == 0.0) return ProbVector({1.0}, 0.0, "thermal");

  const double log_lambda = std::log(lambda);
  const double mean = lambda / (1.0 - lambda);
  // Start from the plain mass criterion and extend until the first-moment
  // tail lambda^{N+1} (N + 1 + mean) is below tolerance as well.
  auto n_last = static_cast<std::size_t>(
      std::max(0.0, std::ceil(std::log(trunc_tol) / log_lambda) - 1.0));
  auto tail_of = [&](std::size_t n) { return std::exp(static_cast<double>(n + 1) * log_lambda); };
  while (tail_of(n_last) > trunc_tol ||
         tail_of(n_last) * (static_cast<double>(n_last + 1) + mean) > trunc_tol) {
    ++n_last;
  }

  std::vector<double> values(n_last + 1);
  for (std::size_t n = 0; n <= n_last; ++n) {
    values[n] = (1.0 - lambda) * std::exp(static_cast<double>(n) * log_lambda);
  }
  return ProbVector(std::move(values), tail_of(n_last), "thermal");
}

double squeezing_db(double lambda) {
  require_lambda(lambda, "squeezing_db");
  return 20.0 / std::numbers::ln10 * std::atanh(std::sqrt(lambda));
}

double mean_photon_number(const ProbVector& p) {
  CompensatedSum acc;
  for (std::size_t n = 0; n < p.size(); ++n) acc.add(static_cast<double>(n) * p[n]);
  return acc.value();
}

double shannon_entropy(const ProbVector& p) {
  CompensatedSum acc;
  for (double v : p.values()) acc.add(-xlogx(v));
  return acc.value();
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("binary_entropy: argument must lie in [0, 1], got " + std::to_string(x));
  }
  return -xlogx(x) - xlogx(1.0 - x);
}

double total_variation_distance(const ProbVector& p, const ProbVector& q) {
  const std::size_t len = std::max(p.size(), q.size());
  CompensatedSum acc;
  for (std::size_t n = 0; n < len; ++n) acc.add(std::abs(p.at(n) - q.at(n)));
  return std::clamp(0.5 * acc.value(), 0.0, 1.0);
}

}  // namespace fockmaj
