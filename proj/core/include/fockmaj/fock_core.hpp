#pragma once

// Truncated photon-number distributions and the scalar functionals used
// throughout the library. Entropies are in nats.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fockmaj {

// Slack allowed on the normalization invariant sum + tail >= 1.
inline constexpr double kNormalizationSlack = 1e-12;

/// A non-negative, normalized (up to truncation) sequence of probabilities.
///
/// `tail_bound` bounds the mass that was dropped when the underlying
/// infinite sequence was truncated. The constructor enforces
/// every entry >= 0, sum <= 1 and sum + tail_bound >= 1 (both up to
/// kNormalizationSlack). A default-constructed vector is empty with all of
/// its mass in the tail.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> values, double tail_bound = 0.0,
                      std::string label = {});

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t n) const noexcept { return values_[n]; }
  double at(std::size_t n) const noexcept { return n < values_.size() ? values_[n] : 0.0; }

  double tail_bound() const noexcept { return tail_bound_; }
  const std::string& label() const noexcept { return label_; }

  // Compensated sum of the stored entries.
  double mass() const noexcept;

  // Entries sorted descending, ties by ascending index.
  ProbVector sorted_descending() const;
  ProbVector with_label(std::string label) const;

 private:
  std::vector<double> values_;
  double tail_bound_ = 1.0;
  std::string label_;
};

/// Two-mode squeezing parameter lambda = tanh^2 r.
struct TmsvParams {
  double lambda = 0.0;

  static TmsvParams from_lambda(double lambda);
  static TmsvParams from_r(double r);

  double r() const;
  double squeezing_db() const;
  double mean_photon_number() const { return lambda / (1.0 - lambda); }
};

/// Schmidt coefficients (1 - lambda) lambda^n of the TMSV.
///
/// N is the smallest index with lambda^{N+1} <= trunc_tol whose first-moment
/// tail is also below trunc_tol; entries 0..N are stored and tail_bound is
/// lambda^{N+1}. lambda = 0 gives the point mass (1).
ProbVector thermal_eigenvalues(double lambda, double trunc_tol);

/// Squeezing in dB: (20 / ln 10) atanh(sqrt(lambda)).
double squeezing_db(double lambda);

/// Sum of n p_n over the stored entries. This is a lower estimate of the
/// mean of the untruncated distribution.
double mean_photon_number(const ProbVector& p);

double shannon_entropy(const ProbVector& p);

/// h2(x) = -x ln x - (1 - x) ln(1 - x).
double binary_entropy(double x);

/// (1/2) sum |p_n - q_n|, the shorter vector padded with zeros.
double total_variation_distance(const ProbVector& p, const ProbVector& q);

}  // namespace fockmaj
