#pragma once

// Majorization order on truncated probability vectors and the lower-triangular
// circulant certificate D with D_ij = d_{i-j}.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fockmaj/filter_ops.hpp"
#include "fockmaj/fock_core.hpp"

namespace fockmaj {

enum class MajorOrder { Majorizes, MajorizedBy, Equivalent, Incomparable };

std::string_view order_name(MajorOrder order);
MajorOrder mirror(MajorOrder order);

/// min over K of sum_{n<K} p_desc - sum_{n<K} q_desc (negative means p does
/// not majorize q). Does not apply the truncation guard.
double majorization_margin(const ProbVector& p, const ProbVector& q);

/// p majorizes q up to tol on every descending partial sum.
/// TruncationTooCoarse if tol is below the combined tail bounds.
bool majorizes(const ProbVector& p, const ProbVector& q, double tol);

MajorOrder compare(const ProbVector& p, const ProbVector& q, double tol);

class CirculantStochastic {
 public:
  static constexpr double kNegativeSlack = 1e-14;
  static constexpr double kSumTolerance = 1e-10;

  explicit CirculantStochastic(std::vector<double> d);

  std::span<const double> d() const noexcept { return d_; }
  std::size_t size() const noexcept { return d_.size(); }
  double column_sum() const noexcept { return sum_; }
  bool is_stochastic() const noexcept { return stochastic_; }

  /// Most negative entry, 0 if none.
  double min_entry() const noexcept;

 private:
  std::vector<double> d_;
  double sum_ = 0.0;
  bool stochastic_ = false;
};

/// d_n = lambda^n (|phi_n|^2 - |phi_{n-1}|^2) / sum_j lambda^j |phi_j|^2 over
/// the first N entries, scaled so that D applied to the thermal spectrum
/// reproduces the filtered one on the window.
/// ZeroNormalization if every amplitude on the window is zero.
CirculantStochastic build_circulant_d(double lambda, std::span<const double> amplitudes,
                                      std::size_t N);

/// Same, from the product of the squared amplitudes of f and g (log space).
CirculantStochastic build_circulant_d(double lambda, const FilterOp& f, const FilterOp& g,
                                      std::size_t N);

/// (Dp)_i = sum_{j<=i} d_{i-j} p_j for i < p.size().
std::vector<double> apply_circulant(const CirculantStochastic& D, std::span<const double> p);
std::vector<double> apply_circulant(const CirculantStochastic& D, const ProbVector& p);

}  // namespace fockmaj
