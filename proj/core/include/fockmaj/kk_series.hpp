#pragma once

// Spectra of symmetric k-photon addition, q_n = lambda^n C(n+k,k)^2 / N_kk,
// and the exact coefficients c_n of N_kk / (lambda N_11) - 1/lambda that
// generate the circulant certificate q^(kk) = D q^(11).

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fockmaj/fock_core.hpp"

namespace fockmaj {

using Rational = boost::multiprecision::cpp_rational;

struct RationalSeries {
  std::vector<Rational> coeffs;  // coeffs[i] multiplies lambda^(lowest_power + i)
  int lowest_power = -1;

  /// Coefficient of lambda^power, zero outside the stored range.
  Rational at(int power) const;
};

/// q^(kk) in Fock order on the first N entries, normalized over the window;
/// tail_bound bounds the omitted mass. TruncationTooCoarse if N is too short
/// for the tail to be bounded.
ProbVector q_kk(double lambda, int k, std::size_t N);

/// Smallest window whose q^(kk) tail bound is below trunc_tol.
std::size_t q_kk_required_length(double lambda, int k, double trunc_tol);

/// c_{-1} .. c_{N-1} for k >= 1 (lowest_power = -1).
RationalSeries c_kk_series(int k, std::size_t N);

/// C(n+k+1,k)^2 == sum_{i=0}^{n+1} c_{n-i} (i+1)^2 for all n < N, exactly.
bool verify_kk_expansion(int k, std::size_t N);

struct ConjectureResult {
  bool all_nonneg = true;
  std::optional<std::size_t> first_negative;  // n of the first c_n < 0
};

/// Scans c_0 .. c_{N-1} for a negative coefficient.
ConjectureResult conjecture_scan(int k, std::size_t N);

/// Generating column d_0 .. d_{N-1} of D (double precision):
/// d_j = (N_11 / N_kk) c_{j-1} lambda^j.
std::vector<double> d_kk_column(double lambda, int k, std::size_t N);

/// D column-stochastic and D q^(11) = q^(kk) to 1e-10 on the window.
/// TruncationTooCoarse if the window cannot resolve the column sum.
bool verify_d_kk(double lambda, int k, std::size_t N);

/// Shortest window verify_d_kk accepts with a factor-two margin.
std::size_t d_kk_required_length(double lambda, int k);

}  // namespace fockmaj
