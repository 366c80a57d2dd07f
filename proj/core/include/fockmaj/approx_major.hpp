#pragma once

// Approximate majorization for heralded (realistic) photon addition and
// subtraction. Both are parameterized by mu = lambda/g = eta*lambda, which
// yields identical spectra.

#include <cstddef>
#include <vector>

#include "fockmaj/fock_core.hpp"

namespace fockmaj {

struct RealisticParams {
  double lambda = 0.0;
  double mu = 0.0;
  int k = 1;

  /// 0 < mu <= lambda < 1, k >= 1; DomainError otherwise.
  static RealisticParams make(double lambda, double mu, int k);
  static RealisticParams from_addition(double lambda, double g, int k);
  static RealisticParams from_subtraction(double lambda, double eta, int k);

  bool ideal() const noexcept { return mu == lambda; }
};

/// Generating column of the (possibly non-stochastic) circulant M with
/// M tau = sigma, entries 0..N-1.
std::vector<double> m_vector(const RealisticParams& p, std::size_t N);

/// Sum_{n >= pidx} m_n in closed form (hypergeometric series). pidx >= 1.
double sigma_partial_sum_closed(const RealisticParams& p, double pidx);

/// k = 1 closed form mu^p [1 - c p], c = (lambda-mu)(1-mu)/((1-lambda) mu).
double sigma_partial_sum_k1(double lambda, double mu, double pidx);

/// 2F1(1, b; c; z) by its power series, |z| < 1, c > 0.
double hyp2f1_one(double b, double c, double z);

/// Real minimizer of the k = 1 partial sum. DegenerateIdeal for mu == lambda.
double p_star(double lambda, double mu);

/// Upper bound on nu for k = 1: |Sigma(p*)|, or the exact value when
/// mu/(lambda-mu) is within 1e-9 of an integer. Returns 0 for mu == lambda.
double nu_upper_bound(double lambda, double mu);

/// log10 of nu_upper_bound, finite where the bound underflows; -inf at mu == lambda.
double log10_nu_upper_bound(double lambda, double mu);

/// h2(delta) + Ncap h2(delta/Ncap). DomainError unless 0 <= delta <= 1/2 and
/// Ncap >= delta, Ncap > 0.
double entropy_continuity_bound(double delta, double Ncap);

/// Smallest N past the sign change of m with |Sigma(N)| < trunc_tol.
std::size_t required_length(const RealisticParams& p, double trunc_tol);

struct EpsDecomposition {
  std::vector<double> m;
  std::vector<double> eps;
  double nu = 0.0;
  double alpha = 1.0;
  std::vector<double> d;  // max(m, 0) / alpha, stochastic
  ProbVector tau;
  ProbVector sigma;  // filtered spectrum, Fock order
  ProbVector s;      // D tau, Fock order
  double delta = 0.0;  // total variation distance between sigma and s
};

/// The repaired majorant s = D tau with D = (M + E)/alpha.
/// TruncationTooCoarse if the omitted part of m exceeds trunc_tol at N.
EpsDecomposition eps_decompose(const RealisticParams& p, std::size_t N, double trunc_tol);

}  // namespace fockmaj
