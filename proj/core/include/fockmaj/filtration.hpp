#pragma once

// Schmidt spectra of a TMSV filtered by F (mode 1) and G (mode 2):
// sigma_n proportional to tau_n |phi_n|^2 |gamma_n|^2.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fockmaj/filter_ops.hpp"
#include "fockmaj/fock_core.hpp"

namespace fockmaj {

// A(k) on mode 1 and B(l) on mode 2; negative values annihilate.
struct DualSingle {
  int k = 0;
  int l = 0;
};

// A(k_n) ... A(k_1) on mode 1, kvec[0] acting first.
struct SingleMulti {
  std::vector<int> kvec;
};

struct General {
  FilterOp f;
  FilterOp g;
};

using SchemeSpec = std::variant<DualSingle, SingleMulti, General>;

/// `dual(k,l)`, `multi(k1,k2,...)` or `general(f;g)` with operator specs.
SchemeSpec parse_scheme(std::string_view text);
std::string to_string(const SchemeSpec& scheme);

inline constexpr double kDefaultTruncTol = 1e-12;

/// The filtered distribution in Fock order (entry n belongs to |n>|n>).
/// The window grows until the omitted tail is provably below trunc_tol.
/// ZeroState if the filtration annihilates the state; TruncationTooCoarse if
/// no window up to 2^16 entries reaches trunc_tol.
ProbVector filtered_fock_distribution(double lambda, const FilterOp& f, const FilterOp& g,
                                      double trunc_tol = kDefaultTruncTol);

/// Same, sorted descending (the Schmidt coefficients).
ProbVector filtered_schmidt(double lambda, const FilterOp& f, const FilterOp& g,
                            double trunc_tol = kDefaultTruncTol);

/// ||(F x G)|Psi>||^2 including prefactors. For the ideal ladder kinds this
/// is not a probability.
double normalization_constant(double lambda, const FilterOp& f, const FilterOp& g);

/// Operators realizing a scheme on a window of `length` entries.
std::pair<FilterOp, FilterOp> scheme_operators(const SchemeSpec& scheme, std::size_t length = 64);

ProbVector scheme_spectrum(double lambda, const SchemeSpec& scheme,
                           double trunc_tol = kDefaultTruncTol);

/// kvec for a single-mode scheme with the spectrum of the dual-mode sequence
/// (mode-2 operations are moved to mode 1 with flipped sign; they act first,
/// last-applied first).
std::vector<int> reduce_to_single_mode(std::span<const int> k_mode1, std::span<const int> l_mode2);

/// Entanglement entropy in nats.
double entropy_of_entanglement(double lambda, const SchemeSpec& scheme,
                               double trunc_tol = kDefaultTruncTol);

}  // namespace fockmaj
