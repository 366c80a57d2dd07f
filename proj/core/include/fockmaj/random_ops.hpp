#pragma once

// Random operator generators for the property suites and the CLI selftest.
// All draws go through the caller's engine, so a fixed seed reproduces a run.

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "fockmaj/filter_ops.hpp"

namespace fockmaj {

using Rng = std::mt19937_64;

struct RandomOpOptions {
  bool amplifying = false;  // non-decreasing amplitudes
  bool injective = false;   // strictly increasing targets (Fock-preserving only)
  double zero_fraction = 0.2;  // leading zeros / dropped support entries
};

/// Custom op of length N with non-decreasing targets in [0, 2N).
FilterOp random_fock_preserving(Rng& rng, std::size_t N, RandomOpOptions opt = {});

/// Custom op of length N with injective (shuffled) targets in [0, 2N).
FilterOp random_fock_orthogonal(Rng& rng, std::size_t N, RandomOpOptions opt = {});

/// Custom amplitudes-only op of length N whose amplitudes are non-decreasing.
FilterOp random_amplifying(Rng& rng, std::size_t N);

/// Fock-orthogonal pair (f, g) whose amplitude product is non-decreasing
/// while neither factor need be. Both continue past the window with their
/// last amplitude, so the product is non-decreasing on the whole space.
std::pair<FilterOp, FilterOp> random_jointly_amplifying_pair(Rng& rng, std::size_t N);

/// A standard operator drawn from the Fock-amplifying kinds (creation,
/// annihilation, photon-number, nla with g >= 1).
FilterOp random_standard_amplifying(Rng& rng, std::size_t length);

/// kvec of length 1..max_len with entries in [-max_abs, max_abs].
std::vector<int> random_kvec(Rng& rng, std::size_t max_len, int max_abs);

}  // namespace fockmaj
