#pragma once

// Filtration operators in canonical form F|n> = phi_n |target_n>.
//
// Only the amplitude profile and the target map are represented; the image
// vectors themselves are never materialized. Amplitudes are kept in log
// space so that factorial growth (creation-k at n ~ 1e3) stays finite.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fockmaj {

enum class OpKind { Creation, Annihilation, PhotonNumber, Nla, KrausAdd, KrausSub, Custom };

using ParamMap = std::map<std::string, double>;

// Fock index an input state |n> is mapped to; empty where phi_n = 0.
using FockTarget = std::optional<std::size_t>;

// Relative tolerance used by the monotonicity predicates.
inline constexpr double kAmplitudeRelTol = 1e-12;

class FilterOp {
 public:
  /// Finite-rank operator with explicit amplitudes (zero beyond the stored
  /// length). Without targets the operator is only usable for spectra and
  /// is declared Fock-orthogonal.
  static FilterOp custom(std::span<const double> amplitudes,
                         std::optional<std::vector<FockTarget>> targets = std::nullopt);

  /// Like custom(), but the operator continues past the stored window with
  /// the last amplitude and fresh targets (last target + 1, + 2, ...). The
  /// result is resizable. The last amplitude must be non-zero and, with
  /// targets, the last target must be the largest one.
  static FilterOp custom_extended(std::span<const double> amplitudes,
                                  std::optional<std::vector<FockTarget>> targets = std::nullopt);

  OpKind kind() const noexcept { return kind_; }
  const ParamMap& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return log_profile_.size(); }

  /// ||F|n>||, zero beyond the stored window. May be +inf, see overflowed().
  double amplitude(std::size_t n) const;
  std::vector<double> amplitudes() const;
  double log_amplitude(std::size_t n) const;

  /// n-dependent part of log ||F|n>|| (-inf where the amplitude vanishes).
  std::span<const double> log_profile() const noexcept { return log_profile_; }
  /// n-independent factor; -inf for the ideal limits of the Kraus maps.
  double log_prefactor() const noexcept { return log_prefactor_; }
  bool overflowed() const;

  /// lim log(|phi_{n+1}|^2 / |phi_n|^2) for resizable operators: 0 for the
  /// ladder kinds, 2 log g for nla, -log g for kraus-add, log eta for kraus-sub.
  double log_growth() const noexcept { return log_growth_; }

  bool in_support(std::size_t n) const;

  bool has_targets() const noexcept { return targets_.has_value(); }
  FockTarget target(std::size_t n) const;
  std::span<const FockTarget> targets() const noexcept;

  /// True when the operator extends beyond the stored window and can be
  /// re-materialized at any length (standard kinds and their products).
  bool resizable() const noexcept { return resizable_; }

  /// Same operator on a window of `length` entries. Finite-rank operators are
  /// zero-padded or truncated.
  FilterOp resized(std::size_t length) const;

 private:
  struct Composition;

  friend FilterOp make_standard(OpKind, const ParamMap&, std::size_t);
  friend FilterOp concat(const FilterOp&, const FilterOp&);

  OpKind kind_ = OpKind::Custom;
  ParamMap params_;
  double log_prefactor_ = 0.0;
  double log_growth_ = 0.0;
  std::vector<double> log_profile_;
  std::optional<std::vector<FockTarget>> targets_;
  bool resizable_ = false;
  bool extended_ = false;  // pads with the last amplitude and consecutive targets
  std::shared_ptr<const Composition> composition_;
};

/// Ladder, number and nla operators and Kraus maps with `length` stored amplitudes.
///
/// Parameters: creation/annihilation {k}; nla {g >= 0}; kraus-add {g >= 1, k};
/// kraus-sub {eta in (0, 1], k}; photon-number takes none. k must be a
/// non-negative integer.
FilterOp make_standard(OpKind kind, const ParamMap& params, std::size_t length);

// nla with g = 1.
FilterOp identity_op(std::size_t length);

// A(k): creation-k for k > 0, annihilation-|k| for k < 0, identity for k = 0.
FilterOp ladder_op(int k, std::size_t length);

// A(k_n) ... A(k_1): kvec[0] acts first. Empty kvec is the identity.
FilterOp ladder_chain(std::span<const int> kvec, std::size_t length);

/// Targets injective on the support. Operators without targets are declared
/// Fock-orthogonal.
bool is_fock_orthogonal(const FilterOp& op);

/// Amplitudes non-decreasing over the first `length` entries (relative
/// tolerance kAmplitudeRelTol; equality counts as non-decreasing).
bool is_fock_amplifying(const FilterOp& op, std::size_t length);

/// Largest index up to which the amplitudes of a Kraus operator are
/// non-decreasing: floor(k/(g-1)) or floor(k/(1-eta)). nullopt means
/// unbounded (g = 1, eta = 1). DomainError for other kinds.
std::optional<std::size_t> fock_amplifying_threshold(const FilterOp& op);

/// Targets non-decreasing on the support. PreconditionViolation without targets.
bool is_fock_preserving(const FilterOp& op);

bool jointly_fock_amplifying(const FilterOp& f, const FilterOp& g, std::size_t length);

/// The product `outer * inner` (inner acts first). `inner` must carry
/// targets. The result has inner's length; outer is re-materialized as far as
/// inner's targets reach.
FilterOp concat(const FilterOp& outer, const FilterOp& inner);

std::string_view kind_name(OpKind kind);
OpKind parse_kind(std::string_view name);

/// Text form `kind(param=value,...)`, e.g. `kraus-add(g=1.25,k=2)`.
/// Custom operators have no text form.
std::string serialize(const FilterOp& op);
FilterOp parse_filter_op(std::string_view text, std::size_t length = 64);

}  // namespace fockmaj
