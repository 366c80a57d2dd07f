#pragma once

// (eta, lambda) region scans and pairwise comparison reports.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fockmaj/majorization.hpp"

namespace fockmaj {

// Per-point payload sentinels.
inline constexpr int kNoK = -1;          // no k <= kmax qualifies
inline constexpr int kTruncated = -2;    // tail could not be bounded
inline constexpr int kUndefined = -3;    // filtration annihilates the state

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 1;

  /// "a:b:steps"; steps = 1 requires a == b. ParseError on bad text.
  static AxisRange parse(std::string_view text);
  double at(std::size_t i) const;
  std::string to_string() const;
};

enum class ScanMode { MinK, TvdBound, Entropy };

std::string_view mode_name(ScanMode mode);

struct ScanGrid {
  AxisRange eta{0.01, 1.0, 100};
  AxisRange lambda{0.0, 0.99, 100};
  int kmax = 6;
  double trunc_tol = 1e-12;
  ScanMode mode = ScanMode::MinK;

  /// DomainError unless eta in (0,1], lambda in [0,1), 1 <= kmax <= 32, tol > 0.
  void validate() const;
};

struct ScanRow {
  double eta = 0.0;
  double lambda = 0.0;
  double lambda_db = 0.0;
  int k = kNoK;        // min-k and entropy scans
  double d = 0.0;      // tvd scan, clamped to [0, 7]
  double d_raw = 0.0;  // tvd scan
};

struct ScanResult {
  ScanGrid grid;
  std::vector<ScanRow> rows;  // eta-major, then lambda
  double wall_seconds = 0.0;

  bool any_truncated() const;
  const ScanRow& at(std::size_t eta_index, std::size_t lambda_index) const;
};

/// Per-point evaluations, exposed for tests.
int min_k_at(double eta, double lambda, int kmax, double trunc_tol);
int entropy_min_k_at(double eta, double lambda, int kmax, double trunc_tol);
double tvd_d_raw_at(double eta, double lambda);

/// Runs the grid on `workers` threads (0 = hardware concurrency). Row order
/// does not depend on the worker count.
ScanResult run_scan(const ScanGrid& grid, unsigned workers = 1);

void write_csv(std::ostream& os, const ScanResult& result);
void write_json(std::ostream& os, const ScanResult& result);
/// gnuplot "nonuniform matrix": first row lambda values, then eta and payloads.
void write_matrix(std::ostream& os, const ScanResult& result);

struct CompareReport {
  std::string spec_a, spec_b;
  double lambda = 0.0;
  MajorOrder order = MajorOrder::Incomparable;
  double entropy_a = 0.0, entropy_b = 0.0;  // nats
  double tvd = 0.0;
  double margin_ab = 0.0, margin_ba = 0.0;
  double tail_a = 0.0, tail_b = 0.0;
  std::size_t size_a = 0, size_b = 0;
  double tol = 0.0;
};

/// Parses both schemes, compares their spectra at tol = max(2 trunc_tol, tails).
CompareReport run_compare(std::string_view spec_a, std::string_view spec_b, double lambda,
                          double trunc_tol = 1e-12);
void write_report(std::ostream& os, const CompareReport& report);

}  // namespace fockmaj
