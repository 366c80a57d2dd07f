#include "fockmaj/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "fockmaj/approx_major.hpp"
#include "fockmaj/errors.hpp"
#include "fockmaj/filtration.hpp"

#ifndef FOCKMAJ_VERSION
#define FOCKMAJ_VERSION "unknown"
#endif

namespace fockmaj {

namespace {

// Slack on S(sigma) >= S(tau); entropies of truncated spectra carry an error
// of order tail * log(window).
constexpr double kEntropySlack = 1e-9;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double parse_double(std::string_view s, std::size_t pos) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number in range", pos);
  }
}

}  // namespace

AxisRange AxisRange::parse(std::string_view text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ParseError("range must be min:max:steps", 0);
  AxisRange r;
  r.min = parse_double(text.substr(0, c1), 0);
  r.max = parse_double(text.substr(c1 + 1, c2 - c1 - 1), c1 + 1);
  const std::string steps(text.substr(c2 + 1));
  if (steps.empty() || steps.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("steps must be a positive integer", c2 + 1);
  }
  r.steps = std::stoul(steps);
  if (r.steps == 0) throw ParseError("steps must be a positive integer", c2 + 1);
  if (r.max < r.min) throw ParseError("range max is below min", c1 + 1);
  if (r.steps == 1 && r.max != r.min) throw ParseError("a single step needs min == max", c2 + 1);
  return r;
}

double AxisRange::at(std::size_t i) const {
  if (steps == 1) return min;
  if (i + 1 == steps) return max;
  return min + (max - min) * double(i) / double(steps - 1);
}

std::string AxisRange::to_string() const {
  return fmt(min) + ":" + fmt(max) + ":" + std::to_string(steps);
}

std::string_view mode_name(ScanMode mode) {
  switch (mode) {
    case ScanMode::MinK: return "min-k";
    case ScanMode::TvdBound: return "tvd-bound";
    case ScanMode::Entropy: return "entropy";
  }
  return "min-k";
}

void ScanGrid::validate() const {
  if (!(eta.min > 0.0 && eta.max <= 1.0)) throw DomainError("eta range must lie in (0, 1]");
  if (!(lambda.min >= 0.0 && lambda.max < 1.0)) throw DomainError("lambda range must lie in [0, 1)");
  if (kmax < 1 || kmax > 32) throw DomainError("kmax must lie in 1..32");
  if (!(trunc_tol > 0.0 && trunc_tol < 1.0)) throw DomainError("trunc_tol must lie in (0, 1)");
}

bool ScanResult::any_truncated() const {
  return std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.k == kTruncated; });
}

const ScanRow& ScanResult::at(std::size_t i, std::size_t j) const {
  return rows.at(i * grid.lambda.steps + j);
}

namespace {

ProbVector subtracted_spectrum(double eta, double lambda, int k, double tol) {
  const FilterOp sub = make_standard(OpKind::KrausSub, {{"eta", eta}, {"k", double(k)}}, 64);
  return filtered_schmidt(lambda, sub, identity_op(64), tol);
}

}  // namespace

int min_k_at(double eta, double lambda, int kmax, double trunc_tol) {
  try {
    const ProbVector tau = thermal_eigenvalues(lambda, trunc_tol);
    for (int k = 1; k <= kmax; ++k) {
      const ProbVector sigma = subtracted_spectrum(eta, lambda, k, trunc_tol);
      const double tol = std::max(2.0 * trunc_tol, tau.tail_bound() + sigma.tail_bound());
      if (majorizes(tau, sigma, tol)) return k;
    }
    return kNoK;
  } catch (const ZeroState&) {
    return kUndefined;
  } catch (const TruncationTooCoarse&) {
    return kTruncated;
  }
}

int entropy_min_k_at(double eta, double lambda, int kmax, double trunc_tol) {
  try {
    const double s_tau = shannon_entropy(thermal_eigenvalues(lambda, trunc_tol));
    for (int k = 1; k <= kmax; ++k) {
      const double s = shannon_entropy(subtracted_spectrum(eta, lambda, k, trunc_tol));
      if (s >= s_tau - kEntropySlack) return k;
    }
    return kNoK;
  } catch (const ZeroState&) {
    return kUndefined;
  } catch (const TruncationTooCoarse&) {
    return kTruncated;
  }
}

double tvd_d_raw_at(double eta, double lambda) {
  if (lambda == 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (eta == 1.0) return std::numeric_limits<double>::infinity();
  return -log10_nu_upper_bound(lambda, eta * lambda);
}

ScanResult run_scan(const ScanGrid& grid, unsigned workers) {
  grid.validate();
  const auto start = std::chrono::steady_clock::now();
  ScanResult result;
  result.grid = grid;
  const std::size_t ne = grid.eta.steps, nl = grid.lambda.steps;
  result.rows.resize(ne * nl);

  auto evaluate = [&](std::size_t idx) {
    ScanRow& row = result.rows[idx];
    row.eta = grid.eta.at(idx / nl);
    row.lambda = grid.lambda.at(idx % nl);
    row.lambda_db = squeezing_db(row.lambda);
    switch (grid.mode) {
      case ScanMode::MinK:
        row.k = min_k_at(row.eta, row.lambda, grid.kmax, grid.trunc_tol);
        break;
      case ScanMode::Entropy:
        row.k = entropy_min_k_at(row.eta, row.lambda, grid.kmax, grid.trunc_tol);
        break;
      case ScanMode::TvdBound:
        row.d_raw = tvd_d_raw_at(row.eta, row.lambda);
        row.d = std::isnan(row.d_raw) ? row.d_raw : std::clamp(row.d_raw, 0.0, 7.0);
        break;
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, result.rows.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < result.rows.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < result.rows.size(); i = next++) evaluate(i);
      });
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_csv(std::ostream& os, const ScanResult& result) {
  switch (result.grid.mode) {
    case ScanMode::MinK: os << "eta,lambda,lambda_db,min_k\n"; break;
    case ScanMode::TvdBound: os << "eta,lambda,lambda_db,d,d_raw\n"; break;
    case ScanMode::Entropy: os << "eta,lambda,lambda_db,entropy_min_k\n"; break;
  }
  for (const ScanRow& r : result.rows) {
    os << fmt(r.eta) << ',' << fmt(r.lambda) << ',' << fmt(r.lambda_db) << ',';
    if (result.grid.mode == ScanMode::TvdBound) {
      os << fmt(r.d) << ',' << fmt(r.d_raw) << '\n';
    } else {
      os << r.k << '\n';
    }
  }
}

namespace {

// JSON has no inf/nan; they are emitted as strings.
nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

void write_json(std::ostream& os, const ScanResult& result) {
  nlohmann::json j;
  const ScanGrid& g = result.grid;
  j["metadata"] = {
      {"tool", "fockmaj"},
      {"version", FOCKMAJ_VERSION},
      {"mode", std::string(mode_name(g.mode))},
      {"eta", g.eta.to_string()},
      {"lambda", g.lambda.to_string()},
      {"kmax", g.kmax},
      {"trunc_tol", g.trunc_tol},
      {"wall_seconds", result.wall_seconds},
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const ScanRow& r : result.rows) {
    nlohmann::json row = {{"eta", r.eta}, {"lambda", r.lambda}, {"lambda_db", r.lambda_db}};
    switch (g.mode) {
      case ScanMode::MinK: row["min_k"] = r.k; break;
      case ScanMode::Entropy: row["entropy_min_k"] = r.k; break;
      case ScanMode::TvdBound:
        row["d"] = json_number(r.d);
        row["d_raw"] = json_number(r.d_raw);
        break;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

void write_matrix(std::ostream& os, const ScanResult& result) {
  const ScanGrid& g = result.grid;
  os << "# " << mode_name(g.mode) << ": rows eta, columns lambda\n";
  os << g.lambda.steps;
  for (std::size_t j = 0; j < g.lambda.steps; ++j) os << ' ' << fmt(g.lambda.at(j));
  os << '\n';
  for (std::size_t i = 0; i < g.eta.steps; ++i) {
    os << fmt(g.eta.at(i));
    for (std::size_t j = 0; j < g.lambda.steps; ++j) {
      const ScanRow& r = result.at(i, j);
      os << ' ' << (g.mode == ScanMode::TvdBound ? fmt(r.d) : std::to_string(r.k));
    }
    os << '\n';
  }
}

CompareReport run_compare(std::string_view spec_a, std::string_view spec_b, double lambda,
                          double trunc_tol) {
  const SchemeSpec a = parse_scheme(spec_a);
  const SchemeSpec b = parse_scheme(spec_b);
  const ProbVector pa = scheme_spectrum(lambda, a, trunc_tol);
  const ProbVector pb = scheme_spectrum(lambda, b, trunc_tol);
  CompareReport r;
  r.spec_a = to_string(a);
  r.spec_b = to_string(b);
  r.lambda = lambda;
  r.tol = std::max(2.0 * trunc_tol, pa.tail_bound() + pb.tail_bound());
  r.order = compare(pa, pb, r.tol);
  r.entropy_a = shannon_entropy(pa);
  r.entropy_b = shannon_entropy(pb);
  r.tvd = total_variation_distance(pa, pb);
  r.margin_ab = majorization_margin(pa, pb);
  r.margin_ba = majorization_margin(pb, pa);
  r.tail_a = pa.tail_bound();
  r.tail_b = pb.tail_bound();
  r.size_a = pa.size();
  r.size_b = pb.size();
  return r;
}

void write_report(std::ostream& os, const CompareReport& r) {
  os << "A: " << r.spec_a << "\n"
     << "B: " << r.spec_b << "\n"
     << "lambda: " << fmt(r.lambda) << "\n"
     << "order: A " << order_name(r.order) << " B\n"
     << "entropy A (nats): " << fmt(r.entropy_a) << "\n"
     << "entropy B (nats): " << fmt(r.entropy_b) << "\n"
     << "total variation: " << fmt(r.tvd) << "\n"
     << "margin A over B: " << fmt(r.margin_ab) << "\n"
     << "margin B over A: " << fmt(r.margin_ba) << "\n"
     << "window A: " << r.size_a << " (tail " << fmt(r.tail_a) << ")\n"
     << "window B: " << r.size_b << " (tail " << fmt(r.tail_b) << ")\n"
     << "tolerance: " << fmt(r.tol) << "\n";
}

}  // namespace fockmaj
