#include "fockmaj/filtration.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "fockmaj/errors.hpp"
#include "fockmaj/summation.hpp"

namespace fockmaj {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kInitialWindow = 64;
constexpr std::size_t kMaxWindow = std::size_t{1} << 16;
constexpr std::size_t kRatioRun = 16;

struct Window {
  std::vector<double> logw;  // n log(lambda) + 2 log(profile_f profile_g)
  double tail = 0.0;         // bound on omitted mass relative to the kept mass
  bool converged = false;
};

// Window of log weights whose omitted tail mass is below tol, or
// converged = false when the tail cannot be bounded at this length.
Window examine(double lambda, const FilterOp& f, const FilterOp& g, std::size_t L, double tol) {
  Window w;
  const double log_lambda = std::log(lambda);
  w.logw.resize(L);
  const auto pf = f.log_profile();
  const auto pg = g.log_profile();
  for (std::size_t n = 0; n < L; ++n) {
    const double a = n < pf.size() ? pf[n] : kNegInf;
    const double b = n < pg.size() ? pg[n] : kNegInf;
    w.logw[n] = (a == kNegInf || b == kNegInf) ? kNegInf : double(n) * log_lambda + 2.0 * (a + b);
  }

  const bool finite_rank = !f.resizable() || !g.resizable();
  double tail_w = 0.0;  // omitted weight, in units of exp(top)
  const double top = *std::max_element(w.logw.begin(), w.logw.end());
  if (top == kNegInf) return w;  // nothing yet; caller grows or reports ZeroState

  if (!finite_rank) {
    std::size_t last = L;
    while (last > 0 && w.logw[last - 1] == kNegInf) --last;
    // Standard kinds vanish either on a prefix or on everything past the
    // vacuum, so a trailing zero run after non-zero weights is exact.
    if (last < L) {
      tail_w = 0.0;
    } else {
      if (L < kRatioRun + 2) return w;
      std::vector<double> lr;
      for (std::size_t n = L - kRatioRun - 1; n + 1 < L; ++n) {
        if (w.logw[n] == kNegInf) return w;
        lr.push_back(w.logw[n + 1] - w.logw[n]);
      }
      const double slack = 1e-9;
      bool dec = true, inc = true;
      for (std::size_t i = 0; i + 1 < lr.size(); ++i) {
        dec = dec && lr[i + 1] <= lr[i] + slack;
        inc = inc && lr[i + 1] >= lr[i] - slack;
      }
      if (!dec && !inc) return w;
      // Monotone ratios approach the asymptote: bound by the larger of the
      // current ratio and the limit.
      double log_r = lr.back();
      if (inc) log_r = std::max(log_r, log_lambda + f.log_growth() + g.log_growth());
      if (!(log_r < 0.0)) return w;
      const double r = std::exp(log_r);
      tail_w = std::exp(w.logw[L - 1] - top) * r / (1.0 - r);
    }
  }

  // Trim to the shortest prefix whose tail stays below tol.
  std::vector<double> scaled(L);
  for (std::size_t n = 0; n < L; ++n) scaled[n] = std::exp(w.logw[n] - top);
  std::vector<double> suffix(L + 1, 0.0);
  {
    CompensatedSum s;
    for (std::size_t n = L; n-- > 0;) {
      s += scaled[n];
      suffix[n] = s.value();
    }
  }
  const double total = suffix[0];
  if (tail_w / total > tol) return w;
  std::size_t M = L;
  while (M > 1) {
    const double kept = total - suffix[M - 1];
    if (!(kept > 0.0) || (suffix[M - 1] + tail_w) / kept > tol) break;
    --M;
  }
  w.logw.resize(M);
  const double kept = total - suffix[M];
  w.tail = (suffix[M] + tail_w) / kept;
  w.converged = true;
  return w;
}

Window adaptive_window(double lambda, const FilterOp& f, const FilterOp& g, double tol) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in [0, 1)");
  if (!(tol > 0.0)) throw DomainError("trunc_tol must be positive");
  if (lambda == 0.0) {
    Window w;
    const double a = f.size() ? f.log_profile()[0] : kNegInf;
    const double b = g.size() ? g.log_profile()[0] : kNegInf;
    if (a == kNegInf || b == kNegInf) throw ZeroState("filtration annihilates the vacuum");
    w.logw = {2.0 * (a + b)};
    w.converged = true;
    return w;
  }

  std::size_t L = kInitialWindow;
  if (!f.resizable()) L = std::max(L, f.size());
  if (!g.resizable()) L = std::max(L, g.size());
  if (!f.resizable() || !g.resizable()) {
    // Finite rank: the product vanishes beyond the shorter finite window.
    std::size_t cap = std::numeric_limits<std::size_t>::max();
    if (!f.resizable()) cap = std::min(cap, f.size());
    if (!g.resizable()) cap = std::min(cap, g.size());
    L = std::max<std::size_t>(cap, 1);
  }

  bool any_weight = false;
  for (;;) {
    const FilterOp fr = f.resizable() && f.size() < L ? f.resized(L) : f;
    const FilterOp gr = g.resizable() && g.size() < L ? g.resized(L) : g;
    Window w = examine(lambda, fr, gr, L, tol);
    any_weight = any_weight || std::any_of(w.logw.begin(), w.logw.end(),
                                           [](double x) { return x > kNegInf; });
    if (w.converged) return w;
    if ((!f.resizable() || !g.resizable()) && !any_weight) break;
    if (L >= kMaxWindow) break;
    L *= 2;
  }
  if (!any_weight) throw ZeroState("filtration annihilates the state");
  throw TruncationTooCoarse("filtered spectrum does not decay fast enough to bound the tail");
}

ProbVector to_prob(const Window& w, std::string label) {
  const double top = *std::max_element(w.logw.begin(), w.logw.end());
  std::vector<double> p(w.logw.size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::exp(w.logw[n] - top);
  const double s = compensated_sum(p);
  for (double& x : p) x /= s;
  return ProbVector(std::move(p), w.tail, std::move(label));
}

}  // namespace

ProbVector filtered_fock_distribution(double lambda, const FilterOp& f, const FilterOp& g,
                                      double trunc_tol) {
  return to_prob(adaptive_window(lambda, f, g, trunc_tol), "filtered");
}

ProbVector filtered_schmidt(double lambda, const FilterOp& f, const FilterOp& g,
                            double trunc_tol) {
  return filtered_fock_distribution(lambda, f, g, trunc_tol).sorted_descending();
}

double normalization_constant(double lambda, const FilterOp& f, const FilterOp& g) {
  const Window w = adaptive_window(lambda, f, g, 1e-15);
  const double top = *std::max_element(w.logw.begin(), w.logw.end());
  CompensatedSum s;
  for (double x : w.logw) s += std::exp(x - top);
  const double log_norm = top + std::log(s.value()) + std::log1p(-lambda) +
                          2.0 * (f.log_prefactor() + g.log_prefactor());
  return std::exp(log_norm);
}

std::pair<FilterOp, FilterOp> scheme_operators(const SchemeSpec& scheme, std::size_t length) {
  struct Visitor {
    std::size_t length;
    std::pair<FilterOp, FilterOp> operator()(const DualSingle& s) const {
      return {ladder_op(s.k, length), ladder_op(s.l, length)};
    }
    std::pair<FilterOp, FilterOp> operator()(const SingleMulti& s) const {
      if (s.kvec.empty()) throw DomainError("multi scheme needs at least one entry");
      return {ladder_chain(s.kvec, length), identity_op(length)};
    }
    std::pair<FilterOp, FilterOp> operator()(const General& s) const { return {s.f, s.g}; }
  };
  return std::visit(Visitor{length}, scheme);
}

ProbVector scheme_spectrum(double lambda, const SchemeSpec& scheme, double trunc_tol) {
  const auto [f, g] = scheme_operators(scheme);
  return filtered_schmidt(lambda, f, g, trunc_tol).with_label(to_string(scheme));
}

std::vector<int> reduce_to_single_mode(std::span<const int> k_mode1,
                                       std::span<const int> l_mode2) {
  std::vector<int> kvec;
  kvec.reserve(k_mode1.size() + l_mode2.size());
  for (auto it = l_mode2.rbegin(); it != l_mode2.rend(); ++it) kvec.push_back(-*it);
  kvec.insert(kvec.end(), k_mode1.begin(), k_mode1.end());
  return kvec;
}

double entropy_of_entanglement(double lambda, const SchemeSpec& scheme, double trunc_tol) {
  return shannon_entropy(scheme_spectrum(lambda, scheme, trunc_tol));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<int> parse_ints(std::string_view body, std::size_t offset) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view item = trim(body.substr(pos, comma == std::string_view::npos
                                                            ? std::string_view::npos
                                                            : comma - pos));
    int v = 0;
    const char* first = item.data();
    if (!item.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ParseError("expected an integer", offset + pos);
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

SchemeSpec parse_scheme(std::string_view text) {
  const std::string_view t = trim(text);
  const std::size_t lead = static_cast<std::size_t>(t.data() - text.data());
  const std::size_t open = t.find('(');
  if (open == std::string_view::npos || t.back() != ')') {
    throw ParseError("expected scheme(...)", lead);
  }
  const std::string_view name = trim(t.substr(0, open));
  const std::string_view body = t.substr(open + 1, t.size() - open - 2);
  const std::size_t body_pos = lead + open + 1;

  if (name == "dual") {
    const auto v = parse_ints(body, body_pos);
    if (v.size() != 2) throw ParseError("dual takes two integers", body_pos);
    return DualSingle{v[0], v[1]};
  }
  if (name == "multi") return SingleMulti{parse_ints(body, body_pos)};
  if (name == "general") {
    const std::size_t semi = body.find(';');
    if (semi == std::string_view::npos) throw ParseError("general needs 'f;g'", body_pos);
    auto sub = [&](std::string_view s, std::size_t at) {
      try {
        return parse_filter_op(s);
      } catch (const ParseError& e) {
        throw ParseError(e.message(), at + e.position());
      }
    };
    return General{sub(body.substr(0, semi), body_pos),
                   sub(body.substr(semi + 1), body_pos + semi + 1)};
  }
  throw ParseError("unknown scheme '" + std::string(name) + "'", lead);
}

std::string to_string(const SchemeSpec& scheme) {
  struct Visitor {
    std::string operator()(const DualSingle& s) const {
      return "dual(" + std::to_string(s.k) + "," + std::to_string(s.l) + ")";
    }
    std::string operator()(const SingleMulti& s) const {
      std::string out = "multi(";
      for (std::size_t i = 0; i < s.kvec.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.kvec[i]);
      }
      return out + ")";
    }
    std::string operator()(const General& s) const {
      auto one = [](const FilterOp& op) {
        return op.kind() == OpKind::Custom ? std::string("custom") : serialize(op);
      };
      return "general(" + one(s.f) + ";" + one(s.g) + ")";
    }
  };
  return std::visit(Visitor{}, scheme);
}

}  // namespace fockmaj
