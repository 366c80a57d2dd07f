#include "fockmaj/filter_ops.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "fockmaj/errors.hpp"

namespace fockmaj {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_falling(double n, double k) {  // log(n! / (n-k)!), n >= k
  return std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

double log_rising(double n, double k) {  // log((n+k)! / n!)
  return std::lgamma(n + k + 1.0) - std::lgamma(n + 1.0);
}

double require_param(const ParamMap& params, const std::string& name, OpKind kind) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw DomainError(std::string(kind_name(kind)) + ": missing parameter '" + name + "'");
  }
  if (!std::isfinite(it->second)) {
    throw DomainError(std::string(kind_name(kind)) + ": parameter '" + name + "' is not finite");
  }
  return it->second;
}

int require_count(const ParamMap& params, OpKind kind) {
  const double k = require_param(params, "k", kind);
  if (k < 0.0 || k != std::floor(k) || k > 1e6) {
    throw DomainError(std::string(kind_name(kind)) + ": k must be a non-negative integer");
  }
  return static_cast<int>(k);
}

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> allowed,
                    OpKind kind) {
  for (const auto& [name, value] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || name == a;
    if (!ok) {
      throw DomainError(std::string(kind_name(kind)) + ": unknown parameter '" + name + "'");
    }
  }
}

// (x)^k with the convention 0^0 = 1, in log space.
double log_power(double x, int k) {
  if (k == 0) return 0.0;
  return x > 0.0 ? k * std::log(x) : kNegInf;
}

}  // namespace

struct FilterOp::Composition {
  FilterOp outer;
  FilterOp inner;
};

FilterOp FilterOp::custom(std::span<const double> amplitudes,
                          std::optional<std::vector<FockTarget>> targets) {
  FilterOp op;
  op.log_profile_.reserve(amplitudes.size());
  for (double a : amplitudes) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw DomainError("FilterOp::custom: amplitudes must be finite and non-negative");
    }
    op.log_profile_.push_back(a > 0.0 ? std::log(a) : kNegInf);
  }
  if (targets) {
    if (targets->size() != amplitudes.size()) {
      throw DomainError("FilterOp::custom: targets and amplitudes differ in length");
    }
    for (std::size_t n = 0; n < amplitudes.size(); ++n) {
      if ((amplitudes[n] > 0.0) != (*targets)[n].has_value()) {
        throw DomainError("FilterOp::custom: targets must be defined exactly on the support");
      }
    }
  }
  op.targets_ = std::move(targets);
  return op;
}

FilterOp FilterOp::custom_extended(std::span<const double> amplitudes,
                                   std::optional<std::vector<FockTarget>> targets) {
  FilterOp op = custom(amplitudes, std::move(targets));
  if (op.log_profile_.empty() || op.log_profile_.back() == kNegInf) {
    throw DomainError("FilterOp::custom_extended: the last amplitude must be non-zero");
  }
  if (op.targets_) {
    const std::size_t last = *op.targets_->back();
    for (const auto& t : *op.targets_) {
      if (t && *t > last) {
        throw DomainError("FilterOp::custom_extended: the last target must be the largest");
      }
    }
  }
  op.resizable_ = true;
  op.extended_ = true;
  return op;
}

double FilterOp::log_amplitude(std::size_t n) const {
  if (n >= log_profile_.size()) return kNegInf;
  return log_prefactor_ + log_profile_[n];
}

double FilterOp::amplitude(std::size_t n) const { return std::exp(log_amplitude(n)); }

std::vector<double> FilterOp::amplitudes() const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < size(); ++n) out[n] = amplitude(n);
  return out;
}

bool FilterOp::overflowed() const {
  const double limit = std::log(std::numeric_limits<double>::max());
  return std::any_of(log_profile_.begin(), log_profile_.end(),
                     [&](double lp) { return log_prefactor_ + lp > limit; });
}

bool FilterOp::in_support(std::size_t n) const {
  return n < log_profile_.size() && log_profile_[n] > kNegInf;
}

FockTarget FilterOp::target(std::size_t n) const {
  if (!targets_ || n >= targets_->size()) return std::nullopt;
  return (*targets_)[n];
}

std::span<const FockTarget> FilterOp::targets() const noexcept {
  if (!targets_) return {};
  return *targets_;
}

FilterOp FilterOp::resized(std::size_t length) const {
  if (composition_) return concat(composition_->outer, composition_->inner.resized(length));
  if (extended_) {
    FilterOp out = *this;
    if (length <= size()) return out;
    const double last = log_profile_.back();
    out.log_profile_.resize(length, last);
    if (out.targets_) {
      std::size_t t = *targets_->back();
      out.targets_->reserve(length);
      while (out.targets_->size() < length) out.targets_->push_back(++t);
    }
    return out;
  }
  if (resizable_) return make_standard(kind_, params_, length);
  FilterOp out = *this;
  out.log_profile_.resize(length, kNegInf);
  if (out.targets_) out.targets_->resize(length, std::nullopt);
  return out;
}

FilterOp make_standard(OpKind kind, const ParamMap& params, std::size_t length) {
  FilterOp op;
  op.kind_ = kind;
  op.params_ = params;
  op.resizable_ = true;
  op.log_profile_.assign(length, kNegInf);
  std::vector<FockTarget> targets(length);

  // shift > 0 moves |n> to |n + shift>, shift < 0 annihilates |n < -shift>.
  auto fill = [&](int shift, auto&& log_amp) {
    for (std::size_t n = 0; n < length; ++n) {
      const auto nn = static_cast<long long>(n);
      if (nn + shift < 0) continue;
      const double la = log_amp(static_cast<double>(n));
      if (la == kNegInf) continue;
      op.log_profile_[n] = la;
      targets[n] = static_cast<std::size_t>(nn + shift);
    }
  };

  switch (kind) {
    case OpKind::Creation: {
      reject_unknown(params, {"k"}, kind);
      const int k = require_count(params, kind);
      fill(k, [k](double n) { return 0.5 * log_rising(n, k); });
      break;
    }
    case OpKind::Annihilation: {
      reject_unknown(params, {"k"}, kind);
      const int k = require_count(params, kind);
      fill(-k, [k](double n) { return 0.5 * log_falling(n, k); });
      break;
    }
    case OpKind::PhotonNumber: {
      reject_unknown(params, {}, kind);
      fill(0, [](double n) { return n > 0.0 ? std::log(n) : kNegInf; });
      break;
    }
    case OpKind::Nla: {
      reject_unknown(params, {"g"}, kind);
      const double g = require_param(params, "g", kind);
      if (g < 0.0) throw DomainError("nla: gain g must be >= 0");
      op.log_growth_ = g > 0.0 ? 2.0 * std::log(g) : kNegInf;
      fill(0, [g](double n) { return n == 0.0 ? 0.0 : (g > 0.0 ? n * std::log(g) : kNegInf); });
      break;
    }
    case OpKind::KrausAdd: {
      reject_unknown(params, {"g", "k"}, kind);
      const double g = require_param(params, "g", kind);
      const int k = require_count(params, kind);
      if (g < 1.0) throw DomainError("kraus-add: gain g must be >= 1");
      op.log_prefactor_ = 0.5 * (log_power(g - 1.0, k) - std::log(g) - std::lgamma(k + 1.0));
      const double log_g = std::log(g);
      op.log_growth_ = -log_g;
      fill(k, [&](double n) { return -0.5 * n * log_g + 0.5 * log_rising(n, k); });
      break;
    }
    case OpKind::KrausSub: {
      reject_unknown(params, {"eta", "k"}, kind);
      const double eta = require_param(params, "eta", kind);
      const int k = require_count(params, kind);
      if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("kraus-sub: eta must lie in (0, 1]");
      op.log_prefactor_ = 0.5 * (log_power(1.0 - eta, k) - std::lgamma(k + 1.0));
      const double log_eta = std::log(eta);
      op.log_growth_ = log_eta;
      fill(-k, [&](double n) { return 0.5 * n * log_eta + 0.5 * log_falling(n, k); });
      break;
    }
    case OpKind::Custom:
      throw DomainError("make_standard: custom operators are built with FilterOp::custom");
  }
  op.targets_ = std::move(targets);
  return op;
}

FilterOp identity_op(std::size_t length) {
  return make_standard(OpKind::Nla, {{"g", 1.0}}, length);
}

FilterOp ladder_op(int k, std::size_t length) {
  if (k > 0) return make_standard(OpKind::Creation, {{"k", double(k)}}, length);
  if (k < 0) return make_standard(OpKind::Annihilation, {{"k", double(-k)}}, length);
  return identity_op(length);
}

FilterOp ladder_chain(std::span<const int> kvec, std::size_t length) {
  if (kvec.empty()) return identity_op(length);
  FilterOp op = ladder_op(kvec.front(), length);
  for (std::size_t i = 1; i < kvec.size(); ++i) op = concat(ladder_op(kvec[i], length), op);
  return op;
}

bool is_fock_orthogonal(const FilterOp& op) {
  if (!op.has_targets()) return true;
  std::unordered_set<std::size_t> seen;
  for (std::size_t n = 0; n < op.size(); ++n) {
    if (!op.in_support(n)) continue;
    if (!seen.insert(*op.target(n)).second) return false;
  }
  return true;
}

namespace {

bool non_decreasing_log(std::span<const double> a, std::span<const double> b, std::size_t length) {
  const double slack = std::log1p(kAmplitudeRelTol);
  auto at = [](std::span<const double> xs, std::size_t n) {
    return n < xs.size() ? xs[n] : kNegInf;
  };
  for (std::size_t n = 0; n + 1 < length; ++n) {
    const double lo = at(a, n) + (b.empty() ? 0.0 : at(b, n));
    const double hi = at(a, n + 1) + (b.empty() ? 0.0 : at(b, n + 1));
    if (lo == kNegInf) continue;
    if (!(lo <= hi + slack)) return false;
  }
  return true;
}

}  // namespace

bool is_fock_amplifying(const FilterOp& op, std::size_t length) {
  return non_decreasing_log(op.log_profile(), {}, length);
}

std::optional<std::size_t> fock_amplifying_threshold(const FilterOp& op) {
  double ratio = 0.0;
  if (op.kind() == OpKind::KrausAdd) {
    const double g = op.params().at("g");
    if (g == 1.0) return std::nullopt;
    ratio = op.params().at("k") / (g - 1.0);
  } else if (op.kind() == OpKind::KrausSub) {
    const double eta = op.params().at("eta");
    if (eta == 1.0) return std::nullopt;
    ratio = op.params().at("k") / (1.0 - eta);
  } else {
    throw DomainError("fock_amplifying_threshold: defined for kraus-add and kraus-sub only");
  }
  // Guard against k/(g-1) landing a hair below an integer.
  return static_cast<std::size_t>(std::floor(ratio + 1e-9 * std::max(1.0, ratio)));
}

bool is_fock_preserving(const FilterOp& op) {
  if (!op.has_targets()) {
    throw PreconditionViolation("is_fock_preserving: operator has no target map");
  }
  std::optional<std::size_t> last;
  for (std::size_t n = 0; n < op.size(); ++n) {
    if (!op.in_support(n)) continue;
    const std::size_t t = *op.target(n);
    if (last && t < *last) return false;
    last = t;
  }
  return true;
}

bool jointly_fock_amplifying(const FilterOp& f, const FilterOp& g, std::size_t length) {
  return non_decreasing_log(f.log_profile(), g.log_profile(), length);
}

FilterOp concat(const FilterOp& outer, const FilterOp& inner) {
  if (!inner.has_targets()) {
    throw PreconditionViolation("concat: the inner operator needs a target map");
  }

  FilterOp first = inner;
  // A resizable inner feeding a finite-rank outer has support wherever its
  // targets still hit outer's window; extend until the targets leave it.
  if (inner.resizable() && !outer.resizable()) {
    auto max_target = [](const FilterOp& op) {
      std::size_t m = 0;
      for (std::size_t n = 0; n < op.size(); ++n)
        if (op.in_support(n)) m = std::max(m, *op.target(n));
      return m;
    };
    std::size_t len = std::max<std::size_t>(first.size(), 1);
    while (max_target(first) < outer.size() && len < (std::size_t{1} << 24)) {
      len *= 2;
      first = inner.resized(len);
    }
  }

  std::size_t needed = 0;
  for (std::size_t n = 0; n < first.size(); ++n)
    if (first.in_support(n)) needed = std::max(needed, *first.target(n) + 1);
  const FilterOp second = outer.size() >= needed ? outer : outer.resized(needed);

  FilterOp out;
  out.kind_ = OpKind::Custom;
  out.log_prefactor_ = first.log_prefactor_ + second.log_prefactor_;
  out.log_profile_.assign(first.size(), kNegInf);
  std::optional<std::vector<FockTarget>> targets;
  if (second.has_targets()) targets.emplace(first.size());
  for (std::size_t n = 0; n < first.size(); ++n) {
    if (!first.in_support(n)) continue;
    const std::size_t mid = *first.target(n);
    if (!second.in_support(mid)) continue;
    out.log_profile_[n] = first.log_profile_[n] + second.log_profile_[mid];
    if (targets) (*targets)[n] = second.target(mid);
  }
  out.targets_ = std::move(targets);

  if (inner.resizable() && outer.resizable()) {
    out.resizable_ = true;
    out.log_growth_ = outer.log_growth_ + inner.log_growth_;
    out.composition_ = std::make_shared<const FilterOp::Composition>(
        FilterOp::Composition{outer, inner});
  }
  return out;
}

std::string_view kind_name(OpKind kind) {
  switch (kind) {
    case OpKind::Creation: return "creation";
    case OpKind::Annihilation: return "annihilation";
    case OpKind::PhotonNumber: return "photon-number";
    case OpKind::Nla: return "nla";
    case OpKind::KrausAdd: return "kraus-add";
    case OpKind::KrausSub: return "kraus-sub";
    case OpKind::Custom: return "custom";
  }
  return "custom";
}

OpKind parse_kind(std::string_view name) {
  for (OpKind k : {OpKind::Creation, OpKind::Annihilation, OpKind::PhotonNumber, OpKind::Nla,
                   OpKind::KrausAdd, OpKind::KrausSub, OpKind::Custom}) {
    if (kind_name(k) == name) return k;
  }
  throw ParseError("unknown operator kind '" + std::string(name) + "'", 0);
}

namespace {

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' ||
                       peek() == '_')) {
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected a name", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) throw ParseError("expected a number", pos_);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const FilterOp& op) {
  if (op.kind() == OpKind::Custom) {
    throw PreconditionViolation("serialize: custom operators have no text form");
  }
  std::string out(kind_name(op.kind()));
  out += '(';
  bool first = true;
  for (const auto& [name, value] : op.params()) {
    if (!first) out += ',';
    first = false;
    out += name;
    out += '=';
    out += format_number(value);
  }
  out += ')';
  return out;
}

FilterOp parse_filter_op(std::string_view text, std::size_t length) {
  Cursor cur(text);
  const std::size_t name_pos = (cur.skip_ws(), cur.pos());
  const std::string name = cur.identifier();

  ParamMap params;
  OpKind kind;
  if (name == "identity") {
    kind = OpKind::Nla;
    params["g"] = 1.0;
  } else {
    try {
      kind = parse_kind(name);
    } catch (const ParseError&) {
      throw ParseError("unknown operator kind '" + name + "'", name_pos);
    }
    if (kind == OpKind::Custom) throw ParseError("custom operators have no text form", name_pos);
  }

  if (cur.accept('(')) {
    if (!cur.accept(')')) {
      do {
        const std::size_t param_pos = (cur.skip_ws(), cur.pos());
        const std::string key = cur.identifier();
        cur.expect('=');
        if (!params.emplace(key, cur.number()).second) {
          throw ParseError("duplicate parameter '" + key + "'", param_pos);
        }
      } while (cur.accept(','));
      cur.expect(')');
    }
  }
  cur.skip_ws();
  if (!cur.done()) throw ParseError("unexpected trailing input", cur.pos());

  try {
    return make_standard(kind, params, length);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), name_pos);
  }
}

}  // namespace fockmaj
