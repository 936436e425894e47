#include <algorithm>
#include <cctype>
#include <sstream>

#include "sla/semilinear.hpp"

namespace sla {

namespace {

constexpr Int kMaxSpan = 50'000'000;  // guard against runaway windows and periods

std::size_t idx(Int i) { return static_cast<std::size_t>(i); }

Int reduced_period(const std::vector<bool>& residues) {
  const Int p = static_cast<Int>(residues.size());
  for (Int d : arith::divisors(p)) {
    bool ok = true;
    for (Int r = d; r < p && ok; ++r) ok = residues[idx(r)] == residues[idx(r % d)];
    if (ok) return d;
  }
  return p;
}

}  // namespace

PeriodicSet1D PeriodicSet1D::all() {
  PeriodicSet1D s;
  s.left_ = {true};
  s.right_ = {true};
  return s;
}

PeriodicSet1D PeriodicSet1D::singleton(Int x) { return interval(x, x); }

PeriodicSet1D PeriodicSet1D::interval(Int lo, Int hi) {
  PeriodicSet1D s;
  s.left_ = {false};
  s.right_ = {false};
  if (hi < lo) return s;
  if (hi - lo >= kMaxSpan) throw Error("periodic set window too large");
  s.lo_ = lo;
  s.hi_ = arith::add(hi, 1);
  s.window_.assign(idx(s.hi_ - lo), true);
  return s;
}

PeriodicSet1D PeriodicSet1D::residue_class(Int residue, Int modulus) {
  if (modulus < 1) throw Error("residue class modulus must be positive");
  Int r = arith::mod(residue, modulus);
  return from_predicate(0, 0, modulus, modulus, [&](Int x) { return arith::mod(x, modulus) == r; });
}

PeriodicSet1D PeriodicSet1D::from_progression(const Progression& p) {
  const Int m = arith::abs(p.step);
  const Int r = arith::mod(p.base, m);
  if (p.count) {
    Int last = p.at(*p.count - 1);
    Int lo = std::min(p.base, last), hi = std::max(p.base, last);
    return from_predicate(lo, arith::add(hi, 1), 1, 1, [&](Int x) { return p.contains(x); });
  }
  if (p.step > 0)
    return from_predicate(p.base, p.base, 1, m, [&](Int x) { return x >= p.base && arith::mod(x, m) == r; });
  Int hi = arith::add(p.base, 1);
  return from_predicate(hi, hi, m, 1, [&](Int x) { return x <= p.base && arith::mod(x, m) == r; });
}

PeriodicSet1D PeriodicSet1D::from_predicate(Int lo, Int hi, Int left_period, Int right_period,
                                            const std::function<bool(Int)>& member) {
  if (left_period < 1 || right_period < 1) throw Error("periods must be positive");
  if (hi < lo) throw Error("window bounds out of order");
  if (hi - lo > kMaxSpan || left_period > kMaxSpan || right_period > kMaxSpan)
    throw Error("periodic set window too large");
  PeriodicSet1D s;
  s.lo_ = lo;
  s.hi_ = hi;
  s.left_period_ = left_period;
  s.right_period_ = right_period;
  s.left_.assign(idx(left_period), false);
  s.right_.assign(idx(right_period), false);
  s.window_.assign(idx(hi - lo), false);
  for (Int x = lo - left_period; x < lo; ++x) s.left_[idx(arith::mod(x, left_period))] = member(x);
  for (Int x = hi; x < hi + right_period; ++x) s.right_[idx(arith::mod(x, right_period))] = member(x);
  for (Int x = lo; x < hi; ++x) s.window_[idx(x - lo)] = member(x);
  s.compact();
  return s;
}

void PeriodicSet1D::compact() {
  left_period_ = reduced_period(left_);
  left_.resize(idx(left_period_));
  right_period_ = reduced_period(right_);
  right_.resize(idx(right_period_));

  while (hi_ > lo_ && window_.back() == right_[idx(arith::mod(hi_ - 1, right_period_))]) {
    window_.pop_back();
    --hi_;
  }
  std::size_t drop = 0;
  while (lo_ + static_cast<Int>(drop) < hi_ && window_[drop] == left_[idx(arith::mod(lo_ + static_cast<Int>(drop), left_period_))])
    ++drop;
  window_.erase(window_.begin(), window_.begin() + static_cast<std::ptrdiff_t>(drop));
  lo_ += static_cast<Int>(drop);
  if (lo_ == hi_ && left_ == right_) lo_ = hi_ = 0;
}

bool PeriodicSet1D::contains(Int x) const {
  if (x < lo_) return left_[idx(arith::mod(x, left_period_))];
  if (x >= hi_) return right_[idx(arith::mod(x, right_period_))];
  return window_[idx(x - lo_)];
}

bool PeriodicSet1D::is_empty() const {
  auto none = [](const std::vector<bool>& v) { return std::none_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return none(left_) && none(window_) && none(right_);
}

PeriodicSet1D PeriodicSet1D::combine(const PeriodicSet1D& a, const PeriodicSet1D& b, bool (*op)(bool, bool)) {
  return from_predicate(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_), arith::lcm(a.left_period_, b.left_period_),
                        arith::lcm(a.right_period_, b.right_period_),
                        [&](Int x) { return op(a.contains(x), b.contains(x)); });
}

PeriodicSet1D PeriodicSet1D::unite(const PeriodicSet1D& o) const {
  return combine(*this, o, [](bool p, bool q) { return p || q; });
}

PeriodicSet1D PeriodicSet1D::intersect(const PeriodicSet1D& o) const {
  return combine(*this, o, [](bool p, bool q) { return p && q; });
}

PeriodicSet1D PeriodicSet1D::complement() const {
  PeriodicSet1D s = *this;
  s.left_.flip();
  s.window_.flip();
  s.right_.flip();
  return s;
}

bool PeriodicSet1D::operator==(const PeriodicSet1D& o) const {
  return combine(*this, o, [](bool p, bool q) { return p != q; }).is_empty();
}

PeriodicSet1D PeriodicSet1D::shift(Int d) const {
  return from_predicate(arith::add(lo_, d), arith::add(hi_, d), left_period_, right_period_,
                        [&](Int x) { return contains(x - d); });
}

PeriodicSet1D PeriodicSet1D::scale(Int offset, Int factor) const {
  if (factor < 1) throw Error("scale factor must be positive");
  if (factor == 1) return shift(offset);
  Int lo = arith::add(offset, arith::mul(factor, lo_));
  Int hi = arith::add(offset, arith::mul(factor, hi_));
  return from_predicate(lo, hi, arith::mul(left_period_, factor), arith::mul(right_period_, factor), [&](Int x) {
    Int d = x - offset;
    return arith::mod(d, factor) == 0 && contains(arith::floor_div(d, factor));
  });
}

std::optional<Int> PeriodicSet1D::min_at_least(Int a) const {
  if (a < lo_) {
    Int stop = std::min(lo_, arith::add(a, left_period_));
    for (Int x = a; x < stop; ++x)
      if (contains(x)) return x;
  }
  for (Int x = std::max(a, lo_); x < hi_; ++x)
    if (contains(x)) return x;
  Int start = std::max(a, hi_);
  for (Int x = start; x < start + right_period_; ++x)
    if (contains(x)) return x;
  return std::nullopt;
}

std::optional<Int> PeriodicSet1D::max_at_most(Int a) const {
  if (a >= hi_) {
    Int stop = std::max(hi_ - 1, arith::sub(a, right_period_));
    for (Int x = a; x > stop; --x)
      if (contains(x)) return x;
  }
  for (Int x = std::min(a, hi_ - 1); x >= lo_; --x)
    if (contains(x)) return x;
  Int start = std::min(a, lo_ - 1);
  for (Int x = start; x > start - left_period_; --x)
    if (contains(x)) return x;
  return std::nullopt;
}

std::optional<Int> PeriodicSet1D::smallest_magnitude() const {
  auto up = min_at_least(0);
  auto down = max_at_most(-1);
  if (!up) return down;
  if (!down) return up;
  return -*down < *up ? down : up;
}

std::vector<Progression> PeriodicSet1D::to_progressions() const {
  std::vector<Progression> out;
  for (Int r = 0; r < left_period_; ++r)
    if (left_[idx(r)]) out.push_back({lo_ - 1 - arith::mod(lo_ - 1 - r, left_period_), -left_period_, std::nullopt});
  for (Int x = lo_; x < hi_;) {
    if (!window_[idx(x - lo_)]) {
      ++x;
      continue;
    }
    Int start = x;
    while (x < hi_ && window_[idx(x - lo_)]) ++x;
    out.push_back({start, 1, x - start});
  }
  for (Int r = 0; r < right_period_; ++r)
    if (right_[idx(r)]) out.push_back({hi_ + arith::mod(r - hi_, right_period_), right_period_, std::nullopt});
  return out;
}

namespace {

std::string list(const std::vector<bool>& bits, Int base) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    if (!first) out += ",";
    out += std::to_string(base + static_cast<Int>(i));
    first = false;
  }
  return out + "}";
}

std::string side(const std::vector<bool>& residues, Int period, Int threshold) {
  bool any = std::any_of(residues.begin(), residues.end(), [](bool b) { return b; });
  if (!any) return "0@" + std::to_string(threshold);
  return std::to_string(period) + "@" + std::to_string(threshold) + ":" + list(residues, 0);
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool try_take(std::string_view t) {
    skip();
    if (s_.substr(i_, t.size()) != t) return false;
    i_ += t.size();
    return true;
  }
  void take(std::string_view t) {
    if (!try_take(t)) fail("expected '" + std::string(t) + "'");
  }
  Int integer() {
    skip();
    std::size_t j = i_;
    if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
    std::size_t digits = j;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == digits) fail("expected an integer");
    Int v;
    try {
      v = std::stoll(std::string(s_.substr(i_, j - i_)));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
    i_ = j;
    return v;
  }
  std::vector<Int> braces() {
    take("{");
    std::vector<Int> out;
    if (try_take("}")) return out;
    do out.push_back(integer());
    while (try_take(","));
    take("}");
    return out;
  }
  bool done() {
    skip();
    return i_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, static_cast<int>(i_) + 1); }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

struct Side {
  Int period, threshold;
  std::vector<Int> residues;
};

Side read_side(Cursor& c) {
  Side s{c.integer(), 0, {}};
  c.take("@");
  s.threshold = c.integer();
  if (s.period < 0) c.fail("negative period");
  if (s.period > 0) {
    c.take(":");
    s.residues = c.braces();
  } else if (c.try_take(":")) {
    if (!c.braces().empty()) c.fail("period 0 takes no residues");
  }
  return s;
}

}  // namespace

std::string PeriodicSet1D::to_string() const {
  std::ostringstream os;
  os << "periodic(left=" << side(left_, left_period_, lo_) << ", window=[" << lo_ << "," << hi_
     << "):" << list(window_, lo_) << ", right=" << side(right_, right_period_, hi_) << ")";
  return os.str();
}

PeriodicSet1D PeriodicSet1D::parse(std::string_view text) {
  Cursor c(text);
  if (c.try_take("all")) {
    if (!c.done()) c.fail("trailing input");
    return all();
  }
  if (c.try_take("none") || c.try_take("empty")) {
    if (!c.done()) c.fail("trailing input");
    return empty();
  }
  if (!c.try_take("periodic(")) {
    Int m = c.integer();
    if (m < 1) c.fail("modulus must be positive");
    c.take(":");
    PeriodicSet1D out;
    do out = out.unite(residue_class(c.integer(), m));
    while (c.try_take(","));
    if (!c.done()) c.fail("trailing input");
    return out;
  }
  c.take("left=");
  Side left = read_side(c);
  c.take(",");
  c.take("window=[");
  Int a = c.integer();
  c.take(",");
  Int b = c.integer();
  c.take(")");
  c.take(":");
  std::vector<Int> elems = c.braces();
  c.take(",");
  c.take("right=");
  Side right = read_side(c);
  c.take(")");
  if (!c.done()) c.fail("trailing input");
  if (a != left.threshold || b != right.threshold) c.fail("thresholds must match the window bounds");
  if (b < a) c.fail("window bounds out of order");
  for (Int x : elems)
    if (x < a || x >= b) c.fail("window element " + std::to_string(x) + " outside [" + std::to_string(a) + "," + std::to_string(b) + ")");
  auto has = [](const Side& s, Int x) {
    if (s.period == 0) return false;
    Int r = arith::mod(x, s.period);
    return std::any_of(s.residues.begin(), s.residues.end(), [&](Int q) { return arith::mod(q, s.period) == r; });
  };
  return from_predicate(a, b, std::max<Int>(left.period, 1), std::max<Int>(right.period, 1), [&](Int x) {
    if (x < a) return has(left, x);
    if (x >= b) return has(right, x);
    return std::find(elems.begin(), elems.end(), x) != elems.end();
  });
}

}  // namespace sla
