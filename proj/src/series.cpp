#include "prymker/series.hpp"

#include <algorithm>
#include <sstream>

namespace prymker {

namespace {

constexpr int kExact = TruncatedSeries::kExact;

int clamp_prec(long p) {
  if (p >= kExact / 2) return kExact;
  if (p <= -kExact / 2) return -kExact / 2;
  return static_cast<int>(p);
}

}  // namespace

TruncatedSeries::TruncatedSeries() : val_(kExact), prec_(kExact) {}

TruncatedSeries::TruncatedSeries(int val, std::vector<Scalar> coeffs, int prec)
    : val_(val), prec_(clamp_prec(prec)), c_(std::move(coeffs)) {
  normalize();
}

void TruncatedSeries::normalize() {
  if (val_ >= prec_) {
    c_.clear();
  } else if (static_cast<long>(val_) + static_cast<long>(c_.size()) > prec_) {
    c_.resize(static_cast<std::size_t>(prec_ - val_));
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = prec_;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TruncatedSeries TruncatedSeries::zero(int prec) { return TruncatedSeries(prec, {}, prec); }

TruncatedSeries TruncatedSeries::constant(const Scalar& c, int prec) { return TruncatedSeries(0, {c}, prec); }

TruncatedSeries TruncatedSeries::monomial(const Scalar& c, int exponent, int prec) {
  return TruncatedSeries(exponent, {c}, prec);
}

TruncatedSeries TruncatedSeries::from_coefficients(int valuation, std::vector<Scalar> coeffs, int prec) {
  return TruncatedSeries(valuation, std::move(coeffs), prec);
}

TruncatedSeries TruncatedSeries::polynomial(std::vector<Scalar> coeffs, int prec) {
  return TruncatedSeries(0, std::move(coeffs), prec);
}

Scalar TruncatedSeries::coeff(int e) const {
  if (e >= prec_)
    throw Error(ErrorCode::InsufficientPrecision, "coefficient of z^" + std::to_string(e) +
                                                      " requested from a series known to O(z^" +
                                                      std::to_string(prec_) + ")");
  if (e < val_) return Scalar();
  const std::size_t k = static_cast<std::size_t>(e - val_);
  return k < c_.size() ? c_[k] : Scalar();
}

Scalar TruncatedSeries::leading() const {
  if (c_.empty()) throw Error(ErrorCode::InvalidValuation, "the zero series has no leading coefficient");
  return c_.front();
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int prec = std::min(a.prec_, b.prec_);
  const int v = std::min(a.val_, b.val_);
  if (v >= prec) return TruncatedSeries::zero(prec);
  if (a.c_.empty() && b.c_.empty()) return TruncatedSeries::zero(prec);
  long top = std::max<long>(a.c_.empty() ? 0 : static_cast<long>(a.val_) + static_cast<long>(a.c_.size()),
                            b.c_.empty() ? 0 : static_cast<long>(b.val_) + static_cast<long>(b.c_.size()));
  top = std::min<long>(top, prec);
  std::vector<Scalar> c(static_cast<std::size_t>(std::max<long>(top - v, 0)));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const long e = a.val_ + static_cast<long>(i);
    if (e >= top) break;
    c[static_cast<std::size_t>(e - v)] += a.c_[i];
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    const long e = b.val_ + static_cast<long>(i);
    if (e >= top) break;
    c[static_cast<std::size_t>(e - v)] += b.c_[i];
  }
  return TruncatedSeries(v, std::move(c), prec);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const long prec_l = std::min<long>(static_cast<long>(a.prec_) + b.val_, static_cast<long>(b.prec_) + a.val_);
  const int prec = clamp_prec(prec_l);
  if (a.is_zero() || b.is_zero()) return TruncatedSeries::zero(prec);
  const int v = a.val_ + b.val_;
  long len = static_cast<long>(a.c_.size() + b.c_.size()) - 1;
  len = std::min<long>(len, static_cast<long>(prec) - v);
  if (len <= 0) return TruncatedSeries::zero(prec);
  std::vector<Scalar> c(static_cast<std::size_t>(len));
  for (std::size_t i = 0; i < a.c_.size() && static_cast<long>(i) < len; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < len; ++j)
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
  }
  return TruncatedSeries(v, std::move(c), prec);
}

TruncatedSeries operator*(const TruncatedSeries& a, const Scalar& s) {
  if (s.is_zero()) return TruncatedSeries::zero(a.is_exact() ? TruncatedSeries::kExact : a.prec_);
  TruncatedSeries r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

// Inverse of a nonzero series, known to `relative_prec` terms past the valuation.
TruncatedSeries TruncatedSeries::inverse_to(int relative_prec) const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero series");
  const Scalar inv0 = c_[0].inverse();
  std::vector<Scalar> u(static_cast<std::size_t>(std::max(relative_prec, 0)));
  for (std::size_t n = 0; n < u.size(); ++n) {
    if (n == 0) {
      u[0] = inv0;
      continue;
    }
    Scalar acc;
    for (std::size_t k = 1; k <= n && k < c_.size(); ++k)
      if (!c_[k].is_zero() && !u[n - k].is_zero()) acc += c_[k] * u[n - k];
    u[n] = -(acc * inv0);
  }
  return TruncatedSeries(-val_, std::move(u), -val_ + relative_prec);
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero series");
  if (is_exact()) {
    if (c_.size() == 1) return TruncatedSeries(-val_, {c_[0].inverse()}, kExact);
    throw Error(ErrorCode::InsufficientPrecision,
                "the inverse of a non-monomial polynomial needs a precision bound");
  }
  return inverse_to(prec_ - val_);
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero series");
  if (!b.is_exact() || b.c_.size() == 1) return a * b.inverse();
  if (a.is_exact())
    throw Error(ErrorCode::InsufficientPrecision,
                "quotient of polynomials is not a polynomial; truncate one operand first");
  // Exact denominator: compute just as many inverse terms as the numerator supports.
  const int needed = a.prec_ - a.val_;
  return a * b.inverse_to(std::max(needed, 0));
}

TruncatedSeries TruncatedSeries::truncated(int prec) const {
  if (prec >= prec_) return *this;
  return TruncatedSeries(val_, c_, prec);
}

TruncatedSeries TruncatedSeries::padded(int prec) const {
  if (prec <= prec_) return truncated(prec);
  if (is_zero()) return TruncatedSeries::zero(prec);
  return TruncatedSeries(val_, c_, prec);
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  if (is_zero()) return TruncatedSeries::zero(is_exact() ? kExact : prec_ + k);
  return TruncatedSeries(val_ + k, c_, is_exact() ? kExact : prec_ + k);
}

TruncatedSeries TruncatedSeries::derivative() const {
  const int prec = is_exact() ? kExact : prec_ - 1;
  if (is_zero()) return TruncatedSeries::zero(prec);
  std::vector<Scalar> d(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * Scalar(static_cast<long>(val_) + static_cast<long>(i));
  return TruncatedSeries(val_ - 1, std::move(d), prec);
}

TruncatedSeries TruncatedSeries::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  TruncatedSeries result = TruncatedSeries::constant(Scalar(1));
  TruncatedSeries base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& g) const {
  const int vg = g.valuation();
  if (vg < 1) throw Error(ErrorCode::InvalidValuation, "composition needs an inner series of positive valuation");
  if (is_zero()) {
    if (is_exact()) return TruncatedSeries();
    return TruncatedSeries::zero(clamp_prec(static_cast<long>(prec_) * vg));
  }
  if (val_ < 0 && g.is_zero())
    throw Error(ErrorCode::InsufficientPrecision, "inner series is indistinguishable from zero");
  // Horner on the unit part, then multiply by g^val.
  TruncatedSeries acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + TruncatedSeries::constant(c_[i]);
  if (val_ != 0) acc = acc * g.pow(val_);
  if (!is_exact()) acc = acc.truncated(clamp_prec(static_cast<long>(prec_) * vg));
  return acc;
}

TruncatedSeries TruncatedSeries::substitute_power(int n) const {
  if (n < 1) throw Error(ErrorCode::InvalidValuation, "substitution exponent must be positive");
  const int prec = is_exact() ? kExact : clamp_prec(static_cast<long>(prec_) * n);
  if (is_zero()) return TruncatedSeries::zero(prec);
  std::vector<Scalar> c((c_.size() - 1) * static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * static_cast<std::size_t>(n)] = c_[i];
  return TruncatedSeries(val_ * n, std::move(c), prec);
}

TruncatedSeries TruncatedSeries::scale_variable(const Scalar& s) const {
  if (is_zero()) return *this;
  if (s.is_zero()) throw Error(ErrorCode::DivisionByZero, "scaling the variable by zero");
  TruncatedSeries r = *this;
  Scalar f = s.pow(val_);
  for (auto& c : r.c_) {
    c *= f;
    f *= s;
  }
  return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.prec_ == b.prec_ && a.val_ == b.val_ && a.c_ == b.c_;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << c_[i].to_string() << ")*t^" << (val_ + static_cast<long>(i));
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    first = false;
    os << "O(t^" << prec_ << ')';
  }
  if (first) return "0";
  return os.str();
}

Scalar residue(const TruncatedSeries& f) {
  if (f.precision() <= -1)
    throw Error(ErrorCode::InsufficientPrecision,
                "residue needs the z^-1 coefficient; series is known only to O(z^" +
                    std::to_string(f.precision()) + ")");
  return f.coeff(-1);
}

TruncatedSeries nth_root(const TruncatedSeries& f, int n) {
  if (n < 1) throw Error(ErrorCode::NotAnNthPower, "root order must be positive");
  if (f.is_zero()) throw Error(ErrorCode::InsufficientPrecision, "root of a series indistinguishable from zero");
  const int v = f.valuation();
  if (v % n != 0)
    throw Error(ErrorCode::NonDivisibleValuation,
                "valuation " + std::to_string(v) + " is not divisible by " + std::to_string(n));
  const Scalar lead = f.leading();
  if (!lead.is_rational())
    throw Error(ErrorCode::NotAnNthPower, "leading coefficient " + lead.to_string() +
                                              " has no designated root in its field; extend the field");
  const Scalar root(rational_nth_root(lead.rational(), n));
  if (n == 1) return f;
  const TruncatedSeries unit = f.shifted(-v) * lead.inverse();
  BivariatePolynomial F;
  F.add_term(0, n, Scalar(1));
  for (std::size_t i = 0; i < unit.stored().size(); ++i)
    if (!unit.stored()[i].is_zero()) F.add_term(static_cast<int>(i), 0, -unit.stored()[i]);
  if (unit.is_exact())
    throw Error(ErrorCode::InsufficientPrecision, "root of a polynomial needs a precision bound");
  const TruncatedSeries y = newton_solve(F, TruncatedSeries::constant(Scalar(1), 1), unit.precision());
  return (y * root).shifted(v / n);
}

void BivariatePolynomial::add_term(int z_exp, int y_exp, const Scalar& c) {
  if (z_exp < 0 || y_exp < 0) throw Error(ErrorCode::InvalidValuation, "negative exponent in polynomial term");
  auto [it, inserted] = terms_.try_emplace({z_exp, y_exp}, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TruncatedSeries BivariatePolynomial::evaluate(const TruncatedSeries& y) const {
  int max_j = 0;
  for (const auto& [k, c] : terms_) max_j = std::max(max_j, k.second);
  std::vector<TruncatedSeries> powers(static_cast<std::size_t>(max_j) + 1);
  powers[0] = TruncatedSeries::constant(Scalar(1));
  for (int j = 1; j <= max_j; ++j) powers[static_cast<std::size_t>(j)] = powers[static_cast<std::size_t>(j - 1)] * y;
  TruncatedSeries sum;
  for (const auto& [k, c] : terms_)
    sum = sum + powers[static_cast<std::size_t>(k.second)].shifted(k.first) * c;
  return sum;
}

BivariatePolynomial BivariatePolynomial::derivative_y() const {
  BivariatePolynomial d;
  for (const auto& [k, c] : terms_)
    if (k.second > 0) d.add_term(k.first, k.second - 1, c * Scalar(static_cast<long>(k.second)));
  return d;
}

TruncatedSeries newton_solve(const BivariatePolynomial& F, const TruncatedSeries& seed, int target_prec,
                             std::vector<TruncatedSeries>* iterates) {
  if (seed.is_exact()) throw Error(ErrorCode::InsufficientPrecision, "Newton seed needs a finite precision");
  int p = seed.precision();
  if (p < 1) throw Error(ErrorCode::InsufficientPrecision, "Newton seed must be known to at least O(z)");
  if (seed.valuation() < 0) throw Error(ErrorCode::InvalidValuation, "Newton seed must be a power series");
  if (!F.evaluate(seed).truncated(p).is_zero())
    throw Error(ErrorCode::PreconditionFailed, "seed is not a root of F modulo z^" + std::to_string(p));
  const BivariatePolynomial dF = F.derivative_y();
  const TruncatedSeries j0 = dF.evaluate(seed).truncated(p);
  if (j0.is_zero() || j0.valuation() != 0)
    throw Error(ErrorCode::SingularJacobian, "dF/dy vanishes at the seed; the root is not simple");
  TruncatedSeries y = seed;
  if (iterates) iterates->push_back(y);
  while (p < target_prec) {
    p = std::min(2 * p, target_prec);
    const TruncatedSeries yp = y.padded(p);
    const TruncatedSeries r = F.evaluate(yp).truncated(p);
    const TruncatedSeries jac = dF.evaluate(yp).truncated(p);
    y = (yp - r / jac).truncated(p);
    if (iterates) iterates->push_back(y);
  }
  return y.truncated(target_prec);
}

TruncatedSeries reversion(const TruncatedSeries& f) {
  if (f.is_zero() || f.valuation() != 1)
    throw Error(ErrorCode::InvalidValuation, "reversion needs a series of valuation exactly 1");
  const Scalar a1 = f.leading();
  if (f.is_exact() && f.stored().size() == 1) return TruncatedSeries::monomial(a1.inverse(), 1);
  if (f.is_exact())
    throw Error(ErrorCode::InsufficientPrecision, "reversion of a polynomial needs a precision bound");
  const int target = f.precision();
  const TruncatedSeries z = TruncatedSeries::monomial(Scalar(1), 1);
  const TruncatedSeries df = f.derivative();
  TruncatedSeries g = TruncatedSeries::monomial(a1.inverse(), 1, 2);
  int p = 2;
  while (p < target) {
    p = std::min(2 * p, target);
    const TruncatedSeries gp = g.padded(p);
    const TruncatedSeries r = (f.compose(gp) - z).truncated(p);
    const TruncatedSeries d = df.compose(gp).truncated(p);
    g = (gp - r / d).truncated(p);
  }
  return g.truncated(target);
}

}  // namespace prymker
