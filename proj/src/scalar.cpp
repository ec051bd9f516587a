#include "prymker/scalar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <ostream>
#include <sstream>

namespace prymker {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::InvalidValuation: return "InvalidValuation";
    case ErrorCode::NotAnNthPower: return "NotAnNthPower";
    case ErrorCode::NonDivisibleValuation: return "NonDivisibleValuation";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInMinusSpace: return "NotInMinusSpace";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::IdentityViolated: return "IdentityViolated";
    case ErrorCode::ConsistencyViolated: return "ConsistencyViolated";
    case ErrorCode::EquivalenceViolated: return "EquivalenceViolated";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::UnsupportedRamification: return "UnsupportedRamification";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::PointsOutsideField: return "PointsOutsideField";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_identity_violation(ErrorCode code) {
  return code == ErrorCode::IdentityViolated || code == ErrorCode::ConsistencyViolated ||
         code == ErrorCode::EquivalenceViolated;
}

namespace {

constexpr std::array<int, 9> kSupportedOrders = {1, 2, 3, 4, 5, 6, 7, 11, 13};
constexpr int kMaxOrder = 13;

using IntPoly = std::vector<mpz_class>;

// Exact division of integer polynomials by a monic divisor.
IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const mpz_class c = num[i];
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

const std::vector<IntPoly>& cyclotomic_table() {
  static const std::vector<IntPoly> table = [] {
    std::vector<IntPoly> t(kMaxOrder + 1);
    for (int n = 1; n <= kMaxOrder; ++n) {
      IntPoly p(n + 1, 0);
      p[0] = -1;
      p[n] = 1;
      for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divide_monic(p, t[d]);
      t[n] = p;
    }
    return t;
  }();
  return table;
}

int degree_of(int order) { return static_cast<int>(cyclotomic_table()[order].size()) - 1; }

}  // namespace

FieldSpec::FieldSpec(int cyclotomic_order) : order_(cyclotomic_order) {
  if (!supported(cyclotomic_order))
    throw Error(ErrorCode::UnsupportedField,
                "cyclotomic order " + std::to_string(cyclotomic_order) + " is not supported");
}

bool FieldSpec::supported(int cyclotomic_order) noexcept {
  return std::find(kSupportedOrders.begin(), kSupportedOrders.end(), cyclotomic_order) !=
         kSupportedOrders.end();
}

int FieldSpec::degree() const noexcept { return degree_of(order_); }

const std::vector<mpz_class>& FieldSpec::modulus() const { return cyclotomic_table()[order_]; }

bool FieldSpec::has_root_of_unity(int n) const noexcept {
  return n >= 1 && (n <= 2 || order_ % n == 0);
}

// ---------------------------------------------------------------------------

Scalar::Scalar() : c_(1, 0) {}
Scalar::Scalar(long value) : c_(1, mpq_class(value)) {}
Scalar::Scalar(const mpq_class& value) : c_(1, value) {}
Scalar::Scalar(const mpq_class& value, const FieldSpec& field)
    : order_(field.order()), c_(field.degree(), 0) {
  c_[0] = value;
}

Scalar Scalar::from_coefficients(const FieldSpec& field, std::vector<mpq_class> coeffs) {
  Scalar s;
  s.order_ = field.order();
  s.c_ = std::move(coeffs);
  if (s.c_.empty()) s.c_.push_back(0);
  s.reduce();
  return s;
}

Scalar Scalar::zeta(const FieldSpec& field) {
  std::vector<mpq_class> c(2, 0);
  c[1] = 1;
  return from_coefficients(field, std::move(c));
}

Scalar Scalar::root_of_unity(const FieldSpec& field, int n) {
  if (n == 1) return Scalar(mpq_class(1), field);
  if (n == 2) return Scalar(mpq_class(-1), field);
  if (!field.has_root_of_unity(n))
    throw Error(ErrorCode::FieldTooSmall, "Q(zeta_" + std::to_string(field.order()) +
                                              ") has no primitive root of unity of order " +
                                              std::to_string(n));
  return zeta(field).pow(field.order() / n);
}

void Scalar::reduce() {
  const auto& mod = cyclotomic_table()[order_];
  const std::size_t deg = mod.size() - 1;
  for (std::size_t i = c_.size(); i-- > deg;) {
    if (sgn(c_[i]) != 0) {
      const mpq_class coef = c_[i];
      for (std::size_t j = 0; j < deg; ++j)
        if (sgn(mod[j]) != 0) c_[i - deg + j] -= coef * mod[j];
    }
  }
  c_.resize(deg, 0);
}

void Scalar::promote_to(int order) {
  if (order == order_) return;
  const mpq_class v = c_[0];
  order_ = order;
  c_.assign(degree_of(order), 0);
  c_[0] = v;
}

bool Scalar::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

bool Scalar::is_one() const { return is_rational() && c_[0] == 1; }

bool Scalar::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

const mpq_class& Scalar::rational() const {
  if (!is_rational()) throw Error(ErrorCode::FieldMismatch, "scalar " + to_string() + " is not rational");
  return c_[0];
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (other.order_ != order_) {
    if (other.is_rational()) {
      c_[0] += other.c_[0];
      if (other.order_ > order_ && is_rational()) promote_to(other.order_);
      return *this;
    }
    if (!is_rational())
      throw Error(ErrorCode::FieldMismatch, "cannot combine elements of Q(zeta_" + std::to_string(order_) +
                                                ") and Q(zeta_" + std::to_string(other.order_) + ")");
    promote_to(other.order_);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  if (other.is_rational()) {
    const mpq_class f = other.c_[0];
    for (auto& q : c_) q *= f;
    if (other.order_ > order_ && is_rational()) promote_to(other.order_);
    return *this;
  }
  if (is_rational()) {
    const mpq_class f = c_[0];
    *this = other;
    for (auto& q : c_) q *= f;
    return *this;
  }
  if (other.order_ != order_)
    throw Error(ErrorCode::FieldMismatch, "cannot combine elements of Q(zeta_" + std::to_string(order_) +
                                              ") and Q(zeta_" + std::to_string(other.order_) + ")");
  std::vector<mpq_class> prod(c_.size() + other.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < other.c_.size(); ++j)
      if (sgn(other.c_[j]) != 0) prod[i + j] += c_[i] * other.c_[j];
  }
  c_ = std::move(prod);
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    Scalar r = *this;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // Solve (multiplication-by-this) * s = e_0 over Q.
  const int deg = static_cast<int>(c_.size());
  std::vector<std::vector<mpq_class>> m(deg, std::vector<mpq_class>(deg + 1, 0));
  for (int j = 0; j < deg; ++j) {
    std::vector<mpq_class> basis(deg, 0);
    basis[j] = 1;
    Scalar col = *this * Scalar::from_coefficients(FieldSpec(order_), basis);
    for (int i = 0; i < deg; ++i) m[i][j] = col.c_[i];
  }
  m[0][deg] = 1;
  for (int col = 0; col < deg; ++col) {
    int piv = col;
    while (sgn(m[piv][col]) == 0) ++piv;
    std::swap(m[piv], m[col]);
    const mpq_class inv = 1 / m[col][col];
    for (int j = col; j <= deg; ++j) m[col][j] *= inv;
    for (int i = 0; i < deg; ++i) {
      if (i == col || sgn(m[i][col]) == 0) continue;
      const mpq_class f = m[i][col];
      for (int j = col; j <= deg; ++j) m[i][j] -= f * m[col][j];
    }
  }
  Scalar r;
  r.order_ = order_;
  r.c_.resize(deg);
  for (int i = 0; i < deg; ++i) r.c_[i] = m[i][deg];
  return r;
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result(mpq_class(1));
  result.promote_to(order_);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.order_ == b.order_) return a.c_ == b.c_;
  if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
  return false;
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const mpq_class& q = c_[k];
    if (sgn(q) == 0) continue;
    mpq_class mag = abs(q);
    if (first) {
      if (sgn(q) < 0) os << '-';
    } else {
      os << (sgn(q) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'z';
    if (k >= 2) os << '^' << k;
  }
  if (first) return "0";
  return os.str();
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : s_(text) {}

  std::vector<mpq_class> parse() {
    std::vector<mpq_class> coeffs;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      skip_ws();
      auto [coef, power] = term();
      if (static_cast<std::size_t>(power) >= coeffs.size()) coeffs.resize(power + 1, 0);
      coeffs[power] += sign * coef;
      skip_ws();
      if (pos_ == s_.size()) break;
      const char op = s_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      sign = op == '-' ? -1 : 1;
      ++pos_;
    }
    return coeffs;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t end = pos_;
    while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end]))) ++end;
    std::size_t begin = pos_;
    while (begin > 0 && !std::isspace(static_cast<unsigned char>(s_[begin - 1])) && s_[begin - 1] != '+' &&
           s_[begin - 1] != '-')
      --begin;
    std::string token(s_.substr(begin, std::max<std::size_t>(end, begin + 1) - begin));
    if (begin >= s_.size()) token = "<end of input>";
    throw Error(ErrorCode::ParseError,
                what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) +
                    "\" (offending token \"" + token + "\")");
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  int z_power() {
    ++pos_;  // 'z'
    if (peek() != '^') return 1;
    ++pos_;
    mpz_class e = integer();
    if (e > 4096) fail("exponent too large");
    return static_cast<int>(e.get_si());
  }

  std::pair<mpq_class, int> term() {
    if (peek() == 'z') return {mpq_class(1), z_power()};
    mpz_class num = integer();
    mpz_class den = 1;
    if (peek() == '/') {
      ++pos_;
      den = integer();
      if (den == 0) fail("zero denominator");
    }
    mpq_class coef(num, den);
    coef.canonicalize();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (peek() != 'z') fail("expected 'z' after '*'");
      return {coef, z_power()};
    }
    return {coef, 0};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text, const FieldSpec& field) {
  return from_coefficients(field, ScalarParser(text).parse());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

bool rational_sqrt(const mpq_class& value, mpq_class& root) {
  if (sgn(value) < 0) return false;
  if (!mpz_perfect_square_p(value.get_num_mpz_t()) || !mpz_perfect_square_p(value.get_den_mpz_t()))
    return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), value.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), value.get_den_mpz_t());
  root = mpq_class(n, d);
  return true;
}

mpq_class rational_nth_root(const mpq_class& value, int n) {
  if (n < 1) throw Error(ErrorCode::NotAnNthPower, "root order must be positive");
  const bool negative = sgn(value) < 0;
  if (negative && n % 2 == 0)
    throw Error(ErrorCode::NotAnNthPower,
                value.get_str() + " has no real " + std::to_string(n) + "-th root; extend the field");
  const mpq_class mag = abs(value);
  mpz_class num, den;
  const bool exact_num = mpz_root(num.get_mpz_t(), mag.get_num_mpz_t(), n) != 0;
  const bool exact_den = mpz_root(den.get_mpz_t(), mag.get_den_mpz_t(), n) != 0;
  if (!exact_num || !exact_den)
    throw Error(ErrorCode::NotAnNthPower,
                value.get_str() + " is not a rational " + std::to_string(n) + "-th power; extend the field");
  mpq_class r(num, den);
  return negative ? mpq_class(-r) : r;
}

}  // namespace prymker
