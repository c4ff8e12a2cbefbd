#pragma once

// Exact scalar types usable as Eigen scalars: arbitrary-precision rationals
// and prime-field residues.

#include <Eigen/Core>

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace csec {

/// Raised when a request exceeds what the library can decide or afford.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed arguments (wrong dimensions, non-ideals, bad params).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when scalar text or a file is not in canonical form.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced fraction with positive denominator.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;
  using Value = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long v) : value_(v) {}  // NOLINT: Eigen constructs Scalar(0), Scalar(1)
  Rational(Integer num, Integer den) : value_(std::move(num), std::move(den)) {}

  [[nodiscard]] Integer numerator() const { return boost::multiprecision::numerator(value_); }
  [[nodiscard]] Integer denominator() const { return boost::multiprecision::denominator(value_); }
  [[nodiscard]] bool is_zero() const { return value_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Value(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Value(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Value(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("rational division by zero");
    return Rational(Value(a.value_ / b.value_));
  }
  Rational operator-() const { return Rational(Value(-value_)); }
  Rational& operator+=(const Rational& b) { value_ += b.value_; return *this; }
  Rational& operator-=(const Rational& b) { value_ -= b.value_; return *this; }
  Rational& operator*=(const Rational& b) { value_ *= b.value_; return *this; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  [[nodiscard]] Rational inverse() const { return Rational(1) / *this; }

  /// "a/b" in lowest terms, or "a" when the denominator is 1.
  [[nodiscard]] std::string str() const {
    if (denominator() == 1) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  /// Accepts only the canonical text produced by str().
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

 private:
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_;
};

namespace detail {

inline bool is_canonical_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  if (s.front() == '-') {
    if (!allow_sign) return false;
    s.remove_prefix(1);
    if (s == "0") return false;
  }
  if (s.empty() || s.size() > 4096) return false;
  if (s.size() > 1 && s.front() == '0') return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!detail::is_canonical_integer(num_text, true))
    throw FormatError("non-canonical rational '" + std::string(text) + "'");
  const Integer num{std::string(num_text)};
  if (slash == std::string_view::npos) return Rational(num, Integer(1));
  const auto den_text = text.substr(slash + 1);
  if (!detail::is_canonical_integer(den_text, false) || den_text == "0" || den_text == "1" || num == 0)
    throw FormatError("non-canonical rational '" + std::string(text) + "'");
  const Integer den{std::string(den_text)};
  if (boost::multiprecision::gcd(num, den) != 1)
    throw FormatError("rational '" + std::string(text) + "' is not in lowest terms");
  return Rational(num, den);
}

/// Residue class modulo a small prime, stored in [0, P).
template <int P>
class Zp {
  static_assert(P >= 2 && P < 128, "residues are stored in a byte");

 public:
  static constexpr int modulus = P;

  constexpr Zp() = default;
  constexpr Zp(long long v) : v_(static_cast<std::uint8_t>(((v % P) + P) % P)) {}  // NOLINT

  [[nodiscard]] constexpr int value() const { return v_; }
  [[nodiscard]] constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Zp operator+(Zp a, Zp b) { return raw((a.v_ + b.v_) % P); }
  friend constexpr Zp operator-(Zp a, Zp b) { return raw((a.v_ + P - b.v_) % P); }
  friend constexpr Zp operator*(Zp a, Zp b) { return raw((a.v_ * b.v_) % P); }
  friend constexpr Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  constexpr Zp operator-() const { return raw((P - v_) % P); }
  constexpr Zp& operator+=(Zp b) { return *this = *this + b; }
  constexpr Zp& operator-=(Zp b) { return *this = *this - b; }
  constexpr Zp& operator*=(Zp b) { return *this = *this * b; }
  constexpr Zp& operator/=(Zp b) { return *this = *this / b; }

  friend constexpr bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(Zp a, Zp b) { return a.v_ <=> b.v_; }

  [[nodiscard]] constexpr Zp inverse() const {
    if (v_ == 0) throw DomainError("division by zero in GF(" + std::to_string(P) + ")");
    return raw(inverses()[v_]);
  }

  [[nodiscard]] std::string str() const { return std::to_string(v_); }

  /// Decimal residue in [0, P) without leading zeros.
  static Zp parse(std::string_view text) {
    if (!detail::is_canonical_integer(text, false) || text.size() > 3 || std::stoi(std::string(text)) >= P)
      throw FormatError("non-canonical GF(" + std::to_string(P) + ") residue '" + std::string(text) + "'");
    return Zp(std::stoi(std::string(text)));
  }

  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << int(a.v_); }

 private:
  static constexpr Zp raw(int v) {
    Zp z;
    z.v_ = static_cast<std::uint8_t>(v);
    return z;
  }
  static constexpr std::array<std::uint8_t, P> inverses() {
    std::array<std::uint8_t, P> inv{};
    for (int a = 1; a < P; ++a)
      for (int b = 1; b < P; ++b)
        if ((a * b) % P == 1) inv[a] = static_cast<std::uint8_t>(b);
    return inv;
  }

  std::uint8_t v_ = 0;
};

using GF2 = Zp<2>;
using GF3 = Zp<3>;
using GF5 = Zp<5>;
using GF7 = Zp<7>;

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Runtime description of the ground field; characteristic 0 means Q.
struct FieldSpec {
  int characteristic = 0;

  static FieldSpec rationals() { return {0}; }
  static FieldSpec prime(int p) {
    if (!is_prime(p)) throw DomainError("GF(" + std::to_string(p) + "): modulus is not prime");
    return {p};
  }

  [[nodiscard]] bool finite() const { return characteristic != 0; }
  [[nodiscard]] std::string name() const { return finite() ? "GF(" + std::to_string(characteristic) + ")" : "Q"; }
  /// CLI token: q, gf2, gf3, ...
  [[nodiscard]] std::string token() const { return finite() ? "gf" + std::to_string(characteristic) : "q"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class S>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr int characteristic = 0;
  static constexpr bool finite = false;
  static std::string format(const Rational& a) { return a.str(); }
  static Rational parse(std::string_view s) { return Rational::parse(s); }
};

template <int P>
struct field_traits<Zp<P>> {
  static constexpr int characteristic = P;
  static constexpr bool finite = true;
  static constexpr int order = P;
  static constexpr Zp<P> element(int i) { return Zp<P>(i); }
  static constexpr int index(Zp<P> a) { return a.value(); }
  static std::string format(Zp<P> a) { return a.str(); }
  static Zp<P> parse(std::string_view s) { return Zp<P>::parse(s); }
};

template <class S>
concept ExactField = requires { field_traits<S>::characteristic; };

template <class S>
concept FiniteField = ExactField<S> && field_traits<S>::finite;

template <class S>
FieldSpec field_spec() {
  return FieldSpec{field_traits<S>::characteristic};
}

template <class S>
bool is_zero(const S& a) {
  return a.is_zero();
}

}  // namespace csec

namespace Eigen {

template <>
struct NumTraits<csec::Rational> : GenericNumTraits<csec::Rational> {
  using Real = csec::Rational;
  using NonInteger = csec::Rational;
  using Literal = csec::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 40
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <int P>
struct NumTraits<csec::Zp<P>> : GenericNumTraits<csec::Zp<P>> {
  using Real = csec::Zp<P>;
  using NonInteger = csec::Zp<P>;
  using Literal = csec::Zp<P>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static Real highest() { return P - 1; }
  static Real lowest() { return 0; }
  static int digits10() { return 0; }
};

}  // namespace Eigen
