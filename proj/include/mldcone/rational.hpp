#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mldcone {

using Int = boost::multiprecision::cpp_int;

// Exact rational, always held in lowest terms with positive denominator.
// Everything downstream (discrepancies, ages, indices) is computed in this
// type; there is no floating point anywhere in the library.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t v) : q_(v) {}  // implicit: lets 0/1 literals flow in
  Rat(const Int& v) : q_(v) {}
  Rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    // cpp_rational insists on a positive denominator at construction.
    if (den < 0)
      q_ = rational(-num, -den);
    else
      q_ = rational(num, den);
  }

  Int num() const { return boost::multiprecision::numerator(q_); }
  Int den() const { return boost::multiprecision::denominator(q_); }
  bool is_integer() const { return den() == 1; }
  bool is_zero() const { return q_ == 0; }

  // Greatest integer <= value.
  Int floor() const {
    Int n = num(), d = den();
    Int q = n / d;
    if (n < 0 && n % d != 0) --q;
    return q;
  }
  // Value - floor(value), in [0,1).
  Rat frac() const { return *this - Rat(floor()); }

  // "p/q" in lowest terms, or "p" when integral. Round-trips through parse().
  std::string str() const { return q_.str(); }

  // Accepts what str() emits: optional minus, digits, optional "/digits".
  static Rat parse(std::string_view s) {
    auto bad = [&] {
      throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'");
    };
    if (s.empty()) bad();
    auto slash = s.find('/');
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1")
                                                          : s.substr(slash + 1);
    auto check_digits = [&](std::string_view t, bool allow_sign) {
      if (t.empty()) bad();
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) bad();
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') bad();
    };
    check_digits(ns, true);
    check_digits(ds, false);
    if (ns[0] == '+') ns.remove_prefix(1);  // cpp_int rejects a leading '+'
    Int den{std::string(ds)};
    if (den == 0) bad();
    return Rat(Int{std::string(ns)}, den);
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.q_ == 0) throw std::invalid_argument("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { Rat r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.q_;
  }

 private:
  using rational = boost::multiprecision::cpp_rational;
  rational q_;
};

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) { std::int64_t t = a % b; a = b; b = t; }
  return a;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd64(a, b) * b;
}

}  // namespace mldcone
