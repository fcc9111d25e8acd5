#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tidd {

using BigInt = boost::multiprecision::cpp_int;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_bigint(const BigInt& x) {
  std::size_t h = x.sign() < 0 ? 0x51ed27u : 0u;
  BigInt mag = abs(x);
  // Low limbs plus bit length is enough; equality is always checked exactly.
  h = hash_combine(h, static_cast<std::size_t>(static_cast<std::uint64_t>(mag & 0xffffffffffffffffULL)));
  h = hash_combine(h, mag.is_zero() ? 0 : msb(mag));
  return h;
}

/// Exact scalar (a + b*sqrt(2)) / 2^k.
///
/// Kept in canonical form: while a and b are both even and k > 0 the triple is
/// halved, and zero is always (0,0,0). Equality and hashing are structural.
/// Booleans use false = 0 and true = 1.
class Value {
 public:
  Value() = default;
  Value(long long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Value(BigInt a, BigInt b, std::uint32_t k) : a_(std::move(a)), b_(std::move(b)), k_(k) { normalize(); }

  static Value boolean(bool v) { return Value(v ? 1 : 0); }
  /// 1/sqrt(2) = sqrt(2)/2
  static Value inv_sqrt2() { return Value(0, 1, 1); }
  static Value sqrt2() { return Value(0, 1, 0); }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  std::uint32_t k() const { return k_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_boolean() const { return b_.is_zero() && k_ == 0 && (a_ == 0 || a_ == 1); }
  bool as_bool() const { return !is_zero(); }

  /// Exact sign of a + b*sqrt(2): -1, 0 or 1.
  int sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    BigInt lhs = a_ * a_;
    BigInt rhs = 2 * b_ * b_;
    int cmp = lhs == rhs ? 0 : (lhs > rhs ? 1 : -1);
    // |a| dominates when cmp > 0, so the sign follows a.
    return cmp > 0 ? sa : (cmp < 0 ? sb : 0);
  }

  /// Multiply by 2^e (e may be negative).
  Value times_pow2(int e) const {
    if (e >= 0) {
      std::uint32_t ue = static_cast<std::uint32_t>(e);
      if (ue <= k_) return Value(a_, b_, k_ - ue);
      std::uint32_t rest = ue - k_;
      return Value(a_ << rest, b_ << rest, 0);
    }
    return Value(a_, b_, k_ + static_cast<std::uint32_t>(-e));
  }

  Value operator-() const {
    Value r;
    r.a_ = -a_;
    r.b_ = -b_;
    r.k_ = k_;
    return r;
  }

  friend Value operator+(const Value& x, const Value& y) {
    std::uint32_t k = std::max(x.k_, y.k_);
    BigInt xa = x.a_ << (k - x.k_), xb = x.b_ << (k - x.k_);
    BigInt ya = y.a_ << (k - y.k_), yb = y.b_ << (k - y.k_);
    return Value(xa + ya, xb + yb, k);
  }
  friend Value operator-(const Value& x, const Value& y) { return x + (-y); }
  friend Value operator*(const Value& x, const Value& y) {
    return Value(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.k_ + y.k_);
  }
  friend Value operator*(const Value& x, const BigInt& w) { return Value(x.a_ * w, x.b_ * w, x.k_); }

  Value& operator+=(const Value& o) { return *this = *this + o; }
  Value& operator*=(const Value& o) { return *this = *this * o; }

  /// |v|^2; values are real so this is v*v.
  Value squared_magnitude() const { return *this * *this; }

  friend bool operator==(const Value& x, const Value& y) {
    return x.k_ == y.k_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Value& x, const Value& y) { return !(x == y); }

  std::size_t hash() const {
    return hash_combine(hash_combine(hash_bigint(a_), hash_bigint(b_)), k_);
  }

  long double approx() const {
    long double r = a_.convert_to<long double>() +
                    b_.convert_to<long double>() * 1.41421356237309504880168872420969808L;
    for (std::uint32_t i = 0; i < k_; ++i) r /= 2;
    return r;
  }

  /// "a,b,k"
  std::string to_string() const {
    std::ostringstream os;
    os << a_ << ',' << b_ << ',' << k_;
    return os.str();
  }

  static Value parse(std::string_view text) {
    auto c1 = text.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("value must be 'a,b,k'");
    BigInt a(std::string(text.substr(0, c1)));
    BigInt b(std::string(text.substr(c1 + 1, c2 - c1 - 1)));
    auto k = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(c2 + 1))));
    return Value(std::move(a), std::move(b), k);
  }

  friend std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.to_string(); }

 private:
  void normalize() {
    if (a_.is_zero() && b_.is_zero()) {
      k_ = 0;
      return;
    }
    while (k_ > 0 && !bit_test(a_, 0) && !bit_test(b_, 0)) {
      a_ >>= 1;
      b_ >>= 1;
      --k_;
    }
  }

  BigInt a_{0};
  BigInt b_{0};
  std::uint32_t k_ = 0;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

}  // namespace tidd

template <>
struct std::hash<tidd::Value> {
  std::size_t operator()(const tidd::Value& v) const { return v.hash(); }
};
