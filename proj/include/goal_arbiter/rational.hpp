#ifndef GOAL_ARBITER_RATIONAL_HPP
#define GOAL_ARBITER_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace goal_arbiter {

// Exact rational arithmetic for preferences and utilities.  Inputs are short
// decimal literals, so numerators and denominators stay far below the
// int64 range; intermediate comparisons widen to 128 bits.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
  }

  static Rational from_int(std::int64_t value) { return Rational(value, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& other) const {
    std::int64_t g = std::gcd(den_, other.den_);
    std::int64_t lhs_scale = other.den_ / g;
    std::int64_t rhs_scale = den_ / g;
    return Rational(num_ * lhs_scale + other.num_ * rhs_scale, den_ * lhs_scale);
  }

  Rational& operator+=(const Rational& other) {
    *this = *this + other;
    return *this;
  }

  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(const Rational& other) const { return !(*this == other); }

  bool operator<(const Rational& other) const {
    return static_cast<__int128>(num_) * other.den_ <
           static_cast<__int128>(other.num_) * den_;
  }
  bool operator>(const Rational& other) const { return other < *this; }
  bool operator<=(const Rational& other) const { return !(other < *this); }
  bool operator>=(const Rational& other) const { return !(*this < other); }

  // Parses a nonnegative decimal literal such as "0", "1", "0.75".
  static Rational from_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty decimal literal");
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    std::int64_t scale = 1;
    std::size_t i = 0;
    if (i >= text.size() || text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("malformed decimal literal: " + text);
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i)
      whole = whole * 10 + (text[i] - '0');
    if (i < text.size()) {
      if (text[i] != '.') throw std::invalid_argument("malformed decimal literal: " + text);
      ++i;
      if (i >= text.size()) throw std::invalid_argument("malformed decimal literal: " + text);
      for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
          throw std::invalid_argument("malformed decimal literal: " + text);
        if (scale > 1000000000000000LL)
          throw std::invalid_argument("decimal literal too precise: " + text);
        frac = frac * 10 + (text[i] - '0');
        scale *= 10;
      }
    }
    return Rational(whole * scale + frac, scale);
  }

  // Renders the exact value as a terminating decimal string.  All values in
  // this library originate from decimal literals and sums thereof, so the
  // reduced denominator only ever contains the prime factors 2 and 5.
  std::string to_decimal_string() const {
    std::int64_t den = den_;
    std::int64_t scale_up = 1;
    while (den % 2 == 0) {
      den /= 2;
      scale_up *= 5;
    }
    while (den % 5 == 0) {
      den /= 5;
      scale_up *= 2;
    }
    if (den != 1) throw std::logic_error("rational is not a terminating decimal");
    std::int64_t num = num_ * scale_up;
    std::int64_t pow10 = den_ * scale_up;
    bool negative = num < 0;
    if (negative) num = -num;
    std::int64_t whole = num / pow10;
    std::int64_t frac = num % pow10;
    std::string out = (negative ? "-" : "") + std::to_string(whole);
    if (frac != 0) {
      std::string digits = std::to_string(frac);
      std::string pad(std::to_string(pow10).size() - 1 - digits.size(), '0');
      digits = pad + digits;
      while (!digits.empty() && digits.back() == '0') digits.pop_back();
      out += "." + digits;
    }
    return out;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_RATIONAL_HPP
