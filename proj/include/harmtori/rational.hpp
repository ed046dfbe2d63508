#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace harmtori {

// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);
Rational operator-(const Rational& a);
bool operator<(const Rational& a, const Rational& b);

// Parses "n/m" or "n"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

Rational abs(const Rational& a);

// floor(a / b) for b > 0.
std::int64_t floor_div(const Rational& a, const Rational& b);

// Canonical residue of a modulo |m| in [0, |m|); m must be nonzero.
Rational mod(const Rational& a, const Rational& m);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Solves a*y == -1 (mod n) with the representative of smallest |y|
// (ties go to the non-negative one). Requires gcd(a, n) = 1; y = 0 when n = 1.
std::int64_t congruence_min_abs(std::int64_t a, std::int64_t n);

// Closest continued-fraction convergent (or semiconvergent) to x with
// denominator <= max_den. Returns nullopt if |x - r| >= tol for the best r.
std::optional<Rational> best_rational(double x, std::int64_t max_den, double tol);

}  // namespace harmtori
