#include "harmtori/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace harmtori {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  Rational r;
  r.num = narrow(n);
  r.den = narrow(d);
  return r;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational operator+(const Rational& a, const Rational& b) {
  return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}
Rational operator-(const Rational& a, const Rational& b) {
  return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
}
Rational operator*(const Rational& a, const Rational& b) {
  return make(i128(a.num) * b.num, i128(a.den) * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
  return make(i128(a.num) * b.den, i128(a.den) * b.num);
}
Rational operator-(const Rational& a) { return make(-i128(a.num), a.den); }
bool operator<(const Rational& a, const Rational& b) {
  return i128(a.num) * b.den < i128(b.num) * a.den;
}

Rational abs(const Rational& a) { return a.num < 0 ? -a : a; }

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return Rational(n, 1);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    const long long n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument("trailing characters");
    const long long d = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument("trailing characters");
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(n, d);
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed rational '" + text + "': " + e.what());
  }
}

std::int64_t floor_div(const Rational& a, const Rational& b) {
  const i128 n = i128(a.num) * b.den;
  const i128 d = i128(a.den) * b.num;
  if (d <= 0) throw std::domain_error("floor_div requires a positive divisor");
  i128 q = n / d;
  if ((n % d != 0) && (n < 0)) q -= 1;
  return narrow(q);
}

Rational mod(const Rational& a, const Rational& m) {
  const Rational am = abs(m);
  if (am.num == 0) throw std::domain_error("modulus must be nonzero");
  const std::int64_t q = floor_div(a, am);
  return a - Rational(q) * am;
}

std::int64_t congruence_min_abs(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw std::domain_error("congruence modulus must be positive");
  if (n == 1) return 0;
  // extended Euclid for a*s + n*t = 1
  i128 old_r = ((a % n) + n) % n, r = n;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("congruence has no solution: gcd(a, n) != 1");
  i128 y = ((-old_s) % n + n) % n;  // a*y == -1
  if (2 * y > n) y -= n;
  return narrow(y);
}

std::optional<Rational> best_rational(double x, std::int64_t max_den, double tol) {
  if (max_den < 1) throw std::domain_error("max_den must be at least 1");
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents p_k/q_k of the continued fraction, plus the best semiconvergent.
  long double h_prev = 1, h = std::floor(static_cast<long double>(x));
  long double k_prev = 0, kk = 1;
  long double rem = static_cast<long double>(x) - h;
  Rational best(static_cast<std::int64_t>(h), 1);
  double best_err = std::abs(x - best.value());
  for (int it = 0; it < 64 && rem > 1e-18L; ++it) {
    const long double inv = 1.0L / rem;
    const long double a = std::floor(inv);
    rem = inv - a;
    const long double hn = a * h + h_prev;
    const long double kn = a * kk + k_prev;
    if (kn > static_cast<long double>(max_den)) {
      const long double t = std::floor((static_cast<long double>(max_den) - k_prev) / kk);
      if (t >= 1) {
        const long double hs = t * h + h_prev;
        const long double ks = t * kk + k_prev;
        Rational cand(static_cast<std::int64_t>(hs), static_cast<std::int64_t>(ks));
        const double err = std::abs(x - cand.value());
        if (err < best_err) {
          best = cand;
          best_err = err;
        }
      }
      break;
    }
    h_prev = h;
    k_prev = kk;
    h = hn;
    kk = kn;
    Rational cand(static_cast<std::int64_t>(h), static_cast<std::int64_t>(kk));
    const double err = std::abs(x - cand.value());
    if (err < best_err) {
      best = cand;
      best_err = err;
    }
  }
  if (best_err >= tol) return std::nullopt;
  return best;
}

}  // namespace harmtori
