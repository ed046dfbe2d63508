#pragma once

#include <stdexcept>

namespace harmtori {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Throws DomainError unless 0 < k < 1.
void require_modulus(double k);

double complementary_modulus(double k);

// Complete integrals of the first and second kind by the AGM iteration.
double complete_K(double k);
double complete_E(double k);

struct CompleteIntegrals {
  double K, E;    // modulus k
  double Kc, Ec;  // complementary modulus
};
CompleteIntegrals complete_integrals(double k);

// K'E + KE' - KK' - pi/2.
double legendre_defect(double k);

// w(iu) = sqrt((1+u^2)(1+k^2u^2)).
double w_imag(double u, double k);

// Im F(ix; k): integral of dt / sqrt((1+t^2)(1+k^2 t^2)) over [0, x].
double incomplete_F_imag(double x, double k);

// Im(E(ix; k) - k i x), the regularized second-kind integral on the imaginary axis.
double incomplete_E_reg_imag(double x, double k);

// Lifts of the two integrals above to the universal cover of the imaginary axis
// with infinity, parameterized by x = tan(angle / 2).
double lifted_F(double angle, double k);
double lifted_E(double angle, double k);

// Winding index of a lifted angle: the W with -pi < angle - 2 pi W < pi.
// at_infinity is set when the angle lies within eps of an odd multiple of pi,
// where the finite chart value tan(angle/2) is unusable.
struct Winding {
  long index;
  bool at_infinity;
};
Winding wind(double angle, double eps = 1e-9);

// Chart value of a lifted angle: tan(angle/2), or cot(angle/2) in the infinity chart.
struct ChartValue {
  double value;
  bool infinity_chart;
};
ChartValue chart_value(double angle);

}  // namespace harmtori
