#ifndef KISSING_POLYNOMIAL_HPP
#define KISSING_POLYNOMIAL_HPP

#include <initializer_list>
#include <vector>

namespace kissing {

// Dense real polynomial in the monomial basis, coefficient of t^k at index k.
// The coefficient sequence is never empty; the zero polynomial is {0}.
class Polynomial {
 public:
  Polynomial() : c_(1, 0.0) {}
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs)
      : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial constant(double v) { return Polynomial({v}); }

  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }
  double coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
  }

  // Horner evaluation.
  double operator()(double t) const;

  Polynomial derivative() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(double s) const;

 private:
  void trim();
  std::vector<double> c_;
};

}  // namespace kissing

#endif  // KISSING_POLYNOMIAL_HPP
