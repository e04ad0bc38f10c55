#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "smrt/quadrature.hpp"

namespace smrt {

using Exponent = std::array<int, 3>;

/// All exponents in `dim` variables with total degree <= degree (graded order).
std::vector<Exponent> monomials(int dim, int degree);

/// x^e for x in R^dim (unused coordinates must have zero exponent).
double monomial(const Exponent& e, const Point& x);

/// Real polynomial in up to three variables.
class Polynomial {
 public:
  explicit Polynomial(int dim = 3) : dim_(dim) {}

  int dim() const noexcept { return dim_; }
  int degree() const noexcept;
  const std::map<Exponent, double>& terms() const noexcept { return terms_; }

  double coefficient(const Exponent& e) const;
  void add(const Exponent& e, double c);

  double operator()(const Point& x) const;
  Polynomial laplacian() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator-(Polynomial a, const Polynomial& b);
  friend Polynomial operator*(double s, Polynomial a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const;
  std::string to_string() const;

 private:
  int dim_;
  std::map<Exponent, double> terms_;
};

}  // namespace smrt
