#include "smrt/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smrt/error.hpp"

namespace smrt {

std::vector<Exponent> monomials(int dim, int degree) {
  if (dim < 1 || dim > 3) throw Error("monomials: dimension must be 1, 2 or 3");
  std::vector<Exponent> out;
  for (int d = 0; d <= degree; ++d) {
    for (int a = d; a >= 0; --a) {
      if (dim == 1) {
        if (a == d) out.push_back({a, 0, 0});
        continue;
      }
      for (int b = d - a; b >= 0; --b) {
        const int c = d - a - b;
        if (dim == 2 && c != 0) continue;
        out.push_back({a, b, c});
      }
    }
  }
  return out;
}

double monomial(const Exponent& e, const Point& x) {
  double v = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < e[i]; ++k) v *= x[i];
  return v;
}

int Polynomial::degree() const noexcept {
  int d = -1;
  for (const auto& [e, c] : terms_)
    if (c != 0.0) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

double Polynomial::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add(const Exponent& e, double c) {
  for (int i = dim_; i < 3; ++i)
    if (e[i] != 0) throw Error("Polynomial::add: exponent uses a variable beyond the dimension");
  terms_[e] += c;
}

double Polynomial::operator()(const Point& x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * monomial(e, x);
  return s;
}

Polynomial Polynomial::laplacian() const {
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (e[i] < 2) continue;
      Exponent f = e;
      f[i] -= 2;
      out.add(f, c * e[i] * (e[i] - 1));
    }
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
  for (const auto& [e, c] : b.terms_) a.add(e, -c);
  return a;
}

Polynomial operator*(double s, Polynomial a) {
  a *= s;
  return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.dim_, b.dim_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return out;
}

double Polynomial::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * c;
  return std::sqrt(s);
}

std::string Polynomial::to_string() const {
  static const char* names[3] = {"x", "y", "z"};
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (c == 0.0) continue;
    os << (first ? "" : " + ") << c;
    for (int i = 0; i < 3; ++i)
      if (e[i] > 0) os << "*" << names[i] << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace smrt
