#include <doctest.h>

#include "smrt/error.hpp"
#include "smrt/polynomial.hpp"

using namespace smrt;

TEST_SUITE("polynomial") {

TEST_CASE("monomial enumeration") {
  CHECK(monomials(2, 4).size() == 15);
  CHECK(monomials(3, 4).size() == 35);
  const auto m = monomials(3, 2);
  CHECK(m.front() == Exponent{0, 0, 0});
  for (std::size_t i = 1; i < m.size(); ++i)
    CHECK(m[i - 1][0] + m[i - 1][1] + m[i - 1][2] <= m[i][0] + m[i][1] + m[i][2]);
  CHECK(monomial({2, 1, 0}, {3.0, 2.0, 5.0}) == 18.0);
  CHECK_THROWS_AS(monomials(4, 1), Error);
}

TEST_CASE("arithmetic and Laplacian") {
  Polynomial p(2);
  p.add({2, 1, 0}, 1.0);   // x^2 y
  p.add({0, 3, 0}, -2.0);  // -2 y^3
  CHECK(p.degree() == 3);
  const Polynomial lap = p.laplacian();  // 2y - 12y
  CHECK(lap.coefficient({0, 1, 0}) == -10.0);
  CHECK(lap.terms().size() == 1);
  Polynomial q(2);
  q.add({1, 0, 0}, 1.0);
  const Polynomial r = p * q;
  CHECK(r.coefficient({3, 1, 0}) == 1.0);
  CHECK(r({2.0, 1.0, 0.0}) == doctest::Approx(2.0 * (4.0 - 2.0)));
  const Polynomial z = p - p;
  CHECK(z.coefficient_norm() == 0.0);
  CHECK((2.0 * q).coefficient({1, 0, 0}) == 2.0);
  CHECK_THROWS_AS(q.add({0, 0, 1}, 1.0), Error);
  CHECK(!p.to_string().empty());
}

TEST_CASE("Laplacian of a 3D polynomial") {
  Polynomial p(3);
  p.add({2, 0, 2}, 3.0);  // 3 x^2 z^2 -> 6 z^2 + 6 x^2
  const auto l = p.laplacian();
  CHECK(l.coefficient({0, 0, 2}) == 6.0);
  CHECK(l.coefficient({2, 0, 0}) == 6.0);
}

}
