#include "doctest.h"

#include "unimix/error.hpp"
#include "unimix/linalg.hpp"

using namespace unimix;

TEST_CASE("determinant of small matrices") {
    CHECK(determinant(Matrix(0, 0)) == 1.0);

    Matrix a(2, 2);
    a(0, 0) = 1; a(0, 1) = 2;
    a(1, 0) = 3; a(1, 1) = 4;
    CHECK(determinant(a) == doctest::Approx(-2.0).epsilon(1e-15));

    // Needs a row swap: leading zero.
    Matrix b(3, 3);
    b(0, 1) = 1;
    b(1, 0) = 1;
    b(2, 2) = 5;
    CHECK(determinant(b) == doctest::Approx(-5.0).epsilon(1e-15));

    Matrix singular(2, 2, 1.0);
    CHECK(determinant(singular) == 0.0);
}

TEST_CASE("lu_solve") {
    Matrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    a(1, 0) = 1; a(1, 1) = 3;
    auto r = lu_solve(a, {3, 5});
    CHECK(r.x[0] == doctest::Approx(0.8));
    CHECK(r.x[1] == doctest::Approx(1.4));

    CHECK_THROWS_AS(lu_solve(Matrix(2, 2, 1.0), {1, 2}), SingularSystem);
    CHECK_THROWS_AS(lu_solve(Matrix(2, 2), {1, 2}), SingularSystem);
}

TEST_CASE("left_multiply and without_row") {
    Matrix a(2, 3);
    a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
    a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
    const std::vector<double> x{1.0, -1.0};
    const auto y = left_multiply(x, a);
    CHECK(y == std::vector<double>{-3, -3, -3});
    const Matrix r = a.without_row(0);
    CHECK(r.rows() == 1);
    CHECK(r(0, 2) == 6);
}
