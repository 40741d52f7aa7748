#include "indopt/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace indopt;

TEST_CASE("root finder locates sqrt(2)") {
    const double r = num::brent_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("root finder accepts endpoints that are roots") {
    CHECK(num::brent_root([](double x) { return x; }, 0.0, 1.0) == 0.0);
    CHECK(num::brent_root([](double x) { return x - 1.0; }, 0.0, 1.0) == 1.0);
}

TEST_CASE("root finder rejects a non-bracketing interval") {
    CHECK_THROWS_AS(num::brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("golden-section minimum and maximum") {
    const double xmin = num::golden_min([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
    CHECK(xmin == doctest::Approx(0.3).epsilon(1e-7));

    const double xmax = num::golden_max([](double x) { return std::sin(x); }, 0.0, 3.0, 1e-10);
    CHECK(xmax == doctest::Approx(std::asin(1.0)).epsilon(1e-7));
}

TEST_CASE("adaptive quadrature") {
    const double third = num::adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(third == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const double one = num::adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    CHECK(one == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));

    CHECK(num::adaptive_simpson([](double) { return 5.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("central difference derivative") {
    const double d = num::central_diff([](double x) { return x * x * x; }, 2.0, 1e-6);
    CHECK(d == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("matrix rank") {
    CHECK(num::matrix_rank({{1.0, 0.0}, {0.0, 1.0}}) == 2);
    CHECK(num::matrix_rank({{1.0, 2.0}, {2.0, 4.0}}) == 1);
    CHECK(num::matrix_rank({{0.0, 0.0}, {0.0, 0.0}}) == 0);
    CHECK(num::matrix_rank({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, {7.0, 8.0, 9.0}}) == 2);
    CHECK(num::matrix_rank({{1.0, 2.0, 3.0}}) == 1);
}
