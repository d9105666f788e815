#include "doctest.h"

#include <random>
#include <stdexcept>

#include "sq2/f2.hpp"

using namespace sq2;

namespace {

F2Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    F2Matrix m(rows, cols);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng)) m.set(i, j, true);
    return m;
}

}  // namespace

TEST_CASE("vector xor and self-cancellation") {
    F2Vector v(70);
    v.set(3, true);
    v.set(69, true);
    F2Vector w = v;
    w ^= v;
    CHECK(w.is_zero());
    CHECK(v.popcount() == 2);
    CHECK(v.first_set() == 3);
}

TEST_CASE("rref identity and zero") {
    auto id = F2Matrix::identity(3);
    auto [m, pivots] = id.rref();
    CHECK(m == id);
    CHECK(pivots == std::vector<std::size_t>{0, 1, 2});

    F2Matrix z(2, 4);
    auto rz = z.rref();
    CHECK(rz.mat == z);
    CHECK(rz.pivots.empty());
}

TEST_CASE("rref of the all-ones 2x2 matrix") {
    F2Matrix m(2, 2, {1, 1, 1, 1});
    auto [r, pivots] = m.rref();
    CHECK(r == F2Matrix(2, 2, {1, 1, 0, 0}));
    CHECK(pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref is idempotent and pivots strictly increase") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_matrix(rng, 10, 13);
        auto r1 = m.rref();
        auto r2 = r1.mat.rref();
        CHECK(r1.mat == r2.mat);
        CHECK(r1.pivots == r2.pivots);
        for (std::size_t i = 1; i < r1.pivots.size(); ++i)
            CHECK(r1.pivots[i - 1] < r1.pivots[i]);
    }
}

TEST_CASE("kernel basis examples") {
    CHECK(F2Matrix::identity(4).kernel_basis().empty());
    CHECK(F2Matrix(2, 3).kernel_basis().size() == 3);

    F2Matrix m(2, 3, {1, 1, 0, 0, 1, 1});
    auto ker = m.kernel_basis();
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == F2Vector(3, {1, 1, 1}));
}

TEST_CASE("rank plus kernel dimension equals column count") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 64;
        auto m = random_matrix(rng, rows, cols);
        auto ker = m.kernel_basis();
        CHECK(m.rank() + ker.size() == cols);
        for (const auto& v : ker) CHECK(m.mul(v).is_zero());
    }
}

TEST_CASE("solve examples") {
    auto id = F2Matrix::identity(3);
    F2Vector b(3, {1, 0, 1});
    CHECK(id.solve(b) == b);

    F2Matrix z(2, 2);
    CHECK(!z.solve(F2Vector(2, {1, 0})).has_value());

    F2Matrix m(2, 2, {1, 1, 0, 1});
    auto x = m.solve(F2Vector(2, {0, 1}));
    REQUIRE(x.has_value());
    CHECK(*x == F2Vector(2, {1, 1}));

    CHECK_THROWS_AS((void)m.solve(F2Vector(3)), std::invalid_argument);
}

TEST_CASE("solve round-trips whenever a solution is returned") {
    std::mt19937 rng(13);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 20;
        auto m = random_matrix(rng, rows, cols);
        F2Vector b(rows);
        for (std::size_t i = 0; i < rows; ++i)
            if (coin(rng)) b.set(i, true);
        auto x = m.solve(b);
        if (x) CHECK(m.mul(*x) == b);
    }
}

TEST_CASE("matrix product against transpose identity") {
    std::mt19937 rng(17);
    auto a = random_matrix(rng, 5, 7);
    auto b = random_matrix(rng, 7, 4);
    CHECK(a.mul(b).transpose() == b.transpose().mul(a.transpose()));
}

TEST_CASE("span tracks coordinates of inserted generators") {
    F2Span span(4);
    F2Vector a(4, {1, 1, 0, 0}), b(4, {0, 1, 1, 0}), c(4, {1, 0, 1, 0});
    CHECK(span.insert(a));
    CHECK(span.insert(b));
    CHECK(!span.insert(c));  // a + b
    CHECK(span.rank() == 2);
    auto coords = span.coordinates(c);
    REQUIRE(coords.has_value());
    CHECK(*coords == F2Vector(2, {1, 1}));
    CHECK(!span.coordinates(F2Vector(4, {0, 0, 0, 1})).has_value());
}
