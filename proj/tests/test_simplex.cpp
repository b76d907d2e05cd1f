#include <doctest.h>

#include "core/simplex.hpp"

using namespace nsb;

namespace {

bool solves(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
            const std::vector<Rat>& x) {
    for (std::size_t i = 0; i < A.size(); ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < A[i].size(); ++j) s += A[i][j] * x[j];
        if (s != b[i]) return false;
    }
    for (const Rat& v : x)
        if (v < 0) return false;
    return true;
}

}  // namespace

TEST_CASE("single variable") {
    auto x = solve_feasible({{rat(1)}}, {rat(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK(solves({{rat(1)}}, {rat(1)}, *x));
}

TEST_CASE("underdetermined system picks a nonnegative solution") {
    std::vector<std::vector<Rat>> A{{rat(1), rat(1)}};
    std::vector<Rat> b{rat(1)};
    auto x = solve_feasible(A, b);
    REQUIRE(x.has_value());
    CHECK(solves(A, b, *x));
}

TEST_CASE("square system with unique solution") {
    std::vector<std::vector<Rat>> A{{rat(2), rat(1)}, {rat(1), rat(3)}};
    std::vector<Rat> b{rat(4), rat(7)};
    // Unique solution (1, 2).
    auto x = solve_feasible(A, b);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
}

TEST_CASE("inconsistent rows are infeasible") {
    std::vector<std::vector<Rat>> A{{rat(1), rat(1)}, {rat(1), rat(1)}};
    std::vector<Rat> b{rat(1), rat(2)};
    CHECK_FALSE(solve_feasible(A, b).has_value());
}

TEST_CASE("nonnegativity can make a solvable system infeasible") {
    // x0 - x1 = 1 with x >= 0 is fine; x0 + x1 = -1 is not.
    CHECK(solve_feasible({{rat(1), rat(-1)}}, {rat(1)}).has_value());
    CHECK_FALSE(solve_feasible({{rat(1), rat(1)}}, {rat(-1)}).has_value());
}

TEST_CASE("negative right-hand sides are handled") {
    // -x0 = -3 so x0 = 3.
    auto x = solve_feasible({{rat(-1)}}, {rat(-3)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 3);
}

TEST_CASE("redundant rows are fine") {
    std::vector<std::vector<Rat>> A{
        {rat(1), rat(1)}, {rat(2), rat(2)}, {rat(1), rat(0)}};
    std::vector<Rat> b{rat(1), rat(2), rat(1, 3)};
    auto x = solve_feasible(A, b);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == rat(1, 3));
    CHECK((*x)[1] == rat(2, 3));
}

TEST_CASE("exact rational pivoting, no drift") {
    // Hilbert-like rows stress exactness.
    std::vector<std::vector<Rat>> A{
        {rat(1), rat(1, 2), rat(1, 3)},
        {rat(1, 2), rat(1, 3), rat(1, 4)},
    };
    std::vector<Rat> b{rat(11, 6), rat(13, 12)};
    // x = (1, 1, 1) is a nonnegative solution.
    auto x = solve_feasible(A, b);
    REQUIRE(x.has_value());
    CHECK(solves(A, b, *x));
}
