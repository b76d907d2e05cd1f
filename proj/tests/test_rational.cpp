#include <doctest.h>

#include "core/rational.hpp"

using namespace nsb;

TEST_CASE("rat canonicalizes") {
    CHECK(rat(3, 6) == rat(1, 2));
    CHECK(rat(-2, 4) == rat(-1, 2));
    CHECK(rat(2, -4) == rat(-1, 2));
    CHECK(rat(0, 5) == rat(0));
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("rat_parse fractions and integers") {
    CHECK(rat_parse("3/4") == rat(3, 4));
    CHECK(rat_parse("-3/6") == rat(-1, 2));
    CHECK(rat_parse("+5") == rat(5));
    CHECK(rat_parse("0") == rat(0));
    CHECK(rat_parse("-12") == rat(-12));
    CHECK(rat_parse("10/4") == rat(5, 2));
}

TEST_CASE("rat_parse terminating decimals are exact") {
    CHECK(rat_parse("0.25") == rat(1, 4));
    CHECK(rat_parse("-0.125") == rat(-1, 8));
    CHECK(rat_parse(".5") == rat(1, 2));
    CHECK(rat_parse("2.") == rat(2));
    CHECK(rat_parse("0.1") == rat(1, 10));
    CHECK(rat_parse("1.000000000001") == rat(1) + rat(1, 1000000000000L));
}

TEST_CASE("rat_parse rejects malformed literals") {
    CHECK_THROWS_AS(rat_parse(""), format_error);
    CHECK_THROWS_AS(rat_parse("abc"), format_error);
    CHECK_THROWS_AS(rat_parse("1/0"), format_error);
    CHECK_THROWS_AS(rat_parse("1.5/2"), format_error);
    CHECK_THROWS_AS(rat_parse("1/2/3"), format_error);
    CHECK_THROWS_AS(rat_parse("1e3"), format_error);
    CHECK_THROWS_AS(rat_parse("0x10"), format_error);
    CHECK_THROWS_AS(rat_parse("/3"), format_error);
    CHECK_THROWS_AS(rat_parse("."), format_error);
}

TEST_CASE("rat_str always prints a denominator") {
    CHECK(rat_str(rat(1, 2)) == "1/2");
    CHECK(rat_str(rat(0)) == "0/1");
    CHECK(rat_str(rat(4, 2)) == "2/1");
    CHECK(rat_str(rat(-3, 9)) == "-1/3");
}

TEST_CASE("rat_str round trips through rat_parse") {
    for (const Rat& q : {rat(0), rat(1), rat(-7, 3), rat(22, 7), rat(1, 1000000)})
        CHECK(rat_parse(rat_str(q)) == q);
}

TEST_CASE("dec12 renders 12 significant digits") {
    CHECK(dec12(0.5) == "0.5");
    CHECK(dec12(rat(1, 3)) == "0.333333333333");
    CHECK(dec12(rat(16, 5)) == "3.2");
    CHECK(dec12(0.0) == "0");
}

TEST_CASE("rat_abs and rat_d") {
    CHECK(rat_abs(rat(-3, 4)) == rat(3, 4));
    CHECK(rat_abs(rat(3, 4)) == rat(3, 4));
    CHECK(rat_d(rat(1, 4)) == 0.25);
}
