#include <doctest.h>

#include "core/measures.hpp"
#include "core/rng.hpp"
#include "core/sampling.hpp"

using namespace nsb;

TEST_CASE("random_weights sums to one") {
    Rng rng(11);
    for (int n : {1, 2, 8, 24}) {
        std::vector<Rat> w = random_weights(rng, n);
        REQUIRE(static_cast<int>(w.size()) == n);
        Rat s = 0;
        for (const Rat& q : w) {
            CHECK(q > 0);
            s += q;
        }
        CHECK(s == 1);
    }
}

TEST_CASE("random_ns_box is always a valid box") {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        Box b = random_ns_box(rng);
        CHECK(validate(b).ok());
        Rat v = nl(b).nl;
        CHECK(v >= 0);
        CHECK(v <= 4);
    }
}

TEST_CASE("random_product_box has zero covariance nonlocality") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        Box b = random_product_box(rng);
        CHECK(validate(b).ok());
        CHECK(nl(b).nl == 0);
    }
}

TEST_CASE("deterministic-response models have 0/1 tables") {
    Rng rng(14);
    for (int i = 0; i < 50; ++i) {
        Dim2LocalModel m = random_deterministic_dim2_model(rng);
        CHECK(m.valid());
        for (int l = 0; l < 2; ++l)
            for (int x = 0; x < 2; ++x) {
                CHECK((m.alice[l][x] == 0 || m.alice[l][x] == 1));
                CHECK((m.bob[l][x] == 0 || m.bob[l][x] == 1));
            }
        CHECK(validate(box_from_model(m)).ok());
    }
}

TEST_CASE("stochastic models are valid and build valid boxes") {
    Rng rng(15);
    for (int i = 0; i < 50; ++i) {
        Dim2LocalModel m = random_stochastic_dim2_model(rng);
        CHECK(m.valid());
        CHECK(validate(box_from_model(m)).ok());
    }
}

TEST_CASE("sampling is seed deterministic") {
    Rng a(99), b(99);
    CHECK(random_ns_box(a) == random_ns_box(b));
    CHECK(random_product_box(a) == random_product_box(b));
    Rng s0(99), s1(100);
    CHECK(random_ns_box(s0) != random_ns_box(s1));
}
