#include <doctest.h>

#include <vector>

#include "core/decomposition.hpp"
#include "core/rng.hpp"
#include "core/sampling.hpp"

using namespace nsb;

namespace {

Box noisy(const Rat& p) {
    return mix({{p, make_pr(0, 0, 0)}, {Rat(1 - p), maximally_mixed()}});
}

Rat l1(const Box& a, const Box& b) {
    Rat s = 0;
    for (int k = 0; k < 16; ++k) s += rat_abs(a.p[k] - b.p[k]);
    return s;
}

}  // namespace

TEST_CASE("pr plus noise splits back into pr plus noise") {
    PrDecomposition d = decompose_pr_fraction(noisy(rat(3, 10)));
    CHECK(d.p_pr == rat(3, 10));
    REQUIRE(d.pr_vertex.has_value());
    CHECK(d.pr_vertex->name() == "pr:000");
    CHECK(d.residual == maximally_mixed());
    CHECK(d.checks.all());
}

TEST_CASE("unbalanced two-pr mixture splits at half") {
    Box b = mix({{rat(3, 4), make_pr(0, 0, 0)}, {rat(1, 4), make_pr(0, 0, 1)}});
    PrDecomposition d = decompose_pr_fraction(b);
    CHECK(d.p_pr == rat(1, 2));
    REQUIRE(d.pr_vertex.has_value());
    CHECK(d.pr_vertex->name() == "pr:000");
    CHECK(d.residual == maximally_mixed());
    CHECK(d.checks.all());
    // Reconstruction identity.
    CHECK(mix({{d.p_pr, vertex_box(*d.pr_vertex)}, {Rat(1 - d.p_pr), d.residual}}) == b);
}

TEST_CASE("pure pr box is its own decomposition") {
    PrDecomposition d = decompose_pr_fraction(make_pr(0, 1, 0));
    CHECK(d.p_pr == 1);
    REQUIRE(d.pr_vertex.has_value());
    CHECK(d.pr_vertex->name() == "pr:010");
    CHECK(d.residual == maximally_mixed());
    CHECK(d.checks.all());
}

TEST_CASE("zero-fraction boxes keep themselves as residual") {
    for (const Box& b : {maximally_mixed(), make_deterministic(1, 0, 1, 0)}) {
        PrDecomposition d = decompose_pr_fraction(b);
        CHECK(d.p_pr == 0);
        CHECK_FALSE(d.pr_vertex.has_value());
        CHECK(d.residual == b);
        CHECK(d.checks.all());
    }
}

TEST_CASE("generic sampled boxes defeat every candidate vertex") {
    Rng rng(1);
    Box b = random_ns_box(rng);
    try {
        decompose_pr_fraction(b);
        FAIL("expected decomposition_error");
    } catch (const decomposition_error& e) {
        CHECK(e.p_pr == rat_parse("311641937497/24840205008703"));
        REQUIRE(e.diagnostics.size() == 8);
        for (std::size_t i = 1; i < e.diagnostics.size(); ++i)
            CHECK(e.diagnostics[i - 1].matched_chsh >= e.diagnostics[i].matched_chsh);
        for (const CandidateDiagnostic& c : e.diagnostics) {
            CHECK_FALSE(c.failed_check.empty());
            // The residual stays a distribution here; it is its nonlocality
            // that refuses to vanish.
            CHECK(c.residual_valid);
            REQUIRE(c.residual_nl.has_value());
            CHECK(*c.residual_nl > 0);
        }
    }
}

TEST_CASE("mixture decomposition certifies the residual over pair midpoints") {
    std::vector<Rat> w(8, rat(0));
    w[0] = rat(3, 4);
    w[1] = rat(1, 4);
    PrMixtureDecomposition d = decompose_pr_mixture(w);
    CHECK(d.base.p_pr == rat(1, 2));
    CHECK(d.base.residual == maximally_mixed());
    REQUIRE(d.midpoint_weights.size() == 28);
    Rat total = 0;
    Box rebuilt;
    int k = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j, ++k) {
            const Rat& wt = d.midpoint_weights[k];
            CHECK(wt >= 0);
            total += wt;
            Box mid = mix({{rat(1, 2), make_pr(i >> 2, (i >> 1) & 1, i & 1)},
                           {rat(1, 2), make_pr(j >> 2, (j >> 1) & 1, j & 1)}});
            for (int e = 0; e < 16; ++e) rebuilt.p[e] += wt * mid.p[e];
        }
    CHECK(total == 1);
    CHECK(rebuilt == d.base.residual);
}

TEST_CASE("random pr mixtures always decompose") {
    Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        std::vector<Rat> w = random_weights(rng, 8);
        PrMixtureDecomposition d = decompose_pr_mixture(w);
        CHECK(d.base.checks.all());
        Rat total = 0;
        for (const Rat& wt : d.midpoint_weights) {
            CHECK(wt >= 0);
            total += wt;
        }
        CHECK(total == 1);
    }
}

TEST_CASE("uniform pr mixture is pure noise") {
    std::vector<Rat> w(8, rat(1, 8));
    PrMixtureDecomposition d = decompose_pr_mixture(w);
    CHECK(d.base.p_pr == 0);
    CHECK(d.base.residual == maximally_mixed());
}

TEST_CASE("product boxes are found from the warm start") {
    Rng rng(5);
    Box b = random_product_box(rng);
    ModelSearchResult r = find_dim2_model(b);
    REQUIRE(r.status == ModelSearchResult::Status::Found);
    CHECK(r.residual_l1 <= DIM2_SUCCESS_L1);
    REQUIRE(r.model.has_value());
    CHECK(r.model->valid());
    CHECK(l1(box_from_model(*r.model), b) <= rat(1, 1000000000));
}

TEST_CASE("planted stochastic models are recovered") {
    for (int i = 0; i < 10; ++i) {
        Rng rng(500 + i);
        Dim2LocalModel planted = random_stochastic_dim2_model(rng);
        Box b = box_from_model(planted);
        ModelSearchResult r = find_dim2_model(b, 50, 500, 7);
        CHECK(r.status == ModelSearchResult::Status::Found);
        if (r.model) CHECK(l1(box_from_model(*r.model), b) <= rat(1, 10000000));
    }
}

TEST_CASE("degenerate deterministic mixtures are recovered") {
    Box b = mix({{rat(1, 2), make_deterministic(0, 0, 0, 0)},
                 {rat(1, 2), make_deterministic(1, 1, 1, 1)}});
    ModelSearchResult r = find_dim2_model(b);
    CHECK(r.status == ModelSearchResult::Status::Found);
}

TEST_CASE("pr box admits no two-branch model") {
    ModelSearchResult r = find_dim2_model(make_pr(0, 0, 0));
    CHECK(r.status == ModelSearchResult::Status::NotFound);
    CHECK(r.residual_l1 > 1.9);
    CHECK(r.restarts_used == DIM2_DEFAULT_RESTARTS);
}

TEST_CASE("nonlocal boxes are never found") {
    for (const Rat& p : {rat(1, 10), rat(1, 2), rat(9, 10)}) {
        ModelSearchResult r = find_dim2_model(noisy(p), 25, 500, 3);
        CHECK(r.status == ModelSearchResult::Status::NotFound);
    }
}

TEST_CASE("search is deterministic in its seed") {
    Rng rng(77);
    Box b = random_ns_box(rng);
    ModelSearchResult a = find_dim2_model(b, 20, 500, 9);
    ModelSearchResult c = find_dim2_model(b, 20, 500, 9);
    CHECK(a.status == c.status);
    CHECK(a.residual_l1 == c.residual_l1);
}

TEST_CASE("deterministic-response sampling always gives nl zero") {
    Prop1Report r = verify_prop1_sample(300, 1);
    CHECK(r.n == 300);
    CHECK(r.failures.empty());
    Prop1Report again = verify_prop1_sample(300, 1);
    CHECK(again.failures.empty());
}
