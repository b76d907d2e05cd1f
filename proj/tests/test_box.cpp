#include <doctest.h>

#include <set>
#include <string>

#include "core/box.hpp"

using namespace nsb;

namespace {

std::string key(const Box& b) {
    std::string s;
    for (const Rat& q : b.p) s += rat_str(q) + ";";
    return s;
}

// Fixed nontrivial box with nonzero marginals, used to exercise the
// relabeling group.
Box probe_box() {
    return mix({{rat(1, 3), make_pr(0, 0, 0)}, {rat(2, 3), make_deterministic(0, 1, 1, 0)}});
}

}  // namespace

TEST_CASE("index layout") {
    CHECK(Box::idx(0, 0, 0, 0) == 0);
    CHECK(Box::idx(0, 0, 0, 1) == 1);
    CHECK(Box::idx(1, 1, 1, 1) == 15);
    CHECK(Box::idx(1, 0, 1, 0) == 10);
}

TEST_CASE("deterministic boxes") {
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int eps = 0; eps < 2; ++eps) {
                    Box d = make_deterministic(alpha, beta, gamma, eps);
                    CHECK(validate(d).ok());
                    for (int x = 0; x < 2; ++x)
                        for (int y = 0; y < 2; ++y)
                            for (int a = 0; a < 2; ++a)
                                for (int b = 0; b < 2; ++b) {
                                    bool hit =
                                        a == ((alpha & x) ^ beta) && b == ((gamma & y) ^ eps);
                                    CHECK(d.at(x, y, a, b) == (hit ? rat(1) : rat(0)));
                                }
                }
}

TEST_CASE("pr boxes") {
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) {
                Box p = make_pr(alpha, beta, gamma);
                CHECK(validate(p).ok());
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int a = 0; a < 2; ++a)
                            for (int b = 0; b < 2; ++b) {
                                bool half = ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma));
                                CHECK(p.at(x, y, a, b) == (half ? rat(1, 2) : rat(0)));
                            }
            }
}

TEST_CASE("maximally mixed box") {
    Box n = maximally_mixed();
    for (const Rat& q : n.p) CHECK(q == rat(1, 4));
    CHECK(validate(n).ok());
}

TEST_CASE("canonical vertex list") {
    const auto& vs = vertices();
    REQUIRE(vs.size() == 24);
    CHECK(vs[0].first.name() == "det:0000");
    CHECK(vs[15].first.name() == "det:1111");
    CHECK(vs[16].first.name() == "pr:000");
    CHECK(vs[23].first.name() == "pr:111");
    CHECK(vs[5].second == make_deterministic(0, 1, 0, 1));
    CHECK(vs[18].second == make_pr(0, 1, 0));
    std::set<std::string> keys;
    for (const auto& [id, b] : vs) {
        CHECK(validate(b).ok());
        keys.insert(key(b));
        CHECK(vertex_box(id) == b);
    }
    CHECK(keys.size() == 24);
}

TEST_CASE("mix blends entrywise") {
    Box m = mix({{rat(3, 4), make_pr(0, 0, 0)}, {rat(1, 4), make_pr(0, 0, 1)}});
    CHECK(m.at(0, 0, 0, 0) == rat(3, 8));
    CHECK(m.at(0, 0, 0, 1) == rat(1, 8));
    CHECK(validate(m).ok());

    // Same-label midpoint of the two gamma values is pure noise.
    Box mid = mix({{rat(1, 2), make_pr(0, 0, 0)}, {rat(1, 2), make_pr(0, 0, 1)}});
    CHECK(mid == maximally_mixed());
}

TEST_CASE("mix rejects bad weights") {
    CHECK_THROWS_AS(mix({{rat(1, 2), maximally_mixed()}, {rat(1, 4), maximally_mixed()}}),
                    mixture_error);
    CHECK_THROWS_AS(mix({{rat(-1, 2), maximally_mixed()}, {rat(3, 2), maximally_mixed()}}),
                    mixture_error);
    CHECK_THROWS_AS(mix({}), mixture_error);
}

TEST_CASE("validate flags each failure mode") {
    Box ok = maximally_mixed();
    CHECK(validate(ok).ok());
    CHECK(validate(ok).violations.empty());

    Box neg = maximally_mixed();
    neg.at(0, 0, 0, 0) = rat(-1, 4);
    ValidationReport r = validate(neg);
    CHECK_FALSE(r.nonnegative);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.violations.empty());

    Box unnorm = maximally_mixed();
    unnorm.at(0, 0, 0, 0) = rat(1, 2);
    r = validate(unnorm);
    CHECK_FALSE(r.normalized);

    // Bob's outcome reveals Alice's input.
    Box sig;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) sig.at(x, y, 0, x) = rat(1);
    r = validate(sig);
    CHECK_FALSE(r.nonsignaling_to_bob);
    CHECK(r.nonsignaling_to_alice);

    Box sig2;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) sig2.at(x, y, y, 0) = rat(1);
    r = validate(sig2);
    CHECK_FALSE(r.nonsignaling_to_alice);
    CHECK(r.nonsignaling_to_bob);
}

TEST_CASE("input swap and output flips act as expected") {
    Relabeling swap_x;
    swap_x.swap_a = 1;
    CHECK(apply_relabeling(swap_x, make_deterministic(1, 0, 0, 0)) ==
          make_deterministic(1, 1, 0, 0));

    Relabeling flip_all_a;
    flip_all_a.flip_a = {1, 1};
    CHECK(apply_relabeling(flip_all_a, make_pr(0, 0, 0)) == make_pr(0, 0, 1));

    Relabeling swap_parties;
    swap_parties.party_swap = 1;
    Box b = probe_box();
    Box s = apply_relabeling(swap_parties, b);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) CHECK(s.at(x, y, a, bb) == b.at(y, x, bb, a));
}

TEST_CASE("relabelings preserve validity") {
    Box b = probe_box();
    for (const Relabeling& g : enumerate_relabelings(true)) CHECK(validate(apply_relabeling(g, b)).ok());
}

TEST_CASE("enumerate_relabelings sizes and uniqueness") {
    auto local = enumerate_relabelings(false);
    auto full = enumerate_relabelings(true);
    CHECK(local.size() == 64);
    CHECK(full.size() == 128);
    // Distinct as maps on the polytope: the joint action on all 24 vertices
    // separates every pair. A single probe box cannot show this; a mixture
    // can have a hidden symmetry (party swap composed with local flips) that
    // halves its orbit.
    std::set<std::string> actions;
    for (const Relabeling& g : full) {
        std::string sig;
        for (const auto& [id, v] : vertices()) sig += key(apply_relabeling(g, v)) + "|";
        actions.insert(sig);
    }
    CHECK(actions.size() == 128);
    // probe_box is such a box: its stabilizer has order 2, so its orbit has
    // exactly 64 elements.
    std::set<std::string> images;
    for (const Relabeling& g : full) images.insert(key(apply_relabeling(g, probe_box())));
    CHECK(images.size() == 64);
}

TEST_CASE("compose matches sequential application") {
    Box b = probe_box();
    auto full = enumerate_relabelings(true);
    // Subsampled pairs; the stride is coprime to the group size.
    for (std::size_t i = 0; i < full.size(); i += 7)
        for (std::size_t j = 0; j < full.size(); j += 11) {
            const Relabeling& g1 = full[i];
            const Relabeling& g2 = full[j];
            CHECK(apply_relabeling(compose(g2, g1), b) ==
                  apply_relabeling(g2, apply_relabeling(g1, b)));
        }
}

TEST_CASE("inverse undoes the action") {
    Box b = probe_box();
    for (const Relabeling& g : enumerate_relabelings(true)) {
        CHECK(apply_relabeling(inverse(g), apply_relabeling(g, b)) == b);
        CHECK(apply_relabeling(compose(inverse(g), g), b) == b);
    }
}

TEST_CASE("local relabelings act transitively on the pr vertices") {
    std::set<std::string> orbit;
    for (const Relabeling& g : enumerate_relabelings(false))
        orbit.insert(key(apply_relabeling(g, make_pr(0, 0, 0))));
    std::set<std::string> prs;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) prs.insert(key(make_pr(alpha, beta, gamma)));
    CHECK(orbit == prs);
}
