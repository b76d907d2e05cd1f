#include "core/box.hpp"

namespace nsb {

std::string VertexId::name() const {
    std::string s = kind == Kind::Deterministic ? "det:" : "pr:";
    int n = kind == Kind::Deterministic ? 4 : 3;
    for (int i = 0; i < n; ++i) s += static_cast<char>('0' + labels[i]);
    return s;
}

Box make_deterministic(int alpha, int beta, int gamma, int eps) {
    Box b;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int a = (alpha & x) ^ beta;
            int bb = (gamma & y) ^ eps;
            b.at(x, y, a, bb) = 1;
        }
    return b;
}

Box make_pr(int alpha, int beta, int gamma) {
    Box b;
    Rat half = rat(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    if ((a ^ bb) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma))
                        b.at(x, y, a, bb) = half;
    return b;
}

Box maximally_mixed() {
    Box b;
    for (auto& v : b.p) v = rat(1, 4);
    return b;
}

const std::vector<std::pair<VertexId, Box>>& vertices() {
    static const std::vector<std::pair<VertexId, Box>> all = [] {
        std::vector<std::pair<VertexId, Box>> v;
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be)
                for (int ga = 0; ga < 2; ++ga)
                    for (int ep = 0; ep < 2; ++ep)
                        v.push_back({VertexId{VertexId::Kind::Deterministic, {al, be, ga, ep}},
                                     make_deterministic(al, be, ga, ep)});
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be)
                for (int ga = 0; ga < 2; ++ga)
                    v.push_back({VertexId{VertexId::Kind::PR, {al, be, ga, 0}},
                                 make_pr(al, be, ga)});
        return v;
    }();
    return all;
}

Box vertex_box(const VertexId& id) {
    if (id.kind == VertexId::Kind::Deterministic)
        return make_deterministic(id.labels[0], id.labels[1], id.labels[2], id.labels[3]);
    return make_pr(id.labels[0], id.labels[1], id.labels[2]);
}

Box mix(const Mixture& m) {
    Rat total = 0;
    for (const auto& [w, _] : m) {
        if (w < 0) throw mixture_error("mixture weight " + rat_str(w) + " is negative");
        total += w;
    }
    if (total != 1)
        throw mixture_error("mixture weights sum to " + rat_str(total) + ", expected 1/1");
    Box out;
    for (const auto& [w, b] : m)
        for (int i = 0; i < 16; ++i) out.p[i] += w * b.p[i];
    return out;
}

ValidationReport validate(const Box& b) {
    ValidationReport r;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    if (b.at(x, y, a, bb) < 0) {
                        r.nonnegative = false;
                        r.violations.push_back(
                            "negative entry p[" + std::to_string(x) + "][" + std::to_string(y) +
                            "][" + std::to_string(a) + "][" + std::to_string(bb) + "] = " +
                            rat_str(b.at(x, y, a, bb)));
                    }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Rat s = 0;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) s += b.at(x, y, a, bb);
            if (s != 1) {
                r.normalized = false;
                r.violations.push_back("sum over outputs at inputs (" + std::to_string(x) + "," +
                                       std::to_string(y) + ") is " + rat_str(s));
            }
        }
    // Bob's marginal must not depend on Alice's input, and vice versa.
    for (int y = 0; y < 2; ++y)
        for (int bb = 0; bb < 2; ++bb) {
            Rat m0 = b.at(0, y, 0, bb) + b.at(0, y, 1, bb);
            Rat m1 = b.at(1, y, 0, bb) + b.at(1, y, 1, bb);
            if (m0 != m1) {
                r.nonsignaling_to_bob = false;
                r.violations.push_back("P(b=" + std::to_string(bb) + "|y=" + std::to_string(y) +
                                       ") depends on x: " + rat_str(m0) + " vs " + rat_str(m1));
            }
        }
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            Rat m0 = b.at(x, 0, a, 0) + b.at(x, 0, a, 1);
            Rat m1 = b.at(x, 1, a, 0) + b.at(x, 1, a, 1);
            if (m0 != m1) {
                r.nonsignaling_to_alice = false;
                r.violations.push_back("P(a=" + std::to_string(a) + "|x=" + std::to_string(x) +
                                       ") depends on y: " + rat_str(m0) + " vs " + rat_str(m1));
            }
        }
    return r;
}

Box apply_relabeling(const Relabeling& g, const Box& b) {
    Box c;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    c.at(x, y, a, bb) =
                        b.at(x ^ g.swap_a, y ^ g.swap_b, a ^ g.flip_a[x], bb ^ g.flip_b[y]);
    if (!g.party_swap) return c;
    Box s;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) s.at(x, y, a, bb) = c.at(y, x, bb, a);
    return s;
}

namespace {

// Swap the Alice-side and Bob-side components of a per-party element.
Relabeling swapped_parties(const Relabeling& g) {
    Relabeling s = g;
    std::swap(s.swap_a, s.swap_b);
    std::swap(s.flip_a, s.flip_b);
    return s;
}

// Per-party composition, g1 first then g2. Output flips are indexed by the
// post-swap input, so g1's flip index shifts by g2's input swap.
Relabeling compose_per_party(const Relabeling& g2, const Relabeling& g1) {
    Relabeling c;
    c.swap_a = g1.swap_a ^ g2.swap_a;
    c.swap_b = g1.swap_b ^ g2.swap_b;
    for (int x = 0; x < 2; ++x) {
        c.flip_a[x] = g2.flip_a[x] ^ g1.flip_a[x ^ g2.swap_a];
        c.flip_b[x] = g2.flip_b[x] ^ g1.flip_b[x ^ g2.swap_b];
    }
    return c;
}

}  // namespace

Relabeling compose(const Relabeling& g2, const Relabeling& g1) {
    // With the party exchange applied last in each factor, pulling g1's
    // exchange through g2's per-party part swaps that part's components.
    Relabeling h2 = g1.party_swap ? swapped_parties(g2) : g2;
    h2.party_swap = 0;
    Relabeling h1 = g1;
    h1.party_swap = 0;
    Relabeling c = compose_per_party(h2, h1);
    c.party_swap = g1.party_swap ^ g2.party_swap;
    return c;
}

Relabeling inverse(const Relabeling& g) {
    Relabeling pp;  // inverse of the per-party part
    pp.swap_a = g.swap_a;
    pp.swap_b = g.swap_b;
    for (int x = 0; x < 2; ++x) {
        pp.flip_a[x] = g.flip_a[x ^ g.swap_a];
        pp.flip_b[x] = g.flip_b[x ^ g.swap_b];
    }
    if (!g.party_swap) return pp;
    Relabeling inv = swapped_parties(pp);
    inv.party_swap = 1;
    return inv;
}

std::vector<Relabeling> enumerate_relabelings(bool include_party_swap) {
    std::vector<Relabeling> out;
    for (int ps = 0; ps < (include_party_swap ? 2 : 1); ++ps)
        for (int sa = 0; sa < 2; ++sa)
            for (int ua0 = 0; ua0 < 2; ++ua0)
                for (int ua1 = 0; ua1 < 2; ++ua1)
                    for (int sb = 0; sb < 2; ++sb)
                        for (int vb0 = 0; vb0 < 2; ++vb0)
                            for (int vb1 = 0; vb1 < 2; ++vb1)
                                out.push_back(Relabeling{sa, {ua0, ua1}, sb, {vb0, vb1}, ps});
    return out;
}

}  // namespace nsb
