#include "core/sampling.hpp"

namespace nsb {

namespace {

// Uniform rational in [0, 1] on the 1/SAMPLE_DENOM grid.
Rat unit_rat(Rng& rng) {
    return rat(static_cast<long>(rng.next_below(SAMPLE_DENOM + 1)), SAMPLE_DENOM);
}

}  // namespace

std::vector<Rat> random_weights(Rng& rng, int n) {
    // Positive integers normalized by their exact sum; a lattice stand-in for
    // a Dirichlet draw that keeps every weight rational.
    std::vector<long> raw(n);
    long total = 0;
    for (auto& v : raw) {
        v = 1 + static_cast<long>(rng.next_below(SAMPLE_DENOM));
        total += v;
    }
    std::vector<Rat> w(n);
    for (int i = 0; i < n; ++i) w[i] = rat(raw[i], total);
    return w;
}

Box random_ns_box(Rng& rng) {
    const auto& verts = vertices();
    std::vector<Rat> w = random_weights(rng, static_cast<int>(verts.size()));
    Box out;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int k = 0; k < 16; ++k) out.p[k] += w[i] * verts[i].second.p[k];
    return out;
}

Box random_product_box(Rng& rng) {
    std::array<Rat, 2> pa{unit_rat(rng), unit_rat(rng)};  // P(a=0|x)
    std::array<Rat, 2> pb{unit_rat(rng), unit_rat(rng)};  // P(b=0|y)
    Box out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Rat fa = a == 0 ? pa[x] : Rat(1 - pa[x]);
                    Rat fb = b == 0 ? pb[y] : Rat(1 - pb[y]);
                    out.at(x, y, a, b) = fa * fb;
                }
    return out;
}

Dim2LocalModel random_deterministic_dim2_model(Rng& rng) {
    Dim2LocalModel m;
    m.weight[0] = unit_rat(rng);
    m.weight[1] = 1 - m.weight[0];
    for (int l = 0; l < 2; ++l)
        for (int x = 0; x < 2; ++x) {
            m.alice[l][x] = static_cast<long>(rng.next_bit());
            m.bob[l][x] = static_cast<long>(rng.next_bit());
        }
    return m;
}

Dim2LocalModel random_stochastic_dim2_model(Rng& rng) {
    Dim2LocalModel m;
    m.weight[0] = unit_rat(rng);
    m.weight[1] = 1 - m.weight[0];
    for (int l = 0; l < 2; ++l)
        for (int x = 0; x < 2; ++x) {
            m.alice[l][x] = unit_rat(rng);
            m.bob[l][x] = unit_rat(rng);
        }
    return m;
}

}  // namespace nsb
