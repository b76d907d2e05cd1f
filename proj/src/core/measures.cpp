#include "core/measures.hpp"

#include <algorithm>

#include "core/simplex.hpp"

namespace nsb {

CorrelatorSet correlators(const Box& b) {
    CorrelatorSet c;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Rat e = 0;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) {
                    Rat v = b.at(x, y, a, bb);
                    e += ((a ^ bb) ? Rat(-v) : v);
                }
            c.e[x][y] = e;
        }
    for (int x = 0; x < 2; ++x) {
        Rat s = 0;
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) {
                    Rat v = b.at(x, y, a, bb);
                    s += (a ? Rat(-v) : v);
                }
        c.ma[x] = s / 2;
    }
    for (int y = 0; y < 2; ++y) {
        Rat s = 0;
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) {
                    Rat v = b.at(x, y, a, bb);
                    s += (bb ? Rat(-v) : v);
                }
        c.mb[y] = s / 2;
    }
    return c;
}

namespace {

int sign_pow(int bit) { return bit ? -1 : 1; }

Rat chsh_from(const CorrelatorSet& c, int alpha, int beta, int gamma) {
    return Rat(sign_pow(gamma)) * c.e[0][0] + Rat(sign_pow(beta ^ gamma)) * c.e[0][1] +
           Rat(sign_pow(alpha ^ gamma)) * c.e[1][0] +
           Rat(sign_pow(alpha ^ beta ^ gamma ^ 1)) * c.e[1][1];
}

Rat cov_chsh_from(const CorrelatorSet& c, int i) {
    int alpha = (i >> 1) & 1, beta = i & 1;
    std::array<std::array<Rat, 2>, 2> cov;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) cov[x][y] = c.e[x][y] - c.ma[x] * c.mb[y];
    Rat v = cov[0][0] + Rat(sign_pow(beta)) * cov[0][1] + Rat(sign_pow(alpha)) * cov[1][0] +
            Rat(sign_pow(alpha ^ beta ^ 1)) * cov[1][1];
    return rat_abs(v);
}

}  // namespace

Rat chsh(const Box& b, int alpha, int beta, int gamma) {
    return chsh_from(correlators(b), alpha, beta, gamma);
}

Rat cov_chsh(const Box& b, int i) { return cov_chsh_from(correlators(b), i); }

NlReport nl(const Box& b) {
    NlReport r;
    r.correlators = correlators(b);
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                r.chsh[4 * alpha + 2 * beta + gamma] =
                    chsh_from(r.correlators, alpha, beta, gamma);
    for (int i = 0; i < 4; ++i) r.covchsh[i] = cov_chsh_from(r.correlators, i);
    const auto& cb = r.covchsh;
    // The three ways to split the four covariance-CHSH values into pairs.
    r.gamma[0] = rat_abs(rat_abs(cb[0] - cb[1]) - rat_abs(cb[2] - cb[3]));
    r.gamma[1] = rat_abs(rat_abs(cb[0] - cb[2]) - rat_abs(cb[1] - cb[3]));
    r.gamma[2] = rat_abs(rat_abs(cb[0] - cb[3]) - rat_abs(cb[1] - cb[2]));
    r.nl = std::min({r.gamma[0], r.gamma[1], r.gamma[2]});
    return r;
}

LocalityCertificate is_local_chsh(const Box& b) {
    CorrelatorSet c = correlators(b);
    LocalityCertificate cert;
    ChshWitness best;
    Rat best_abs = -1;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) {
                Rat v = chsh_from(c, alpha, beta, gamma);
                if (rat_abs(v) > best_abs) {
                    best_abs = rat_abs(v);
                    best = ChshWitness{alpha, beta, gamma, v};
                }
            }
    cert.is_local = best_abs <= 2;
    if (!cert.is_local) cert.violation = best;
    return cert;
}

namespace {

// Entry rows for "sum_i w_i V_i = target" plus one normalization row.
std::optional<std::vector<Rat>> hull_weights(const Box& target,
                                             const std::vector<const Box*>& gens) {
    const int n = static_cast<int>(gens.size());
    std::vector<std::vector<Rat>> A(17, std::vector<Rat>(n));
    std::vector<Rat> rhs(17);
    for (int k = 0; k < 16; ++k) {
        for (int j = 0; j < n; ++j) A[k][j] = gens[j]->p[k];
        rhs[k] = target.p[k];
    }
    for (int j = 0; j < n; ++j) A[16][j] = 1;
    rhs[16] = 1;
    return solve_feasible(A, rhs);
}

}  // namespace

LocalityCertificate is_local_lp(const Box& b) {
    std::vector<const Box*> dets;
    for (const auto& [id, v] : vertices())
        if (id.kind == VertexId::Kind::Deterministic) dets.push_back(&v);
    LocalityCertificate cert;
    auto w = hull_weights(b, dets);
    if (w) {
        cert.is_local = true;
        cert.weights = std::move(*w);
    } else {
        cert.is_local = false;
        // Report the strongest violated CHSH inequality as the witness.
        cert.violation = is_local_chsh(b).violation;
    }
    return cert;
}

Mixture VertexWeights::mixture() const {
    Mixture m;
    for (const auto& [id, w] : weights) m.push_back({w, vertex_box(id)});
    return m;
}

VertexWeights decompose_over_vertices(const Box& b) {
    std::vector<const Box*> gens;
    for (const auto& [id, v] : vertices()) gens.push_back(&v);
    auto w = hull_weights(b, gens);
    if (!w)
        throw internal_error(
            "vertex decomposition infeasible: input is outside the nonsignaling polytope");
    VertexWeights out;
    const auto& verts = vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) out.weights.push_back({verts[i].first, (*w)[i]});
    return out;
}

}  // namespace nsb
