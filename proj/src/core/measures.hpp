#pragma once

#include <array>
#include <optional>
#include <vector>

#include "core/box.hpp"
#include "core/rational.hpp"

namespace nsb {

struct CorrelatorSet {
    // e[x][y] = <A_x B_y> = sum (-1)^(a xor b) p[x][y][a][b]
    std::array<std::array<Rat, 2>, 2> e{};
    // Single-party means <A_x>, <B_y>, averaged over the other party's input.
    // For a nonsignaling box the average is the marginal itself; for an
    // empirical (sampled) box it is the natural symmetric estimator.
    std::array<Rat, 2> ma{};
    std::array<Rat, 2> mb{};
};

struct NlReport {
    CorrelatorSet correlators;
    std::array<Rat, 8> chsh{};     // indexed 4*alpha + 2*beta + gamma
    std::array<Rat, 4> covchsh{};  // indexed 2*alpha + beta
    std::array<Rat, 3> gamma{};
    Rat nl;
};

struct ChshWitness {
    int alpha = 0, beta = 0, gamma = 0;
    Rat value;
};

struct LocalityCertificate {
    bool is_local = false;
    // Filled by the LP certifier when local: weights over the 16
    // deterministic boxes (canonical order) reconstructing the box exactly.
    // The facet certifier leaves it empty; it certifies by inequalities only.
    std::optional<std::vector<Rat>> weights;
    // Filled when nonlocal: the label maximizing |B| and its value.
    std::optional<ChshWitness> violation;
};

CorrelatorSet correlators(const Box& b);

// B_{abg} = (-1)^g e00 + (-1)^(b^g) e01 + (-1)^(a^g) e10 + (-1)^(a^b^g^1) e11
Rat chsh(const Box& b, int alpha, int beta, int gamma);

// |cov(A0B0) + (-1)^b cov(A0B1) + (-1)^a cov(A1B0) + (-1)^(a^b^1) cov(A1B1)|
// with i = 2a + b and cov(AxBy) = e[x][y] - ma[x]*mb[y].
Rat cov_chsh(const Box& b, int i);

// Full pipeline: correlators -> 8 CHSH values -> 4 covariance-CHSH values ->
// the three nested-absolute-difference gammas -> nl = min gamma.
NlReport nl(const Box& b);

// Certifies Bell locality by checking all 8 CHSH inequalities |B| <= 2.
LocalityCertificate is_local_chsh(const Box& b);

// Certifies Bell locality by exact LP membership in the hull of the 16
// deterministic boxes.
LocalityCertificate is_local_lp(const Box& b);

// Exact weights over the 24 polytope vertices reconstructing b. Any valid
// nonsignaling box is feasible; infeasibility throws internal_error.
struct VertexWeights {
    std::vector<std::pair<VertexId, Rat>> weights;  // all 24, canonical order
    Mixture mixture() const;
};
VertexWeights decompose_over_vertices(const Box& b);

class internal_error : public std::logic_error {
  public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nsb
