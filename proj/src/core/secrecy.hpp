#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/box.hpp"
#include "core/measures.hpp"
#include "core/model.hpp"
#include "core/rational.hpp"

namespace nsb {

// p_pr * PR(alpha,beta,gamma) + (1 - p_pr) * maximally mixed.
Box noisy_pr(int alpha, int beta, int gamma, const Rat& p_pr);

struct ThresholdFlags {
    bool bell_nonlocal = false;         // p_pr > 1/2
    bool entanglement_certified = false;  // p_pr > 1/(2*sqrt(2))
    bool quantum_realizable = false;    // p_pr <= 1/sqrt(2)
    bool drn_present = false;           // p_pr > 0
};

// All comparisons against the irrational cutoffs are decided exactly on
// squares (8 p^2 vs 1, 2 p^2 vs 1), never by rounding.
ThresholdFlags thresholds(const Rat& p_pr);

class not_quantum_realizable : public std::domain_error {
  public:
    explicit not_quantum_realizable(const std::string& what) : std::domain_error(what) {}
};

// Visibility map W = sqrt(2) * p_pr and its inverse. The reverse map rejects
// p_pr with 2 p_pr^2 > 1, which no visibility in [0,1] can reach.
double werner_to_ppr(const Rat& w);
double ppr_to_werner(const Rat& p_pr);

// Joint distribution of (a, b') after Bob's flip b' = b XOR (x AND y),
// averaged over uniformly random input pairs.
struct KeyJoint {
    std::array<std::array<Rat, 2>, 2> p{};  // [a][b']
};
KeyJoint protocol_transform(const Box& b);

// h(q) = -q log2 q - (1-q) log2(1-q), with h(0) = h(1) = 0.
double binary_entropy(double q);

// I(A:B) in bits of an exact 2x2 joint.
double mutual_information(const KeyJoint& j);

struct KeyRateResult {
    double i_ab = 0;
    bool i_ae_assumed_zero = false;  // set when nl > 0 gates the bound
    double key_rate_lower_bound = 0;
    Rat nl_gate;
};

// i_ab through the flip protocol; the bound equals i_ab when nl(b) > 0
// (eavesdropper information taken as zero under the gate), else 0.
KeyRateResult key_rate(const Box& b);

// Eve-extended distribution q[x][y][z][a][b][e] with e binary.
struct TripartiteBox {
    int n_e_inputs = 1;
    std::vector<Rat> q;  // size 16 * n_e_inputs * 2

    int idx(int x, int y, int z, int a, int b, int e) const {
        return ((((x * 2 + y) * n_e_inputs + z) * 2 + a) * 2 + b) * 2 + e;
    }
    Rat& at(int x, int y, int z, int a, int b, int e) { return q[idx(x, y, z, a, b, e)]; }
    const Rat& at(int x, int y, int z, int a, int b, int e) const {
        return q[idx(x, y, z, a, b, e)];
    }
};

struct TripartiteValidation {
    bool nonnegative = true;
    bool normalized = true;
    bool ns_from_alice = true;  // (b,e) stats independent of x
    bool ns_from_bob = true;    // (a,e) stats independent of y
    bool ns_from_eve = true;    // (a,b) stats independent of z
    std::vector<std::string> violations;

    bool ok() const {
        return nonnegative && normalized && ns_from_alice && ns_from_bob && ns_from_eve;
    }
};

TripartiteValidation validate_tripartite(const TripartiteBox& t);

// Eve holds the branch label: q[x][y][0][a][b][e] = w_e P_e(a|x) P_e(b|y).
// Summing over e recovers the model's box exactly.
TripartiteBox extend_with_dim2_eve(const Dim2LocalModel& m);

struct FactorizationReport {
    bool marginal_ok = true;  // sum over e equals the box for every z
    bool factorizes = true;   // q = box * P(e|z) entrywise
    std::vector<std::string> violations;
};

// Exact check that t's Alice-Bob part is b and that Eve's outcome is
// uncorrelated with (a,b) at every Eve input.
FactorizationReport check_factorization(const TripartiteBox& t, const Box& b);

struct SimTranscript {
    std::uint64_t seed = 0;
    std::uint64_t rounds = 0;
    // One packed byte per round: (x<<3) | (y<<2) | (a<<1) | b.
    std::vector<std::uint8_t> records;
    std::array<std::uint64_t, 16> counts{};  // Box::idx(x,y,a,b)
    bool all_pairs_visited = false;
    // Present only when every input pair was visited; entries are exact
    // per-pair frequencies.
    std::optional<Box> empirical;
    std::optional<NlReport> empirical_nl;
    std::optional<KeyRateResult> empirical_keyrate;
};

// Seeded protocol run: each round draws x, y as fair bits and samples (a,b)
// from b's exact distribution by comparing a 53-bit uniform against exact
// cumulative thresholds. Identical seed and parameters give an identical
// transcript on every platform.
SimTranscript simulate_protocol(const Box& b, std::uint64_t rounds, std::uint64_t seed);

struct SimComparison {
    double analytic_nl = 0, empirical_nl = 0, se_nl = 0, z_nl = 0;
    double analytic_i_ab = 0, empirical_i_ab = 0, se_i_ab = 0, z_i_ab = 0;
};

// z-scores of the empirical nl and i_ab against their analytic values.
// Standard errors are documented statistical gates, not exact bounds:
//   se(nl)  : sqrt(sum_i var(covB_i)), var(covB_i) = sum_xy (1-e_xy^2)/n_xy,
//             a union bound using |d nl / d covB_i| <= 1;
//   se(i_ab): delta method on q = P(a = b'), |log2((1-q)/q)| sqrt(q(1-q)/N).
SimComparison compare_to_analytic(const SimTranscript& t, const Box& analytic);

}  // namespace nsb
