#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/box.hpp"
#include "core/measures.hpp"
#include "core/model.hpp"

namespace nsb {

struct DecompositionChecks {
    bool reconstructs = false;
    bool residual_valid = false;
    bool residual_local = false;
    bool residual_nl_zero = false;

    bool all() const {
        return reconstructs && residual_valid && residual_local && residual_nl_zero;
    }
};

// Splitting of a box into a single PR vertex plus a residual with weight
// p_pr = nl/4. pr_vertex is empty in the degenerate p_pr = 0 case.
struct PrDecomposition {
    Rat p_pr;
    std::optional<VertexId> pr_vertex;
    Box residual;
    DecompositionChecks checks;
};

// Why one candidate PR vertex was rejected, kept for error reporting.
struct CandidateDiagnostic {
    VertexId vertex;
    Rat matched_chsh;                  // B at this vertex's own label
    bool residual_valid = false;       // nonneg/normalized/nonsignaling
    std::optional<Rat> residual_nl;    // set when the residual was valid
    std::optional<bool> residual_local;  // set when the locality LP ran
    std::string failed_check;
};

// Raised when p_pr > 0 and no PR vertex leaves a residual passing all four
// exact checks; carries the full per-candidate evidence.
class decomposition_error : public std::runtime_error {
  public:
    decomposition_error(std::string what, Rat p_pr, std::vector<CandidateDiagnostic> diags)
        : std::runtime_error(std::move(what)), p_pr(std::move(p_pr)), diagnostics(std::move(diags)) {}
    Rat p_pr;
    std::vector<CandidateDiagnostic> diagnostics;
};

// Splits b as p_pr * PR + (1 - p_pr) * residual with p_pr = nl(b)/4.
// Candidate PR vertices are tried in descending order of their matched CHSH
// value (ties lexicographic); the first one whose residual passes all four
// exact checks wins. p_pr = 0 returns residual = b with no vertex; p_pr = 1
// returns residual = the maximally mixed box (any box works at weight 0).
// Throws decomposition_error when every candidate fails.
PrDecomposition decompose_pr_fraction(const Box& b);

struct PrMixtureDecomposition {
    PrDecomposition base;
    // Exact convex weights over the 28 pairwise midpoints of PR boxes
    // certifying the residual's structure, in (i,j) i<j lexicographic order
    // over the canonical PR ordering.
    std::vector<Rat> midpoint_weights;
};

// decompose_pr_fraction on the mixture sum_i w_i PR_i, plus an exact LP
// certificate that the residual lies in the hull of two-PR midpoints.
// Throws decomposition_error if that LP is infeasible.
PrMixtureDecomposition decompose_pr_mixture(const std::vector<Rat>& pr_weights);

struct ModelSearchResult {
    enum class Status { Found, NotFound };
    Status status = Status::NotFound;
    // Rationalized snapshot of the best floating model (reporting only; the
    // search itself runs in doubles).
    std::optional<Dim2LocalModel> model;
    double residual_l1 = 0;
    int restarts_used = 0;
};

inline constexpr double DIM2_SUCCESS_L1 = 1e-8;    // Found iff best L1 at or below this
inline constexpr double DIM2_SWEEP_TOL = 1e-12;    // relative per-sweep improvement floor
inline constexpr int DIM2_DEFAULT_RESTARTS = 50;
inline constexpr int DIM2_MAX_ITERS = 500;

// Alternating minimization for a two-branch local model of b. Each half-step
// (one party's response column, or the branch weight) is a box-constrained
// least-squares subproblem solved exactly. Restarts run in parallel on
// substreams of seed; the winner is the lowest residual, ties to the lowest
// restart index, so results are seed-deterministic regardless of scheduling.
// NotFound is a valid outcome, not a nonexistence proof.
ModelSearchResult find_dim2_model(const Box& b, int restarts = DIM2_DEFAULT_RESTARTS,
                                  int max_iters = DIM2_MAX_ITERS, std::uint64_t seed = 0);

struct Prop1Report {
    int n = 0;
    // Indices of sampled models whose exact box had nl != 0 (expected none),
    // with the offending nl values.
    std::vector<std::pair<int, Rat>> failures;
};

// Samples n two-branch models with deterministic response tables and random
// rational branch weights, builds each box exactly, and checks nl == 0.
// Deterministic responses are the class for which this holds identically;
// stochastic response tables on both sides can give nl > 0 (see the unit
// tests for a concrete witness).
Prop1Report verify_prop1_sample(int n, std::uint64_t seed);

}  // namespace nsb
