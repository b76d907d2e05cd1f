#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/rational.hpp"

namespace nsb {

// Joint distribution P(ab|xy) for two parties with binary inputs and
// outputs, stored as 16 exact rationals indexed [x][y][a][b].
struct Box {
    std::array<Rat, 16> p{};

    static constexpr int idx(int x, int y, int a, int b) {
        return ((x * 2 + y) * 2 + a) * 2 + b;
    }
    Rat& at(int x, int y, int a, int b) { return p[idx(x, y, a, b)]; }
    const Rat& at(int x, int y, int a, int b) const { return p[idx(x, y, a, b)]; }

    bool operator==(const Box& o) const { return p == o.p; }
};

// Vertex labels of the nonsignaling polytope: 16 deterministic boxes
// (a = alpha*x XOR beta, b = gamma*y XOR epsilon) and 8 PR boxes
// (p = 1/2 iff a XOR b = x*y XOR alpha*x XOR beta*y XOR gamma).
struct VertexId {
    enum class Kind { Deterministic, PR };
    Kind kind;
    // labels[0..3] = (alpha, beta, gamma, epsilon); PR uses the first three.
    std::array<int, 4> labels;

    bool operator==(const VertexId& o) const = default;
    std::string name() const;
};

Box make_deterministic(int alpha, int beta, int gamma, int eps);
Box make_pr(int alpha, int beta, int gamma);
Box maximally_mixed();

// All 24 vertices: the 16 deterministic boxes in lexicographic
// (alpha,beta,gamma,eps) order, then the 8 PR boxes in lexicographic
// (alpha,beta,gamma) order. Index in this list is the canonical vertex index.
const std::vector<std::pair<VertexId, Box>>& vertices();
Box vertex_box(const VertexId& id);

using Mixture = std::vector<std::pair<Rat, Box>>;

class mixture_error : public std::runtime_error {
  public:
    explicit mixture_error(const std::string& what) : std::runtime_error(what) {}
};

// Entrywise convex combination. Throws mixture_error unless the weights are
// nonnegative and sum to exactly 1.
Box mix(const Mixture& m);

struct ValidationReport {
    bool nonnegative = true;
    bool normalized = true;
    bool nonsignaling_to_bob = true;    // Bob's marginal independent of x
    bool nonsignaling_to_alice = true;  // Alice's marginal independent of y
    // Human-readable descriptions of each violated constraint with indices.
    std::vector<std::string> violations;

    bool ok() const {
        return nonnegative && normalized && nonsignaling_to_bob && nonsignaling_to_alice;
    }
};

// Exact checks, no tolerances.
ValidationReport validate(const Box& b);

// Local relabeling: optionally swap each party's inputs, then flip outputs
// conditioned on the (new) input; optionally exchange the parties.
// Action: B'(ab|xy) = B(swap applied) with a -> a XOR flip_a[x], x -> x XOR swap_a,
// and the party exchange B'(ab|xy) = B(ba|yx) applied last.
struct Relabeling {
    int swap_a = 0;
    std::array<int, 2> flip_a{0, 0};
    int swap_b = 0;
    std::array<int, 2> flip_b{0, 0};
    int party_swap = 0;

    bool operator==(const Relabeling& o) const = default;
};

Box apply_relabeling(const Relabeling& g, const Box& b);

// compose(g2, g1) acts like applying g1 first, then g2.
Relabeling compose(const Relabeling& g2, const Relabeling& g1);
Relabeling inverse(const Relabeling& g);

// 64 elements without party swap, 128 with. Duplicate-free.
std::vector<Relabeling> enumerate_relabelings(bool include_party_swap);

}  // namespace nsb
