#pragma once

#include <array>

#include "core/box.hpp"
#include "core/rational.hpp"

namespace nsb {

// Two-branch local hidden state model: a binary classical state lambda with
// weights p_lambda, and per-branch stochastic response tables for each party.
// alice[l][x] = P(a=0 | input x, state l); same convention for bob.
struct Dim2LocalModel {
    std::array<Rat, 2> weight{};
    std::array<std::array<Rat, 2>, 2> alice{};
    std::array<std::array<Rat, 2>, 2> bob{};

    bool valid() const {
        if (weight[0] < 0 || weight[1] < 0 || weight[0] + weight[1] != 1) return false;
        for (int l = 0; l < 2; ++l)
            for (int x = 0; x < 2; ++x)
                if (alice[l][x] < 0 || alice[l][x] > 1 || bob[l][x] < 0 || bob[l][x] > 1)
                    return false;
        return true;
    }
};

// Exact box built from the model: P(ab|xy) = sum_l w_l P_l(a|x) P_l(b|y).
inline Box box_from_model(const Dim2LocalModel& m) {
    Box out;
    for (int l = 0; l < 2; ++l)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        Rat pa = a == 0 ? m.alice[l][x] : Rat(1 - m.alice[l][x]);
                        Rat pb = b == 0 ? m.bob[l][y] : Rat(1 - m.bob[l][y]);
                        out.at(x, y, a, b) += m.weight[l] * pa * pb;
                    }
    return out;
}

}  // namespace nsb
