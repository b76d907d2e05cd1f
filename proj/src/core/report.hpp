#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/box.hpp"
#include "core/secrecy.hpp"

namespace nsb {

// Rational values in reports render as {"rat":"n/d","dec":"..."} with the
// decimal at 12 significant digits.
nlohmann::json jrat(const Rat& r);

// Exact noisy-PR membership: the label and weight such that the box equals
// (1-p)/4 off the PR support and (1+p)/4 on it. The maximally mixed box
// matches with p = 0 and label 000.
struct NoisyPrMatch {
    std::array<int, 3> label;
    Rat p;
};
std::optional<NoisyPrMatch> detect_noisy_pr(const Box& b);

// Validation, correlators, CHSH values, covariance measure, both locality
// certificates, PR fraction, and family thresholds when the box is an exact
// noisy PR mixture.
nlohmann::json analyze_report(const Box& b);

// One of "pr-fraction", "vertex", "dim2". The document always carries "mode".
// verification_failed marks a pr-fraction run that exhausted every candidate
// vertex; the document then holds per-candidate diagnostics instead of
// components.
struct DecomposeResult {
    nlohmann::json doc;
    bool verification_failed = false;
};
DecomposeResult decompose_report(const Box& b, const std::string& mode, std::uint64_t seed,
                                 int restarts);

// Raw-key statistics for one box.
nlohmann::json keyrate_report(const Box& b);

// CSV schema shared by all sweep outputs. Flag columns are 0/1; the two
// quantum columns are empty when the box is not an exact noisy PR mixture.
std::string csv_header();

struct SweepRow {
    std::string param;
    double nl = 0;
    double chsh_max = 0;
    double i_ab = 0;
    double key_rate = 0;
    std::optional<bool> bell_nonlocal;
    std::optional<bool> entanglement_certified;
    std::optional<bool> quantum_realizable;
};
std::string csv_row(const SweepRow& row);

// Rows over an inclusive grid of n points from lo to hi (n == 1 pins lo).
// werner == false sweeps the PR weight directly; werner == true sweeps the
// singlet weight W, maps it to a PR weight, and evaluates flags exactly in W.
std::string sweep_noisy_pr_csv(const std::array<int, 3>& label, bool werner, const Rat& lo,
                               const Rat& hi, int n);

// Single row for an arbitrary box; param is echoed into the first column.
SweepRow sweep_row_for_box(const std::string& param, const Box& b);

// Transcript summary. When compare is set the document gains a "comparison"
// object with analytic values, standard errors, and z scores; comparison
// requires every input pair to have been visited.
nlohmann::json simulate_report(const Box& b, std::uint64_t rounds, std::uint64_t seed,
                               bool compare);

}  // namespace nsb
