#include "core/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "core/rng.hpp"
#include "core/sampling.hpp"
#include "core/simplex.hpp"
#include "core/threads.hpp"

namespace nsb {

namespace {

std::vector<std::pair<VertexId, Box>> pr_vertices() {
    std::vector<std::pair<VertexId, Box>> out;
    for (const auto& [id, box] : vertices())
        if (id.kind == VertexId::Kind::PR) out.push_back({id, box});
    return out;
}

}  // namespace

PrDecomposition decompose_pr_fraction(const Box& b) {
    NlReport rep = nl(b);
    Rat p = rep.nl / 4;

    if (p == 0) {
        PrDecomposition out;
        out.p_pr = 0;
        out.residual = b;
        out.checks.reconstructs = true;  // weight 1 on the residual
        out.checks.residual_valid = validate(b).ok();
        out.checks.residual_nl_zero = true;  // nl(b) = 4*p_pr = 0 here
        out.checks.residual_local = is_local_lp(b).is_local;
        return out;
    }

    // Candidates in descending matched-CHSH order; the dominant PR direction
    // is tried first. Ties fall back to label order.
    auto cands = pr_vertices();
    std::vector<Rat> matched(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& l = cands[i].first.labels;
        matched[i] = chsh(b, l[0], l[1], l[2]);
    }
    std::vector<std::size_t> order(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return matched[i] > matched[j]; });

    std::vector<CandidateDiagnostic> diags;
    for (std::size_t oi : order) {
        const auto& [id, prbox] = cands[oi];
        CandidateDiagnostic diag;
        diag.vertex = id;
        diag.matched_chsh = matched[oi];

        Box residual;
        if (p == 1) {
            residual = maximally_mixed();  // carries weight 0; any box would do
        } else {
            for (int k = 0; k < 16; ++k) residual.p[k] = (b.p[k] - p * prbox.p[k]) / (1 - p);
        }

        DecompositionChecks checks;
        checks.residual_valid = validate(residual).ok();
        diag.residual_valid = checks.residual_valid;
        if (!checks.residual_valid) {
            diag.failed_check = "residual_valid";
            diags.push_back(std::move(diag));
            continue;
        }
        Rat rnl = nl(residual).nl;
        diag.residual_nl = rnl;
        checks.residual_nl_zero = rnl == 0;
        if (!checks.residual_nl_zero) {
            diag.failed_check = "residual_nl_zero";
            diags.push_back(std::move(diag));
            continue;
        }
        checks.residual_local = is_local_lp(residual).is_local;
        diag.residual_local = checks.residual_local;
        if (!checks.residual_local) {
            diag.failed_check = "residual_local";
            diags.push_back(std::move(diag));
            continue;
        }
        checks.reconstructs = mix({{p, prbox}, {1 - p, residual}}) == b;
        if (!checks.reconstructs) {
            diag.failed_check = "reconstructs";
            diags.push_back(std::move(diag));
            continue;
        }

        PrDecomposition out;
        out.p_pr = p;
        out.pr_vertex = id;
        out.residual = std::move(residual);
        out.checks = checks;
        return out;
    }

    throw decomposition_error(
        "no PR vertex admits a residual with nl = 0 at weight p_pr = " + rat_str(p) +
            " (tried all 8 candidates)",
        p, std::move(diags));
}

PrMixtureDecomposition decompose_pr_mixture(const std::vector<Rat>& pr_weights) {
    auto prs = pr_vertices();
    if (pr_weights.size() != prs.size())
        throw mixture_error("expected " + std::to_string(prs.size()) + " PR weights, got " +
                            std::to_string(pr_weights.size()));
    Mixture m;
    for (std::size_t i = 0; i < prs.size(); ++i) m.push_back({pr_weights[i], prs[i].second});
    Box box = mix(m);  // validates nonnegativity and the weight sum

    PrMixtureDecomposition out;
    out.base = decompose_pr_fraction(box);

    // The residual of a PR mixture must itself be a convex combination of
    // uniform two-PR mixtures; certify by exact LP over the 28 midpoints.
    std::vector<Box> mids;
    std::vector<const Box*> gens;
    for (std::size_t i = 0; i < prs.size(); ++i)
        for (std::size_t j = i + 1; j < prs.size(); ++j) {
            Box mid;
            for (int k = 0; k < 16; ++k)
                mid.p[k] = (prs[i].second.p[k] + prs[j].second.p[k]) / 2;
            mids.push_back(std::move(mid));
        }
    for (const auto& bx : mids) gens.push_back(&bx);

    std::vector<std::vector<Rat>> A(17, std::vector<Rat>(gens.size()));
    std::vector<Rat> rhs(17);
    for (int k = 0; k < 16; ++k) {
        for (std::size_t j = 0; j < gens.size(); ++j) A[k][j] = gens[j]->p[k];
        rhs[k] = out.base.residual.p[k];
    }
    for (std::size_t j = 0; j < gens.size(); ++j) A[16][j] = 1;
    rhs[16] = 1;
    auto w = solve_feasible(A, rhs);
    if (!w)
        throw decomposition_error(
            "residual of the PR mixture is outside the hull of two-PR midpoints",
            out.base.p_pr, {});
    out.midpoint_weights = std::move(*w);
    return out;
}

namespace {

// One floating-point model state for the alternating search.
struct FloatModel {
    double w0 = 0.5;
    double alice[2][2];  // [branch][input] = P(a=0|x,branch)
    double bob[2][2];
};

double model_entry(const FloatModel& m, int x, int y, int a, int b) {
    double pa0 = a == 0 ? m.alice[0][x] : 1 - m.alice[0][x];
    double pb0 = b == 0 ? m.bob[0][y] : 1 - m.bob[0][y];
    double pa1 = a == 0 ? m.alice[1][x] : 1 - m.alice[1][x];
    double pb1 = b == 0 ? m.bob[1][y] : 1 - m.bob[1][y];
    return m.w0 * pa0 * pb0 + (1 - m.w0) * pa1 * pb1;
}

double residual_l1(const FloatModel& m, const double t[16]) {
    double s = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    s += std::fabs(model_entry(m, x, y, a, b) - t[Box::idx(x, y, a, b)]);
    return s;
}

double residual_l2(const FloatModel& m, const double t[16]) {
    double s = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double d = model_entry(m, x, y, a, b) - t[Box::idx(x, y, a, b)];
                    s += d * d;
                }
    return s;
}

// Minimizes sum_k (c0_k v0 + c1_k v1 - d_k)^2 over the unit square, given the
// accumulated normal form H = C'C, g = C'd. Checks the interior stationary
// point, the four clamped edges, and the corners; exact for this quadratic.
void solve_quad2(double h00, double h01, double h11, double g0, double g1, double& v0,
                 double& v1) {
    const auto clamp01 = [](double v) { return v < 0 ? 0.0 : (v > 1 ? 1.0 : v); };
    const auto value = [&](double a, double b) {
        return h00 * a * a + 2 * h01 * a * b + h11 * b * b - 2 * (g0 * a + g1 * b);
    };
    double best_a = v0, best_b = v1;
    double best = value(best_a, best_b);
    const auto consider = [&](double a, double b) {
        double f = value(a, b);
        if (f < best) {
            best = f;
            best_a = a;
            best_b = b;
        }
    };
    double det = h00 * h11 - h01 * h01;
    if (det > 0) {
        double ia = (h11 * g0 - h01 * g1) / det;
        double ib = (h00 * g1 - h01 * g0) / det;
        if (ia >= 0 && ia <= 1 && ib >= 0 && ib <= 1) consider(ia, ib);
    }
    for (double fixed : {0.0, 1.0}) {
        if (h11 > 0) consider(fixed, clamp01((g1 - h01 * fixed) / h11));  // v0 fixed
        if (h00 > 0) consider(clamp01((g0 - h01 * fixed) / h00), fixed);  // v1 fixed
    }
    consider(0, 0);
    consider(0, 1);
    consider(1, 0);
    consider(1, 1);
    v0 = best_a;
    v1 = best_b;
}

void bob_step(FloatModel& m, const double t[16]) {
    for (int y = 0; y < 2; ++y) {
        double h00 = 0, h01 = 0, h11 = 0, g0 = 0, g1 = 0;
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 2; ++a) {
                double c0 = m.w0 * (a == 0 ? m.alice[0][x] : 1 - m.alice[0][x]);
                double c1 = (1 - m.w0) * (a == 0 ? m.alice[1][x] : 1 - m.alice[1][x]);
                // b = 0 row: c0 v0 + c1 v1 = t0
                double t0 = t[Box::idx(x, y, a, 0)];
                h00 += c0 * c0;
                h01 += c0 * c1;
                h11 += c1 * c1;
                g0 += c0 * t0;
                g1 += c1 * t0;
                // b = 1 row: (c0 + c1) - (c0 v0 + c1 v1) = t1, same quadratic
                // with target (c0 + c1 - t1)
                double d = c0 + c1 - t[Box::idx(x, y, a, 1)];
                h00 += c0 * c0;
                h01 += c0 * c1;
                h11 += c1 * c1;
                g0 += c0 * d;
                g1 += c1 * d;
            }
        solve_quad2(h00, h01, h11, g0, g1, m.bob[0][y], m.bob[1][y]);
    }
}

void alice_step(FloatModel& m, const double t[16]) {
    for (int x = 0; x < 2; ++x) {
        double h00 = 0, h01 = 0, h11 = 0, g0 = 0, g1 = 0;
        for (int y = 0; y < 2; ++y)
            for (int b = 0; b < 2; ++b) {
                double c0 = m.w0 * (b == 0 ? m.bob[0][y] : 1 - m.bob[0][y]);
                double c1 = (1 - m.w0) * (b == 0 ? m.bob[1][y] : 1 - m.bob[1][y]);
                double t0 = t[Box::idx(x, y, 0, b)];
                h00 += c0 * c0;
                h01 += c0 * c1;
                h11 += c1 * c1;
                g0 += c0 * t0;
                g1 += c1 * t0;
                double d = c0 + c1 - t[Box::idx(x, y, 1, b)];
                h00 += c0 * c0;
                h01 += c0 * c1;
                h11 += c1 * c1;
                g0 += c0 * d;
                g1 += c1 * d;
            }
        solve_quad2(h00, h01, h11, g0, g1, m.alice[0][x], m.alice[1][x]);
    }
}

void weight_step(FloatModel& m, const double t[16]) {
    // Entries are affine in w0: q = w0 * (P0 - P1) + P1.
    double num = 0, den = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double pa0 = a == 0 ? m.alice[0][x] : 1 - m.alice[0][x];
                    double pb0 = b == 0 ? m.bob[0][y] : 1 - m.bob[0][y];
                    double pa1 = a == 0 ? m.alice[1][x] : 1 - m.alice[1][x];
                    double pb1 = b == 0 ? m.bob[1][y] : 1 - m.bob[1][y];
                    double u = pa0 * pb0 - pa1 * pb1;
                    double base = pa1 * pb1;
                    num += u * (t[Box::idx(x, y, a, b)] - base);
                    den += u * u;
                }
    if (den > 0) {
        double w = num / den;
        m.w0 = w < 0 ? 0 : (w > 1 ? 1 : w);
    }
}

Dim2LocalModel rationalize(const FloatModel& m) {
    // Reporting grid: denominator 10^12, clamped to [0,1]; the branch weights
    // stay an exact pair summing to 1.
    const long DEN = 1000000000000L;
    const auto snap = [&](double v) {
        double c = v < 0 ? 0 : (v > 1 ? 1 : v);
        return rat(std::lround(c * static_cast<double>(DEN)), DEN);
    };
    Dim2LocalModel out;
    out.weight[0] = snap(m.w0);
    out.weight[1] = 1 - out.weight[0];
    for (int l = 0; l < 2; ++l)
        for (int x = 0; x < 2; ++x) {
            out.alice[l][x] = snap(m.alice[l][x]);
            out.bob[l][x] = snap(m.bob[l][x]);
        }
    return out;
}

}  // namespace

ModelSearchResult find_dim2_model(const Box& b, int restarts, int max_iters, std::uint64_t seed) {
    if (restarts < 1) restarts = 1;
    double t[16];
    for (int k = 0; k < 16; ++k) t[k] = b.p[k].get_d();

    std::vector<FloatModel> results(restarts);
    std::vector<double> scores(restarts);
    Rng master(seed);

    parallel_for(restarts, [&](int r) {
        FloatModel m;
        if (r == 0) {
            // Warm start from the single-branch product fit: branch 0 carries
            // the target's own marginals at full weight. Exact for product
            // boxes and a strong basin for planted models.
            m.w0 = 1.0;
            for (int x = 0; x < 2; ++x) {
                m.alice[0][x] = t[Box::idx(x, 0, 0, 0)] + t[Box::idx(x, 0, 0, 1)];
                m.alice[1][x] = 0.5;
            }
            for (int y = 0; y < 2; ++y) {
                m.bob[0][y] = t[Box::idx(0, y, 0, 0)] + t[Box::idx(0, y, 1, 0)];
                m.bob[1][y] = 0.5;
            }
        } else {
            Rng rng = master.substream(static_cast<std::uint64_t>(r));
            m.w0 = rng.next_double();
            for (int l = 0; l < 2; ++l)
                for (int x = 0; x < 2; ++x) {
                    m.alice[l][x] = rng.next_double();
                    m.bob[l][x] = rng.next_double();
                }
        }
        double prev = residual_l2(m, t);
        for (int it = 0; it < max_iters; ++it) {
            bob_step(m, t);
            alice_step(m, t);
            weight_step(m, t);
            double cur = residual_l2(m, t);
            // Relative stall test: an absolute one would fire as soon as the
            // squared residual itself drops near the tolerance, far above the
            // success threshold.
            if (cur <= 1e-26 || prev - cur < DIM2_SWEEP_TOL * prev) break;
            prev = cur;
        }
        results[r] = m;
        scores[r] = residual_l1(m, t);
    });

    int best = 0;
    for (int r = 1; r < restarts; ++r)
        if (scores[r] < scores[best]) best = r;  // ties keep the lower index

    ModelSearchResult out;
    out.residual_l1 = scores[best];
    out.restarts_used = restarts;
    out.status = scores[best] <= DIM2_SUCCESS_L1 ? ModelSearchResult::Status::Found
                                                 : ModelSearchResult::Status::NotFound;
    if (out.status == ModelSearchResult::Status::Found) out.model = rationalize(results[best]);
    return out;
}

Prop1Report verify_prop1_sample(int n, std::uint64_t seed) {
    Prop1Report report;
    report.n = n;
    Rng master(seed);
    std::mutex mu;
    parallel_for(n, [&](int i) {
        Rng rng = master.substream(static_cast<std::uint64_t>(i));
        Dim2LocalModel m = random_deterministic_dim2_model(rng);
        Rat v = nl(box_from_model(m)).nl;
        if (v != 0) {
            std::lock_guard<std::mutex> lock(mu);
            report.failures.push_back({i, v});
        }
    });
    std::sort(report.failures.begin(), report.failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return report;
}

}  // namespace nsb
