#include "core/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "core/decomposition.hpp"
#include "core/io.hpp"
#include "core/measures.hpp"
#include "core/model.hpp"

namespace nsb {

using nlohmann::json;

json jrat(const Rat& r) { return json{{"rat", rat_str(r)}, {"dec", dec12(r)}}; }

namespace {

json box_json(const Box& b) { return json::parse(write_box(b)); }

json jrat2x2(const std::array<std::array<Rat, 2>, 2>& m) {
    json rows = json::array();
    for (int i = 0; i < 2; ++i) {
        json row = json::array();
        for (int j = 0; j < 2; ++j) row.push_back(jrat(m[i][j]));
        rows.push_back(row);
    }
    return rows;
}

std::string label_str(const std::array<int, 3>& label) {
    return std::to_string(label[0]) + std::to_string(label[1]) + std::to_string(label[2]);
}

json certificate_json(const LocalityCertificate& c) {
    json j{{"is_local", c.is_local}};
    if (c.weights) {
        json w = json::array();
        for (const Rat& x : *c.weights) w.push_back(jrat(x));
        j["weights"] = w;
    }
    if (c.violation)
        j["violation"] = json{{"alpha", c.violation->alpha},
                              {"beta", c.violation->beta},
                              {"gamma", c.violation->gamma},
                              {"value", jrat(c.violation->value)}};
    return j;
}

json checks_json(const DecompositionChecks& c) {
    return json{{"reconstructs", c.reconstructs},
                {"residual_valid", c.residual_valid},
                {"residual_local", c.residual_local},
                {"residual_nl_zero", c.residual_nl_zero},
                {"all", c.all()}};
}

Box branch_box(const Dim2LocalModel& m, int l) {
    Dim2LocalModel single = m;
    single.weight = {Rat(1), Rat(0)};
    if (l == 1) {
        single.alice[0] = m.alice[1];
        single.bob[0] = m.bob[1];
    }
    return box_from_model(single);
}

}  // namespace

std::optional<NoisyPrMatch> detect_noisy_pr(const Box& b) {
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) {
                Rat p = chsh(b, alpha, beta, gamma) / 4;
                if (p < 0 || p > 1) continue;
                if (noisy_pr(alpha, beta, gamma, p) == b)
                    return NoisyPrMatch{{alpha, beta, gamma}, p};
            }
    return std::nullopt;
}

json analyze_report(const Box& b) {
    json doc;
    doc["format"] = "nsbox-report/1";
    doc["kind"] = "analyze";

    ValidationReport v = validate(b);
    doc["valid"] = v.ok();
    doc["validation"] = json{{"nonnegative", v.nonnegative},
                             {"normalized", v.normalized},
                             {"nonsignaling_to_bob", v.nonsignaling_to_bob},
                             {"nonsignaling_to_alice", v.nonsignaling_to_alice},
                             {"violations", v.violations}};

    NlReport r = nl(b);
    doc["correlators"] = json{{"e", jrat2x2(r.correlators.e)},
                              {"ma", json::array({jrat(r.correlators.ma[0]), jrat(r.correlators.ma[1])})},
                              {"mb", json::array({jrat(r.correlators.mb[0]), jrat(r.correlators.mb[1])})}};
    json chshj = json::array();
    for (int i = 0; i < 8; ++i) chshj.push_back(jrat(r.chsh[i]));
    doc["chsh"] = chshj;
    json covj = json::array();
    for (int i = 0; i < 4; ++i) covj.push_back(jrat(r.covchsh[i]));
    doc["covchsh"] = covj;
    json gj = json::array();
    for (int i = 0; i < 3; ++i) gj.push_back(jrat(r.gamma[i]));
    doc["gamma"] = gj;
    doc["nl"] = jrat(r.nl);
    doc["pr_fraction"] = jrat(Rat(r.nl / 4));

    doc["locality_chsh"] = certificate_json(is_local_chsh(b));
    doc["locality_lp"] = certificate_json(is_local_lp(b));

    if (auto m = detect_noisy_pr(b)) {
        ThresholdFlags f = thresholds(m->p);
        doc["noisy_pr_family"] = json{{"label", label_str(m->label)},
                                      {"p_pr", jrat(m->p)},
                                      {"bell_nonlocal", f.bell_nonlocal},
                                      {"entanglement_certified", f.entanglement_certified},
                                      {"quantum_realizable", f.quantum_realizable},
                                      {"drn_present", f.drn_present}};
    } else {
        doc["noisy_pr_family"] = nullptr;
    }
    return doc;
}

DecomposeResult decompose_report(const Box& b, const std::string& mode, std::uint64_t seed,
                                 int restarts) {
    DecomposeResult out;
    json& doc = out.doc;
    doc["format"] = "nsbox-report/1";
    doc["kind"] = "decompose";
    doc["mode"] = mode;

    if (mode == "pr-fraction") {
        try {
            PrDecomposition d = decompose_pr_fraction(b);
            doc["p_pr"] = jrat(d.p_pr);
            doc["pr_vertex"] = d.pr_vertex ? json(d.pr_vertex->name()) : json(nullptr);
            doc["checks"] = checks_json(d.checks);
            json comps = json::array();
            if (d.pr_vertex)
                comps.push_back(json{{"weight", jrat(d.p_pr)},
                                     {"vertex", d.pr_vertex->name()},
                                     {"box", box_json(vertex_box(*d.pr_vertex))}});
            comps.push_back(json{{"weight", jrat(Rat(1 - d.p_pr))},
                                 {"vertex", nullptr},
                                 {"box", box_json(d.residual)}});
            doc["components"] = comps;
        } catch (const decomposition_error& e) {
            out.verification_failed = true;
            json cands = json::array();
            for (const CandidateDiagnostic& c : e.diagnostics) {
                json jc{{"vertex", c.vertex.name()},
                        {"matched_chsh", jrat(c.matched_chsh)},
                        {"residual_valid", c.residual_valid},
                        {"failed_check", c.failed_check}};
                jc["residual_nl"] = c.residual_nl ? jrat(*c.residual_nl) : json(nullptr);
                jc["residual_local"] = c.residual_local ? json(*c.residual_local) : json(nullptr);
                cands.push_back(jc);
            }
            doc["error"] = json{{"type", "decomposition"},
                                {"message", e.what()},
                                {"p_pr", jrat(e.p_pr)},
                                {"candidates", cands}};
        }
    } else if (mode == "vertex") {
        VertexWeights w = decompose_over_vertices(b);
        json weights = json::array();
        json comps = json::array();
        for (const auto& [id, wt] : w.weights) {
            weights.push_back(json{{"vertex", id.name()}, {"weight", jrat(wt)}});
            if (wt != 0)
                comps.push_back(
                    json{{"weight", jrat(wt)}, {"vertex", id.name()}, {"box", box_json(vertex_box(id))}});
        }
        doc["weights"] = weights;
        doc["components"] = comps;
        doc["reconstructs"] = mix(w.mixture()) == b;
    } else if (mode == "dim2") {
        doc["seed"] = seed;
        doc["restarts"] = restarts;
        ModelSearchResult r = find_dim2_model(b, restarts, DIM2_MAX_ITERS, seed);
        doc["status"] = r.status == ModelSearchResult::Status::Found ? "found" : "not-found";
        doc["residual_l1"] = r.residual_l1;
        doc["restarts_used"] = r.restarts_used;
        if (r.model) {
            const Dim2LocalModel& m = *r.model;
            doc["model"] = json{{"weights", json::array({jrat(m.weight[0]), jrat(m.weight[1])})},
                                {"alice", jrat2x2(m.alice)},
                                {"bob", jrat2x2(m.bob)}};
            if (r.status == ModelSearchResult::Status::Found) {
                json comps = json::array();
                for (int l = 0; l < 2; ++l)
                    comps.push_back(json{{"weight", jrat(m.weight[l])},
                                         {"branch", l},
                                         {"box", box_json(branch_box(m, l))}});
                doc["components"] = comps;
            }
        }
    } else {
        throw std::invalid_argument("unknown decompose mode \"" + mode + "\"");
    }
    return out;
}

json keyrate_report(const Box& b) {
    KeyRateResult k = key_rate(b);
    return json{{"format", "nsbox-report/1"},
                {"kind", "keyrate"},
                {"i_ab", k.i_ab},
                {"i_ae_assumed_zero", k.i_ae_assumed_zero},
                {"key_rate_lower_bound", k.key_rate_lower_bound},
                {"nl", jrat(k.nl_gate)}};
}

std::string csv_header() {
    return "param,nl,chsh_max,i_ab,key_rate,bell_nonlocal,entanglement_certified,"
           "quantum_realizable\n";
}

std::string csv_row(const SweepRow& row) {
    const auto flag = [](const std::optional<bool>& f) {
        return f ? (*f ? std::string("1") : std::string("0")) : std::string();
    };
    return row.param + "," + dec12(row.nl) + "," + dec12(row.chsh_max) + "," + dec12(row.i_ab) +
           "," + dec12(row.key_rate) + "," + flag(row.bell_nonlocal) + "," +
           flag(row.entanglement_certified) + "," + flag(row.quantum_realizable) + "\n";
}

namespace {

SweepRow row_common(const std::string& param, const Box& b) {
    SweepRow r;
    r.param = param;
    NlReport rep = nl(b);
    r.nl = rat_d(rep.nl);
    Rat mx = rep.chsh[0];
    for (int i = 1; i < 8; ++i)
        if (rep.chsh[i] > mx) mx = rep.chsh[i];
    r.chsh_max = rat_d(mx);
    KeyRateResult k = key_rate(b);
    r.i_ab = k.i_ab;
    r.key_rate = k.key_rate_lower_bound;
    return r;
}

}  // namespace

std::string sweep_noisy_pr_csv(const std::array<int, 3>& label, bool werner, const Rat& lo,
                               const Rat& hi, int n) {
    if (n < 1) throw std::invalid_argument("sweep needs at least one grid point");
    if (lo < 0 || hi > 1 || lo > hi)
        throw std::domain_error("sweep range must satisfy 0 <= lo <= hi <= 1");
    std::string out = csv_header();
    for (int k = 0; k < n; ++k) {
        Rat t = n == 1 ? lo : Rat(lo + (hi - lo) * Rat(k) / Rat(n - 1));
        // The Werner parameterization lands on an irrational PR weight; the
        // box is built from its exact dyadic image while the flags are
        // decided exactly in t itself.
        Rat p = werner ? Rat(werner_to_ppr(t)) : t;
        if (p < 0) p = 0;
        if (p > 1) p = 1;
        Box b = noisy_pr(label[0], label[1], label[2], p);
        SweepRow r = row_common(dec12(t), b);
        if (werner) {
            r.bell_nonlocal = 2 * t * t > 1;
            r.entanglement_certified = t > rat(1, 2);
            r.quantum_realizable = t <= 1;
        } else {
            ThresholdFlags f = thresholds(p);
            r.bell_nonlocal = f.bell_nonlocal;
            r.entanglement_certified = f.entanglement_certified;
            r.quantum_realizable = f.quantum_realizable;
        }
        out += csv_row(r);
    }
    return out;
}

SweepRow sweep_row_for_box(const std::string& param, const Box& b) {
    SweepRow r = row_common(param, b);
    if (auto m = detect_noisy_pr(b)) {
        ThresholdFlags f = thresholds(m->p);
        r.bell_nonlocal = f.bell_nonlocal;
        r.entanglement_certified = f.entanglement_certified;
        r.quantum_realizable = f.quantum_realizable;
    } else {
        r.bell_nonlocal = !is_local_chsh(b).is_local;
    }
    return r;
}

json simulate_report(const Box& b, std::uint64_t rounds, std::uint64_t seed, bool compare) {
    SimTranscript t = simulate_protocol(b, rounds, seed);
    json doc{{"format", "nsbox-report/1"},
             {"kind", "simulate"},
             {"seed", t.seed},
             {"rounds", t.rounds},
             {"all_pairs_visited", t.all_pairs_visited}};
    json counts = json::array();
    for (int i = 0; i < 16; ++i) counts.push_back(t.counts[i]);
    doc["counts"] = counts;
    if (t.empirical) {
        doc["empirical_box"] = box_json(*t.empirical);
        doc["empirical_nl"] = jrat(t.empirical_nl->nl);
        doc["empirical_i_ab"] = t.empirical_keyrate->i_ab;
        doc["empirical_key_rate"] = t.empirical_keyrate->key_rate_lower_bound;
    }
    if (compare) {
        SimComparison c = compare_to_analytic(t, b);
        doc["comparison"] = json{{"analytic_nl", c.analytic_nl},
                                 {"empirical_nl", c.empirical_nl},
                                 {"se_nl", c.se_nl},
                                 {"z_nl", c.z_nl},
                                 {"analytic_i_ab", c.analytic_i_ab},
                                 {"empirical_i_ab", c.empirical_i_ab},
                                 {"se_i_ab", c.se_i_ab},
                                 {"z_i_ab", c.z_i_ab}};
    }
    return doc;
}

}  // namespace nsb
