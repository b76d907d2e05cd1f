#include "core/secrecy.hpp"

#include <cmath>
#include <initializer_list>

#include "core/rng.hpp"

namespace nsb {

Box noisy_pr(int alpha, int beta, int gamma, const Rat& p_pr) {
    if (p_pr < 0 || p_pr > 1)
        throw std::domain_error("noisy PR weight " + rat_str(p_pr) + " outside [0,1]");
    return mix({{p_pr, make_pr(alpha, beta, gamma)}, {1 - p_pr, maximally_mixed()}});
}

ThresholdFlags thresholds(const Rat& p_pr) {
    if (p_pr < 0 || p_pr > 1)
        throw std::domain_error("PR weight " + rat_str(p_pr) + " outside [0,1]");
    ThresholdFlags f;
    Rat sq = p_pr * p_pr;
    f.bell_nonlocal = p_pr > rat(1, 2);
    f.entanglement_certified = 8 * sq > 1;  // p > 1/(2*sqrt(2)) on nonnegative p
    f.quantum_realizable = 2 * sq <= 1;     // p <= 1/sqrt(2)
    f.drn_present = p_pr > 0;
    return f;
}

double werner_to_ppr(const Rat& w) {
    if (w < 0 || w > 1) throw std::domain_error("visibility " + rat_str(w) + " outside [0,1]");
    return w.get_d() / std::sqrt(2.0);
}

double ppr_to_werner(const Rat& p_pr) {
    if (p_pr < 0) throw std::domain_error("PR weight " + rat_str(p_pr) + " is negative");
    if (2 * p_pr * p_pr > 1)
        throw not_quantum_realizable("PR weight " + rat_str(p_pr) +
                                     " exceeds 1/sqrt(2); no visibility in [0,1] maps to it");
    return std::sqrt(2.0) * p_pr.get_d();
}

KeyJoint protocol_transform(const Box& b) {
    KeyJoint j;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) j.p[a][bb ^ (x & y)] += b.at(x, y, a, bb) / 4;
    return j;
}

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binary_entropy argument outside [0,1]");
    double h = 0;
    if (q > 0) h -= q * std::log2(q);
    if (q < 1) h -= (1 - q) * std::log2(1 - q);
    return h;
}

double mutual_information(const KeyJoint& j) {
    double p[2][2], pa[2] = {0, 0}, pb[2] = {0, 0};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            p[a][b] = j.p[a][b].get_d();
            pa[a] += p[a][b];
            pb[b] += p[a][b];
        }
    double i = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (p[a][b] > 0) i += p[a][b] * std::log2(p[a][b] / (pa[a] * pb[b]));
    return i < 0 ? 0 : i;
}

KeyRateResult key_rate(const Box& b) {
    KeyRateResult r;
    r.i_ab = mutual_information(protocol_transform(b));
    r.nl_gate = nl(b).nl;
    r.i_ae_assumed_zero = r.nl_gate > 0;
    r.key_rate_lower_bound = r.i_ae_assumed_zero ? r.i_ab : 0.0;
    return r;
}

TripartiteBox extend_with_dim2_eve(const Dim2LocalModel& m) {
    TripartiteBox t;
    t.n_e_inputs = 1;
    t.q.assign(32, Rat(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int e = 0; e < 2; ++e) {
                        Rat pa = a == 0 ? m.alice[e][x] : Rat(1 - m.alice[e][x]);
                        Rat pb = b == 0 ? m.bob[e][y] : Rat(1 - m.bob[e][y]);
                        t.at(x, y, 0, a, b, e) = m.weight[e] * pa * pb;
                    }
    return t;
}

TripartiteValidation validate_tripartite(const TripartiteBox& t) {
    TripartiteValidation r;
    const int ne = t.n_e_inputs;
    const auto tag = [](std::initializer_list<int> v) {
        std::string s = "(";
        bool first = true;
        for (int i : v) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + ")";
    };
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < ne; ++z) {
                Rat sum = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int e = 0; e < 2; ++e) {
                            const Rat& v = t.at(x, y, z, a, b, e);
                            if (v < 0) {
                                r.nonnegative = false;
                                r.violations.push_back("negative entry at (x,y,z,a,b,e)=" +
                                                       tag({x, y, z, a, b, e}));
                            }
                            sum += v;
                        }
                if (sum != 1) {
                    r.normalized = false;
                    r.violations.push_back("sum at inputs " + tag({x, y, z}) + " is " +
                                           rat_str(sum));
                }
            }
    // No party's input may shift the joint statistics of the other two.
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < ne; ++z)
            for (int b = 0; b < 2; ++b)
                for (int e = 0; e < 2; ++e) {
                    Rat m0 = t.at(0, y, z, 0, b, e) + t.at(0, y, z, 1, b, e);
                    Rat m1 = t.at(1, y, z, 0, b, e) + t.at(1, y, z, 1, b, e);
                    if (m0 != m1) {
                        r.ns_from_alice = false;
                        r.violations.push_back("P(b,e|y,z) depends on x at (y,z,b,e)=" +
                                               tag({y, z, b, e}));
                    }
                }
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < ne; ++z)
            for (int a = 0; a < 2; ++a)
                for (int e = 0; e < 2; ++e) {
                    Rat m0 = t.at(x, 0, z, a, 0, e) + t.at(x, 0, z, a, 1, e);
                    Rat m1 = t.at(x, 1, z, a, 0, e) + t.at(x, 1, z, a, 1, e);
                    if (m0 != m1) {
                        r.ns_from_bob = false;
                        r.violations.push_back("P(a,e|x,z) depends on y at (x,z,a,e)=" +
                                               tag({x, z, a, e}));
                    }
                }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Rat first = t.at(x, y, 0, a, b, 0) + t.at(x, y, 0, a, b, 1);
                    for (int z = 1; z < ne; ++z) {
                        Rat cur = t.at(x, y, z, a, b, 0) + t.at(x, y, z, a, b, 1);
                        if (cur != first) {
                            r.ns_from_eve = false;
                            r.violations.push_back("P(a,b|x,y) depends on z at (x,y,z,a,b)=" +
                                                   tag({x, y, z, a, b}));
                        }
                    }
                }
    return r;
}

FactorizationReport check_factorization(const TripartiteBox& t, const Box& b) {
    FactorizationReport r;
    const int ne = t.n_e_inputs;
    for (int z = 0; z < ne; ++z)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int bb = 0; bb < 2; ++bb) {
                        Rat s = t.at(x, y, z, a, bb, 0) + t.at(x, y, z, a, bb, 1);
                        if (s != b.at(x, y, a, bb)) {
                            r.marginal_ok = false;
                            r.violations.push_back(
                                "marginal over e at (x,y,z,a,b)=(" + std::to_string(x) + "," +
                                std::to_string(y) + "," + std::to_string(z) + "," +
                                std::to_string(a) + "," + std::to_string(bb) + ") is " +
                                rat_str(s) + ", box has " + rat_str(b.at(x, y, a, bb)));
                        }
                    }
    // Eve's outcome distribution per input, read off at (x,y) = (0,0).
    for (int z = 0; z < ne; ++z) {
        std::array<Rat, 2> pe{};
        for (int a = 0; a < 2; ++a)
            for (int bb = 0; bb < 2; ++bb)
                for (int e = 0; e < 2; ++e) pe[e] += t.at(0, 0, z, a, bb, e);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int bb = 0; bb < 2; ++bb)
                        for (int e = 0; e < 2; ++e)
                            if (t.at(x, y, z, a, bb, e) != b.at(x, y, a, bb) * pe[e]) {
                                r.factorizes = false;
                                r.violations.push_back(
                                    "no product split at (x,y,z,a,b,e)=(" + std::to_string(x) +
                                    "," + std::to_string(y) + "," + std::to_string(z) + "," +
                                    std::to_string(a) + "," + std::to_string(bb) + "," +
                                    std::to_string(e) + ")");
                            }
    }
    return r;
}

SimTranscript simulate_protocol(const Box& b, std::uint64_t rounds, std::uint64_t seed) {
    if (rounds < 1) throw std::domain_error("simulate_protocol needs rounds >= 1");
    SimTranscript t;
    t.seed = seed;
    t.rounds = rounds;
    t.records.reserve(rounds);

    // Exact cumulative thresholds per input pair: outcome k is selected when
    // r/2^53 lands in [cum_{k-1}, cum_k), decided by integer comparison
    // r * den < num * 2^53.
    mpz_class den[4];
    mpz_class cut[4][3];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int pair = x * 2 + y;
            Rat cum = 0;
            mpz_class d = 1;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) d = lcm(d, b.at(x, y, a, bb).get_den());
            den[pair] = d;
            int k = 0;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) {
                    if (k == 3) break;
                    cum += b.at(x, y, a, bb);
                    mpz_class num = cum.get_num() * (d / cum.get_den());
                    cut[pair][k] = num << 53;
                    ++k;
                }
        }

    Rng rng(seed);
    mpz_class lhs;
    for (std::uint64_t i = 0; i < rounds; ++i) {
        int x = rng.next_bit();
        int y = rng.next_bit();
        std::uint64_t r = rng.next_u53();
        int pair = x * 2 + y;
        lhs = den[pair] * static_cast<unsigned long>(r);
        int k = 0;
        while (k < 3 && lhs >= cut[pair][k]) ++k;
        int a = k >> 1, bb = k & 1;
        t.records.push_back(static_cast<std::uint8_t>((x << 3) | (y << 2) | (a << 1) | bb));
        ++t.counts[Box::idx(x, y, a, bb)];
    }

    std::array<std::uint64_t, 4> per_pair{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    per_pair[x * 2 + y] += t.counts[Box::idx(x, y, a, bb)];
    t.all_pairs_visited =
        per_pair[0] > 0 && per_pair[1] > 0 && per_pair[2] > 0 && per_pair[3] > 0;

    if (t.all_pairs_visited) {
        Box emp;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int bb = 0; bb < 2; ++bb)
                        emp.at(x, y, a, bb) =
                            Rat(static_cast<long>(t.counts[Box::idx(x, y, a, bb)]),
                                static_cast<long>(per_pair[x * 2 + y]));
        for (auto& v : emp.p) v.canonicalize();
        t.empirical_nl = nl(emp);
        t.empirical_keyrate = key_rate(emp);
        t.empirical = std::move(emp);
    }
    return t;
}

SimComparison compare_to_analytic(const SimTranscript& t, const Box& analytic) {
    if (!t.all_pairs_visited || !t.empirical)
        throw std::domain_error("transcript has unvisited input pairs; nothing to compare");
    SimComparison c;
    c.analytic_nl = nl(analytic).nl.get_d();
    c.empirical_nl = t.empirical_nl->nl.get_d();
    c.analytic_i_ab = key_rate(analytic).i_ab;
    c.empirical_i_ab = t.empirical_keyrate->i_ab;

    double var_covb = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double n_xy = 0;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) n_xy += t.counts[Box::idx(x, y, a, bb)];
            double e = t.empirical_nl->correlators.e[x][y].get_d();
            var_covb += (1 - e * e) / n_xy;
        }
    c.se_nl = std::sqrt(4 * var_covb);
    c.z_nl = c.se_nl > 0 ? (c.empirical_nl - c.analytic_nl) / c.se_nl : 0;

    double agree = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    if (a == (bb ^ (x & y))) agree += t.counts[Box::idx(x, y, a, bb)];
    double n = static_cast<double>(t.rounds);
    double q = agree / n;
    if (q > 0 && q < 1) {
        c.se_i_ab = std::fabs(std::log2((1 - q) / q)) * std::sqrt(q * (1 - q) / n);
    }
    c.z_i_ab = c.se_i_ab > 0 ? (c.empirical_i_ab - c.analytic_i_ab) / c.se_i_ab : 0;
    return c;
}

}  // namespace nsb
