#include <doctest.h>

#include <string>

#include "core/boxspec.hpp"
#include "core/report.hpp"
#include "core/rng.hpp"
#include "core/sampling.hpp"

using namespace nsb;
using nlohmann::json;

TEST_CASE("rational rendering carries both forms") {
    json j = jrat(rat(3, 10));
    CHECK(j["rat"] == "3/10");
    CHECK(j["dec"] == "0.3");
}

TEST_CASE("noisy pr family detection") {
    auto m = detect_noisy_pr(parse_box_spec("noisy-pr:101:2/7"));
    REQUIRE(m.has_value());
    CHECK(m->label == std::array<int, 3>{1, 0, 1});
    CHECK(m->p == rat(2, 7));

    m = detect_noisy_pr(maximally_mixed());
    REQUIRE(m.has_value());
    CHECK(m->label == std::array<int, 3>{0, 0, 0});
    CHECK(m->p == 0);

    CHECK(detect_noisy_pr(make_deterministic(0, 0, 0, 0)) == std::nullopt);
    CHECK(detect_noisy_pr(parse_box_spec("mix:1/2*pr:000+1/2*pr:010")) == std::nullopt);
    // A cross-label pr mixture that lands back in the family.
    m = detect_noisy_pr(parse_box_spec("mix:1/3*pr:000+2/3*pr:001"));
    REQUIRE(m.has_value());
    CHECK(m->label == std::array<int, 3>{0, 0, 1});
    CHECK(m->p == rat(1, 3));
}

TEST_CASE("analyze report shape and values") {
    json doc = analyze_report(make_pr(0, 0, 0));
    CHECK(doc["format"] == "nsbox-report/1");
    CHECK(doc["valid"] == true);
    CHECK(doc["nl"]["rat"] == "4/1");
    CHECK(doc["pr_fraction"]["rat"] == "1/1");
    REQUIRE(doc["chsh"].size() == 8);
    CHECK(doc["chsh"][0]["rat"] == "4/1");
    REQUIRE(doc["covchsh"].size() == 4);
    REQUIRE(doc["gamma"].size() == 3);
    CHECK(doc["locality_chsh"]["is_local"] == false);
    CHECK(doc["locality_lp"]["is_local"] == false);
    CHECK(doc["locality_chsh"]["violation"]["value"]["rat"] == "4/1");
    CHECK(doc["noisy_pr_family"]["label"] == "000");
    CHECK(doc["noisy_pr_family"]["p_pr"]["rat"] == "1/1");
    CHECK(doc["noisy_pr_family"]["quantum_realizable"] == false);

    doc = analyze_report(maximally_mixed());
    CHECK(doc["nl"]["rat"] == "0/1");
    CHECK(doc["locality_lp"]["is_local"] == true);
    REQUIRE(doc["locality_lp"]["weights"].size() == 16);

    Box bad = maximally_mixed();
    bad.at(0, 0, 0, 0) = rat(-1, 4);
    doc = analyze_report(bad);
    CHECK(doc["valid"] == false);
    CHECK(doc["validation"]["nonnegative"] == false);
    CHECK(doc["validation"]["violations"].size() > 0);
}

TEST_CASE("analyze report parses back losslessly") {
    json doc = analyze_report(parse_box_spec("noisy-pr:010:3/5"));
    json again = json::parse(doc.dump());
    CHECK(again == doc);
    CHECK(again["noisy_pr_family"]["label"] == "010");
    CHECK(again["noisy_pr_family"]["bell_nonlocal"] == true);
    CHECK(again["noisy_pr_family"]["entanglement_certified"] == true);
    CHECK(again["noisy_pr_family"]["quantum_realizable"] == true);
}

TEST_CASE("decompose report modes") {
    DecomposeResult r = decompose_report(parse_box_spec("noisy-pr:000:3/10"), "pr-fraction", 0, 50);
    CHECK_FALSE(r.verification_failed);
    CHECK(r.doc["p_pr"]["rat"] == "3/10");
    CHECK(r.doc["pr_vertex"] == "pr:000");
    CHECK(r.doc["checks"]["all"] == true);
    REQUIRE(r.doc["components"].size() == 2);
    CHECK(r.doc["components"][0]["weight"]["rat"] == "3/10");
    CHECK(r.doc["components"][1]["weight"]["rat"] == "7/10");
    // Component boxes are complete inline documents.
    CHECK(r.doc["components"][0]["box"]["format"] == "nsbox/1");

    r = decompose_report(maximally_mixed(), "vertex", 0, 50);
    CHECK(r.doc["reconstructs"] == true);
    REQUIRE(r.doc["weights"].size() == 24);

    r = decompose_report(parse_box_spec("mix:1/2*det:0000+1/2*det:1111"), "dim2", 0, 50);
    CHECK(r.doc["status"] == "found");
    REQUIRE(r.doc.contains("model"));
    CHECK(r.doc["model"]["weights"].size() == 2);

    r = decompose_report(make_pr(0, 0, 0), "dim2", 0, 20);
    CHECK(r.doc["status"] == "not-found");
    CHECK(r.doc["residual_l1"].get<double>() > 1.9);

    CHECK_THROWS_AS(decompose_report(maximally_mixed(), "bogus", 0, 50), std::invalid_argument);
}

TEST_CASE("decompose report carries diagnostics on failure") {
    Rng rng(1);
    Box b = random_ns_box(rng);
    DecomposeResult r = decompose_report(b, "pr-fraction", 0, 50);
    CHECK(r.verification_failed);
    REQUIRE(r.doc.contains("error"));
    CHECK(r.doc["error"]["type"] == "decomposition");
    REQUIRE(r.doc["error"]["candidates"].size() == 8);
    CHECK(r.doc["error"]["candidates"][0].contains("vertex"));
    CHECK(r.doc["error"]["candidates"][0].contains("failed_check"));
}

TEST_CASE("csv header and rows") {
    CHECK(csv_header() ==
          "param,nl,chsh_max,i_ab,key_rate,bell_nonlocal,entanglement_certified,"
          "quantum_realizable\n");
    std::string csv = sweep_noisy_pr_csv({0, 0, 0}, false, rat(0), rat(1), 5);
    auto lines = [](const std::string& s) {
        int n = 0;
        for (char c : s)
            if (c == '\n') ++n;
        return n;
    };
    CHECK(lines(csv) == 6);
    CHECK(csv.find("\n0.5,2,2,0.188721875541,0.188721875541,0,1,1\n") != std::string::npos);
    CHECK(csv.find("\n1,4,4,1,1,1,1,0\n") != std::string::npos);

    std::string one = sweep_noisy_pr_csv({0, 0, 0}, true, rat(1), rat(1), 1);
    CHECK(lines(one) == 2);
    CHECK(one.find("0.399123963307") != std::string::npos);
    CHECK(one.find(",1,1,1\n") != std::string::npos);
}

TEST_CASE("csv for arbitrary boxes leaves family columns blank") {
    SweepRow row = sweep_row_for_box("x", parse_box_spec("mix:1/2*pr:000+1/2*pr:010"));
    std::string line = csv_row(row);
    CHECK(line.substr(0, 2) == "x,");
    // Locality flag present, family flags empty.
    CHECK(line.find(",0,,\n") != std::string::npos);

    row = sweep_row_for_box("y", parse_box_spec("noisy-pr:000:3/5"));
    CHECK(csv_row(row).find(",1,1,1\n") != std::string::npos);
}

TEST_CASE("simulate report shape") {
    json doc = simulate_report(parse_box_spec("noisy-pr:000:4/5"), 5000, 42, true);
    CHECK(doc["kind"] == "simulate");
    CHECK(doc["rounds"] == 5000);
    CHECK(doc["seed"] == 42);
    REQUIRE(doc["counts"].size() == 16);
    CHECK(doc["all_pairs_visited"] == true);
    CHECK(doc.contains("empirical_box"));
    CHECK(doc.contains("empirical_nl"));
    REQUIRE(doc.contains("comparison"));
    CHECK(doc["comparison"].contains("z_nl"));
    CHECK(doc["comparison"].contains("se_i_ab"));

    json tiny = simulate_report(maximally_mixed(), 1, 5, false);
    CHECK(tiny["all_pairs_visited"] == false);
    CHECK_FALSE(tiny.contains("empirical_box"));
    CHECK_FALSE(tiny.contains("comparison"));
}
