// Command-line front end for the nonsignaling-box library. All computation
// goes through the C API in nsbox/nsbox.h; this file only handles argument
// parsing, IO, and presentation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsbox/nsbox.h"

namespace {

using nlohmann::json;

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_INVALID_BOX = 2;
constexpr int EXIT_VERIFICATION = 3;

int exit_code_for(int status) {
    switch (status) {
        case NSBOX_OK: return 0;
        case NSBOX_ERR_INVALID_BOX: return EXIT_INVALID_BOX;
        case NSBOX_ERR_VERIFICATION: return EXIT_VERIFICATION;
        default: return EXIT_USAGE;
    }
}

void report_error(int status) {
    const char* msg = nsbox_last_error();
    std::cerr << "nsbox: " << (msg && *msg ? msg : "unknown error") << "\n";
    (void)status;
}

// Owned C-string from the library.
struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { nsbox_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct OwnedBox {
    nsbox_box* p = nullptr;
    ~OwnedBox() { nsbox_box_free(p); }
};

bool read_input(const std::string& path, std::string& out) {
    if (path == "-") {
        out.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "nsbox: cannot read " << path << "\n";
        return false;
    }
    out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return true;
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "nsbox: cannot write " << path << "\n";
        return false;
    }
    out << text;
    return out.good();
}

// Box input shared by analyze/decompose/keyrate/simulate: either a spec
// string or an nsbox/1 file ("-" reads stdin). Returns 0 and fills box, or
// an exit code.
int load_box(const std::string& file, const std::string& spec, OwnedBox& box) {
    if (!spec.empty()) {
        int rc = nsbox_box_from_spec(spec.c_str(), &box.p);
        if (rc != NSBOX_OK) {
            report_error(rc);
            return exit_code_for(rc);
        }
        return 0;
    }
    std::string text;
    if (!read_input(file, text)) return EXIT_USAGE;
    int rc = nsbox_box_from_json(text.c_str(), &box.p);
    if (rc != NSBOX_OK) {
        report_error(rc);
        return exit_code_for(rc);
    }
    return 0;
}

std::string rat_field(const json& v) {
    if (v.is_null()) return "-";
    return v["rat"].get<std::string>() + " (" + v["dec"].get<std::string>() + ")";
}

std::string analyze_text(const json& doc) {
    std::ostringstream out;
    out << "valid: " << (doc["valid"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& v : doc["validation"]["violations"])
        out << "  violation: " << v.get<std::string>() << "\n";
    out << "nl: " << rat_field(doc["nl"]) << "\n";
    out << "pr_fraction: " << rat_field(doc["pr_fraction"]) << "\n";
    const char* labels[8] = {"000", "001", "010", "011", "100", "101", "110", "111"};
    out << "chsh:";
    for (int i = 0; i < 8; ++i)
        out << " B" << labels[i] << "=" << doc["chsh"][i]["dec"].get<std::string>();
    out << "\n";
    out << "bell_local (facets): " << (doc["locality_chsh"]["is_local"].get<bool>() ? "yes" : "no");
    if (doc["locality_chsh"].contains("violation")) {
        const json& w = doc["locality_chsh"]["violation"];
        out << ", witness B" << w["alpha"].get<int>() << w["beta"].get<int>()
            << w["gamma"].get<int>() << " = " << w["value"]["dec"].get<std::string>();
    }
    out << "\n";
    out << "bell_local (lp): " << (doc["locality_lp"]["is_local"].get<bool>() ? "yes" : "no")
        << "\n";
    if (!doc["noisy_pr_family"].is_null()) {
        const json& f = doc["noisy_pr_family"];
        out << "noisy_pr_family: label " << f["label"].get<std::string>() << ", p_pr "
            << rat_field(f["p_pr"]) << "\n";
        out << "  bell_nonlocal: " << (f["bell_nonlocal"].get<bool>() ? "yes" : "no") << "\n";
        out << "  entanglement_certified: "
            << (f["entanglement_certified"].get<bool>() ? "yes" : "no") << "\n";
        out << "  quantum_realizable: " << (f["quantum_realizable"].get<bool>() ? "yes" : "no")
            << "\n";
    } else {
        out << "noisy_pr_family: no exact match\n";
    }
    return out.str();
}

int write_components(const std::string& dir, const json& doc) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "nsbox: cannot create " << dir << ": " << ec.message() << "\n";
        return EXIT_USAGE;
    }
    json manifest{{"format", "nsbox-manifest/1"}, {"mode", doc["mode"]}};
    if (doc.contains("p_pr")) manifest["p_pr"] = doc["p_pr"];
    json list = json::array();
    if (doc.contains("components")) {
        int k = 0;
        for (const auto& comp : doc["components"]) {
            std::string name = "component_" + std::to_string(k) + ".json";
            if (!write_output((fs::path(dir) / name).string(), comp["box"].dump(2) + "\n"))
                return EXIT_USAGE;
            json entry{{"file", name}, {"weight", comp["weight"]}};
            if (comp.contains("vertex")) entry["vertex"] = comp["vertex"];
            if (comp.contains("branch")) entry["branch"] = comp["branch"];
            list.push_back(entry);
            ++k;
        }
    }
    manifest["components"] = list;
    if (!write_output((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n"))
        return EXIT_USAGE;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonsignaling box calculus: analysis, decomposition, key rates, simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nsbox_version()));

    // make
    auto* make = app.add_subcommand("make", "Build a box from a constructor spec");
    std::string make_spec;
    std::string make_out;
    make->add_option("spec", make_spec,
                     "det:ABGE | pr:ABG | noise | noisy-pr:ABG:p | mix:w1*S1+w2*S2+...")
        ->required();
    make->add_option("-o,--out", make_out, "Output file (default stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Validate a box and compute its nonlocality");
    std::string an_file = "-", an_spec, an_out;
    bool an_json = false;
    analyze->add_option("file", an_file, "nsbox/1 file, or - for stdin");
    analyze->add_option("--spec", an_spec, "Constructor spec instead of a file");
    analyze->add_flag("--json", an_json, "Emit the full JSON report");
    analyze->add_option("-o,--out", an_out, "Output file (default stdout)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "Split a box into weighted components");
    std::string de_file = "-", de_spec, de_mode = "pr-fraction", de_out, de_dir;
    std::uint64_t de_seed = 0;
    int de_restarts = 50;
    decompose->add_option("file", de_file, "nsbox/1 file, or - for stdin");
    decompose->add_option("--spec", de_spec, "Constructor spec instead of a file");
    decompose->add_option("--mode", de_mode, "pr-fraction | vertex | dim2")
        ->check(CLI::IsMember({"pr-fraction", "vertex", "dim2"}));
    decompose->add_option("--seed", de_seed, "Search seed (dim2)");
    decompose->add_option("--restarts", de_restarts, "Search restarts (dim2)");
    decompose->add_option("--out-dir", de_dir, "Write component_k.json and manifest.json here");
    decompose->add_option("-o,--out", de_out, "Report file (default stdout)");

    // keyrate
    auto* keyrate = app.add_subcommand("keyrate", "Raw-key statistics and sweeps");
    std::string kr_family, kr_label = "000", kr_p, kr_werner, kr_sweep, kr_box, kr_out;
    bool kr_csv = false, kr_werner_axis = false;
    keyrate->add_option("--family", kr_family, "Parameterized family (noisy-pr)")
        ->check(CLI::IsMember({"noisy-pr"}));
    keyrate->add_option("--label", kr_label, "PR label for the family (three bits)");
    keyrate->add_option("--p", kr_p, "Single PR weight (exact rational)");
    keyrate->add_option("--werner", kr_werner, "Single singlet visibility (exact rational)");
    keyrate->add_option("--sweep", kr_sweep, "Grid lo:hi:n, inclusive endpoints");
    keyrate->add_flag("--werner-axis", kr_werner_axis, "Sweep visibility instead of PR weight");
    keyrate->add_option("--box", kr_box, "nsbox/1 file, or - for stdin");
    keyrate->add_flag("--csv", kr_csv, "Emit CSV instead of JSON");
    keyrate->add_option("-o,--out", kr_out, "Output file (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Seeded protocol run on a box");
    std::string si_file = "-", si_spec, si_out;
    std::uint64_t si_rounds = 0, si_seed = 0;
    bool si_compare = false;
    simulate->add_option("file", si_file, "nsbox/1 file, or - for stdin");
    simulate->add_option("--spec", si_spec, "Constructor spec instead of a file");
    simulate->add_option("--rounds", si_rounds, "Number of rounds")->required();
    simulate->add_option("--seed", si_seed, "RNG seed");
    simulate->add_flag("--compare-analytic", si_compare,
                       "Add z-scores against the analytic values");
    simulate->add_option("-o,--out", si_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    if (app.got_subcommand(make)) {
        OwnedBox box;
        int rc = nsbox_box_from_spec(make_spec.c_str(), &box.p);
        if (rc != NSBOX_OK) {
            report_error(rc);
            return exit_code_for(rc);
        }
        OwnedString text;
        rc = nsbox_box_to_json(box.p, &text.p);
        if (rc != NSBOX_OK) {
            report_error(rc);
            return exit_code_for(rc);
        }
        return write_output(make_out, text.str()) ? 0 : EXIT_USAGE;
    }

    if (app.got_subcommand(analyze)) {
        OwnedBox box;
        if (int code = load_box(an_file, an_spec, box)) return code;
        OwnedString text;
        int rc = nsbox_analyze(box.p, &text.p);
        if (rc != NSBOX_OK) {
            report_error(rc);
            return exit_code_for(rc);
        }
        json doc = json::parse(text.str());
        std::string rendered = an_json ? text.str() : analyze_text(doc);
        if (!write_output(an_out, rendered)) return EXIT_USAGE;
        return doc["valid"].get<bool>() ? 0 : EXIT_INVALID_BOX;
    }

    if (app.got_subcommand(decompose)) {
        OwnedBox box;
        if (int code = load_box(de_file, de_spec, box)) return code;
        OwnedString text;
        int rc = nsbox_decompose(box.p, de_mode.c_str(), de_seed, de_restarts, &text.p);
        if (rc != NSBOX_OK && rc != NSBOX_ERR_VERIFICATION) {
            report_error(rc);
            return exit_code_for(rc);
        }
        if (!write_output(de_out, text.str())) return EXIT_USAGE;
        if (!de_dir.empty()) {
            json doc = json::parse(text.str());
            if (int code = write_components(de_dir, doc)) return code;
        }
        if (rc == NSBOX_ERR_VERIFICATION) {
            report_error(rc);
            return EXIT_VERIFICATION;
        }
        return 0;
    }

    if (app.got_subcommand(keyrate)) {
        const bool family = !kr_family.empty();
        const int sources = (!kr_p.empty()) + (!kr_werner.empty()) + (!kr_sweep.empty());
        if (family == !kr_box.empty()) {
            std::cerr << "nsbox: pass exactly one of --family or --box\n";
            return EXIT_USAGE;
        }
        if (family && sources != 1) {
            std::cerr << "nsbox: --family needs exactly one of --p, --werner, --sweep\n";
            return EXIT_USAGE;
        }
        if (!family && sources != 0) {
            std::cerr << "nsbox: --p/--werner/--sweep apply only to --family\n";
            return EXIT_USAGE;
        }
        if (family) {
            if (!kr_sweep.empty()) {
                std::string lo, hi;
                int n = 0;
                std::size_t c1 = kr_sweep.find(':');
                std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                         : kr_sweep.find(':', c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos) {
                    std::cerr << "nsbox: --sweep expects lo:hi:n\n";
                    return EXIT_USAGE;
                }
                lo = kr_sweep.substr(0, c1);
                hi = kr_sweep.substr(c1 + 1, c2 - c1 - 1);
                try {
                    n = std::stoi(kr_sweep.substr(c2 + 1));
                } catch (const std::exception&) {
                    std::cerr << "nsbox: --sweep expects lo:hi:n\n";
                    return EXIT_USAGE;
                }
                OwnedString csv;
                int rc = nsbox_sweep_csv(kr_label.c_str(), kr_werner_axis ? 1 : 0, lo.c_str(),
                                         hi.c_str(), n, &csv.p);
                if (rc != NSBOX_OK) {
                    report_error(rc);
                    return exit_code_for(rc);
                }
                return write_output(kr_out, csv.str()) ? 0 : EXIT_USAGE;
            }
            if (!kr_werner.empty() || kr_csv) {
                // Single point as a one-row sweep; the Werner axis only
                // exists in CSV form.
                const std::string& t = kr_werner.empty() ? kr_p : kr_werner;
                OwnedString csv;
                int rc = nsbox_sweep_csv(kr_label.c_str(), kr_werner.empty() ? 0 : 1, t.c_str(),
                                         t.c_str(), 1, &csv.p);
                if (rc != NSBOX_OK) {
                    report_error(rc);
                    return exit_code_for(rc);
                }
                return write_output(kr_out, csv.str()) ? 0 : EXIT_USAGE;
            }
            OwnedBox box;
            std::string spec = "noisy-pr:" + kr_label + ":" + kr_p;
            if (int code = load_box("-", spec, box)) return code;
            OwnedString text;
            int rc = nsbox_key_rate(box.p, &text.p);
            if (rc != NSBOX_OK) {
                report_error(rc);
                return exit_code_for(rc);
            }
            return write_output(kr_out, text.str()) ? 0 : EXIT_USAGE;
        }
        OwnedBox box;
        if (int code = load_box(kr_box, "", box)) return code;
        OwnedString text;
        int rc = kr_csv ? nsbox_csv_for_box(box.p, "box", &text.p)
                        : nsbox_key_rate(box.p, &text.p);
        if (rc != NSBOX_OK) {
            report_error(rc);
            return exit_code_for(rc);
        }
        return write_output(kr_out, text.str()) ? 0 : EXIT_USAGE;
    }

    if (app.got_subcommand(simulate)) {
        OwnedBox box;
        if (int code = load_box(si_file, si_spec, box)) return code;
        OwnedString text;
        int rc = nsbox_simulate(box.p, si_rounds, si_seed, si_compare ? 1 : 0, &text.p);
        if (rc != NSBOX_OK) {
            report_error(rc);
            return exit_code_for(rc);
        }
        return write_output(si_out, text.str()) ? 0 : EXIT_USAGE;
    }

    return EXIT_USAGE;
}
