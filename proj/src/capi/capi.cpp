#include "nsbox/nsbox.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "core/box.hpp"
#include "core/boxspec.hpp"
#include "core/decomposition.hpp"
#include "core/io.hpp"
#include "core/measures.hpp"
#include "core/model.hpp"
#include "core/report.hpp"
#include "core/secrecy.hpp"

struct nsbox_box {
    nsb::Box box;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(int status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs f, translating exceptions into status codes. f returns NSBOX_OK or a
// status it set itself via fail().
template <typename F>
int guard(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const nsb::decomposition_error& e) {
        return fail(NSBOX_ERR_VERIFICATION, e.what());
    } catch (const nsb::format_error& e) {
        return fail(NSBOX_ERR_FORMAT, e.what());
    } catch (const nsb::spec_error& e) {
        return fail(NSBOX_ERR_USAGE, e.what());
    } catch (const nsb::internal_error& e) {
        return fail(NSBOX_ERR_INTERNAL, e.what());
    } catch (const std::domain_error& e) {
        return fail(NSBOX_ERR_USAGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(NSBOX_ERR_USAGE, e.what());
    } catch (const std::runtime_error& e) {
        return fail(NSBOX_ERR_USAGE, e.what());
    } catch (const std::exception& e) {
        return fail(NSBOX_ERR_INTERNAL, e.what());
    }
}

int require(const void* p, const char* name) {
    if (p) return NSBOX_OK;
    return fail(NSBOX_ERR_USAGE, std::string(name) + " must not be null");
}

int require_valid(const nsb::Box& b) {
    nsb::ValidationReport v = nsb::validate(b);
    if (v.ok()) return NSBOX_OK;
    std::string msg = "box is not a valid nonsignaling distribution";
    if (!v.violations.empty()) msg += ": " + v.violations.front();
    return fail(NSBOX_ERR_INVALID_BOX, msg);
}

nsb::Rat model_entry(const json& v, const std::string& where) {
    if (v.is_number_integer()) return nsb::Rat(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return nsb::rat_parse(v.get<std::string>());
    throw nsb::format_error("model entry at " + where + " must be a string rational or an integer");
}

nsb::Dim2LocalModel parse_model_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw nsb::format_error(std::string("model is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw nsb::format_error("model root must be an object");
    const auto table = [&](const char* key) {
        if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != 2)
            throw nsb::format_error(std::string("model field \"") + key +
                                    "\" must be an array of two branches");
        std::array<std::array<nsb::Rat, 2>, 2> out;
        for (int l = 0; l < 2; ++l) {
            const json& row = doc[key][l];
            if (!row.is_array() || row.size() != 2)
                throw nsb::format_error(std::string("model field \"") + key + "\" branch " +
                                        std::to_string(l) + " must be an array of two entries");
            for (int x = 0; x < 2; ++x)
                out[l][x] = model_entry(row[x], std::string(key) + "[" + std::to_string(l) + "][" +
                                                    std::to_string(x) + "]");
        }
        return out;
    };
    nsb::Dim2LocalModel m;
    if (!doc.contains("weights") || !doc["weights"].is_array() || doc["weights"].size() != 2)
        throw nsb::format_error("model field \"weights\" must be an array of two entries");
    for (int l = 0; l < 2; ++l)
        m.weight[l] = model_entry(doc["weights"][l], "weights[" + std::to_string(l) + "]");
    m.alice = table("alice");
    m.bob = table("bob");
    if (!m.valid())
        throw std::domain_error(
            "model entries must be probabilities and the branch weights must sum to 1");
    return m;
}

}  // namespace

extern "C" {

const char* nsbox_version(void) { return "1.0.0"; }

const char* nsbox_last_error(void) { return g_last_error.c_str(); }

void nsbox_string_free(char* s) { std::free(s); }

int nsbox_box_from_spec(const char* spec, nsbox_box** out) {
    return guard([&]() -> int {
        if (int rc = require(spec, "spec")) return rc;
        if (int rc = require(out, "out")) return rc;
        nsb::Box b = nsb::parse_box_spec(spec);
        *out = new nsbox_box{std::move(b)};
        return NSBOX_OK;
    });
}

int nsbox_box_from_json(const char* text, nsbox_box** out) {
    return guard([&]() -> int {
        if (int rc = require(text, "text")) return rc;
        if (int rc = require(out, "out")) return rc;
        nsb::Box b = nsb::read_box(text);
        *out = new nsbox_box{std::move(b)};
        return NSBOX_OK;
    });
}

int nsbox_box_to_json(const nsbox_box* b, char** out) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(out, "out")) return rc;
        *out = dup_string(nsb::write_box(b->box));
        return NSBOX_OK;
    });
}

void nsbox_box_free(nsbox_box* b) { delete b; }

int nsbox_box_validate(const nsbox_box* b, int* ok) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(ok, "ok")) return rc;
        *ok = nsb::validate(b->box).ok() ? 1 : 0;
        return NSBOX_OK;
    });
}

int nsbox_analyze(const nsbox_box* b, char** json_out) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(json_out, "json_out")) return rc;
        *json_out = dup_string(nsb::analyze_report(b->box).dump(2) + "\n");
        return NSBOX_OK;
    });
}

int nsbox_decompose(const nsbox_box* b, const char* mode, uint64_t seed, int restarts,
                    char** json_out) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(mode, "mode")) return rc;
        if (int rc = require(json_out, "json_out")) return rc;
        if (restarts < 1) return fail(NSBOX_ERR_USAGE, "restarts must be at least 1");
        if (int rc = require_valid(b->box)) return rc;
        nsb::DecomposeResult r = nsb::decompose_report(b->box, mode, seed, restarts);
        *json_out = dup_string(r.doc.dump(2) + "\n");
        if (r.verification_failed)
            return fail(NSBOX_ERR_VERIFICATION,
                        "no candidate vertex admits a residual passing all checks");
        return NSBOX_OK;
    });
}

int nsbox_key_rate(const nsbox_box* b, char** json_out) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(json_out, "json_out")) return rc;
        if (int rc = require_valid(b->box)) return rc;
        *json_out = dup_string(nsb::keyrate_report(b->box).dump(2) + "\n");
        return NSBOX_OK;
    });
}

int nsbox_sweep_csv(const char* label, int werner, const char* lo, const char* hi, int n,
                    char** csv_out) {
    return guard([&]() -> int {
        if (int rc = require(label, "label")) return rc;
        if (int rc = require(lo, "lo")) return rc;
        if (int rc = require(hi, "hi")) return rc;
        if (int rc = require(csv_out, "csv_out")) return rc;
        std::string ls(label);
        if (ls.size() != 3 || ls.find_first_not_of("01") != std::string::npos)
            return fail(NSBOX_ERR_USAGE, "label must be three bits, like 000");
        std::array<int, 3> bits{ls[0] - '0', ls[1] - '0', ls[2] - '0'};
        nsb::Rat rlo = nsb::rat_parse(lo);
        nsb::Rat rhi = nsb::rat_parse(hi);
        if (rlo > rhi) return fail(NSBOX_ERR_USAGE, "sweep lower bound exceeds upper bound");
        if (n < 1) return fail(NSBOX_ERR_USAGE, "sweep needs at least one grid point");
        *csv_out = dup_string(nsb::sweep_noisy_pr_csv(bits, werner != 0, rlo, rhi, n));
        return NSBOX_OK;
    });
}

int nsbox_csv_for_box(const nsbox_box* b, const char* param, char** csv_out) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(param, "param")) return rc;
        if (int rc = require(csv_out, "csv_out")) return rc;
        if (int rc = require_valid(b->box)) return rc;
        *csv_out = dup_string(nsb::csv_header() + nsb::csv_row(nsb::sweep_row_for_box(param, b->box)));
        return NSBOX_OK;
    });
}

int nsbox_simulate(const nsbox_box* b, uint64_t rounds, uint64_t seed, int compare,
                   char** json_out) {
    return guard([&]() -> int {
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(json_out, "json_out")) return rc;
        if (rounds < 1) return fail(NSBOX_ERR_USAGE, "rounds must be at least 1");
        if (int rc = require_valid(b->box)) return rc;
        *json_out = dup_string(nsb::simulate_report(b->box, rounds, seed, compare != 0).dump(2) + "\n");
        return NSBOX_OK;
    });
}

int nsbox_extend_dim2_eve(const char* model_json, char** tripartite_json_out) {
    return guard([&]() -> int {
        if (int rc = require(model_json, "model_json")) return rc;
        if (int rc = require(tripartite_json_out, "tripartite_json_out")) return rc;
        nsb::Dim2LocalModel m = parse_model_json(model_json);
        *tripartite_json_out = dup_string(nsb::write_tripartite(nsb::extend_with_dim2_eve(m)));
        return NSBOX_OK;
    });
}

int nsbox_check_factorization(const char* tripartite_json, const nsbox_box* b, char** json_out) {
    return guard([&]() -> int {
        if (int rc = require(tripartite_json, "tripartite_json")) return rc;
        if (int rc = require(b, "box")) return rc;
        if (int rc = require(json_out, "json_out")) return rc;
        nsb::TripartiteBox t = nsb::read_tripartite(tripartite_json);
        nsb::TripartiteValidation v = nsb::validate_tripartite(t);
        nsb::FactorizationReport f = nsb::check_factorization(t, b->box);
        json doc{{"format", "nsbox-report/1"},
                 {"kind", "factorization"},
                 {"tripartite_valid", v.ok()},
                 {"marginal_ok", f.marginal_ok},
                 {"factorizes", f.factorizes},
                 {"violations", f.violations}};
        json tv{{"nonnegative", v.nonnegative},
                {"normalized", v.normalized},
                {"ns_from_alice", v.ns_from_alice},
                {"ns_from_bob", v.ns_from_bob},
                {"ns_from_eve", v.ns_from_eve},
                {"violations", v.violations}};
        doc["tripartite_validation"] = tv;
        *json_out = dup_string(doc.dump(2) + "\n");
        return NSBOX_OK;
    });
}

}  // extern "C"
