#include "core/io.hpp"

#include <json.hpp>

namespace nsb {

namespace {

using nlohmann::json;

Rat entry_to_rat(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return rat_parse(v.get<std::string>());
    throw format_error("entry at " + where + " must be a string rational or an integer");
}

json parse_document(const std::string& text, const char* expected_format) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw format_error(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw format_error("document root must be an object");
    if (!doc.contains("format") || !doc["format"].is_string() ||
        doc["format"].get<std::string>() != expected_format)
        throw format_error(std::string("missing or wrong format tag, expected \"") +
                           expected_format + "\"");
    const auto dims_ok = [&](const char* key) {
        return doc.contains(key) && doc[key].is_array() && doc[key].size() == 2 &&
               doc[key][0] == 2 && doc[key][1] == 2;
    };
    if (!dims_ok("inputs")) throw format_error("field \"inputs\" must be [2,2]");
    if (!dims_ok("outputs")) throw format_error("field \"outputs\" must be [2,2]");
    return doc;
}

}  // namespace

Box read_box(const std::string& text) {
    json doc = parse_document(text, "nsbox/1");
    if (!doc.contains("p") || !doc["p"].is_array() || doc["p"].size() != 2)
        throw format_error("field \"p\" must be a [x][y][a][b] array");
    Box b;
    for (int x = 0; x < 2; ++x) {
        const json& jx = doc["p"][x];
        if (!jx.is_array() || jx.size() != 2) throw format_error("p[" + std::to_string(x) + "] must have 2 rows");
        for (int y = 0; y < 2; ++y) {
            const json& jy = jx[y];
            if (!jy.is_array() || jy.size() != 2)
                throw format_error("p[" + std::to_string(x) + "][" + std::to_string(y) +
                                   "] must have 2 rows");
            for (int a = 0; a < 2; ++a) {
                const json& ja = jy[a];
                if (!ja.is_array() || ja.size() != 2)
                    throw format_error("p[" + std::to_string(x) + "][" + std::to_string(y) +
                                       "][" + std::to_string(a) + "] must have 2 entries");
                for (int bb = 0; bb < 2; ++bb) {
                    std::string where = "p[" + std::to_string(x) + "][" + std::to_string(y) +
                                        "][" + std::to_string(a) + "][" + std::to_string(bb) + "]";
                    b.at(x, y, a, bb) = entry_to_rat(ja[bb], where);
                }
            }
        }
    }
    return b;
}

std::string write_box(const Box& b) {
    json p = json::array();
    for (int x = 0; x < 2; ++x) {
        json jx = json::array();
        for (int y = 0; y < 2; ++y) {
            json jy = json::array();
            for (int a = 0; a < 2; ++a) {
                json ja = json::array();
                for (int bb = 0; bb < 2; ++bb) ja.push_back(rat_str(b.at(x, y, a, bb)));
                jy.push_back(ja);
            }
            jx.push_back(jy);
        }
        p.push_back(jx);
    }
    json doc{{"format", "nsbox/1"}, {"inputs", {2, 2}}, {"outputs", {2, 2}}, {"p", p}};
    return doc.dump(2) + "\n";
}

TripartiteBox read_tripartite(const std::string& text) {
    json doc = parse_document(text, "nsbox3/1");
    if (!doc.contains("eve_inputs") || !doc["eve_inputs"].is_number_integer() ||
        doc["eve_inputs"].get<int>() < 1)
        throw format_error("field \"eve_inputs\" must be a positive integer");
    TripartiteBox t;
    t.n_e_inputs = doc["eve_inputs"].get<int>();
    t.q.assign(static_cast<std::size_t>(16 * t.n_e_inputs * 2), Rat(0));
    if (!doc.contains("q") || !doc["q"].is_array() || doc["q"].size() != 2)
        throw format_error("field \"q\" must be a [x][y][z][a][b][e] array");
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < t.n_e_inputs; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int e = 0; e < 2; ++e) {
                            std::string where = "q[" + std::to_string(x) + "][" +
                                                std::to_string(y) + "][" + std::to_string(z) +
                                                "][" + std::to_string(a) + "][" +
                                                std::to_string(b) + "][" + std::to_string(e) + "]";
                            const json* cur = &doc["q"];
                            for (int ix : {x, y, z, a, b, e}) {
                                if (!cur->is_array() || ix >= static_cast<int>(cur->size()))
                                    throw format_error("missing entry at " + where);
                                cur = &(*cur)[ix];
                            }
                            t.at(x, y, z, a, b, e) = entry_to_rat(*cur, where);
                        }
    return t;
}

std::string write_tripartite(const TripartiteBox& t) {
    json q = json::array();
    for (int x = 0; x < 2; ++x) {
        json jx = json::array();
        for (int y = 0; y < 2; ++y) {
            json jy = json::array();
            for (int z = 0; z < t.n_e_inputs; ++z) {
                json jz = json::array();
                for (int a = 0; a < 2; ++a) {
                    json ja = json::array();
                    for (int b = 0; b < 2; ++b) {
                        json jb = json::array();
                        for (int e = 0; e < 2; ++e) jb.push_back(rat_str(t.at(x, y, z, a, b, e)));
                        ja.push_back(jb);
                    }
                    jz.push_back(ja);
                }
                jy.push_back(jz);
            }
            jx.push_back(jy);
        }
        q.push_back(jx);
    }
    json doc{{"format", "nsbox3/1"},
             {"inputs", {2, 2}},
             {"outputs", {2, 2}},
             {"eve_inputs", t.n_e_inputs},
             {"q", q}};
    return doc.dump(2) + "\n";
}

}  // namespace nsb
