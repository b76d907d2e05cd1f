#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace nsb {

// All probabilities, correlators and polytope arithmetic run on exact
// rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) after every operation.
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

class format_error : public std::runtime_error {
  public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "n/d", an optionally signed integer, or a terminating decimal
// ("0.25" means exactly 1/4). Throws format_error otherwise.
inline Rat rat_parse(const std::string& text) {
    if (text.empty()) throw format_error("empty rational literal");
    const auto bad = [&](const char* why) {
        throw format_error("bad rational literal \"" + text + "\": " + why);
    };
    std::size_t slash = text.find('/');
    std::size_t dot = text.find('.');
    if (slash != std::string::npos && dot != std::string::npos)
        bad("mixes '/' and '.'");
    const auto digits_ok = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    // mpz_set_str rejects a leading '+', so drop it after validation.
    const auto strip_plus = [](std::string s) {
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        return s;
    };
    if (slash != std::string::npos) {
        std::string num = strip_plus(text.substr(0, slash));
        std::string den = strip_plus(text.substr(slash + 1));
        if (!digits_ok(num) || !digits_ok(den)) bad("expected integer/integer");
        mpz_class n_(num), d_(den);
        if (d_ == 0) bad("zero denominator");
        Rat q(n_, d_);
        q.canonicalize();
        return q;
    }
    if (dot != std::string::npos) {
        std::string ip = text.substr(0, dot);
        std::string fp = text.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
        if (ip.empty() && fp.empty()) bad("no digits");
        for (char c : ip + fp)
            if (c < '0' || c > '9') bad("expected decimal digits");
        mpz_class scaled(ip + fp, 10);
        mpz_class den(1);
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        Rat q(scaled, den);
        q.canonicalize();
        return neg ? Rat(-q) : q;
    }
    if (!digits_ok(text)) bad("expected integer, n/d, or decimal");
    return Rat(mpz_class(strip_plus(text)));
}

// Lowest-terms "n/d" rendering; the denominator is always printed ("1/1",
// "0/1") so readers never have to special-case integers.
inline std::string rat_str(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Decimal rendering with 12 significant digits, used for report/CSV output.
inline std::string dec12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}
inline std::string dec12(const Rat& q) { return dec12(q.get_d()); }

inline double rat_d(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace nsb
