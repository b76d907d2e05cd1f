#include "core/boxspec.hpp"

#include <cctype>

#include "core/secrecy.hpp"

namespace nsb {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    bool starts_with(const char* kw) const {
        return s.compare(pos, std::string::traits_type::length(kw), kw) == 0;
    }

    int parse_bit() {
        if (pos >= s.size() || (s[pos] != '0' && s[pos] != '1'))
            throw spec_error("expected a bit label", pos);
        return s[pos++] - '0';
    }

    void expect(char c) {
        if (pos >= s.size() || s[pos] != c)
            throw spec_error(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    // Rational literal: digits with an optional '/' or '.', ends at '*', '+',
    // ')' or end of input.
    Rat parse_rational() {
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '/' || s[pos] == '.'))
            ++pos;
        if (pos == start) throw spec_error("expected a rational number", pos);
        try {
            return rat_parse(s.substr(start, pos - start));
        } catch (const format_error& e) {
            throw spec_error(e.what(), start);
        }
    }

    Box parse_spec() {
        if (pos >= s.size()) throw spec_error("expected a box spec", pos);
        if (s[pos] == '(') {
            ++pos;
            Box b = parse_spec();
            expect(')');
            return b;
        }
        if (starts_with("det:")) {
            pos += 4;
            int al = parse_bit(), be = parse_bit(), ga = parse_bit(), ep = parse_bit();
            return make_deterministic(al, be, ga, ep);
        }
        if (starts_with("pr:")) {
            pos += 3;
            int al = parse_bit(), be = parse_bit(), ga = parse_bit();
            return make_pr(al, be, ga);
        }
        if (starts_with("noisy-pr:")) {
            pos += 9;
            int al = parse_bit(), be = parse_bit(), ga = parse_bit();
            expect(':');
            std::size_t at = pos;
            Rat p = parse_rational();
            if (p < 0 || p > 1) throw spec_error("noisy-pr weight must be in [0,1]", at);
            return noisy_pr(al, be, ga, p);
        }
        if (starts_with("noise")) {
            pos += 5;
            return maximally_mixed();
        }
        if (starts_with("mix:")) {
            std::size_t at = pos;
            pos += 4;
            Mixture m;
            for (;;) {
                Rat w = parse_rational();
                expect('*');
                m.push_back({w, parse_spec()});
                if (pos < s.size() && s[pos] == '+') {
                    ++pos;
                    continue;
                }
                break;
            }
            try {
                return mix(m);
            } catch (const mixture_error& e) {
                throw spec_error(e.what(), at);
            }
        }
        throw spec_error("unknown box spec; expected det:, pr:, noise, noisy-pr: or mix:", pos);
    }
};

}  // namespace

Box parse_box_spec(const std::string& spec) {
    Parser p{spec};
    Box b = p.parse_spec();
    if (p.pos != spec.size()) throw spec_error("trailing characters after box spec", p.pos);
    return b;
}

}  // namespace nsb
