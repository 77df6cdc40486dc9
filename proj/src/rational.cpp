#include "qmzv/rational.hpp"

#include <cctype>

#include "qmzv/errors.hpp"

namespace qmzv {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// digits [ '.' digits ] with at least one digit somewhere
Rat parse_decimal(std::string_view s) {
    auto dot = s.find('.');
    std::string_view ipart = (dot == std::string_view::npos) ? s : s.substr(0, dot);
    std::string_view fpart = (dot == std::string_view::npos) ? std::string_view{} : s.substr(dot + 1);
    if (ipart.empty() && fpart.empty())
        throw Error(Errc::syntax_error, "empty numeric literal");
    if ((!ipart.empty() && !all_digits(ipart)) || (!fpart.empty() && !all_digits(fpart)))
        throw Error(Errc::syntax_error, std::string("bad numeric literal '") + std::string(s) + "'");
    BigInt num = ipart.empty() ? BigInt(0) : BigInt(std::string(ipart));
    BigInt den(1);
    for (char c : fpart) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rat(num) / Rat(den);
}

}  // namespace

Rat parse_rat(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw Error(Errc::syntax_error, "empty rational literal");

    bool neg = false;
    if (text.front() == '+' || text.front() == '-') {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }

    Rat value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw Error(Errc::syntax_error, std::string("bad rational '") + std::string(text) + "'");
        BigInt d{std::string(den)};
        if (d == 0) throw Error(Errc::syntax_error, "zero denominator");
        value = Rat(BigInt(std::string(num))) / Rat(d);
    } else if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        Rat mant = parse_decimal(text.substr(0, e));
        std::string_view es = text.substr(e + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es))
            throw Error(Errc::syntax_error, std::string("bad exponent in '") + std::string(text) + "'");
        long ex = std::stol(std::string(es));
        Rat scale = rat_pow(Rat(10), ex);
        value = eneg ? Rat(mant / scale) : Rat(mant * scale);
    } else {
        value = parse_decimal(text);
    }
    return neg ? -value : value;
}

std::string rat_str(const Rat& r) { return r.str(); }

Rat rat_pow(const Rat& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw Error(Errc::singular_parameter, "0^negative");
        return Rat(1) / rat_pow(base, -exp);
    }
    Rat acc(1), b = base;
    unsigned long e = static_cast<unsigned long>(exp);
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace qmzv
