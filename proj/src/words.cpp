#include "qmzv/words.hpp"

#include <cctype>

#include "qmzv/errors.hpp"

namespace qmzv {

bool valid_word(std::string_view w) {
    for (char c : w)
        if (c != 'x' && c != 'y') return false;
    return true;
}

LinComb LinComb::of(const Word& w, const Rat& c) {
    LinComb out;
    out.add_term(w, c);
    return out;
}

void LinComb::add_term(const Word& w, const Rat& c) {
    if (!valid_word(w)) throw Error(Errc::malformed_word, "letters outside {x,y}: '" + w + "'");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LinComb& LinComb::operator+=(const LinComb& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

LinComb& LinComb::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

LinComb concat(const LinComb& a, const LinComb& b) {
    LinComb out;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) out.add_term(wa + wb, ca * cb);
    return out;
}

LambdaPoly::LambdaPoly(int order) : order_(order) {
    if (order < 0) throw Error(Errc::invalid_params, "truncation order must be >= 0");
    coeffs_.resize(static_cast<size_t>(order) + 1);
}

LambdaPoly LambdaPoly::zero(int order) { return LambdaPoly(order); }

LambdaPoly LambdaPoly::one(int order) { return from_word("", order); }

LambdaPoly LambdaPoly::from_word(const Word& w, int order) {
    LambdaPoly out(order);
    out.coeff(0) = LinComb::of(w);
    return out;
}

LambdaPoly LambdaPoly::lambda(int order) {
    LambdaPoly out(order);
    if (order >= 1) out.coeff(1) = LinComb::of("");
    return out;
}

bool LambdaPoly::zero_poly() const {
    for (const auto& c : coeffs_)
        if (!c.zero()) return false;
    return true;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
    if (order_ != o.order_) throw Error(Errc::order_mismatch, "lambda truncation orders differ");
    for (int i = 0; i <= order_; ++i) coeff(i) += o.coeff(i);
    return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) {
    if (order_ != o.order_) throw Error(Errc::order_mismatch, "lambda truncation orders differ");
    for (int i = 0; i <= order_; ++i) coeff(i) -= o.coeff(i);
    return *this;
}

LambdaPoly& LambdaPoly::operator*=(const Rat& c) {
    for (int i = 0; i <= order_; ++i) coeff(i) *= c;
    return *this;
}

LambdaPoly lp_mul(const LambdaPoly& u, const LambdaPoly& v) {
    if (u.order() != v.order())
        throw Error(Errc::order_mismatch, "lambda truncation orders differ");
    LambdaPoly out(u.order());
    for (int i = 0; i <= u.order(); ++i)
        for (int j = 0; i + j <= u.order(); ++j)
            out.coeff(i + j) += concat(u.coeff(i), v.coeff(j));
    return out;
}

LambdaPoly inv_R(int order) {
    LambdaPoly out(order);
    Word w;
    for (int i = 0; i <= order; ++i) {
        out.coeff(i) = LinComb::of(w, Rat(i % 2 == 0 ? 1 : -1));
        w += "yx";
    }
    return out;
}

LambdaPoly tau(const LambdaPoly& u) {
    const int N = u.order();
    // Letter images: tau(x) = R y, tau(y) = x (1 + yx L).
    const LambdaPoly tau_x = lp_mul(inv_R(N), LambdaPoly::from_word("y", N));
    LambdaPoly one_plus = LambdaPoly::one(N);
    one_plus += lp_mul(LambdaPoly::from_word("yx", N), LambdaPoly::lambda(N));
    const LambdaPoly tau_y = lp_mul(LambdaPoly::from_word("x", N), one_plus);

    LambdaPoly out(N);
    for (int deg = 0; deg <= N; ++deg) {
        for (const auto& [w, c] : u.coeff(deg).terms()) {
            // Anti-automorphism: image letters multiply in reversed order.
            LambdaPoly img = LambdaPoly::one(N);
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                img = lp_mul(img, *it == 'x' ? tau_x : tau_y);
            for (int j = 0; deg + j <= N; ++j) {
                LinComb piece = img.coeff(j);
                piece *= c;
                out.coeff(deg + j) += piece;
            }
        }
    }
    return out;
}

LambdaPoly sandwich(const LambdaPoly& w) {
    const int N = w.order();
    return lp_mul(lp_mul(LambdaPoly::from_word("y", N), w), LambdaPoly::from_word("x", N));
}

std::vector<std::vector<std::pair<Index, Rat>>> to_index_terms(const LambdaPoly& u) {
    std::vector<std::vector<std::pair<Index, Rat>>> out(static_cast<size_t>(u.order()) + 1);
    for (int deg = 0; deg <= u.order(); ++deg) {
        for (const auto& [w, c] : u.coeff(deg).terms()) {
            if (w.empty() || w.front() != 'y' || w.back() != 'x')
                throw Error(Errc::non_admissible_monomial,
                            "word '" + w + "' at lambda-degree " + std::to_string(deg) +
                                " is not of the form y...x");
            out[static_cast<size_t>(deg)].emplace_back(from_word(w), c);
        }
    }
    return out;
}

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, int order) : s_(text), order_(order) {}

    LambdaPoly run() {
        LambdaPoly v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;
    int order_;

    [[noreturn]] void fail(const std::string& what) {
        throw Error(Errc::syntax_error,
                    what + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool at_atom_start() {
        char c = peek();
        return c == 'x' || c == 'y' || c == 'L' || c == 'R' || c == '(' ||
               std::isdigit(static_cast<unsigned char>(c));
    }

    LambdaPoly expr() {
        LambdaPoly acc = term();
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                LambdaPoly t = term();
                if (c == '+')
                    acc += t;
                else
                    acc -= t;
            } else {
                return acc;
            }
        }
    }

    LambdaPoly term() {
        if (!at_atom_start()) fail("expected an atom");
        LambdaPoly acc = factor();
        while (at_atom_start()) acc = lp_mul(acc, factor());
        return acc;
    }

    LambdaPoly factor() {
        LambdaPoly base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            unsigned long e = parse_uint();
            LambdaPoly acc = LambdaPoly::one(order_);
            for (unsigned long i = 0; i < e; ++i) acc = lp_mul(acc, base);
            return acc;
        }
        return base;
    }

    LambdaPoly atom() {
        char c = peek();
        switch (c) {
            case 'x':
                ++pos_;
                return LambdaPoly::from_word("x", order_);
            case 'y':
                ++pos_;
                return LambdaPoly::from_word("y", order_);
            case 'L':
                ++pos_;
                return LambdaPoly::lambda(order_);
            case 'R':
                ++pos_;
                return inv_R(order_);
            case '(': {
                ++pos_;
                LambdaPoly v = expr();
                if (peek() != ')') fail("expected ')'");
                ++pos_;
                return v;
            }
            default:
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    Rat r = parse_rational();
                    LambdaPoly v = LambdaPoly::one(order_);
                    v *= r;
                    return v;
                }
                fail("expected an atom");
        }
    }

    unsigned long parse_uint() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected an unsigned integer");
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
        return v;
    }

    Rat parse_rational() {
        BigInt num(static_cast<long>(parse_uint()));
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            BigInt den(static_cast<long>(parse_uint()));
            if (den == 0) fail("zero denominator");
            return Rat(num) / Rat(den);
        }
        return Rat(num);
    }
};

}  // namespace

LambdaPoly parse_expr(std::string_view text, int order) {
    return ExprParser(text, order).run();
}

std::string to_string(const LambdaPoly& u) {
    std::string out;
    bool first = true;
    for (int deg = 0; deg <= u.order(); ++deg) {
        for (const auto& [w, c] : u.coeff(deg).terms()) {
            Rat a = c < 0 ? Rat(-c) : c;
            if (first) {
                if (c < 0) out += "- ";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            std::string body = w;
            if (deg == 1)
                body += body.empty() ? "L" : " L";
            else if (deg > 1)
                body += (body.empty() ? "L^" : " L^") + std::to_string(deg);
            if (a == 1 && !body.empty())
                out += body;
            else if (body.empty())
                out += rat_str(a);
            else
                out += rat_str(a) + " " + body;
        }
    }
    if (first) out = "0";
    return out;
}

}  // namespace qmzv
