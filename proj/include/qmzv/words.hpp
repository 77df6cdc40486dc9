#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmzv/indices.hpp"
#include "qmzv/rational.hpp"

namespace qmzv {

/// A word over the alphabet {x, y}; "" is the empty word.
using Word = std::string;

bool valid_word(std::string_view w);

/// Finite rational linear combination of words.  Zero coefficients are never
/// stored; all arithmetic is exact.
class LinComb {
public:
    LinComb() = default;
    static LinComb of(const Word& w, const Rat& c = Rat(1));

    bool zero() const { return terms_.empty(); }
    const std::map<Word, Rat>& terms() const { return terms_; }

    void add_term(const Word& w, const Rat& c);
    LinComb& operator+=(const LinComb& o);
    LinComb& operator-=(const LinComb& o);
    LinComb& operator*=(const Rat& c);

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Rat& c, LinComb a) { return a *= c; }

    /// Noncommutative product: words concatenate, coefficients multiply.
    friend LinComb concat(const LinComb& a, const LinComb& b);

    friend bool operator==(const LinComb&, const LinComb&) = default;

private:
    std::map<Word, Rat> terms_;
};

/// Element of Q<x,y>[[lambda]] truncated at lambda^N: coefficient i is the
/// LinComb at lambda-degree i.  Products truncate degrees above N.
class LambdaPoly {
public:
    explicit LambdaPoly(int order);
    static LambdaPoly zero(int order);
    static LambdaPoly one(int order);
    static LambdaPoly from_word(const Word& w, int order);
    static LambdaPoly lambda(int order);

    int order() const { return order_; }
    const LinComb& coeff(int degree) const { return coeffs_[static_cast<size_t>(degree)]; }
    LinComb& coeff(int degree) { return coeffs_[static_cast<size_t>(degree)]; }
    bool zero_poly() const;

    LambdaPoly& operator+=(const LambdaPoly& o);
    LambdaPoly& operator-=(const LambdaPoly& o);
    LambdaPoly& operator*=(const Rat& c);

    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
    friend LambdaPoly operator*(const Rat& c, LambdaPoly a) { return a *= c; }

    friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

private:
    int order_;
    std::vector<LinComb> coeffs_;  // size order_ + 1
};

/// Noncommutative product in A mod lambda^{N+1}; throws OrderMismatch if the
/// truncation orders differ.
LambdaPoly lp_mul(const LambdaPoly& u, const LambdaPoly& v);

/// (1+yx*lambda)^{-1} = sum_{i<=N} (-1)^i (yx)^i lambda^i.
LambdaPoly inv_R(int order);

/// The anti-automorphism tau_lambda with tau(x) = (1+yx*lambda)^{-1} y,
/// tau(y) = x (1+yx*lambda), tau(lambda) = lambda; words map through the
/// letter images in reversed order.
LambdaPoly tau(const LambdaPoly& u);

/// y * w * x; every monomial of the result starts with y and ends with x.
LambdaPoly sandwich(const LambdaPoly& w);

/// Per lambda-degree, the (admissible index, coefficient) list of a poly all
/// of whose monomials start with y and end with x.  Throws
/// NonAdmissibleMonomial naming the offending word and degree.
std::vector<std::vector<std::pair<Index, Rat>>> to_index_terms(const LambdaPoly& u);

/// Expression grammar over A:
///   expr   := term (('+'|'-') term)*
///   term   := factor+                 (juxtaposition = product)
///   factor := atom ('^' uint)?
///   atom   := 'x' | 'y' | 'L' | 'R' | rational | '(' expr ')'
/// where L is lambda, R is (1+yx*lambda)^{-1}, and rationals are 'p' or
/// 'p/q'.  Throws SyntaxError with a byte position.
LambdaPoly parse_expr(std::string_view text, int order);

/// Canonical printing: degree-ascending, words lexicographic within each
/// degree, coefficients as p/q, lambda printed as L.
std::string to_string(const LambdaPoly& u);

}  // namespace qmzv
