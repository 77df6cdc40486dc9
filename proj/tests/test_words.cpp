#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qmzv/errors.hpp"
#include "qmzv/indices.hpp"
#include "qmzv/words.hpp"

using namespace qmzv;

namespace {

LambdaPoly word(const Word& w, int order) { return LambdaPoly::from_word(w, order); }

// Small random element: up to three monomials of degree <= 2 with random
// lambda-degrees and rational coefficients.
LambdaPoly random_poly(std::mt19937_64& rng, int order) {
    static const std::vector<Word> pool = {"", "x", "y", "xx", "xy", "yx", "yy"};
    LambdaPoly u = LambdaPoly::zero(order);
    int monos = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < monos; ++i) {
        int deg = static_cast<int>(rng() % static_cast<unsigned>(order + 1));
        Rat c(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 4));
        if (rng() % 2) c = -c;
        u.coeff(deg).add_term(pool[rng() % pool.size()], c);
    }
    return u;
}

}  // namespace

TEST_CASE("LinComb stores no zeros and validates letters") {
    LinComb c;
    c.add_term("xy", Rat(1, 2));
    c.add_term("xy", Rat(-1, 2));
    CHECK(c.zero());
    CHECK_THROWS_AS(c.add_term("xz", Rat(1)), Error);

    LinComb a = LinComb::of("x");
    LinComb b = LinComb::of("y");
    CHECK(concat(a, b) == LinComb::of("xy"));
}

TEST_CASE("lp_mul concatenates words and respects truncation") {
    LambdaPoly xy = lp_mul(word("x", 3), word("y", 3));
    CHECK(xy == word("xy", 3));

    // Degrees above N vanish: L^2 * L^2 at N=3 is zero.
    LambdaPoly l2 = lp_mul(LambdaPoly::lambda(3), LambdaPoly::lambda(3));
    CHECK(lp_mul(l2, l2).zero_poly());

    try {
        lp_mul(word("x", 2), word("y", 3));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::order_mismatch);
    }
}

TEST_CASE("lp_mul is associative on random triples at N=5") {
    std::mt19937_64 rng(332215);
    for (int trial = 0; trial < 20; ++trial) {
        LambdaPoly a = random_poly(rng, 5);
        LambdaPoly b = random_poly(rng, 5);
        LambdaPoly c = random_poly(rng, 5);
        CHECK(lp_mul(lp_mul(a, b), c) == lp_mul(a, lp_mul(b, c)));

        // Q-bilinearity in the left argument.
        LambdaPoly d = random_poly(rng, 5);
        CHECK(lp_mul(a + d, b) == lp_mul(a, b) + lp_mul(d, b));
        CHECK(lp_mul(Rat(3, 7) * a, b) == Rat(3, 7) * lp_mul(a, b));
    }
}

TEST_CASE("inv_R is the truncated geometric series of (1+yxL)^-1") {
    CHECK(inv_R(0) == LambdaPoly::one(0));

    LambdaPoly expect = LambdaPoly::zero(2);
    expect.coeff(0).add_term("", Rat(1));
    expect.coeff(1).add_term("yx", Rat(-1));
    expect.coeff(2).add_term("yxyx", Rat(1));
    CHECK(inv_R(2) == expect);

    for (int n = 0; n <= 6; ++n) {
        LambdaPoly r = lp_mul(word("yx", n), LambdaPoly::lambda(n));
        r += LambdaPoly::one(n);  // 1 + yx L
        CHECK(lp_mul(r, inv_R(n)) == LambdaPoly::one(n));
        CHECK(lp_mul(inv_R(n), r) == LambdaPoly::one(n));
    }
}

TEST_CASE("tau on generators and short words") {
    // tau(y) = x(1 + yxL) = x + xyx L.
    LambdaPoly ty = tau(word("y", 3));
    LambdaPoly expect_y = word("x", 3) + lp_mul(word("xyx", 3), LambdaPoly::lambda(3));
    CHECK(ty == expect_y);

    // tau(x) = (1+yxL)^-1 y.
    CHECK(tau(word("x", 4)) == lp_mul(inv_R(4), word("y", 4)));

    // The two-letter blocks are fixed points.
    CHECK(tau(word("xy", 5)) == word("xy", 5));
    CHECK(tau(word("yx", 5)) == word("yx", 5));

    // tau fixes lambda and the inverse factor.
    CHECK(tau(LambdaPoly::lambda(4)) == LambdaPoly::lambda(4));
    CHECK(tau(inv_R(5)) == inv_R(5));
}

TEST_CASE("tau is an anti-automorphism and an involution") {
    std::mt19937_64 rng(770513);
    for (int trial = 0; trial < 15; ++trial) {
        LambdaPoly u = random_poly(rng, 5);
        LambdaPoly v = random_poly(rng, 5);
        CHECK(tau(lp_mul(u, v)) == lp_mul(tau(v), tau(u)));
    }
    for (int trial = 0; trial < 15; ++trial) {
        LambdaPoly u = random_poly(rng, 6);
        CHECK(tau(tau(u)) == u);
    }
}

TEST_CASE("sandwich wraps in y...x") {
    CHECK(sandwich(LambdaPoly::one(2)) == word("yx", 2));
    CHECK(sandwich(word("x", 2)) == word("yxx", 2));

    // sandwich(tau(x)) expands to (1,2) - (1,2,2) L + (1,2,2,2) L^2.
    auto terms = to_index_terms(sandwich(tau(word("x", 2))));
    REQUIRE(terms.size() == 3);
    REQUIRE(terms[0].size() == 1);
    CHECK(terms[0][0].first == Index({1, 2}));
    CHECK(terms[0][0].second == 1);
    REQUIRE(terms[1].size() == 1);
    CHECK(terms[1][0].first == Index({1, 2, 2}));
    CHECK(terms[1][0].second == -1);
    REQUIRE(terms[2].size() == 1);
    CHECK(terms[2][0].first == Index({1, 2, 2, 2}));
    CHECK(terms[2][0].second == 1);
}

TEST_CASE("to_index_terms flags monomials outside y...x") {
    CHECK(to_index_terms(sandwich(LambdaPoly::one(1)))[0] ==
          std::vector<std::pair<Index, Rat>>{{Index({2}), Rat(1)}});
    try {
        to_index_terms(word("xy", 1));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_admissible_monomial);
        CHECK(std::string(e.what()).find("xy") != std::string::npos);
    }
}

TEST_CASE("expression parser on the documented inputs") {
    CHECK(parse_expr("x", 3) == word("x", 3));
    CHECK(parse_expr("R y", 1) ==
          word("y", 1) - lp_mul(word("yxy", 1), LambdaPoly::lambda(1)));
    CHECK(parse_expr("(1 + y x L) R", 4) == LambdaPoly::one(4));
    CHECK(parse_expr("x^3", 2) == word("xxx", 2));
    CHECK(parse_expr("2/3 x y", 2) == Rat(2, 3) * word("xy", 2));
    CHECK(parse_expr("x y - y x + 1/2", 3) ==
          word("xy", 3) - word("yx", 3) + Rat(1, 2) * LambdaPoly::one(3));
    CHECK(parse_expr("L^2", 4) == lp_mul(LambdaPoly::lambda(4), LambdaPoly::lambda(4)));
}

TEST_CASE("parser reports positions on bad input") {
    auto fails_at = [](const char* text, const char* needle) {
        try {
            parse_expr(text, 3);
            return false;
        } catch (const Error& e) {
            return e.code() == Errc::syntax_error &&
                   std::string(e.what()).find(needle) != std::string::npos;
        }
    };
    CHECK(fails_at("x + ", "position 4"));
    CHECK(fails_at("z", "position 0"));
    CHECK(fails_at("(x", "position 2"));
    CHECK(fails_at("x ) y", "position 2"));
    CHECK(fails_at("x ^ y", "position 4"));
}

TEST_CASE("printing round-trips through the parser") {
    std::mt19937_64 rng(118821);
    CHECK(to_string(LambdaPoly::zero(3)) == "0");
    CHECK(to_string(word("yx", 0)) == "yx");
    CHECK(to_string(inv_R(2)) == "1 - yx L + yxyx L^2");
    for (int trial = 0; trial < 20; ++trial) {
        LambdaPoly u = random_poly(rng, 4);
        // The grammar has no unary minus; anchor the leading sign.
        u += Rat(100) * LambdaPoly::one(4);
        CHECK(parse_expr(to_string(u), 4) == u);
    }
}

TEST_CASE("degree-0 block products: tau reverses blocks and lands on the dual") {
    // Enumerate all products of <= 5 blocks from {xy, yx}.
    for (int len = 1; len <= 5; ++len) {
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
            Word w;
            std::vector<std::string> blocks;
            for (int i = 0; i < len; ++i) {
                blocks.push_back((mask >> i) & 1 ? "yx" : "xy");
                w += blocks.back();
            }
            LambdaPoly u = word(w, 2);
            LambdaPoly tu = tau(u);

            // Block-reversed product.
            Word rev;
            for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) rev += *it;
            CHECK(tu == word(rev, 2));

            // Bridge to index duality: index(y tau(w) x) = dual(index(y w x)).
            Index kw = from_word("y" + w + "x");
            Index kt = from_word("y" + rev + "x");
            CHECK(kt == dual(kw));
            CHECK(is_bbbl(kw).has_value());
        }
    }
}
