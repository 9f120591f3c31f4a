#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voa/errors.hpp"
#include "voa/grammar.hpp"
#include "voa/presentations.hpp"
#include "voa/scalar.hpp"

#include <random>

using namespace voa;

namespace {

CtxPtr ctx() {
    static CtxPtr c = standard_context();
    return c;
}

Scalar S(const std::string& text) { return parse_scalar(text, ctx()); }

// Small random scalars for the ring-axiom property checks.
Scalar random_scalar(std::mt19937& rng, bool with_roots) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), pick(0, 3);
    auto poly = [&] {
        Poly p(2);
        for (int t = 0; t < 3; ++t) {
            Mono m{deg(rng), deg(rng)};
            p.set_term(m, p.terms().count(m) ? Rat(1) : Rat(coef(rng)));
        }
        return p;
    };
    Scalar s = Scalar::from_ratfun(ctx(), RatFun::from_poly(poly()));
    if (with_roots && pick(rng) == 0) s = s * Scalar::root(ctx(), "s2a");
    if (with_roots && pick(rng) == 1) s = s + Scalar::root(ctx(), "I").scaled(Rat(coef(rng)));
    return s;
}

} // namespace

TEST_CASE("gcd-reduced canonical fractions") {
    // (a+1)/(a+1) + 0 = 1
    CHECK(S("(a+1)/(a+1)") == S("1"));
    // k/(a+1) + k*a/(a+1) = k
    CHECK(S("k/(a+1) + k*a/(a+1)") == S("k"));
    // (1/(3+2k))*(3+2k) = 1
    CHECK((S("1/(3+2*k)") * S("3+2*k")).is_one());
}

TEST_CASE("root symbols reduce eagerly") {
    Scalar r = Scalar::root(ctx(), "s2a");
    // sqrt(2a)*sqrt(2a)/2 = a, cross-checked by squaring.
    Scalar lhs = (r * r).scaled(Rat(1, 2));
    CHECK(lhs == S("a"));
    CHECK(lhs * lhs == S("a^2"));

    Scalar i = Scalar::root(ctx(), "I");
    CHECK(i * i == S("-1"));

    // ((a+1)/sqrt(2a))^2 = (a+1)^2/(2a), the x'y' normalization square.
    Scalar x = S("(a+1)") / r;
    CHECK(x * x == S("(a+1)^2/(2*a)"));
}

TEST_CASE("inverses") {
    CHECK(S("a+1").inverse() == S("1/(a+1)"));
    // invert(sqrt(2a)) = sqrt(2a)/(2a)
    Scalar r = Scalar::root(ctx(), "s2a");
    CHECK(r.inverse() == r * S("1/(2*a)"));
    CHECK((r.inverse() * r).is_one());
    // mixed-component inverse: (1 + I)^(-1) * (1 + I) = 1
    Scalar z = S("1") + Scalar::root(ctx(), "I");
    CHECK((z.inverse() * z).is_one());
    CHECK_THROWS_AS(S("0").inverse(), Error);
}

TEST_CASE("specialization") {
    // -2((a+1)k/a + 1) at k = 1/2 -> -(3a+1)/a; checked at a = 2 as well.
    Scalar x = S("-2*((a+1)*k/a + 1)");
    Scalar sp = x.specialize({{"k", Rat(1, 2)}});
    CHECK(sp == S("-(3*a+1)/a"));
    CHECK(sp.specialize({{"a", Rat(2)}}) == S("-7/2"));
    // c = -6k-3 at k = 1/2 -> -6
    CHECK(S("-6*k-3").specialize({{"k", Rat(1, 2)}}) == S("-6"));
    // untouched parameter stays symbolic
    CHECK(S("1 + 3/a").specialize({{"k", Rat(5)}}) == S("1 + 3/a"));
    // pole: invert(k - 1/2) at k = 1/2
    CHECK_THROWS_AS(S("k - 1/2").inverse().specialize({{"k", Rat(1, 2)}}), Error);
    try {
        S("1/(k-1/2)").specialize({{"k", Rat(1, 2)}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Pole);
        CHECK(std::string(e.what()).find("k") != std::string::npos);
    }
}

TEST_CASE("rational-function substitution") {
    // level chain: -((a+1)k+1) at k = 1/2 equals -(a+3)/2
    Scalar lvl = S("-((a+1)*k+1)");
    CHECK(lvl.specialize({{"k", Rat(1, 2)}}) == S("-(a+3)/2"));
    // N=1 central charge chain at k -> -(a+3)/2
    Scalar c = S("-3*(1+2*k)*(5+4*k)/(2*(3+2*k))");
    RatFun kval = parse_ratfun("-(a+3)/2", ctx());
    CHECK(c.substitute("k", kval) == S("3/2 + 3*(a + 2 + 1/a)"));
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        Scalar x = random_scalar(rng, true);
        Scalar y = random_scalar(rng, true);
        Scalar z = random_scalar(rng, true);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x - x).is_zero());
    }
}

TEST_CASE("specialize commutes with ring operations away from poles") {
    std::mt19937 rng(777);
    std::map<std::string, Rat> at{{"k", Rat(3)}, {"a", Rat(5)}};
    for (int trial = 0; trial < 40; ++trial) {
        Scalar x = random_scalar(rng, false);
        Scalar y = random_scalar(rng, false);
        try {
            CHECK((x + y).specialize(at) == x.specialize(at) + y.specialize(at));
            CHECK((x * y).specialize(at) == x.specialize(at) * y.specialize(at));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Pole); // random denominator hit the point
        }
    }
}

TEST_CASE("declaration mismatch is an error") {
    CtxPtr other = ScalarContext::make({"t"});
    Scalar x = S("k");
    Scalar y = Scalar::param(other, "t");
    CHECK_THROWS_AS(x + y, Error);
}

TEST_CASE("scalar printing round-trips") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 40; ++trial) {
        Scalar x = random_scalar(rng, true);
        CHECK(parse_scalar(x.str(), ctx()) == x);
    }
}
