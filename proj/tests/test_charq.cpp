#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "voa/characters.hpp"
#include "voa/errors.hpp"
#include "voa/grammar.hpp"
#include "voa/presentations.hpp"

using namespace voa;

namespace {

constexpr int D = kCharDenom;

Rat coeff(const QSeries& s, const Rat& e, int ez, int ew) {
    Laurent l = s.at(e);
    auto it = l.terms().find({ez, ew});
    return it == l.terms().end() ? Rat(0) : it->second;
}

QSeries random_series(std::mt19937& rng, const Rat& order) {
    std::uniform_int_distribution<int> nterms(1, 6), num(-4, 4), den(1, 4), deg(-2, 2);
    QSeries s(D, order);
    for (int t = 0; t < nterms(rng); ++t) {
        Rat e = Rat(num(rng), den(rng));
        e.canonicalize();
        Rat es(e * Rat(D));
        if (es.get_den() != 1) continue;
        s.add_term(e, Laurent::monomial(deg(rng), deg(rng), Rat(num(rng))));
    }
    return s;
}

} // namespace

TEST_CASE("theta series values") {
    QSeries t = theta_series(D, 1, 0, Rat(5, 2));
    CHECK(coeff(t, Rat(0), 0, 0) == 1);
    CHECK(coeff(t, Rat(1, 2), 1, 0) == 1);
    CHECK(coeff(t, Rat(1, 2), -1, 0) == 1);
    CHECK(coeff(t, Rat(2), 2, 0) == 1);
    CHECK(coeff(t, Rat(2), -2, 0) == 1);
    CHECK(t.at(Rat(1)).is_zero());

    // specialization z = 1 to order q^3: 1 + 2 q^(1/2) + 2 q^2
    QSeries t1 = theta_series(D, 1, 0, Rat(3)).set_var(0, Rat(1));
    CHECK(coeff(t1, Rat(0), 0, 0) == 1);
    CHECK(coeff(t1, Rat(1, 2), 0, 0) == 2);
    CHECK(coeff(t1, Rat(2), 0, 0) == 2);

    // second z-derivative at z = 1: sum m(m-1) q^(m^2/2) = 2 q^(1/2) + 8 q^2 + ...
    QSeries dd = theta_series(D, 1, 0, Rat(3)).derive_var(0).derive_var(0).set_var(0, Rat(1));
    CHECK(coeff(dd, Rat(1, 2), 0, 0) == 2);
    CHECK(coeff(dd, Rat(2), 0, 0) == 8);
    CHECK(dd.first_difference(theta_second_derivative(D, Rat(3))) == std::nullopt);
}

TEST_CASE("eta and the Weyl denominator") {
    // eta / q^(1/24) = 1 - q - q^2 + 0 q^3 + ...
    QSeries e = eta_series(D, Rat(4)).shifted(Rat(-1, 24));
    CHECK(coeff(e, Rat(0), 0, 0) == 1);
    CHECK(coeff(e, Rat(1), 0, 0) == -1);
    CHECK(coeff(e, Rat(2), 0, 0) == -1);
    CHECK(coeff(e, Rat(3), 0, 0) == 0);

    // Pi(z)/(q^(1/8)(z - 1/z)): the product part, checked against a direct
    // factor-by-factor expansion: 1 - (1+z^2+z^-2) q + 0 q^2 + ...
    QSeries p = weyl_denominator(D, 0, Rat(3)).shifted(Rat(-1, 8)).divide_v_minus_vinv(0);
    CHECK(coeff(p, Rat(0), 0, 0) == 1);
    CHECK(coeff(p, Rat(1), 0, 0) == -1);
    CHECK(coeff(p, Rat(1), 2, 0) == -1);
    CHECK(coeff(p, Rat(1), -2, 0) == -1);
    CHECK(p.at(Rat(2)).is_zero());
    QSeries direct = QSeries::unit(D, Rat(3));
    for (long n = 1; n < 3; ++n)
        for (int c : {2, 0, -2}) {
            QSeries f = QSeries::unit(D, Rat(3));
            f.add_term(Rat(n), Laurent::monomial(c, 0, Rat(-1)));
            direct = direct * f;
        }
    CHECK(p.first_difference(direct) == std::nullopt);

    // parity of z - 1/z under the supercharacter substitution
    QSeries pi = weyl_denominator(D, 0, Rat(3));
    CHECK(pi.negate_var(0).first_difference(pi.scaled(Rat(-1))) == std::nullopt);
}

TEST_CASE("sch[bc] lowest coefficient") {
    QSeries s = sch_bc(D, 0, Rat(2)).shifted(Rat(-1, 12));
    // constant term of the product: (1 - z^-2)
    CHECK(coeff(s, Rat(0), 0, 0) == 1);
    CHECK(coeff(s, Rat(0), -2, 0) == -1);
}

TEST_CASE("weyl character series") {
    // m = 0: coefficient of q^1 is 1 + z^2 + z^-2 (three weight-1 currents)
    QSeries v0 = weyl_char_series(0, 0, Rat(3));
    CHECK(coeff(v0, Rat(1), 0, 0) == 1);
    CHECK(coeff(v0, Rat(1), 2, 0) == 1);
    CHECK(coeff(v0, Rat(1), -2, 0) == 1);
    // m = 1 leading term: chi_1 = z + z^-1
    QSeries v1 = weyl_char_series(0, 1, Rat(3));
    CHECK(coeff(v1, Rat(0), 1, 0) == 1);
    CHECK(coeff(v1, Rat(0), -1, 0) == 1);
    CHECK(coeff(v1, Rat(0), 3, 0) == 0);
}

TEST_CASE("branching numerator at q^(1/2)") {
    QSeries numer = theta_series(D, 1, 1, Rat(2)) - theta_series(D, 1, -1, Rat(2));
    CHECK(coeff(numer, Rat(1, 2), 1, 1) == 1);
    CHECK(coeff(numer, Rat(1, 2), -1, -1) == 1);
    CHECK(coeff(numer, Rat(1, 2), 1, -1) == -1);
    CHECK(coeff(numer, Rat(1, 2), -1, 1) == -1);
}

TEST_CASE("products agree with a naive convolution oracle") {
    std::mt19937 rng(91);
    for (int t = 0; t < 60; ++t) {
        QSeries a = random_series(rng, Rat(5));
        QSeries b = random_series(rng, Rat(5));
        QSeries ab = a * b;
        // naive convolution, truncated to the product's own validity
        QSeries naive(D, ab.order());
        for (const auto& [ea, ca] : a.coef())
            for (const auto& [eb, cb] : b.coef())
                naive.add_term(Rat(ea + eb) / Rat(D), ca * cb);
        CHECK(ab.first_difference(naive) == std::nullopt);
        QSeries sum = a + b;
        QSeries naive_sum(D, sum.order());
        for (const auto& [e, c] : a.coef()) naive_sum.add_term(Rat(e) / Rat(D), c);
        for (const auto& [e, c] : b.coef()) naive_sum.add_term(Rat(e) / Rat(D), c);
        CHECK(sum.first_difference(naive_sum) == std::nullopt);
    }
}

TEST_CASE("series inverse") {
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        QSeries a = random_series(rng, Rat(4));
        if (a.is_zero() || !a.coef().begin()->second.is_monomial()) continue;
        QSeries inv = a.inverse();
        QSeries prod = a * inv;
        auto diff = prod.first_difference(QSeries::unit(D, prod.order()));
        CHECK(diff == std::nullopt);
    }
    CHECK_THROWS_AS(QSeries(D, Rat(2)).inverse(), Error);
}

TEST_CASE("prefactor collapse") {
    CtxPtr ctx = standard_context();
    QSeries s = QSeries::unit(D, Rat(2)).with_prefactor(
        parse_scalar("(a+1)/(a+1) - 1/2", ctx));
    QSeries c = s.collapse_prefactor(Rat(1, 2));
    CHECK(c.valuation() == Rat(1, 2));
    CHECK_THROWS_AS(s.collapse_prefactor(Rat(1, 4)), Error);
    // a residual parameter dependence must not collapse
    QSeries bad = QSeries::unit(D, Rat(2)).with_prefactor(parse_scalar("a/8", ctx));
    CHECK_THROWS_AS(bad.collapse_prefactor(Rat(1, 8)), Error);
}

TEST_CASE("hopital example values") {
    // both sides equal q^(1/2) + 4 q^2 + 9 q^(9/2) to order q^(9/2)
    auto items = hopital_limit_check(Rat(5));
    for (const auto& it : items) CHECK(it.status == CheckItem::Status::Pass);
    QSeries half = theta_second_derivative(D, Rat(5)).scaled(Rat(1, 2));
    CHECK(coeff(half, Rat(1, 2), 0, 0) == 1);
    CHECK(coeff(half, Rat(2), 0, 0) == 4);
    CHECK(coeff(half, Rat(9, 2), 0, 0) == 9);
}

TEST_CASE("identity suites at q^10") {
    for (auto* fn : {&branching_check, &small_n4_multiplicity_check, &qhr_char_check_first,
                     &qhr_char_check_second, &supercharacter_check}) {
        auto items = (*fn)(Rat(10));
        for (const auto& it : items) {
            if (it.status == CheckItem::Status::Fail) MESSAGE(it.label, ": ", it.residual);
            CHECK(it.status != CheckItem::Status::Fail);
        }
    }
}

TEST_CASE("weyl characters against the counting oracle") {
    auto items = weyl_pbw_oracle_check(Rat(8), 3);
    for (const auto& it : items) {
        if (it.status == CheckItem::Status::Fail) MESSAGE(it.label, ": ", it.residual);
        CHECK(it.status == CheckItem::Status::Pass);
    }
}
