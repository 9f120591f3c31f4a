#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/mode_oracle.hpp"
#include "voa/grammar.hpp"
#include "voa/presentations.hpp"

using namespace voa;

namespace {

CtxPtr ctx() {
    static CtxPtr c = standard_context();
    return c;
}

// beta-gamma tensor bc ghost system, the realization weights.
const Algebra& bgbc() {
    static Algebra alg = tensor(beta_gamma(ctx(), Rat(1), Rat(0)),
                                bc_system(ctx(), Rat(3, 2), Rat(-1, 2)), "bgbc");
    return alg;
}

FieldExpr parse(const Algebra& alg, const std::string& s) { return parse_field_expr(s, alg); }

FieldExpr random_expr(const Algebra& alg, std::mt19937& rng, int max_terms = 2, int max_len = 3,
                      int max_der = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms), len(1, max_len);
    std::uniform_int_distribution<int> gen(0, alg.ngens() - 1), der(0, max_der), coef(-3, 3);
    FieldExpr e = FieldExpr::zero(alg.ctx());
    for (int t = 0; t < nterms(rng); ++t) {
        Word w;
        int L = len(rng);
        for (int i = 0; i < L; ++i) w.push_back(Letter{gen(rng), der(rng)});
        int c = coef(rng);
        if (c == 0) c = 1;
        e += FieldExpr::term(alg.ctx(), w, Scalar::from_int(alg.ctx(), c));
    }
    return e;
}

} // namespace

TEST_CASE("formal derivative") {
    const Algebra& alg = bgbc();
    CHECK(FieldExpr::vacuum(ctx()).derived().is_zero());
    FieldExpr ee = parse(alg, ":beta gamma:");
    CHECK(ee.derived() == parse(alg, ":d(beta) gamma: + :beta d(gamma):"));
    CHECK(parse(alg, "d(beta)").derived() == parse(alg, "d(d(beta))"));
}

TEST_CASE("ghost normal ordering from quasi-commutativity") {
    // bc system: :cb: = -:bc: (correction term is d of the vacuum).
    const Algebra& alg = bgbc();
    FieldExpr b = parse(alg, "b"), c = parse(alg, "c");
    CHECK(alg.normal_order(c, b) == alg.canonicalize(-parse(alg, ":b c:")));
    // beta-gamma: :gamma beta: = :beta gamma: exactly.
    FieldExpr beta = parse(alg, "beta"), gamma = parse(alg, "gamma");
    CHECK(alg.normal_order(gamma, beta) == alg.normal_order(beta, gamma));
    // vacuum is a unit for the normally ordered product
    FieldExpr one = FieldExpr::vacuum(ctx());
    FieldExpr x = parse(alg, ":beta b c:");
    CHECK(alg.normal_order(one, x) == alg.canonicalize(x));
    CHECK(alg.normal_order(x, one) == alg.canonicalize(x));
}

TEST_CASE("vacuum bracket is regular") {
    const Algebra& alg = bgbc();
    CHECK(alg.bracket(FieldExpr::vacuum(ctx()), parse(alg, "b")).empty());
    CHECK(alg.bracket(parse(alg, ":beta gamma:"), FieldExpr::vacuum(ctx())).empty());
}

TEST_CASE("nth products") {
    const Algebra& alg = bgbc();
    // j = -1 recovers the normally ordered product
    FieldExpr a = parse(alg, "beta"), b = parse(alg, "b");
    CHECK(alg.nth_product(a, -1, b) == alg.normal_order(a, b));
    // beta_(0) gamma = 1, gamma_(0) beta = -1
    CHECK(alg.nth_product(parse(alg, "beta"), 0, parse(alg, "gamma")) ==
          FieldExpr::vacuum(ctx()));
    CHECK(alg.nth_product(parse(alg, "gamma"), 0, parse(alg, "beta")) ==
          alg.canonicalize(-FieldExpr::vacuum(ctx())));
}

TEST_CASE("unknown generator error") {
    const Algebra& alg = bgbc();
    CHECK_THROWS_AS(parse(alg, "psi"), Error);
    CHECK_THROWS_AS(alg.require_gen("q"), Error);
}

TEST_CASE("mode oracle agrees on states of canonicalization") {
    const Algebra& alg = bgbc();
    oracle::ModeModel model(alg);
    std::mt19937 rng(2024);
    for (int t = 0; t < 120; ++t) {
        FieldExpr e = random_expr(alg, rng);
        CHECK(model.state_of(alg.canonicalize(e)) == model.state_of(e));
    }
}

TEST_CASE("mode oracle agrees with normal_order and bracket (200 random pairs)") {
    const Algebra& alg = bgbc();
    oracle::ModeModel model(alg);
    std::mt19937 rng(4711);
    int bracket_checks = 0;
    for (int t = 0; t < 200; ++t) {
        FieldExpr x = random_expr(alg, rng, 2, 2, 2);
        FieldExpr y = random_expr(alg, rng, 2, 2, 2);
        // :xy: corresponds to x_(-1) applied to the state of y
        oracle::State want = model.apply(x, -1, model.state_of(y));
        CHECK(model.state_of(alg.normal_order(x, y)) == want);
        // all singular products x_(j) y, j >= 0 (5 modes)
        OpeSingular s = alg.bracket(x, y);
        for (int j = 0; j <= std::max(4, s.max_pole()); ++j) {
            oracle::State got = model.state_of(s.nth(j, alg.ctx()));
            oracle::State ref = model.apply(x, j, model.state_of(y));
            CHECK(got == ref);
            ++bracket_checks;
        }
    }
    CHECK(bracket_checks >= 1000);
}

TEST_CASE("commutator formula holds exactly") {
    // :ab: - (-1)^(p a p b) :ba: = sum_j (-1)^j d^(j+1)(a_(j)b)/(j+1)!
    const Algebra& alg = bgbc();
    std::mt19937 rng(31337);
    for (int t = 0; t < 60; ++t) {
        FieldExpr xs = random_expr(alg, rng, 1, 2, 1);
        FieldExpr ys = random_expr(alg, rng, 1, 2, 1);
        bool odd_pair = alg.expr_odd(xs) && alg.expr_odd(ys);
        FieldExpr lhs = alg.normal_order(xs, ys) -
                        (odd_pair ? -alg.normal_order(ys, xs) : alg.normal_order(ys, xs));
        OpeSingular s = alg.bracket(xs, ys);
        FieldExpr rhs = FieldExpr::zero(alg.ctx());
        for (const auto& [n, e] : s.poles()) {
            int j = n - 1;
            rhs += e.derived(j + 1).scaled((j % 2 ? Rat(-1) : Rat(1)) / rat_factorial(j + 1));
        }
        CHECK(alg.equal(lhs, rhs));
    }
}

TEST_CASE("quasi-associativity against the mode oracle") {
    // :(:ab:)c: = :a(:bc:): + sum_j [ :d^(j+1)a/(j+1)! (b_(j)c): +
    //   (-1)^(p(a)p(b)) :d^(j+1)b/(j+1)! (a_(j)c): ], all three routes checked
    // on the oracle's state space at specialized (parameter-free) inputs.
    const Algebra& alg = bgbc();
    oracle::ModeModel model(alg);
    std::mt19937 rng(271828);
    std::uniform_int_distribution<int> gen(0, alg.ngens() - 1), der(0, 1);
    for (int t = 0; t < 50; ++t) {
        FieldExpr a = FieldExpr::letter(alg.ctx(), gen(rng), der(rng));
        FieldExpr b = FieldExpr::letter(alg.ctx(), gen(rng), der(rng));
        FieldExpr c = FieldExpr::letter(alg.ctx(), gen(rng), der(rng));
        FieldExpr left = alg.normal_order(alg.normal_order(a, b), c);
        FieldExpr right = alg.normal_order(a, alg.normal_order(b, c));
        bool neg = alg.expr_odd(a) && alg.expr_odd(b);
        OpeSingular bc = alg.bracket(b, c), ac = alg.bracket(a, c);
        for (const auto& [n, e] : bc.poles()) {
            int j = n - 1;
            right += alg.normal_order(a.derived(j + 1).scaled(Rat(1) / rat_factorial(j + 1)), e);
        }
        for (const auto& [n, e] : ac.poles()) {
            int j = n - 1;
            FieldExpr f =
                alg.normal_order(b.derived(j + 1).scaled(Rat(1) / rat_factorial(j + 1)), e);
            right += neg ? -f : f;
        }
        CHECK(alg.equal(left, right));
        CHECK(model.state_of(left) == model.state_of(right));
    }
}

TEST_CASE("sesquilinearity of the bracket") {
    const Algebra& alg = bgbc();
    std::mt19937 rng(5150);
    for (int t = 0; t < 200; ++t) {
        FieldExpr x = random_expr(alg, rng, 1, 2, 1);
        FieldExpr y = random_expr(alg, rng, 1, 2, 1);
        OpeSingular base = alg.bracket(x, y);
        OpeSingular shifted = alg.bracket(x.derived(), y);
        int top = std::max(base.max_pole(), shifted.max_pole());
        for (int n = 1; n <= top + 1; ++n) {
            // (dx)_(j) y = -j x_(j-1) y, with j = n-1
            FieldExpr want = n >= 2 ? base.nth(n - 2, alg.ctx()).scaled(Rat(-(n - 1)))
                                    : FieldExpr::zero(alg.ctx());
            CHECK(alg.equal(shifted.nth(n - 1, alg.ctx()), want));
        }
    }
}

TEST_CASE("jacobi identity on free systems") {
    const Algebra& alg = bgbc();
    for (int a = 0; a < alg.ngens(); ++a)
        for (int b = 0; b < alg.ngens(); ++b)
            for (int c = 0; c < alg.ngens(); ++c) CHECK(alg.jacobi(a, b, c).pass);
    // abelian Heisenberg triple
    Algebra heis = heisenberg(ctx(), Scalar::param(ctx(), "k"));
    CHECK(heis.jacobi(0, 0, 0).pass);
}

TEST_CASE("skew consistency and weight/parity of shipped free tables") {
    bgbc().validate_table();
    free_fermion(ctx()).validate_table();
    affine_sl2(ctx(), Scalar::param(ctx(), "k")).validate_table();
    affine_osp12(ctx(), Scalar::param(ctx(), "k")).validate_table();
}

TEST_CASE("affine sl2 jacobi symbolic in k") {
    Algebra sl2 = affine_sl2(ctx(), Scalar::param(ctx(), "k"));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) CHECK(sl2.jacobi(a, b, c).pass);
}

TEST_CASE("affine osp(1|2) jacobi symbolic in k") {
    Algebra osp = affine_osp12(ctx(), Scalar::param(ctx(), "k"));
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c) CHECK(osp.jacobi(a, b, c).pass);
}

TEST_CASE("a deliberately corrupted table fails jacobi") {
    // drop the second-order pole of e f in affine sl2
    CtxPtr c = ctx();
    std::vector<Generator> gens{{"e", false, Rat(1)}, {"f", false, Rat(1)}, {"h", false, Rat(1)}};
    std::vector<Algebra::TableEntry> t;
    OpeSingular ef;
    ef.set_pole(1, FieldExpr::letter(c, 2));
    t.push_back({"e", "f", ef}); // missing the level term
    OpeSingular hh;
    hh.set_pole(2, FieldExpr::vacuum(c).scaled(Scalar::param(c, "k")).scaled(Rat(2)));
    t.push_back({"h", "h", hh});
    OpeSingular he;
    he.set_pole(1, FieldExpr::letter(c, 0).scaled(Rat(2)));
    t.push_back({"h", "e", he});
    OpeSingular hf;
    hf.set_pole(1, FieldExpr::letter(c, 1).scaled(Rat(-2)));
    t.push_back({"h", "f", hf});
    Algebra bad(c, gens, t, std::nullopt, "bad-sl2");
    bool any_fail = false;
    for (int a = 0; a < 3 && !any_fail; ++a)
        for (int b = 0; b < 3 && !any_fail; ++b)
            for (int g = 0; g < 3 && !any_fail; ++g) any_fail = !bad.jacobi(a, b, g).pass;
    CHECK(any_fail);
}

TEST_CASE("weight basis counts on sl2 level k") {
    Algebra sl2 = affine_sl2(ctx(), Scalar::param(ctx(), "k"));
    CHECK(sl2.weight_basis(Rat(1)).size() == 3);  // e, f, h
    CHECK(sl2.weight_basis(Rat(2)).size() == 9);  // 3 derivatives + 6 pairs
    CHECK(sl2.weight_basis(Rat(1, 2)).empty());
    CHECK(sl2.weight_basis(Rat(0)).size() == 1); // vacuum
}

TEST_CASE("shapovalov on sl2 weight 1") {
    Algebra sl2 = affine_sl2(ctx(), Scalar::param(ctx(), "k"));
    auto basis = sl2.weight_basis(Rat(1));
    auto m = sl2.shapovalov_matrix(Rat(1));
    // <e,f> = k, <h,h> = 2k, <e,e> = 0 in the standard table
    auto idx = [&](const std::string& n) {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == Word{Letter{sl2.require_gen(n), 0}}) return i;
        REQUIRE(false);
        return size_t(0);
    };
    Scalar k = Scalar::param(ctx(), "k");
    CHECK(m[idx("e")][idx("f")] == k);
    CHECK(m[idx("h")][idx("h")] == k.scaled(Rat(2)));
    CHECK(m[idx("e")][idx("e")].is_zero());
}

TEST_CASE("grammar round trip on engine output") {
    const Algebra& alg = bgbc();
    std::mt19937 rng(8888);
    for (int t = 0; t < 80; ++t) {
        FieldExpr e = alg.canonicalize(random_expr(alg, rng));
        std::string s = print_field_expr(e, alg);
        CHECK(parse(alg, s) == e);
    }
}

TEST_CASE("engine outputs are fixed points of re-canonicalization") {
    const Algebra& alg = bgbc();
    std::mt19937 rng(1123);
    for (int t = 0; t < 40; ++t) {
        FieldExpr x = random_expr(alg, rng, 2, 2, 1);
        FieldExpr y = random_expr(alg, rng, 2, 2, 1);
        FieldExpr no = alg.normal_order(x, y);
        CHECK(alg.canonicalize(no) == no);
        OpeSingular s = alg.bracket(x, y);
        for (const auto& [n, e] : s.poles()) CHECK(alg.canonicalize(e) == e);
    }
}

TEST_CASE("weight basis guards") {
    CtxPtr c = ctx();
    Algebra heis = heisenberg(c, Scalar::param(c, "k"));
    Algebra nonfree = heis;
    nonfree.set_freely_generated(false);
    CHECK_THROWS_AS(nonfree.weight_basis(Rat(2)), Error);
    // nonpositive weights are rejected (the c ghost here has weight 0)
    Algebra ghosts = bc_system(c, Rat(1), Rat(0));
    CHECK_THROWS_AS(ghosts.weight_basis(Rat(1)), Error);
}

TEST_CASE("virasoro eigen-relation L_(1) L = 2L on the Sugawara vector") {
    CtxPtr c = ctx();
    Algebra sl2 = affine_sl2(c, Scalar::param(c, "k"));
    FieldExpr L = sugawara(sl2);
    CHECK(sl2.equal(sl2.nth_product(L, 1, L), L.scaled(Rat(2))));
}
