#include "voa/qhr.hpp"

#include "voa/grammar.hpp"
#include "voa/presentation_io.hpp"

namespace voa {

namespace {

Scalar minus_one(const CtxPtr& ctx) { return Scalar::from_rat(ctx, Rat(-1)); }

} // namespace

ReductionComplex build_complex(ReductionStep step) {
    CtxPtr ctx = standard_context();
    if (step == ReductionStep::First) {
        Algebra vka = load_named_presentation("vka-L").algebra;
        Algebra ghosts = bc_system(ctx, Rat(1), Rat(0), "b", "c", "bc");
        Algebra amb = tensor(vka, ghosts, "vka-bc");
        FieldExpr d = parse_field_expr(":b e: + b", amb);
        return ReductionComplex{amb, amb.canonicalize(d), amb.require_gen("e")};
    }
    Algebra osp = affine_osp12(ctx, Scalar::param(ctx, "k"));
    Algebra ghosts = bc_system(ctx, Rat(1), Rat(0), "b'", "c'", "bc'");
    Algebra amb = tensor(osp, ghosts, "osp-bc");
    FieldExpr d = parse_field_expr(":b' e': + b'", amb);
    return ReductionComplex{amb, amb.canonicalize(d), amb.require_gen("e'")};
}

FieldExpr d0(const ReductionComplex& cx, const FieldExpr& x) {
    return cx.ambient.nth_product(cx.d, 0, x);
}

bool is_closed(const ReductionComplex& cx, const FieldExpr& x) { return d0(cx, x).is_zero(); }

FieldExpr reduce(const ReductionComplex& cx, const FieldExpr& x) {
    FieldExpr dx = d0(cx, x);
    if (!dx.is_zero())
        fail(ErrorKind::NotClosed,
             "expression is not d0-closed; d0(x) = " + print_field_expr(dx, cx.ambient));
    return cx.ambient.substitute_generator(x, cx.killed, minus_one(cx.ambient.ctx()));
}

namespace {

// Compare reduce(lhs) with reduce(rhs) and describe the residual.
CheckItem reduced_equal(const ReductionComplex& cx, const std::string& label,
                        const std::string& anchor, const FieldExpr& lhs, const FieldExpr& rhs) {
    FieldExpr diff = cx.ambient.canonicalize(reduce(cx, lhs) - reduce(cx, rhs));
    return CheckItem::of(diff.is_zero(), label, anchor, print_field_expr(diff, cx.ambient));
}

CheckItem exact_equal(const Algebra& alg, const std::string& label, const std::string& anchor,
                      const FieldExpr& lhs, const FieldExpr& rhs, std::string note = "") {
    FieldExpr diff = alg.canonicalize(lhs - rhs);
    return CheckItem::of(diff.is_zero(), label, anchor, print_field_expr(diff, alg),
                         std::move(note));
}

} // namespace

std::vector<CheckItem> verify_osp_subalgebra() {
    std::vector<CheckItem> items;
    ReductionComplex cx = build_complex(ReductionStep::First);
    const Algebra& amb = cx.ambient;
    const CtxPtr& ctx = amb.ctx();
    auto P = [&](const std::string& s) { return amb.canonicalize(parse_field_expr(s, amb)); };

    items.push_back(CheckItem::of(is_closed(cx, cx.d), "d0-d", "d_(0) d = 0",
                                  print_field_expr(d0(cx, cx.d), amb)));
    items.push_back(exact_equal(amb, "d0-c", "d_(0) c = e + 1", d0(cx, amb.gen_expr("c")),
                                P("e + 1")));
    for (const char* g : {"G++", "G-+", "e'", "f'", "h'"})
        items.push_back(CheckItem::of(is_closed(cx, amb.gen_expr(g)),
                                      std::string("d0-") + g,
                                      std::string("d_(0) ") + g + " = 0"));

    // x' and y' representatives and the expected osp(1|2) table at level
    // -((a+1)k+1).
    Scalar norm = parse_scalar("(a+1)", ctx) / Scalar::root(ctx, "s2a");
    FieldExpr xr = amb.gen_expr("G++").scaled(norm);
    FieldExpr yr = amb.gen_expr("G-+").scaled(-norm);
    Algebra expected = affine_osp12(ctx, parse_scalar("-((a+1)*k+1)", ctx), "osp-expected");

    std::map<int, FieldExpr> images;
    images[expected.require_gen("e'")] = amb.gen_expr("e'");
    images[expected.require_gen("f'")] = amb.gen_expr("f'");
    images[expected.require_gen("h'")] = amb.gen_expr("h'");
    images[expected.require_gen("x'")] = xr;
    images[expected.require_gen("y'")] = yr;

    for (int i = 0; i < expected.ngens(); ++i) {
        for (int j = i; j < expected.ngens(); ++j) {
            OpeSingular want = expected.table(i, j);
            OpeSingular got = amb.bracket(images.at(i), images.at(j));
            int top = std::max(want.max_pole(), got.max_pole());
            bool ok = true;
            std::string residual;
            for (int n = 1; n <= top && ok; ++n) {
                FieldExpr w = push_through(want.at_pole(n, expected.ctx()), amb, images);
                FieldExpr diff = amb.canonicalize(reduce(cx, got.at_pole(n, ctx)) -
                                                  reduce(cx, w));
                if (!diff.is_zero()) {
                    ok = false;
                    residual = "pole order " + std::to_string(n) + ": " +
                               print_field_expr(diff, amb);
                }
            }
            std::string note;
            if (expected.generator(i).name == "x'" && expected.generator(j).name == "x'")
                note = "pole order of the x'x' relation fixed to 1 by the computation";
            items.push_back(CheckItem::of(ok,
                                          "osp-" + expected.generator(i).name + "-" +
                                              expected.generator(j).name,
                                          "[" + expected.generator(i).name + " " +
                                              expected.generator(j).name +
                                              "] closes on osp(1|2) at level -((a+1)k+1)",
                                          residual, note));
        }
    }
    return items;
}

std::vector<CheckItem> specialize_to_theorem() {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();
    Scalar level = parse_scalar("-((a+1)*k+1)", ctx);
    Scalar at_half = level.specialize({{"k", Rat(1, 2)}});
    items.push_back(CheckItem::of(at_half == parse_scalar("-(a+3)/2", ctx), "osp-level",
                                  "-((a+1)k+1) at k = 1/2 equals -(a+3)/2", at_half.str()));

    // central charge of V_l(osp(1|2)) along the level chain
    Algebra osp = affine_osp12(ctx, level, "osp-chain");
    Scalar c = central_charge(sugawara(osp), osp);
    Scalar c_half = c.specialize({{"k", Rat(1, 2)}});
    items.push_back(CheckItem::of(c_half == parse_scalar("1 + 3/a", ctx), "osp-c",
                                  "c of V_(-(a+3)/2)(osp(1|2)) equals 1 + 3/a", c_half.str()));

    // N=1 central charge chain: the second-step formula in the osp level.
    Scalar n1 = parse_scalar("-3*(1+2*k)*(5+4*k)/(2*(3+2*k))", ctx);
    Scalar chained = n1.substitute("k", parse_ratfun("-((a+1)*k+1)", ctx));
    Scalar two_step = parse_scalar("3*(1+2*k+2*a*k)*(-1+4*k+4*a*k)/(2*(-1+2*k+2*a*k))", ctx);
    items.push_back(CheckItem::of(chained == two_step, "n1-c-chain",
                                  "N=1 charge at the reduced level matches the two-step formula",
                                  chained.str()));
    Scalar n1_half = n1.substitute("k", parse_ratfun("-(a+3)/2", ctx));
    Scalar want = parse_scalar("3/2 + 3*(a + 2 + 1/a)", ctx);
    items.push_back(CheckItem::of(n1_half == want, "n1-c",
                                  "N=1 charge at k = -(a+3)/2 equals 3/2 + 3(a+2+1/a)",
                                  n1_half.str()));
    items.push_back(CheckItem::of(n1_half.specialize({{"a", Rat(2)}}) ==
                                      Scalar::from_rat(ctx, Rat(15)),
                                  "n1-c-numeric", "the same charge at a = 2 equals 15"));
    return items;
}

std::vector<CheckItem> verify_n1_structure() {
    std::vector<CheckItem> items;
    ReductionComplex cx = build_complex(ReductionStep::Second);
    const Algebra& amb = cx.ambient;
    const CtxPtr& ctx = amb.ctx();
    auto P = [&](const std::string& s) { return amb.canonicalize(parse_field_expr(s, amb)); };

    // The corrected Virasoro vector and the odd field.
    Algebra osp = affine_osp12(ctx, Scalar::param(ctx, "k"));
    FieldExpr losp = sugawara(osp); // words reuse the ambient indices 0..4
    FieldExpr lp = amb.canonicalize(losp + P("(1/2)*d(h') - :b' d(c'): - (1/2)*:d(x') x':"));
    FieldExpr psi = P("(I/s3p2k)*(:h' x': + 2*:e' y': - (1+2*k)*:e' d(x'):)");
    FieldExpr xp = amb.gen_expr("x'");

    items.push_back(CheckItem::of(is_closed(cx, lp), "d0-Lp", "d'_(0) L' = 0",
                                  print_field_expr(d0(cx, lp), amb)));
    items.push_back(CheckItem::of(is_closed(cx, psi), "d0-psi", "d'_(0) psi = 0",
                                  print_field_expr(d0(cx, psi), amb)));

    // L' x' OPE as displayed.
    {
        OpeSingular s = amb.bracket(lp, xp);
        items.push_back(exact_equal(amb, "Lp-xp-2",
                                    "L'_(1) x' = 1/2 (x' + :e'x':)", s.nth(1, ctx),
                                    P("(1/2)*(x' + :e' x':)")));
        items.push_back(exact_equal(amb, "Lp-xp-1",
                                    "L'_(0) x' = d(x') + :e' d(x'):", s.nth(0, ctx),
                                    P("d(x') + :e' d(x'):")));
        bool extra = s.max_pole() <= 2;
        items.push_back(CheckItem::of(extra, "Lp-xp-top", "no higher poles in [L' x']"));
        // the class [L'] commutes with [x']
        bool comm = true;
        for (const auto& [n, e] : s.poles())
            if (!reduce(cx, e).is_zero()) comm = false;
        items.push_back(CheckItem::of(comm, "Lp-xp-reduced", "[L'] commutes with [x']"));
    }

    // The four L'_(j) L' identities.
    OpeSingular ll = amb.bracket(lp, lp);
    items.push_back(exact_equal(
        amb, "LL-0", "(L'_(0) L') - d(L') matches the recorded value",
        amb.canonicalize(ll.nth(0, ctx) - lp.derived()),
        P("-(1/2)*(:e' d(d(x')) x': + :d(d(x')) x':) - (1/2)*:d(e') d(x') x': "
          "- (1/24)*(:d(d(d(e'))) e': + d(d(d(e'))))")));
    items.push_back(exact_equal(
        amb, "LL-1", "(L'_(1) L') - 2L' matches the recorded value",
        amb.canonicalize(ll.nth(1, ctx) - lp.scaled(Rat(2))),
        P("-(:e' d(x') x': + :d(x') x':) + (1/8)*(:d(e') d(e'): - :d(d(e')) e': - d(d(e')))")));
    items.push_back(exact_equal(amb, "LL-2", "(L'_(2) L') = 1/4 (:d(e') e': + d(e'))",
                                ll.nth(2, ctx), P("(1/4)*(:d(e') e': + d(e'))")));
    items.push_back(exact_equal(
        amb, "LL-3", "(L'_(3) L') = -(3+10k+6k^2)/(3+2k) + 1/2 e' + 1/4 :e'e':",
        ll.nth(3, ctx), P("-(3+10*k+6*k^2)/(3+2*k) + (1/2)*e' + (1/4)*:e' e':")));

    // Reduced Virasoro shape and central charge.
    {
        Scalar cvir = parse_scalar("-3*(1+2*k)*(5+4*k)/(2*(3+2*k))", ctx);
        FieldExpr want = amb.vacuum_expr().scaled(cvir.scaled(Rat(1, 2)));
        items.push_back(reduced_equal(cx, "red-vir-c",
                                      "[L'_(3) L'] = c/2 with c = -3(1+2k)(5+4k)/(2(3+2k))",
                                      ll.nth(3, ctx), want));
        items.push_back(reduced_equal(cx, "red-vir-2", "[L'_(2) L'] = 0", ll.nth(2, ctx),
                                      FieldExpr::zero(ctx)));
        items.push_back(reduced_equal(cx, "red-vir-1", "[L'_(1) L'] = 2 [L']", ll.nth(1, ctx),
                                      lp.scaled(Rat(2))));
        items.push_back(reduced_equal(cx, "red-vir-0", "[L'_(0) L'] = d[L']", ll.nth(0, ctx),
                                      lp.derived()));
    }

    // psi x' OPE as displayed; the class [psi] commutes with [x'].
    {
        OpeSingular s = amb.bracket(psi, xp);
        items.push_back(exact_equal(amb, "psi-xp-2",
                                    "psi_(1) x' = -I(1+2k)/sqrt(3+2k) (e' + :e'e':)",
                                    s.nth(1, ctx),
                                    P("-(I*(1+2*k)/s3p2k)*(e' + :e' e':)")));
        items.push_back(exact_equal(
            amb, "psi-xp-1",
            "psi_(0) x' = -I/(2 sqrt(3+2k)) ((2+4k):d(e')e': + (5+4k)d(e'))", s.nth(0, ctx),
            P("-(I/(2*s3p2k))*((2+4*k)*:d(e') e': + (5+4*k)*d(e'))")));
        bool comm = true;
        for (const auto& [n, e] : s.poles())
            if (!reduce(cx, e).is_zero()) comm = false;
        items.push_back(CheckItem::of(comm, "psi-xp-reduced", "[psi] commutes with [x']"));
    }

    // psi_(2) psi and psi_(1) psi.
    OpeSingular pp = amb.bracket(psi, psi);
    items.push_back(exact_equal(
        amb, "psipsi-2",
        "psi_(2) psi = (3+6k)/(3+2k) e' - 4(1+2k)^2/(3+2k) :e'e': - 2(1+2k)^2/(3+2k) :e'e'e':",
        pp.nth(2, ctx),
        P("((3+6*k)/(3+2*k))*e' - (4*(1+2*k)^2/(3+2*k))*:e' e': - "
          "(2*(1+2*k)^2/(3+2*k))*:e' e' e':")));
    {
        FieldExpr got = pp.nth(1, ctx);
        FieldExpr as_printed = P("((3+6*k)/(6+6*k))*d(e') - (4*(1+2*k)^2/(3+2*k))*:d(e') e': - "
                                 "(3*(1+2*k)^2/(3+2*k))*:d(e') e' e':");
        FieldExpr corrected = P("((3+6*k)/(6+4*k))*d(e') - (4*(1+2*k)^2/(3+2*k))*:d(e') e': - "
                                "(3*(1+2*k)^2/(3+2*k))*:d(e') e' e':");
        if (amb.equal(got, as_printed)) {
            items.push_back(CheckItem::pass("psipsi-1", "psi_(1) psi matches the recorded value"));
        } else if (amb.equal(got, corrected)) {
            items.push_back(CheckItem::flagged(
                "psipsi-1",
                "psi_(1) psi = (3+6k)/(6+4k) d(e') - 4(1+2k)^2/(3+2k) :d(e')e': - "
                "3(1+2k)^2/(3+2k) :d(e')e'e':",
                "recorded d(e') coefficient (3+6k)/(6+6k) is off; skew-symmetry forces "
                "(3+6k)/(6+4k) = 1/2 d(psi_(2) psi), which is what the engine finds"));
        } else {
            items.push_back(CheckItem::fail("psipsi-1", "psi_(1) psi matches the recorded value",
                                            print_field_expr(got, amb)));
        }
        // internal consistency: psi_(1) psi = 1/2 d(psi_(2) psi)
        items.push_back(exact_equal(amb, "psipsi-skew", "psi_(1) psi = 1/2 d(psi_(2) psi)", got,
                                    amb.canonicalize(pp.nth(2, ctx).derived().scaled(Rat(1, 2)))));
    }

    // psi_(0) psi = 2L - d'_0(R): resolve which Virasoro vector 2L means.
    FieldExpr R = P("(1/(3+2*k))*:h' h' c': + (4/(3+2*k))*:e' f' c': + "
                    "(2*(1+k)/(3+2*k))*:d(h') c': - (4/(3+2*k))*:x' y' c': - "
                    "2*:b' d(c') c': - :h' d(c'): - ((3+4*k)^2/(2*(3+2*k)))*d(d(c')) - "
                    "(3*(1+2*k)/(2*(3+2*k)))*:d(e') d(c'): + "
                    "((1+2*k)*(7+8*k)/(2*(3+2*k)))*:d(d(e')) c': + "
                    "((1+2*k)^2/(3+2*k))*:d(e') e' d(c'): + "
                    "((1+2*k)^2/(3+2*k))*:e' e' d(d(c')):");
    {
        FieldExpr dR = d0(cx, R);
        FieldExpr D = amb.canonicalize(pp.nth(0, ctx) + dR);
        bool is_lp = amb.equal(D, lp.scaled(Rat(2)));
        bool is_losp = amb.equal(D, amb.canonicalize(losp.scaled(Rat(2))));
        std::string note;
        if (is_lp)
            note = "resolved: psi_(0) psi + d'_0(R) = 2L' (the corrected Virasoro vector)";
        else if (is_losp)
            note = "resolved: psi_(0) psi + d'_0(R) = 2 Losp (the uncorrected Sugawara vector)";
        items.push_back(CheckItem::of(is_lp || is_losp, "psipsi-0",
                                      "psi_(0) psi + d'_0(R) equals 2L' or 2Losp",
                                      print_field_expr(
                                          amb.canonicalize(D - lp.scaled(Rat(2))), amb),
                                      note));
    }

    // Reduced [psi psi] OPE.
    {
        Scalar c3 = parse_scalar("-(1+2*k)*(5+4*k)/(3+2*k)", ctx);
        items.push_back(reduced_equal(cx, "red-psipsi-3",
                                      "[psi psi] third-order pole = -(1+2k)(5+4k)/(3+2k)",
                                      pp.nth(2, ctx), amb.vacuum_expr().scaled(c3)));
        items.push_back(reduced_equal(cx, "red-psipsi-2", "[psi psi] second-order pole = 0",
                                      pp.nth(1, ctx), FieldExpr::zero(ctx)));
        FieldExpr dR = d0(cx, R);
        items.push_back(reduced_equal(cx, "red-psipsi-1",
                                      "[psi psi] first-order pole = 2[L'] via the cobounding R",
                                      amb.canonicalize(pp.nth(0, ctx) + dR),
                                      lp.scaled(Rat(2))));
    }

    // [L' psi]: weight 3/2 primary in the reduction.
    {
        OpeSingular s = amb.bracket(lp, psi);
        items.push_back(reduced_equal(cx, "red-Lpsi-2", "[L'_(1) psi] = 3/2 [psi]",
                                      s.nth(1, ctx), psi.scaled(Rat(3, 2))));
        items.push_back(reduced_equal(cx, "red-Lpsi-1", "[L'_(0) psi] = d[psi]", s.nth(0, ctx),
                                      psi.derived()));
        bool rest = true;
        for (const auto& [n, e] : s.poles())
            if (n >= 3 && !reduce(cx, e).is_zero()) rest = false;
        items.push_back(CheckItem::of(rest, "red-Lpsi-top", "no higher poles in [L' psi]"));
    }

    // [x'][x'] is a free fermion.
    {
        OpeSingular s = amb.bracket(xp, xp);
        items.push_back(reduced_equal(cx, "red-ff", "[x'][x'] ~ (z-w)^-1", s.nth(0, ctx),
                                      amb.vacuum_expr()));
        bool rest = true;
        for (const auto& [n, e] : s.poles())
            if (n >= 2 && !reduce(cx, e).is_zero()) rest = false;
        items.push_back(CheckItem::of(rest, "red-ff-top", "no higher poles in [x' x']"));
    }
    return items;
}

} // namespace voa
