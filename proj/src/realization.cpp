#include "voa/realization.hpp"

#include "voa/grammar.hpp"
#include "voa/presentation_io.hpp"

namespace voa {

Algebra realization_source(CtxPtr ctx) {
    Algebra bg = beta_gamma(ctx, Rat(1), Rat(0));
    Algebra bc = bc_system(ctx, Rat(3, 2), Rat(-1, 2));
    return tensor(bg, bc, "bgbc");
}

Realization build_wakimoto_small_n4() {
    CtxPtr ctx = standard_context();
    Algebra src = realization_source(ctx);
    Algebra target = specialize_presentation(load_named_presentation("small-n4").algebra,
                                             {{"k", Rat(1, 2)}}, "small-n4-k-half");
    auto P = [&](const std::string& s) { return src.canonicalize(parse_field_expr(s, src)); };

    FieldExpr e = P("beta");
    FieldExpr h = P("-2*:gamma beta: + :b c:");
    FieldExpr f = P("-:gamma gamma beta: - (3/2)*d(gamma) + :gamma b c:");
    // Odd fields: b is the charge +1 highest-weight field; its f-descendant
    // and the conjugate pair follow. The pairing with the small N=4 names is
    // fixed by the h-charge and by the G++ G-+ second-order pole.
    FieldExpr Gpp = P("b");
    FieldExpr Gmp = P("-2*:beta d(c): - :d(beta) c:").scaled(Rat(1, 2));
    FieldExpr Gpm = src.nth_product(f, 0, Gpp);
    FieldExpr Gmm = src.nth_product(f, 0, Gmp);
    // Conformal embedding: LC is the Sugawara vector of the realized sl2 at
    // level -3/2, where 1/(2(k+2)) = 1.
    FieldExpr L = src.normal_order(e, f) + src.normal_order(f, e) +
                  src.normal_order(h, h).scaled(Rat(1, 2));
    L = src.canonicalize(L);

    Realization r{src, target, {}};
    auto set = [&](const char* name, const FieldExpr& img) {
        r.images[target.require_gen(name)] = img;
    };
    set("e", e);
    set("f", f);
    set("h", h);
    set("G++", Gpp);
    set("G-+", Gmp);
    set("G+-", Gpm);
    set("G--", Gmm);
    set("LC", L);
    return r;
}

std::vector<CheckItem> verify_realization(const Realization& r) {
    std::vector<CheckItem> items;
    const Algebra& src = r.source;
    const Algebra& tgt = r.target;

    // sl2 closes at level -3/2: e f ~ -3/2 (z-w)^-2 + h (z-w)^-1.
    {
        OpeSingular s = src.bracket(r.images.at(tgt.require_gen("e")),
                                    r.images.at(tgt.require_gen("f")));
        bool ok = src.equal(s.at_pole(2, src.ctx()),
                            src.vacuum_expr().scaled(Rat(-3, 2))) &&
                  src.equal(s.at_pole(1, src.ctx()), r.images.at(tgt.require_gen("h")));
        items.push_back(CheckItem::of(ok, "sl2-level", "e f ~ -3/2 (z-w)^-2 + h (z-w)^-1"));
    }
    // Conformal weights of the ghosts under the Sugawara vector.
    {
        const FieldExpr& L = r.images.at(tgt.require_gen("LC"));
        OpeSingular lb = src.bracket(L, src.gen_expr("b"));
        OpeSingular lcg = src.bracket(L, src.gen_expr("c"));
        bool ok = src.equal(lb.at_pole(2, src.ctx()), src.gen_expr("b").scaled(Rat(3, 2))) &&
                  src.equal(lcg.at_pole(2, src.ctx()), src.gen_expr("c").scaled(Rat(-1, 2)));
        items.push_back(CheckItem::of(ok, "ghost-weights", "L_(1) b = 3/2 b, L_(1) c = -1/2 c"));
        Scalar c = central_charge(L, src);
        items.push_back(CheckItem::of(c == Scalar::from_rat(src.ctx(), Rat(-9)),
                                      "central-charge", "c(L) = -9", c.str()));
    }
    // Full intertwining: every target pair, every pole order (including the
    // entries the table declares regular).
    for (int i = 0; i < tgt.ngens(); ++i) {
        for (int j = i; j < tgt.ngens(); ++j) {
            OpeSingular want = tgt.table(i, j);
            OpeSingular got = src.bracket(r.images.at(i), r.images.at(j));
            int top = std::max(want.max_pole(), got.max_pole());
            bool ok = true;
            std::string residual;
            for (int n = 1; n <= top; ++n) {
                FieldExpr mapped = push_through(want.at_pole(n, tgt.ctx()), src, r.images);
                FieldExpr diff = src.canonicalize(got.at_pole(n, src.ctx()) - mapped);
                if (!diff.is_zero()) {
                    ok = false;
                    residual = "pole order " + std::to_string(n) + ": " +
                               print_field_expr(diff, src);
                    break;
                }
            }
            items.push_back(CheckItem::of(ok,
                                          "ope-" + tgt.generator(i).name + "-" +
                                              tgt.generator(j).name,
                                          "[" + tgt.generator(i).name + " " +
                                              tgt.generator(j).name +
                                              "] closes on the small N=4 table",
                                          residual));
        }
    }
    return items;
}

FieldExpr x_vector(const Algebra& source, int n) {
    if (n < 0) fail(ErrorKind::Unsupported, "x_vector needs n >= 0");
    if (n == 0) return source.vacuum_expr();
    int b = source.require_gen("b");
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(Letter{b, i});
    return FieldExpr::term(source.ctx(), w, Scalar::one(source.ctx()));
}

std::vector<CheckItem> check_highest_weight(const Realization& r, int n) {
    std::vector<CheckItem> items;
    const Algebra& src = r.source;
    FieldExpr X = x_vector(src, n);
    std::string xn = "X_" + std::to_string(n);
    const FieldExpr& e = r.images.at(r.target.require_gen("e"));
    const FieldExpr& h = r.images.at(r.target.require_gen("h"));
    const FieldExpr& f = r.images.at(r.target.require_gen("f"));
    const FieldExpr& L = r.images.at(r.target.require_gen("LC"));

    items.push_back(CheckItem::of(src.bracket(e, X).empty(), "hw-e-" + std::to_string(n),
                                  "e_(j) " + xn + " = 0 for j >= 0"));
    {
        OpeSingular s = src.bracket(h, X);
        bool ok = src.equal(s.at_pole(1, src.ctx()), X.scaled(Rat(n))) && s.max_pole() <= 1;
        items.push_back(CheckItem::of(ok, "hw-h-" + std::to_string(n),
                                      "h_(0) " + xn + " = " + std::to_string(n) + " " + xn +
                                          " and h_(j) " + xn + " = 0 for j >= 1"));
    }
    {
        OpeSingular s = src.bracket(f, X);
        items.push_back(CheckItem::of(s.max_pole() <= 1, "hw-f-" + std::to_string(n),
                                      "f_(j) " + xn + " = 0 for j >= 1"));
    }
    {
        OpeSingular s = src.bracket(L, X);
        Rat wt(Rat(n) * Rat(n + 2) / 2);
        bool ok = src.equal(s.at_pole(2, src.ctx()), X.scaled(wt));
        items.push_back(CheckItem::of(ok, "hw-L-" + std::to_string(n),
                                      "L_(1) " + xn + " = (" + wt.get_str() + ") " + xn,
                                      print_field_expr(s.at_pole(2, src.ctx()), src)));
    }
    return items;
}

} // namespace voa
