#include "voa/presentations.hpp"

#include <sstream>

#include "voa/errors.hpp"
#include "voa/grammar.hpp"

namespace voa {

CtxPtr standard_context() {
    CtxPtr plain = ScalarContext::make({"k", "a"});
    auto rf = [&](const std::string& s) { return parse_ratfun(s, plain); };
    return ScalarContext::make({"k", "a"}, {{"I", rf("-1")},
                                            {"sa", rf("a")},
                                            {"s2a", rf("2*a")},
                                            {"s3p2k", rf("3+2*k")}});
}

namespace {

OpeSingular ope1(FieldExpr c1) {
    OpeSingular s;
    s.set_pole(1, std::move(c1));
    return s;
}

OpeSingular ope21(FieldExpr c2, FieldExpr c1) {
    OpeSingular s;
    s.set_pole(2, std::move(c2));
    s.set_pole(1, std::move(c1));
    return s;
}

} // namespace

Algebra affine_sl2(CtxPtr ctx, const Scalar& level, const std::string& name,
                   const std::vector<std::string>& gn) {
    std::vector<Generator> gens{{gn[0], false, Rat(1)}, {gn[1], false, Rat(1)},
                                {gn[2], false, Rat(1)}};
    FieldExpr e = FieldExpr::letter(ctx, 0), f = FieldExpr::letter(ctx, 1),
              h = FieldExpr::letter(ctx, 2);
    FieldExpr vac = FieldExpr::vacuum(ctx);
    std::vector<Algebra::TableEntry> t;
    t.push_back({gn[0], gn[1], ope21(vac.scaled(level), h)});
    t.push_back({gn[2], gn[2], [&] {
                     OpeSingular s;
                     s.set_pole(2, vac.scaled(level).scaled(Rat(2)));
                     return s;
                 }()});
    t.push_back({gn[2], gn[0], ope1(e.scaled(Rat(2)))});
    t.push_back({gn[2], gn[1], ope1(f.scaled(Rat(-2)))});
    return Algebra(std::move(ctx), std::move(gens), t, std::nullopt, name);
}

Algebra affine_osp12(CtxPtr ctx, const Scalar& level, const std::string& name) {
    std::vector<Generator> gens{{"e'", false, Rat(1)},
                                {"f'", false, Rat(1)},
                                {"h'", false, Rat(1)},
                                {"x'", true, Rat(1)},
                                {"y'", true, Rat(1)}};
    auto g = [&](int i) { return FieldExpr::letter(ctx, i); };
    FieldExpr vac = FieldExpr::vacuum(ctx);
    std::vector<Algebra::TableEntry> t;
    t.push_back({"e'", "f'", ope21(vac.scaled(level), g(2))});
    t.push_back({"h'", "h'", [&] {
                     OpeSingular s;
                     s.set_pole(2, vac.scaled(level).scaled(Rat(2)));
                     return s;
                 }()});
    t.push_back({"h'", "e'", ope1(g(0).scaled(Rat(2)))});
    t.push_back({"h'", "f'", ope1(g(1).scaled(Rat(-2)))});
    t.push_back({"h'", "x'", ope1(g(3))});
    t.push_back({"h'", "y'", ope1(g(4).scaled(Rat(-1)))});
    t.push_back({"e'", "y'", ope1(g(3))});
    t.push_back({"f'", "x'", ope1(g(4))});
    t.push_back({"x'", "y'", ope21(vac.scaled(level), g(2).scaled(Rat(1, 2)))});
    t.push_back({"x'", "x'", ope1(g(0).scaled(Rat(-1)))});
    t.push_back({"y'", "y'", ope1(g(1))});
    return Algebra(std::move(ctx), std::move(gens), t, std::nullopt, name);
}

Algebra bc_system(CtxPtr ctx, const Rat& wb, const Rat& wc, const std::string& bname,
                  const std::string& cname, const std::string& name) {
    std::vector<Generator> gens{{bname, true, wb}, {cname, true, wc}};
    std::vector<Algebra::TableEntry> t;
    t.push_back({bname, cname, ope1(FieldExpr::vacuum(ctx))});
    return Algebra(std::move(ctx), std::move(gens), t, std::nullopt, name);
}

Algebra beta_gamma(CtxPtr ctx, const Rat& wbeta, const Rat& wgamma, const std::string& name) {
    std::vector<Generator> gens{{"beta", false, wbeta}, {"gamma", false, wgamma}};
    std::vector<Algebra::TableEntry> t;
    t.push_back({"beta", "gamma", ope1(FieldExpr::vacuum(ctx))});
    return Algebra(std::move(ctx), std::move(gens), t, std::nullopt, name);
}

Algebra heisenberg(CtxPtr ctx, const Scalar& level, const std::string& name) {
    std::vector<Generator> gens{{"h", false, Rat(1)}};
    std::vector<Algebra::TableEntry> t;
    OpeSingular s;
    s.set_pole(2, FieldExpr::vacuum(ctx).scaled(level));
    t.push_back({"h", "h", s});
    return Algebra(std::move(ctx), std::move(gens), t, std::nullopt, name);
}

Algebra free_fermion(CtxPtr ctx, const std::string& name) {
    std::vector<Generator> gens{{"phi", true, Rat(1, 2)}};
    std::vector<Algebra::TableEntry> t;
    t.push_back({"phi", "phi", ope1(FieldExpr::vacuum(ctx))});
    return Algebra(std::move(ctx), std::move(gens), t, std::nullopt, name);
}

Algebra specialize_presentation(const Algebra& alg, const std::map<std::string, Rat>& assignment,
                                const std::string& name) {
    std::vector<Algebra::TableEntry> entries;
    for (int i = 0; i < alg.ngens(); ++i) {
        for (int j = i; j < alg.ngens(); ++j) {
            const OpeSingular& s = alg.table(i, j);
            if (s.empty()) continue;
            Algebra::TableEntry e{alg.generator(i).name, alg.generator(j).name, {}};
            for (const auto& [n, expr] : s.poles()) {
                FieldExpr se = FieldExpr::zero(alg.ctx());
                for (const auto& [w, c] : expr.terms()) se.add_term(w, c.specialize(assignment));
                e.ope.set_pole(n, se);
            }
            entries.push_back(std::move(e));
        }
    }
    std::optional<std::string> vir;
    if (alg.virasoro()) vir = alg.generator(*alg.virasoro()).name;
    return Algebra(alg.ctx(), alg.generators(), entries, vir, name);
}

namespace {

// Dense exact linear solve A x = b over the scalar field. Returns nullopt if
// inconsistent; fails on an underdetermined system.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b, const CtxPtr& ctx) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<long> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Scalar inv = a[r][c].inverse();
        for (size_t cc = c; cc < cols; ++cc) a[r][cc] *= inv;
        b[r] *= inv;
        for (size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || a[rr][c].is_zero()) continue;
            Scalar f = a[rr][c];
            for (size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
            b[rr] -= f * b[r];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    for (size_t rr = r; rr < rows; ++rr)
        if (!b[rr].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols, Scalar::zero(ctx));
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] < 0)
            fail(ErrorKind::Internal, "underdetermined linear system");
        x[c] = b[static_cast<size_t>(pivot_of_col[c])];
    }
    return x;
}

} // namespace

FieldExpr sugawara(const Algebra& alg, std::optional<std::vector<int>> currents_opt) {
    std::vector<int> currents;
    if (currents_opt) {
        currents = *currents_opt;
    } else {
        currents.resize(static_cast<size_t>(alg.ngens()));
        for (int i = 0; i < alg.ngens(); ++i) currents[static_cast<size_t>(i)] = i;
    }
    auto in_set = [&](int g) {
        for (int c : currents)
            if (c == g) return true;
        return false;
    };

    // Ansatz: even words of weight 2 in the chosen currents.
    std::vector<Word> cand;
    for (const Word& w : alg.weight_basis(Rat(2))) {
        if (alg.word_odd(w)) continue;
        bool ok = true;
        for (const auto& l : w)
            if (!in_set(l.gen)) ok = false;
        if (ok) cand.push_back(w);
    }
    if (cand.empty()) fail(ErrorKind::Unsupported, "no quadratic ansatz words");

    const CtxPtr& ctx = alg.ctx();
    // Row index: (current, pole, word). Collect columns first.
    std::map<std::tuple<int, int, Word>, std::map<size_t, Scalar>> rows;
    std::map<std::tuple<int, int, Word>, Scalar> rhs;
    auto touch = [&](const std::tuple<int, int, Word>& key) {
        rows.try_emplace(key);
        rhs.try_emplace(key, Scalar::zero(ctx));
    };
    for (size_t ci = 0; ci < cand.size(); ++ci) {
        FieldExpr w = FieldExpr::term(ctx, cand[ci], Scalar::one(ctx));
        for (int g : currents) {
            OpeSingular s = alg.bracket(w, FieldExpr::letter(ctx, g));
            for (const auto& [n, e] : s.poles()) {
                for (const auto& [word, c] : e.terms()) {
                    auto key = std::make_tuple(g, n, word);
                    touch(key);
                    rows[key][ci] = c;
                }
            }
        }
    }
    for (int g : currents) {
        // Target [L_l J] = l J + dJ: pole 2 -> J, pole 1 -> dJ.
        auto k2 = std::make_tuple(g, 2, Word{Letter{g, 0}});
        touch(k2);
        rhs[k2] = Scalar::one(ctx);
        auto k1 = std::make_tuple(g, 1, Word{Letter{g, 1}});
        touch(k1);
        rhs[k1] = Scalar::one(ctx);
    }

    std::vector<std::vector<Scalar>> A;
    std::vector<Scalar> B;
    for (const auto& [key, row] : rows) {
        std::vector<Scalar> r(cand.size(), Scalar::zero(ctx));
        for (const auto& [ci, c] : row) r[ci] = c;
        A.push_back(std::move(r));
        B.push_back(rhs.at(key));
    }
    std::optional<std::vector<Scalar>> x;
    try {
        x = solve_linear(std::move(A), std::move(B), ctx);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DivisionByZero)
            fail(ErrorKind::Pole, "no Sugawara vector at this level (critical level)");
        throw;
    }
    if (!x) fail(ErrorKind::Pole, "no Sugawara vector at this level (critical level)");
    FieldExpr L = FieldExpr::zero(ctx);
    for (size_t ci = 0; ci < cand.size(); ++ci)
        L += FieldExpr::term(ctx, cand[ci], (*x)[ci]);
    return L;
}

Scalar central_charge(const FieldExpr& L, const Algebra& alg) {
    OpeSingular s = alg.bracket(L, L);
    const CtxPtr& ctx = alg.ctx();
    auto expect = [&](int pole, const FieldExpr& want) {
        if (!alg.equal(s.at_pole(pole, ctx), want))
            fail(ErrorKind::Shape, "not a Virasoro vector: pole order " + std::to_string(pole) +
                                       " is " + print_field_expr(s.at_pole(pole, ctx), alg));
    };
    expect(1, alg.canonicalize(L.derived()));
    expect(2, alg.canonicalize(L.scaled(Rat(2))));
    expect(3, FieldExpr::zero(ctx));
    for (int n = 5; n <= s.max_pole(); ++n) expect(n, FieldExpr::zero(ctx));
    FieldExpr top = s.at_pole(4, ctx);
    if (!top.is_scalar_multiple_of_vacuum())
        fail(ErrorKind::Shape, "not a Virasoro vector: pole order 4 is " +
                                   print_field_expr(top, alg));
    return top.vacuum_coefficient().scaled(Rat(2));
}

FieldExpr coset_virasoro(const Algebra& vka) {
    std::vector<int> primed{vka.require_gen("e'"), vka.require_gen("f'"), vka.require_gen("h'")};
    FieldExpr lsug = sugawara(vka, primed);
    int L = vka.require_gen("L");
    return FieldExpr::letter(vka.ctx(), L) - lsug;
}

Algebra a_infinity_limit(const Algebra& alg, LimitScaling scaling,
                         const std::vector<std::string>& rescaled, const std::string& name) {
    const CtxPtr& ctx = alg.ctx();
    std::vector<bool> is_rescaled(static_cast<size_t>(alg.ngens()), false);
    for (const auto& n : rescaled) is_rescaled[static_cast<size_t>(alg.require_gen(n))] = true;

    // factor = scale(u) scale(v) / prod over rescaled letters of the entry.
    Scalar scale = scaling == LimitScaling::InverseA
                       ? Scalar::param(ctx, "a").inverse()
                       : Scalar::root(ctx, "sa").inverse();
    Scalar scale_inv = scale.inverse();

    std::vector<Algebra::TableEntry> entries;
    for (int i = 0; i < alg.ngens(); ++i) {
        for (int j = i; j < alg.ngens(); ++j) {
            const OpeSingular& s = alg.table(i, j);
            if (s.empty()) continue;
            Algebra::TableEntry e{alg.generator(i).name, alg.generator(j).name, {}};
            for (const auto& [n, expr] : s.poles()) {
                FieldExpr le = FieldExpr::zero(ctx);
                for (const auto& [w, c] : expr.terms()) {
                    Scalar f = c;
                    if (is_rescaled[static_cast<size_t>(i)]) f *= scale;
                    if (is_rescaled[static_cast<size_t>(j)]) f *= scale;
                    for (const auto& l : w)
                        if (is_rescaled[static_cast<size_t>(l.gen)]) f *= scale_inv;
                    try {
                        le.add_term(w, f.limit_at_infinity("a"));
                    } catch (const Error& err) {
                        if (err.kind() == ErrorKind::Divergence)
                            fail(ErrorKind::Divergence,
                                 "entry " + e.left + " " + e.right + " pole order " +
                                     std::to_string(n) + " diverges as a -> infinity");
                        throw;
                    }
                }
                e.ope.set_pole(n, le);
            }
            if (!e.ope.empty()) entries.push_back(std::move(e));
        }
    }
    std::optional<std::string> vir;
    if (alg.virasoro()) vir = alg.generator(*alg.virasoro()).name;
    return Algebra(ctx, alg.generators(), entries, vir, name);
}

Algebra quotient_by_central(const Algebra& alg, const std::vector<std::string>& central,
                            const std::string& name) {
    std::vector<bool> is_central(static_cast<size_t>(alg.ngens()), false);
    for (const auto& n : central) is_central[static_cast<size_t>(alg.require_gen(n))] = true;
    for (int c = 0; c < alg.ngens(); ++c) {
        if (!is_central[static_cast<size_t>(c)]) continue;
        for (int g = 0; g < alg.ngens(); ++g)
            if (!alg.pair_bracket(c, g).empty())
                fail(ErrorKind::Centrality, "generator " + alg.generator(c).name +
                                                " is not central (pairs with " +
                                                alg.generator(g).name + ")");
    }
    std::vector<Generator> gens;
    std::vector<int> remap(static_cast<size_t>(alg.ngens()), -1);
    for (int i = 0; i < alg.ngens(); ++i) {
        if (is_central[static_cast<size_t>(i)]) continue;
        remap[static_cast<size_t>(i)] = static_cast<int>(gens.size());
        gens.push_back(alg.generator(i));
    }
    std::vector<Algebra::TableEntry> entries;
    for (int i = 0; i < alg.ngens(); ++i) {
        if (is_central[static_cast<size_t>(i)]) continue;
        for (int j = i; j < alg.ngens(); ++j) {
            if (is_central[static_cast<size_t>(j)]) continue;
            const OpeSingular& s = alg.table(i, j);
            if (s.empty()) continue;
            Algebra::TableEntry e{alg.generator(i).name, alg.generator(j).name, {}};
            for (const auto& [n, expr] : s.poles()) {
                FieldExpr qe = FieldExpr::zero(alg.ctx());
                for (const auto& [w, c] : expr.terms()) {
                    bool keep = true;
                    Word nw = w;
                    for (auto& l : nw) {
                        if (is_central[static_cast<size_t>(l.gen)]) keep = false;
                        l.gen = remap[static_cast<size_t>(l.gen)];
                    }
                    if (keep) qe.add_term(nw, c);
                }
                e.ope.set_pole(n, qe);
            }
            if (!e.ope.empty()) entries.push_back(std::move(e));
        }
    }
    std::optional<std::string> vir;
    if (alg.virasoro() && !is_central[static_cast<size_t>(*alg.virasoro())])
        vir = alg.generator(*alg.virasoro()).name;
    return Algebra(alg.ctx(), std::move(gens), entries, vir, name);
}

FieldExpr push_through(const FieldExpr& e, const Algebra& dst,
                       const std::map<int, FieldExpr>& images) {
    FieldExpr out = FieldExpr::zero(dst.ctx());
    for (const auto& [w, c] : e.terms()) {
        FieldExpr acc = dst.vacuum_expr();
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            acc = dst.normal_order(images.at(it->gen).derived(it->der), acc);
        out += acc.scaled(c);
    }
    return out;
}

std::vector<std::string> verify_lc_derivation(const Algebra& vkaL, const Algebra& vkaLC) {
    std::vector<std::string> diffs;
    FieldExpr lc = coset_virasoro(vkaL);
    std::map<int, FieldExpr> images; // LC-algebra generator -> expression in vka-L
    for (int g = 0; g < vkaLC.ngens(); ++g) {
        const std::string& n = vkaLC.generator(g).name;
        images[g] = n == "LC" ? lc : vkaL.gen_expr(n);
    }
    for (int i = 0; i < vkaLC.ngens(); ++i) {
        for (int j = i; j < vkaLC.ngens(); ++j) {
            OpeSingular want = vkaLC.table(i, j);
            OpeSingular got = vkaL.bracket(images.at(i), images.at(j));
            int top = std::max(want.max_pole(), got.max_pole());
            for (int n = 1; n <= top; ++n) {
                FieldExpr mapped = push_through(want.at_pole(n, vkaLC.ctx()), vkaL, images);
                FieldExpr diff = vkaL.canonicalize(got.at_pole(n, vkaL.ctx()) - mapped);
                if (!diff.is_zero())
                    diffs.push_back("LC-variant entry " + vkaLC.generator(i).name + " " +
                                    vkaLC.generator(j).name + " pole order " + std::to_string(n) +
                                    ": residual " + print_field_expr(diff, vkaL));
            }
        }
    }
    return diffs;
}

std::vector<std::string> table_differences(const Algebra& got, const Algebra& expect) {
    std::vector<std::string> diffs;
    if (got.ngens() != expect.ngens()) {
        diffs.push_back("generator count differs");
        return diffs;
    }
    for (int i = 0; i < expect.ngens(); ++i) {
        const auto& ge = expect.generator(i);
        int gi = got.gen_index(ge.name);
        if (gi < 0) {
            diffs.push_back("missing generator " + ge.name);
            return diffs;
        }
        const auto& gg = got.generator(gi);
        if (gg.odd != ge.odd || gg.weight != ge.weight)
            diffs.push_back("generator " + ge.name + " has different parity or weight");
    }
    for (int i = 0; i < expect.ngens(); ++i) {
        for (int j = 0; j < expect.ngens(); ++j) {
            if (j < i) continue;
            OpeSingular want = expect.table(i, j);
            int gi = got.require_gen(expect.generator(i).name);
            int gj = got.require_gen(expect.generator(j).name);
            OpeSingular have = got.pair_bracket(gi, gj);
            int top = std::max(want.max_pole(), have.max_pole());
            for (int n = 1; n <= top; ++n) {
                // Compare after mapping `got` letters to `expect` indices.
                FieldExpr h = have.at_pole(n, got.ctx());
                FieldExpr mapped = FieldExpr::zero(expect.ctx());
                for (const auto& [w, c] : h.terms()) {
                    Word nw = w;
                    for (auto& l : nw)
                        l.gen = expect.require_gen(got.generator(l.gen).name);
                    mapped.add_term(nw, c);
                }
                FieldExpr diff = expect.canonicalize(mapped - want.at_pole(n, expect.ctx()));
                if (!diff.is_zero())
                    diffs.push_back("entry " + expect.generator(i).name + " " +
                                    expect.generator(j).name + " pole order " + std::to_string(n) +
                                    ": residual " + print_field_expr(diff, expect));
            }
        }
    }
    return diffs;
}

} // namespace voa
