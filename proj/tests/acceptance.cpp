// Acceptance suite: one pass/fail line per criterion, exact comparisons
// throughout. Exit code 0 only when every criterion holds.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "support/mode_oracle.hpp"
#include "voa/characters.hpp"
#include "voa/grammar.hpp"
#include "voa/presentation_io.hpp"
#include "voa/presentations.hpp"
#include "voa/qhr.hpp"
#include "voa/realization.hpp"
#include "voa/report.hpp"

using namespace voa;

namespace {

int failures = 0;

void line(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : ("  [" + detail + "]").c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool items_pass(const std::vector<CheckItem>& items, std::string* why = nullptr) {
    for (const auto& it : items) {
        if (it.status == CheckItem::Status::Fail) {
            if (why) *why = it.label + ": " + it.residual;
            return false;
        }
    }
    return true;
}

// All ordered generator triples.
bool jacobi_all(const Algebra& alg, std::string* why) {
    for (int a = 0; a < alg.ngens(); ++a)
        for (int b = 0; b < alg.ngens(); ++b)
            for (int c = 0; c < alg.ngens(); ++c)
                if (!alg.jacobi(a, b, c).pass) {
                    *why = alg.name() + " triple (" + alg.generator(a).name + ", " +
                           alg.generator(b).name + ", " + alg.generator(c).name + ")";
                    return false;
                }
    return true;
}

std::vector<Algebra::TableEntry> entries_of(const Algebra& alg) {
    std::vector<Algebra::TableEntry> out;
    for (int i = 0; i < alg.ngens(); ++i)
        for (int j = i; j < alg.ngens(); ++j) {
            const OpeSingular& s = alg.table(i, j);
            if (!s.empty())
                out.push_back({alg.generator(i).name, alg.generator(j).name, s});
        }
    return out;
}

} // namespace

int main() {
    auto t_start = std::chrono::steady_clock::now();

    // 1. Presentation validity: Jacobi on all ordered triples of both V(k,a)
    //    variants, the limit algebras, affine sl2, osp(1|2) and the free
    //    systems, symbolically in (k, a).
    {
        std::string why;
        bool ok = true;
        CtxPtr ctx = standard_context();
        std::vector<Algebra> algebras;
        for (const char* name : {"vka-L", "vka-LC", "vk-limit", "small-n4"})
            algebras.push_back(load_named_presentation(name).algebra);
        algebras.push_back(affine_sl2(ctx, Scalar::param(ctx, "k")));
        algebras.push_back(affine_osp12(ctx, Scalar::param(ctx, "k")));
        algebras.push_back(beta_gamma(ctx, Rat(1), Rat(0)));
        algebras.push_back(bc_system(ctx, Rat(3, 2), Rat(-1, 2)));
        algebras.push_back(bc_system(ctx, Rat(1), Rat(0), "b", "c", "bc-ghost"));
        algebras.push_back(heisenberg(ctx, Scalar::param(ctx, "k")));
        algebras.push_back(free_fermion(ctx));
        for (const Algebra& alg : algebras) {
            auto t0 = std::chrono::steady_clock::now();
            alg.validate_table();
            if (!jacobi_all(alg, &why)) {
                ok = false;
                break;
            }
            auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            if (dt > 60) {
                ok = false;
                why = alg.name() + " exceeded the per-table budget";
                break;
            }
        }
        line(1, "Jacobi identity on all generator triples of every shipped presentation", ok,
             why);
    }

    // 2. LC derivation matches the transcription; central charges.
    {
        Algebra L = load_named_presentation("vka-L").algebra;
        Algebra LC = load_named_presentation("vka-LC").algebra;
        auto diffs = verify_lc_derivation(L, LC);
        CtxPtr ctx = L.ctx();
        Scalar cL = central_charge(L.gen_expr("L"), L);
        Scalar cLC = central_charge(coset_virasoro(L), L);
        bool ok = diffs.empty() && cL == parse_scalar("-6*k-3", ctx) &&
                  cLC == parse_scalar("-6*k*(a+k+a*k)/(-1+k+a*k)", ctx);
        line(2, "engine-derived LC table equals the recorded table; c = -6k-3 and "
                "-6k(a+k+ak)/(-1+k+ak)",
             ok, diffs.empty() ? "" : diffs.front());
    }

    // 3. The 1/a limit and the central quotient reproduce the recorded limit
    //    tables; c(LC) at k = 1/2 in the quotient is -9.
    {
        Algebra LC = load_named_presentation("vka-LC").algebra;
        Algebra limit = a_infinity_limit(LC, LimitScaling::InverseA);
        Algebra small = quotient_by_central(limit, {"e'", "f'", "h'"}, "small");
        auto d1 = table_differences(limit, load_named_presentation("vk-limit").algebra);
        auto d2 = table_differences(small, load_named_presentation("small-n4").algebra);
        Scalar c = central_charge(small.gen_expr("LC"), small).specialize({{"k", Rat(1, 2)}});
        bool ok = d1.empty() && d2.empty() && c == Scalar::from_rat(LC.ctx(), Rat(-9));
        line(3, "a -> infinity limit and quotient reproduce the recorded tables; c = -9 at "
                "k = 1/2",
             ok, !d1.empty() ? d1.front() : (!d2.empty() ? d2.front() : ""));
    }

    // 4. Realization: all small N=4 OPEs from the beta-gamma x bc fields,
    //    level -3/2, highest-weight data for n <= 4.
    {
        auto t0 = std::chrono::steady_clock::now();
        Realization r = build_wakimoto_small_n4();
        std::string why;
        bool ok = items_pass(verify_realization(r), &why);
        for (int n = 0; n <= 4 && ok; ++n) ok = items_pass(check_highest_weight(r, n), &why);
        auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        line(4, "free-field realization verified; X_n highest-weight data for n <= 4",
             ok && dt <= 600, why);
    }

    // 5. First reduction.
    {
        std::string why;
        bool ok = items_pass(verify_osp_subalgebra(), &why) &&
                  items_pass(specialize_to_theorem(), &why);
        line(5, "first reduction: closedness, osp(1|2) at level -((a+1)k+1), and the k = 1/2 "
                "specializations",
             ok, why);
    }

    // 6. Second reduction.
    {
        auto t0 = std::chrono::steady_clock::now();
        std::string why;
        bool ok = items_pass(verify_n1_structure(), &why);
        auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        line(6, "second reduction: L', psi, the recorded products, the cobounding identity, "
                "and the N=1 charges",
             ok && dt <= 1200, why);
    }

    // 7. Characters: branching at q^20 (within 60 s), the rest at q^10.
    {
        std::string why;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = items_pass(branching_check(Rat(20)), &why);
        auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        ok = ok && dt <= 60;
        ok = ok && items_pass(small_n4_multiplicity_check(Rat(10)), &why);
        ok = ok && items_pass(qhr_char_check_first(Rat(10)), &why);
        ok = ok && items_pass(qhr_char_check_second(Rat(10)), &why);
        ok = ok && items_pass(hopital_limit_check(Rat(10)), &why);
        ok = ok && items_pass(supercharacter_check(Rat(10)), &why);
        line(7, "branching identity at q^20, multiplicity/reduction/limit/supercharacter "
                "identities at q^10",
             ok, why);
    }

    // 8. Oracle equivalence: 200 randomized pairs on the beta-gamma x bc
    //    system, brackets compared through 5 mode indices.
    {
        CtxPtr ctx = standard_context();
        Algebra alg = realization_source(ctx);
        oracle::ModeModel model(alg);
        std::mt19937 rng(20240811);
        std::uniform_int_distribution<int> nterms(1, 2), len(1, 2), gen(0, alg.ngens() - 1),
            der(0, 2), coefd(-3, 3);
        bool ok = true;
        std::string why;
        for (int t = 0; t < 200 && ok; ++t) {
            auto rand_expr = [&] {
                FieldExpr e = FieldExpr::zero(ctx);
                int terms = nterms(rng);
                for (int i = 0; i < terms; ++i) {
                    Word w;
                    int L = len(rng);
                    for (int j = 0; j < L; ++j) w.push_back(Letter{gen(rng), der(rng)});
                    int c = coefd(rng);
                    e += FieldExpr::term(ctx, w, Scalar::from_int(ctx, c ? c : 1));
                }
                return e;
            };
            FieldExpr x = rand_expr(), y = rand_expr();
            if (!(model.state_of(alg.normal_order(x, y)) ==
                  model.apply(x, -1, model.state_of(y)))) {
                ok = false;
                why = "normal_order mismatch at trial " + std::to_string(t);
                break;
            }
            OpeSingular s = alg.bracket(x, y);
            for (int j = 0; j <= 4; ++j) {
                if (!(model.state_of(s.nth(j, ctx)) == model.apply(x, j, model.state_of(y)))) {
                    ok = false;
                    why = "bracket mismatch at trial " + std::to_string(t) + ", mode " +
                          std::to_string(j);
                    break;
                }
            }
        }
        line(8, "engine bracket/normal order agree with the mode-expansion oracle on 200 "
                "randomized pairs",
             ok, why);
    }

    // 9. Mutation sensitivity: five single-coefficient corruptions of the
    //    recorded table, each caught by the Jacobi suite.
    {
        Algebra base = load_named_presentation("vka-L").algebra;
        // The table stores declaration-ordered pairs, so corruptions address
        // the stored entry whichever way round the pair is named.
        auto mutate = [&](const std::string& x, const std::string& y, int pole,
                          auto&& transform) {
            std::vector<Algebra::TableEntry> entries = entries_of(base);
            bool hit = false;
            for (auto& e : entries) {
                if ((e.left == x && e.right == y) || (e.left == y && e.right == x)) {
                    e.ope.set_pole(pole, transform(e.ope.at_pole(pole, base.ctx())));
                    hit = true;
                }
            }
            if (!hit) fail(ErrorKind::Internal, "mutation target not found");
            return Algebra(base.ctx(), base.generators(), entries, std::nullopt, "mutated");
        };
        auto drop = [&](const FieldExpr&) { return FieldExpr::zero(base.ctx()); };
        auto half = [&](const FieldExpr& e) { return e.scaled(Rat(1, 2)); };
        auto twice = [&](const FieldExpr& e) { return e.scaled(Rat(2)); };
        auto flip_first = [&](const FieldExpr& e) {
            // negate the first stored term, keep the rest
            FieldExpr out = FieldExpr::zero(base.ctx());
            bool first = true;
            for (const auto& [w, c] : e.terms()) {
                out.add_term(w, first ? -c : c);
                first = false;
            }
            return out;
        };
        struct Mutation {
            const char* what;
            Algebra alg;
        };
        std::vector<Mutation> mutations;
        mutations.push_back({"drop G++ G-- pole 3", mutate("G++", "G--", 3, drop)});
        mutations.push_back({"double e f pole 2", mutate("e", "f", 2, twice)});
        mutations.push_back({"flip a term of G++ G+- pole 1", mutate("G++", "G+-", 1,
                                                                     flip_first)});
        mutations.push_back({"scale L G++ pole 2 by 2", mutate("L", "G++", 2, twice)});
        mutations.push_back({"halve h' e' pole 1", mutate("h'", "e'", 1, half)});
        bool all_caught = true;
        std::string why;
        for (const auto& m : mutations) {
            bool caught = false;
            for (int a = 0; a < m.alg.ngens() && !caught; ++a)
                for (int b = a; b < m.alg.ngens() && !caught; ++b)
                    for (int c = b; c < m.alg.ngens() && !caught; ++c)
                        caught = !m.alg.jacobi(a, b, c).pass;
            if (!caught) {
                all_caught = false;
                why = std::string("not caught: ") + m.what;
            }
        }
        line(9, "each documented single-coefficient corruption is caught", all_caught, why);
    }

    auto total = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::steady_clock::now() - t_start)
                     .count();
    std::printf("%s: %d criterion(s) failed, total %llds\n", failures ? "FAILED" : "OK",
                failures, static_cast<long long>(total));
    return failures ? 1 : 0;
}
