#include "voa/report.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

#include <json.hpp>

#include "voa/characters.hpp"
#include "voa/grammar.hpp"
#include "voa/presentation_io.hpp"
#include "voa/presentations.hpp"
#include "voa/qhr.hpp"
#include "voa/realization.hpp"

namespace voa {

namespace {

std::string shipped_data_hash() {
    // Hash of the canonical forms of every shipped presentation, so a
    // transcription change invalidates recorded results.
    std::string all;
    for (const char* name : {"vka-L", "vka-LC", "vk-limit", "small-n4"})
        all += presentation_hash(load_named_presentation(name).algebra);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : all) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CheckItem jacobi_item(const Algebra& alg, int jobs) {
    int n = alg.ngens();
    std::vector<std::tuple<int, int, int>> triples;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c) triples.emplace_back(a, b, c);
    std::string residual;
    bool ok = true;
    auto run_range = [&](size_t lo, size_t hi) -> std::string {
        for (size_t i = lo; i < hi; ++i) {
            auto [a, b, c] = triples[i];
            JacobiResult r = alg.jacobi(a, b, c);
            if (!r.pass) {
                const auto& f = r.failures.front();
                return "triple (" + alg.generator(a).name + ", " + alg.generator(b).name +
                       ", " + alg.generator(c).name + ") fails at lambda^" +
                       std::to_string(f.lambda_power) + " mu^" + std::to_string(f.mu_power) +
                       ": " + print_field_expr(f.residual, alg);
            }
        }
        return "";
    };
    if (jobs <= 1) {
        residual = run_range(0, triples.size());
    } else {
        size_t chunk = (triples.size() + static_cast<size_t>(jobs) - 1) /
                       static_cast<size_t>(jobs);
        std::vector<std::future<std::string>> futs;
        for (size_t lo = 0; lo < triples.size(); lo += chunk)
            futs.push_back(std::async(std::launch::async, run_range, lo,
                                      std::min(lo + chunk, triples.size())));
        for (auto& f : futs) {
            std::string r = f.get();
            if (!r.empty() && residual.empty()) residual = r;
        }
    }
    ok = residual.empty();
    return CheckItem::of(ok, "jacobi-" + alg.name(),
                         "Jacobi identity on all generator triples of " + alg.name(), residual);
}

CheckItem guarded(const std::string& label, const std::string& anchor,
                  const std::function<CheckItem()>& f) {
    try {
        return f();
    } catch (const Error& e) {
        return CheckItem::fail(label, anchor, e.what());
    } catch (const std::exception& e) {
        return CheckItem::fail(label, anchor, e.what());
    }
}

std::vector<CheckItem> suite_validate(const SuiteConfig& cfg) {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();
    std::vector<Algebra> algebras;
    for (const char* name : {"vka-L", "vka-LC", "vk-limit", "small-n4"}) {
        Algebra alg = load_named_presentation(name).algebra;
        if (!cfg.params.empty()) alg = specialize_presentation(alg, cfg.params, alg.name());
        algebras.push_back(std::move(alg));
    }
    algebras.push_back(affine_sl2(ctx, Scalar::param(ctx, "k")));
    algebras.push_back(affine_osp12(ctx, Scalar::param(ctx, "k")));
    algebras.push_back(beta_gamma(ctx, Rat(1), Rat(0)));
    algebras.push_back(bc_system(ctx, Rat(3, 2), Rat(-1, 2)));
    algebras.push_back(bc_system(ctx, Rat(1), Rat(0), "b", "c", "bc-ghost"));
    algebras.push_back(heisenberg(ctx, Scalar::param(ctx, "k")));
    algebras.push_back(free_fermion(ctx));
    for (const Algebra& alg : algebras) {
        items.push_back(guarded("table-" + alg.name(),
                                "skew-symmetry, weights and parities of " + alg.name(), [&] {
                                    alg.validate_table();
                                    return CheckItem::pass(
                                        "table-" + alg.name(),
                                        "skew-symmetry, weights and parities of " + alg.name());
                                }));
        items.push_back(guarded("jacobi-" + alg.name(), "Jacobi identity",
                                [&] { return jacobi_item(alg, cfg.jobs); }));
    }
    return items;
}

std::vector<CheckItem> suite_ope_lc(const SuiteConfig&) {
    std::vector<CheckItem> items;
    Algebra L = load_named_presentation("vka-L").algebra;
    Algebra LC = load_named_presentation("vka-LC").algebra;
    auto diffs = verify_lc_derivation(L, LC);
    items.push_back(CheckItem::of(diffs.empty(), "lc-derivation",
                                  "engine LC = L - Lsug' table equals the recorded table",
                                  diffs.empty() ? "" : diffs.front()));

    FieldExpr lc = coset_virasoro(L);
    std::vector<int> primed{L.require_gen("e'"), L.require_gen("f'"), L.require_gen("h'")};
    FieldExpr lsug = sugawara(L, primed);
    Scalar cL = central_charge(L.gen_expr("L"), L);
    Scalar cLC = central_charge(lc, L);
    Scalar cS = central_charge(lsug, L);
    CtxPtr ctx = L.ctx();
    items.push_back(CheckItem::of(cL == parse_scalar("-6*k-3", ctx), "c-L", "c(L) = -6k-3",
                                  cL.str()));
    items.push_back(CheckItem::of(cLC == parse_scalar("-6*k*(a+k+a*k)/(-1+k+a*k)", ctx),
                                  "c-LC", "c(LC) = -6k(a+k+ak)/(-1+k+ak)", cLC.str()));
    items.push_back(CheckItem::of(cL == cLC + cS, "c-additivity", "c(L) = c(LC) + c(Lsug')"));
    bool regular = true;
    for (const char* n : {"e'", "f'", "h'"})
        if (!L.bracket(lc, L.gen_expr(n)).empty()) regular = false;
    items.push_back(CheckItem::of(regular, "lc-coset", "LC has regular OPE with e', f', h'"));
    return items;
}

std::vector<CheckItem> suite_limit(const SuiteConfig&) {
    std::vector<CheckItem> items;
    Algebra LC = load_named_presentation("vka-LC").algebra;
    Algebra limit = a_infinity_limit(LC, LimitScaling::InverseA);
    Algebra want_limit = load_named_presentation("vk-limit").algebra;
    auto d1 = table_differences(limit, want_limit);
    items.push_back(CheckItem::of(d1.empty(), "limit-table",
                                  "1/a limit of the LC table equals the recorded limit table",
                                  d1.empty() ? "" : d1.front()));
    Algebra small = quotient_by_central(limit, {"e'", "f'", "h'"}, "small");
    Algebra want_small = load_named_presentation("small-n4").algebra;
    auto d2 = table_differences(small, want_small);
    items.push_back(CheckItem::of(d2.empty(), "quotient-table",
                                  "quotient by the central Heisenberg equals the small N=4 "
                                  "table",
                                  d2.empty() ? "" : d2.front()));
    Scalar c = central_charge(small.gen_expr("LC"), small);
    CtxPtr ctx = LC.ctx();
    items.push_back(CheckItem::of(c == parse_scalar("-6*(k+1)", ctx), "c-limit",
                                  "c(LC) = -6(k+1) in the quotient", c.str()));
    items.push_back(CheckItem::of(c.specialize({{"k", Rat(1, 2)}}) ==
                                      Scalar::from_rat(ctx, Rat(-9)),
                                  "c-limit-k-half", "c(LC) at k = 1/2 equals -9"));
    Algebra sq = a_infinity_limit(LC, LimitScaling::InverseSqrtA, {"e'", "f'", "h'"},
                                  "limit-sqrt");
    bool heis = sq.pair_bracket(sq.require_gen("h'"), sq.require_gen("h'"))
                    .at_pole(2, sq.ctx()) ==
                sq.vacuum_expr().scaled(parse_scalar("-2*k", ctx));
    items.push_back(CheckItem::of(heis, "limit-sqrt",
                                  "1/sqrt(a) scaling keeps a nondegenerate Heisenberg: "
                                  "h'h' pole 2 = -2k"));
    return items;
}

std::vector<CheckItem> suite_realize(const SuiteConfig& cfg) {
    Realization r = build_wakimoto_small_n4();
    std::vector<CheckItem> items = verify_realization(r);
    for (int n = 0; n <= cfg.max_weight; ++n) {
        auto hw = check_highest_weight(r, n);
        items.insert(items.end(), hw.begin(), hw.end());
    }
    return items;
}

std::vector<CheckItem> suite_char(const SuiteConfig& cfg) {
    std::vector<CheckItem> items;
    Rat N(cfg.order);
    auto want = [&](const char* name) { return cfg.check.empty() || cfg.check == name; };
    auto append = [&](std::vector<CheckItem> v) {
        items.insert(items.end(), v.begin(), v.end());
    };
    if (want("branching")) append(branching_check(N));
    if (want("small-n4")) append(small_n4_multiplicity_check(N));
    if (want("qhr1")) append(qhr_char_check_first(N));
    if (want("qhr2")) append(qhr_char_check_second(N));
    if (want("limit")) append(hopital_limit_check(N));
    if (want("sch")) append(supercharacter_check(N));
    if (want("pbw")) append(weyl_pbw_oracle_check(std::min(N, Rat(8)), 3));
    if (items.empty()) fail(ErrorKind::Unsupported, "unknown char check: " + cfg.check);
    return items;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "validate-presentations", "ope-lc",       "limit-a-infinity", "realize-small-n4",
        "reduce-first",           "reduce-second", "char"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = name;
    report.presentation_hash = shipped_data_hash();
    report.config["order"] = std::to_string(config.order);
    report.config["max_weight"] = std::to_string(config.max_weight);
    report.config["jobs"] = std::to_string(config.jobs);
    if (!config.check.empty()) report.config["check"] = config.check;
    for (const auto& [k, v] : config.params) report.config["param " + k] = rat_str(v);

    try {
        if (name == "validate-presentations")
            report.items = suite_validate(config);
        else if (name == "ope-lc")
            report.items = suite_ope_lc(config);
        else if (name == "limit-a-infinity")
            report.items = suite_limit(config);
        else if (name == "realize-small-n4")
            report.items = suite_realize(config);
        else if (name == "reduce-first") {
            report.items = verify_osp_subalgebra();
            auto extra = specialize_to_theorem();
            report.items.insert(report.items.end(), extra.begin(), extra.end());
        } else if (name == "reduce-second")
            report.items = verify_n1_structure();
        else if (name == "char")
            report.items = suite_char(config);
        else
            fail(ErrorKind::Unsupported, "unknown suite: " + name);
    } catch (const Error& e) {
        report.items.push_back(CheckItem::fail("suite", "suite completes", e.what()));
    }

    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

std::string render_text(const SuiteReport& report) {
    std::ostringstream out;
    out << "suite " << report.suite << " (data " << report.presentation_hash << ")\n";
    for (const auto& [k, v] : report.config) out << "  config " << k << " = " << v << "\n";
    for (const auto& item : report.items) {
        const char* tag = item.status == CheckItem::Status::Pass     ? "PASS"
                          : item.status == CheckItem::Status::Flagged ? "FLAG"
                                                                      : "FAIL";
        out << tag << " " << item.label << ": " << item.anchor;
        if (!item.note.empty()) out << " [" << item.note << "]";
        out << "\n";
        if (item.status == CheckItem::Status::Fail && !item.residual.empty())
            out << "     residual: " << item.residual << "\n";
    }
    size_t passed = 0, flagged = 0, failed = 0;
    for (const auto& item : report.items) {
        if (item.status == CheckItem::Status::Pass) ++passed;
        if (item.status == CheckItem::Status::Flagged) ++flagged;
        if (item.status == CheckItem::Status::Fail) ++failed;
    }
    out << (failed ? "FAILED" : "OK") << " " << passed << " passed";
    if (flagged) out << ", " << flagged << " flagged";
    if (failed) out << ", " << failed << " failed";
    out << "\n";
    return out.str();
}

std::string render_json(const SuiteReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["suite"] = report.suite;
    j["presentation_hash"] = report.presentation_hash;
    j["config"] = report.config;
    j["passed"] = report.passed();
    j["elapsed_ms"] = report.elapsed_ms;
    j["items"] = nlohmann::json::array();
    for (const auto& item : report.items) {
        nlohmann::json ji;
        ji["label"] = item.label;
        ji["anchor"] = item.anchor;
        ji["status"] = item.status == CheckItem::Status::Pass     ? "pass"
                       : item.status == CheckItem::Status::Flagged ? "flagged"
                                                                   : "fail";
        if (!item.residual.empty()) ji["residual"] = item.residual;
        if (!item.note.empty()) ji["note"] = item.note;
        j["items"].push_back(ji);
    }
    return j.dump(2) + "\n";
}

} // namespace voa
