#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voa/errors.hpp"
#include "voa/grammar.hpp"
#include "voa/realization.hpp"

using namespace voa;

namespace {

const Realization& realization() {
    static Realization r = build_wakimoto_small_n4();
    return r;
}

} // namespace

TEST_CASE("wakimoto realization verifies against the small N=4 table") {
    const Realization& r = realization();
    auto items = verify_realization(r);
    int checked = 0;
    for (const auto& it : items) {
        if (it.status != CheckItem::Status::Pass) MESSAGE(it.label, ": ", it.residual);
        CHECK(it.status == CheckItem::Status::Pass);
        ++checked;
    }
    CHECK(checked >= 36 + 3); // 36 pairs + level/weights/charge items
}

TEST_CASE("x vectors") {
    const Algebra& src = realization().source;
    CHECK(x_vector(src, 0) == src.vacuum_expr());
    CHECK(x_vector(src, 1) == parse_field_expr("b", src));
    CHECK(x_vector(src, 2) == parse_field_expr(":b d(b):", src));
    // canonical nesting of the 3-letter word
    FieldExpr x3 = x_vector(src, 3);
    CHECK(x3 == parse_field_expr(":b d(b) d(d(b)):", src));
    CHECK(src.canonicalize(x3) == x3);
}

TEST_CASE("highest-weight data of X_n for n <= 4") {
    const Realization& r = realization();
    for (int n = 0; n <= 4; ++n) {
        auto items = check_highest_weight(r, n);
        for (const auto& it : items) {
            if (it.status != CheckItem::Status::Pass) MESSAGE(it.label, ": ", it.residual);
            CHECK(it.status == CheckItem::Status::Pass);
        }
    }
}

TEST_CASE("specific highest-weight values") {
    const Realization& r = realization();
    const Algebra& src = r.source;
    const FieldExpr& h = r.images.at(r.target.require_gen("h"));
    const FieldExpr& L = r.images.at(r.target.require_gen("LC"));
    FieldExpr b = parse_field_expr("b", src);
    // h_(0) b = b and L_(1) b = 3/2 b
    CHECK(src.equal(src.nth_product(h, 0, b), b));
    CHECK(src.equal(src.nth_product(L, 1, b), b.scaled(Rat(3, 2))));
    // L_(1) X_2 = 4 X_2
    FieldExpr x2 = x_vector(src, 2);
    CHECK(src.equal(src.nth_product(L, 1, x2), x2.scaled(Rat(4))));
}
