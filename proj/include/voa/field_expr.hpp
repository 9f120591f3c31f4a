#pragma once

#include <compare>
#include <map>
#include <vector>

#include "voa/scalar.hpp"

namespace voa {

/// One letter of a normally ordered word: the der-th derivative of a generator.
struct Letter {
    int gen = 0;
    int der = 0;
    auto operator<=>(const Letter&) const = default;
};

/// Right-nested normally ordered word :a1 (a2 (... an)):, empty = vacuum.
using Word = std::vector<Letter>;

struct WordLess {
    bool operator()(const Word& x, const Word& y) const {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    }
};

/// Formal Scalar-linear combination of words. Canonical form relative to an
/// algebra (letters sorted, repeats rewritten) is established by the engine;
/// the container itself only guarantees no explicit zero terms.
class FieldExpr {
  public:
    FieldExpr() = default;
    static FieldExpr zero(CtxPtr ctx);
    static FieldExpr vacuum(CtxPtr ctx); // the unit field
    static FieldExpr letter(CtxPtr ctx, int gen, int der = 0);
    static FieldExpr term(CtxPtr ctx, Word w, Scalar c);

    const CtxPtr& ctx() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<Word, Scalar, WordLess>& terms() const { return terms_; }

    /// Coefficient of the vacuum word (zero scalar if absent).
    Scalar vacuum_coefficient() const;
    /// True when the expression is c * vacuum.
    bool is_scalar_multiple_of_vacuum() const;

    FieldExpr operator-() const;
    FieldExpr operator+(const FieldExpr& o) const;
    FieldExpr operator-(const FieldExpr& o) const;
    FieldExpr& operator+=(const FieldExpr& o);
    FieldExpr& operator-=(const FieldExpr& o) { return *this += -o; }
    FieldExpr scaled(const Scalar& c) const;
    FieldExpr scaled(const Rat& c) const;

    void add_term(const Word& w, const Scalar& c);

    /// Formal derivative: Leibniz over letters, no reordering. The result may
    /// be non-canonical; engine operations accept it either way.
    FieldExpr derived() const;
    FieldExpr derived(int times) const;

    bool operator==(const FieldExpr& o) const { return terms_ == o.terms_; }
    bool operator!=(const FieldExpr& o) const { return !(*this == o); }

  private:
    CtxPtr ctx_;
    std::map<Word, Scalar, WordLess> terms_;
};

} // namespace voa
