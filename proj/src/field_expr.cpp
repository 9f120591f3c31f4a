#include "voa/field_expr.hpp"

#include "voa/errors.hpp"

namespace voa {

FieldExpr FieldExpr::zero(CtxPtr ctx) {
    FieldExpr e;
    e.ctx_ = std::move(ctx);
    return e;
}

FieldExpr FieldExpr::vacuum(CtxPtr ctx) {
    FieldExpr e;
    e.ctx_ = ctx;
    e.terms_[Word{}] = Scalar::one(ctx);
    return e;
}

FieldExpr FieldExpr::letter(CtxPtr ctx, int gen, int der) {
    FieldExpr e;
    e.ctx_ = ctx;
    e.terms_[Word{Letter{gen, der}}] = Scalar::one(ctx);
    return e;
}

FieldExpr FieldExpr::term(CtxPtr ctx, Word w, Scalar c) {
    FieldExpr e;
    e.ctx_ = std::move(ctx);
    if (!c.is_zero()) e.terms_[std::move(w)] = std::move(c);
    return e;
}

Scalar FieldExpr::vacuum_coefficient() const {
    auto it = terms_.find(Word{});
    if (it != terms_.end()) return it->second;
    return Scalar::zero(ctx_);
}

bool FieldExpr::is_scalar_multiple_of_vacuum() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.empty();
}

FieldExpr FieldExpr::operator-() const {
    FieldExpr r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

FieldExpr FieldExpr::operator+(const FieldExpr& o) const {
    FieldExpr r = *this;
    r += o;
    return r;
}

FieldExpr FieldExpr::operator-(const FieldExpr& o) const { return *this + (-o); }

FieldExpr& FieldExpr::operator+=(const FieldExpr& o) {
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FieldExpr FieldExpr::scaled(const Scalar& c) const {
    FieldExpr r = FieldExpr::zero(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [w, v] : terms_) {
        Scalar s = v * c;
        if (!s.is_zero()) r.terms_[w] = std::move(s);
    }
    return r;
}

FieldExpr FieldExpr::scaled(const Rat& c) const {
    FieldExpr r = FieldExpr::zero(ctx_);
    if (c == 0) return r;
    for (const auto& [w, v] : terms_) r.terms_[w] = v.scaled(c);
    return r;
}

void FieldExpr::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_[w] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FieldExpr FieldExpr::derived() const {
    FieldExpr r = FieldExpr::zero(ctx_);
    for (const auto& [w, c] : terms_) {
        for (size_t i = 0; i < w.size(); ++i) {
            Word dw = w;
            dw[i].der += 1;
            r.add_term(dw, c);
        }
    }
    return r;
}

FieldExpr FieldExpr::derived(int times) const {
    FieldExpr r = *this;
    for (int i = 0; i < times; ++i) r = r.derived();
    return r;
}

} // namespace voa
