#include "voa/scalar.hpp"

#include <bit>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

CtxPtr ScalarContext::make(std::vector<std::string> params) {
    return make(std::move(params), {});
}

CtxPtr ScalarContext::make(std::vector<std::string> params,
                           std::vector<std::pair<std::string, RatFun>> roots) {
    auto ctx = std::make_shared<ScalarContext>();
    ctx->params_ = std::move(params);
    for (auto& [name, sq] : roots) {
        if (sq.nvars() != ctx->nparams())
            fail(ErrorKind::Declaration, "root relation over wrong parameter set: " + name);
        ctx->roots_.push_back(Root{name, std::move(sq)});
    }
    if (ctx->roots_.size() > 16) fail(ErrorKind::Unsupported, "too many root symbols");
    return ctx;
}

int ScalarContext::param_index(const std::string& name) const {
    for (size_t i = 0; i < params_.size(); ++i)
        if (params_[i] == name) return static_cast<int>(i);
    return -1;
}

int ScalarContext::root_index(const std::string& name) const {
    for (size_t i = 0; i < roots_.size(); ++i)
        if (roots_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool ScalarContext::same_declarations(const ScalarContext& o) const {
    if (params_ != o.params_) return false;
    if (roots_.size() != o.roots_.size()) return false;
    for (size_t i = 0; i < roots_.size(); ++i)
        if (roots_[i].name != o.roots_[i].name || roots_[i].square != o.roots_[i].square)
            return false;
    return true;
}

Scalar Scalar::zero(CtxPtr ctx) {
    Scalar s;
    s.ctx_ = std::move(ctx);
    return s;
}

Scalar Scalar::from_rat(CtxPtr ctx, const Rat& c) {
    int n = ctx ? ctx->nparams() : 0;
    return from_ratfun(std::move(ctx), RatFun::constant(n, c));
}

Scalar Scalar::from_ratfun(CtxPtr ctx, RatFun f) {
    Scalar s;
    s.ctx_ = std::move(ctx);
    if (f.nvars() != s.ctx_->nparams())
        fail(ErrorKind::Declaration, "rational function over wrong parameter set");
    if (!f.is_zero()) s.comp_[0] = std::move(f);
    return s;
}

Scalar Scalar::param(CtxPtr ctx, const std::string& name) {
    int i = ctx->param_index(name);
    if (i < 0) fail(ErrorKind::Declaration, "undeclared parameter: " + name);
    return from_ratfun(ctx, RatFun::variable(ctx->nparams(), i));
}

Scalar Scalar::root(CtxPtr ctx, const std::string& name) {
    int i = ctx->root_index(name);
    if (i < 0) fail(ErrorKind::Declaration, "undeclared root symbol: " + name);
    Scalar s;
    s.ctx_ = ctx;
    s.comp_[1u << i] = RatFun::constant(ctx->nparams(), Rat(1));
    return s;
}

bool Scalar::is_one() const {
    return comp_.size() == 1 && comp_.begin()->first == 0 && comp_.begin()->second.is_one();
}

RatFun Scalar::rational_part() const {
    auto it = comp_.find(0);
    if (it != comp_.end()) return it->second;
    return RatFun(ctx_ ? ctx_->nparams() : 0);
}

void Scalar::check_same(const Scalar& o) const {
    if (!ctx_ || !o.ctx_) fail(ErrorKind::Declaration, "operation on uninitialized scalar");
    if (ctx_ == o.ctx_) return;
    if (!ctx_->same_declarations(*o.ctx_))
        fail(ErrorKind::Declaration, "scalars over different declarations");
}

void Scalar::prune() {
    for (auto it = comp_.begin(); it != comp_.end();)
        it = it->second.is_zero() ? comp_.erase(it) : std::next(it);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& [m, c] : r.comp_) c = -c;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    for (const auto& [m, c] : o.comp_) {
        auto it = r.comp_.find(m);
        if (it == r.comp_.end())
            r.comp_[m] = c;
        else
            it->second += c;
    }
    r.prune();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar r = Scalar::zero(ctx_);
    for (const auto& [ma, ca] : comp_) {
        for (const auto& [mb, cb] : o.comp_) {
            uint32_t common = ma & mb;
            uint32_t mask = ma ^ mb;
            RatFun c = ca * cb;
            // r^2 -> square(r), eagerly, for every repeated root.
            for (int i = 0; i < ctx_->nroots(); ++i)
                if (common & (1u << i)) c *= ctx_->root(i).square;
            auto it = r.comp_.find(mask);
            if (it == r.comp_.end())
                r.comp_[mask] = std::move(c);
            else
                it->second += c;
        }
    }
    r.prune();
    return r;
}

Scalar Scalar::scaled(const Rat& c) const {
    Scalar r = *this;
    if (c == 0) {
        r.comp_.clear();
        return r;
    }
    for (auto& [m, v] : r.comp_) v = v.scaled(c);
    return r;
}

Scalar Scalar::inverse() const {
    if (!ctx_) fail(ErrorKind::Declaration, "inverse of uninitialized scalar");
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (comp_.size() == 1) {
        const auto& [mask, c] = *comp_.begin();
        // (c * r_S)^(-1) = r_S / (c * prod square(S))
        RatFun denom = c;
        for (int i = 0; i < ctx_->nroots(); ++i)
            if (mask & (1u << i)) denom *= ctx_->root(i).square;
        Scalar r = Scalar::zero(ctx_);
        r.comp_[mask] = denom.inverse();
        return r;
    }
    // Rationalize one root at a time: x = p + q*r, x^(-1) = (p - q*r) / (p^2 - q^2 r^2).
    uint32_t all = 0;
    for (const auto& [m, c] : comp_) all |= m;
    int bit = 31 - std::countl_zero(all);
    uint32_t b = 1u << bit;
    Scalar p = Scalar::zero(ctx_), q = Scalar::zero(ctx_);
    for (const auto& [m, c] : comp_) {
        if (m & b)
            q.comp_[m & ~b] = c;
        else
            p.comp_[m] = c;
    }
    Scalar rho = Scalar::zero(ctx_);
    rho.comp_[0] = ctx_->root(bit).square;
    Scalar norm = p * p - q * q * rho;
    if (norm.is_zero())
        fail(ErrorKind::DivisionByZero, "scalar is a zero divisor in the root extension");
    Scalar conj = p - (q * Scalar::root(ctx_, ctx_->root(bit).name));
    return conj * norm.inverse();
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = Scalar::one(ctx_);
    Scalar b = *this;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1u) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!ctx_ || !o.ctx_) return ctx_ == o.ctx_;
    if (ctx_ != o.ctx_ && !ctx_->same_declarations(*o.ctx_)) return false;
    return comp_ == o.comp_;
}

bool Scalar::operator<(const Scalar& o) const {
    auto a = comp_.begin(), b = o.comp_.begin();
    for (; a != comp_.end() && b != o.comp_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
    }
    return b != o.comp_.end();
}

Scalar Scalar::specialize(const std::map<std::string, Rat>& assignment) const {
    Scalar r = Scalar::zero(ctx_);
    for (const auto& [mask, c] : comp_) {
        for (int i = 0; i < ctx_->nroots(); ++i) {
            if (!(mask & (1u << i))) continue;
            for (const auto& [name, value] : assignment) {
                int v = ctx_->param_index(name);
                if (v >= 0 && ctx_->root(i).square.degree(v).value_or(0) != 0)
                    fail(ErrorKind::Unsupported,
                         "specialization of " + name + " touches the defining relation of root " +
                             ctx_->root(i).name);
            }
        }
        RatFun cc = c;
        for (const auto& [name, value] : assignment) {
            int v = ctx_->param_index(name);
            if (v < 0) fail(ErrorKind::Declaration, "undeclared parameter: " + name);
            cc = cc.substitute(v, value, ctx_->params());
        }
        if (!cc.is_zero()) r.comp_[mask] = std::move(cc);
    }
    return r;
}

Scalar Scalar::substitute(const std::string& param, const RatFun& value) const {
    int v = ctx_->param_index(param);
    if (v < 0) fail(ErrorKind::Declaration, "undeclared parameter: " + param);
    Scalar r = Scalar::zero(ctx_);
    for (const auto& [mask, c] : comp_) {
        for (int i = 0; i < ctx_->nroots(); ++i)
            if ((mask & (1u << i)) && ctx_->root(i).square.degree(v).value_or(0) != 0)
                fail(ErrorKind::Unsupported,
                     "substitution for " + param + " touches the defining relation of root " +
                         ctx_->root(i).name);
        RatFun cc = c.substitute(v, value, ctx_->params());
        if (!cc.is_zero()) r.comp_[mask] = std::move(cc);
    }
    return r;
}

std::optional<int> Scalar::degree2(const std::string& param) const {
    if (is_zero()) return std::nullopt;
    int v = ctx_->param_index(param);
    if (v < 0) fail(ErrorKind::Declaration, "undeclared parameter: " + param);
    std::optional<int> best;
    for (const auto& [mask, c] : comp_) {
        int d2 = 2 * c.degree(v).value();
        for (int i = 0; i < ctx_->nroots(); ++i)
            if (mask & (1u << i)) d2 += ctx_->root(i).square.degree(v).value_or(0);
        if (!best || d2 > *best) best = d2;
    }
    return best;
}

Scalar Scalar::limit_at_infinity(const std::string& param) const {
    int v = ctx_->param_index(param);
    if (v < 0) fail(ErrorKind::Declaration, "undeclared parameter: " + param);
    Scalar r = Scalar::zero(ctx_);
    for (const auto& [mask, c] : comp_) {
        int rootdeg = 0;
        for (int i = 0; i < ctx_->nroots(); ++i)
            if (mask & (1u << i)) rootdeg += ctx_->root(i).square.degree(v).value_or(0);
        int d2 = 2 * c.degree(v).value() + rootdeg;
        if (d2 > 0) fail(ErrorKind::Divergence, "coefficient diverges: " + str());
        if (d2 < 0) continue;
        if (rootdeg != 0)
            fail(ErrorKind::Internal, "degree-zero component with parameter-dependent root");
        r.comp_[mask] = c.limit_at_infinity(v);
    }
    r.prune();
    return r;
}

std::string Scalar::str() const {
    if (!ctx_) return "<invalid>";
    if (comp_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mask, c] : comp_) {
        if (!first) out << " + ";
        first = false;
        out << c.str(ctx_->params());
        for (int i = 0; i < ctx_->nroots(); ++i)
            if (mask & (1u << i)) out << "*" << ctx_->root(i).name;
    }
    return out.str();
}

} // namespace voa
