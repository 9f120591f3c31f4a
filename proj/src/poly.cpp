#include "voa/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

Poly Poly::constant(int nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Mono(nvars, 0)] = c;
    return p;
}

Poly Poly::variable(int nvars, int index) {
    assert(index >= 0 && index < nvars);
    Poly p(nvars);
    Mono m(nvars, 0);
    m[index] = 1;
    p.terms_[m] = Rat(1);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Mono(nvars_, 0);
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    auto it = terms_.find(Mono(nvars_, 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) fail(ErrorKind::Declaration, "polynomials over different parameter sets");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) {
        auto it = r.terms_.find(m);
        if (it == r.terms_.end()) {
            r.terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) fail(ErrorKind::Declaration, "polynomials over different parameter sets");
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(nvars_);
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            Rat c = ca * cb;
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                if (c != 0) r.terms_[m] = c;
            } else {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly acc = Poly::constant(nvars_, Rat(1));
    Poly b = *this;
    while (e) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

bool Poly::operator<(const Poly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    auto a = terms_.begin(), b = o.terms_.begin();
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
    }
    return b != o.terms_.end();
}

int Poly::degree(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

Poly Poly::coeff_of(int var, int deg) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == deg) {
            Mono mm = m;
            mm[var] = 0;
            r.terms_[mm] = c;
        }
    }
    return r;
}

Poly Poly::substitute(int var, const Rat& value) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        Mono mm = m;
        mm[var] = 0;
        Rat cc = c * rat_pow(value, static_cast<unsigned>(m[var]));
        auto it = r.terms_.find(mm);
        if (it == r.terms_.end()) {
            if (cc != 0) r.terms_[mm] = cc;
        } else {
            it->second += cc;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

Rat Poly::leading_coeff() const {
    if (terms_.empty()) return Rat(0);
    return terms_.rbegin()->second;
}

namespace {

// Univariate view in variable `var`: coefficients are Polys with var-degree 0.
std::vector<Poly> uni_view(const Poly& p, int var) {
    int d = p.degree(var);
    std::vector<Poly> cs;
    cs.reserve(static_cast<size_t>(d + 1));
    for (int i = 0; i <= d; ++i) cs.push_back(p.coeff_of(var, i));
    return cs;
}

Poly from_uni(const std::vector<Poly>& cs, int var, int nvars) {
    Poly r(nvars);
    Poly v = Poly::variable(nvars, var);
    for (size_t i = 0; i < cs.size(); ++i) r += cs[i] * v.pow(static_cast<unsigned>(i));
    return r;
}

int uni_deg(const std::vector<Poly>& cs) {
    for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i)
        if (!cs[i].is_zero()) return i;
    return -1;
}

// Content of p viewed in `var`: gcd of the univariate coefficients.
Poly content_in(const Poly& p, int var) {
    Poly g(p.nvars());
    for (const auto& c : uni_view(p, var))
        if (!c.is_zero()) g = Poly::gcd(g, c);
    return g;
}

// Exact division, used only where divisibility is guaranteed (by content or gcd).
Poly divide_exact(const Poly& num, const Poly& den) {
    if (den.is_constant()) return num.scaled(Rat(1) / den.constant_value());
    // Long division in the highest variable where den is non-constant.
    int var = -1;
    for (int v = den.nvars() - 1; v >= 0; --v)
        if (den.degree(v) > 0) { var = v; break; }
    std::vector<Poly> n = uni_view(num, var), d = uni_view(den, var);
    int dn = uni_deg(n), dd = uni_deg(d);
    std::vector<Poly> q(static_cast<size_t>(std::max(dn - dd + 1, 0)), Poly(num.nvars()));
    while (dn >= dd && dn >= 0) {
        Poly c = divide_exact(n[static_cast<size_t>(dn)], d[static_cast<size_t>(dd)]);
        q[static_cast<size_t>(dn - dd)] = c;
        for (int i = 0; i <= dd; ++i)
            n[static_cast<size_t>(dn - dd + i)] -= c * d[static_cast<size_t>(i)];
        dn = uni_deg(n);
    }
    return from_uni(q, var, num.nvars());
}

// Pseudo-remainder of a by b in `var` (lc(b)^(da-db+1) * a mod b).
Poly prem(const Poly& a, const Poly& b, int var, int nvars) {
    std::vector<Poly> r = uni_view(a, var), d = uni_view(b, var);
    int dr = uni_deg(r), dd = uni_deg(d);
    const Poly& lc = d[static_cast<size_t>(dd)];
    while (dr >= dd && dr >= 0) {
        Poly top = r[static_cast<size_t>(dr)];
        for (auto& c : r) c = c * lc;
        for (int i = 0; i <= dd; ++i)
            r[static_cast<size_t>(dr - dd + i)] -= top * d[static_cast<size_t>(i)];
        int ndr = uni_deg(r);
        assert(ndr < dr);
        dr = ndr;
    }
    return from_uni(r, var, nvars);
}

Poly make_monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(Rat(1) / p.leading_coeff());
}

} // namespace

// Primitive PRS over Q[vars]; result is monic under the global monomial order.
Poly Poly::gcd(const Poly& x, const Poly& y) {
    if (x.is_zero()) return make_monic(y);
    if (y.is_zero()) return make_monic(x);
    if (x.is_constant() || y.is_constant()) return Poly::constant(x.nvars(), Rat(1));
    int var = -1;
    for (int v = x.nvars() - 1; v >= 0; --v)
        if (x.degree(v) > 0 || y.degree(v) > 0) { var = v; break; }
    if (x.degree(var) == 0 || y.degree(var) == 0) {
        // One operand is free of the main variable: gcd lives in the content.
        Poly cx = x.degree(var) == 0 ? x : content_in(x, var);
        Poly cy = y.degree(var) == 0 ? y : content_in(y, var);
        return Poly::gcd(cx, cy);
    }

    Poly ca = content_in(x, var), cb = content_in(y, var);
    Poly cg = Poly::gcd(ca, cb);
    Poly a = divide_exact(x, ca), b = divide_exact(y, cb);
    if (a.degree(var) < b.degree(var)) std::swap(a, b);
    while (true) {
        Poly r = prem(a, b, var, x.nvars());
        if (r.is_zero()) return make_monic(cg * b); // b is primitive in var

        if (r.degree(var) == 0) return make_monic(cg);
        a = b;
        b = divide_exact(r, content_in(r, var));
    }
}

void Poly::set_term(const Mono& m, const Rat& c) {
    assert(static_cast<int>(m.size()) == nvars_);
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Leading monomials first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat ac = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unit = (ac == 1);
        bool has_var = false;
        for (int v = 0; v < nvars_; ++v)
            if (m[v] > 0) has_var = true;
        if (!unit || !has_var) out << rat_str(ac);
        bool need_star = !unit || !has_var;
        for (int v = 0; v < nvars_; ++v) {
            for (int e = 0; e < m[v]; ++e) {
                if (need_star) out << "*";
                out << names[static_cast<size_t>(v)];
                need_star = true;
            }
        }
    }
    return out.str();
}

} // namespace voa
