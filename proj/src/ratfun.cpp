#include "voa/ratfun.hpp"

#include <sstream>

#include "voa/errors.hpp"

namespace voa {

namespace {

// Exact division helper for the reduction step: divisibility is guaranteed.
Poly div_by_gcd(const Poly& p, const Poly& g) {
    if (g.is_constant()) return p.scaled(Rat(1) / g.constant_value());
    // Reuse gcd-based reduction: p / g computed by long division via gcd code
    // path is private; do schoolbook division in the top variable instead.
    // Division is exact because g divides p.
    Poly q(p.nvars());
    Poly r = p;
    int var = -1;
    for (int v = g.nvars() - 1; v >= 0; --v)
        if (g.degree(v) > 0) { var = v; break; }
    while (!r.is_zero() && r.degree(var) >= g.degree(var)) {
        int dr = r.degree(var), dg = g.degree(var);
        Poly cr = r.coeff_of(var, dr), cg = g.coeff_of(var, dg);
        Poly c = div_by_gcd(cr, cg);
        Poly term = c * Poly::variable(p.nvars(), var).pow(static_cast<unsigned>(dr - dg));
        q += term;
        r -= term * g;
    }
    return q;
}

} // namespace

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.nvars(), Rat(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_constant() || g.constant_value() != 1) {
        num_ = div_by_gcd(num_, g);
        den_ = div_by_gcd(den_, g);
    }
    Rat lc = den_.leading_coeff();
    if (lc != 1) {
        num_ = num_.scaled(Rat(1) / lc);
        den_ = den_.scaled(Rat(1) / lc);
    }
}

bool RatFun::is_one() const {
    return num_.is_constant() && den_.is_constant() && !num_.is_zero() &&
           num_.constant_value() == den_.constant_value();
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }

RatFun RatFun::operator/(const RatFun& o) const { return *this * o.inverse(); }

RatFun RatFun::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    return RatFun(den_, num_);
}

RatFun RatFun::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFun acc = RatFun::constant(nvars(), Rat(1));
    RatFun b = *this;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1u) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    return acc;
}

RatFun RatFun::scaled(const Rat& c) const {
    RatFun r = *this;
    r.num_ = r.num_.scaled(c);
    if (c == 0) r.den_ = Poly::constant(nvars(), Rat(1));
    return r;
}

RatFun RatFun::substitute(int var, const Rat& value, const std::vector<std::string>& names) const {
    Poly d = den_.substitute(var, value);
    if (d.is_zero())
        fail(ErrorKind::Pole,
             "specialization " + names[static_cast<size_t>(var)] + " = " + rat_str(value) +
                 " makes the denominator " + den_.str(names) + " vanish");
    return RatFun(num_.substitute(var, value), std::move(d));
}

namespace {

RatFun poly_at_ratfun(const Poly& p, int var, const RatFun& value) {
    int d = p.degree(var);
    if (d <= 0) return RatFun::from_poly(p);
    // sum_i c_i * v^i = (sum_i c_i num^i den^(d-i)) / den^d
    Poly acc(p.nvars());
    for (int i = 0; i <= d; ++i) {
        Poly ci = p.coeff_of(var, i);
        if (ci.is_zero()) continue;
        acc += ci * value.num().pow(static_cast<unsigned>(i)) *
               value.den().pow(static_cast<unsigned>(d - i));
    }
    return RatFun(std::move(acc), value.den().pow(static_cast<unsigned>(d)));
}

} // namespace

RatFun RatFun::substitute(int var, const RatFun& value,
                          const std::vector<std::string>& names) const {
    RatFun n = poly_at_ratfun(num_, var, value);
    RatFun d = poly_at_ratfun(den_, var, value);
    if (d.is_zero())
        fail(ErrorKind::Pole, "substitution for " + names[static_cast<size_t>(var)] +
                                  " makes the denominator " + den_.str(names) + " vanish");
    return n / d;
}

std::optional<int> RatFun::degree(int var) const {
    if (is_zero()) return std::nullopt;
    return num_.degree(var) - den_.degree(var);
}

RatFun RatFun::limit_at_infinity(int var) const {
    if (is_zero()) return *this;
    int dn = num_.degree(var), dd = den_.degree(var);
    if (dn > dd) fail(ErrorKind::Divergence, "coefficient has positive degree");
    if (dn < dd) return RatFun(nvars());
    return RatFun(num_.coeff_of(var, dn), den_.coeff_of(var, dd));
}

std::string RatFun::str(const std::vector<std::string>& names) const {
    std::ostringstream out;
    bool trivial_den = den_.is_constant() && den_.constant_value() == 1;
    out << "(" << num_.str(names) << ")";
    if (!trivial_den) out << "/(" << den_.str(names) << ")";
    return out.str();
}

} // namespace voa
