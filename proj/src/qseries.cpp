#include "voa/qseries.hpp"

#include <climits>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

namespace {
constexpr long kInfinity = LONG_MAX / 4;
}

Laurent Laurent::monomial(int ez, int ew, const Rat& c) {
    Laurent l;
    if (c != 0) l.terms_[{ez, ew}] = c;
    return l;
}

void Laurent::add(int ez, int ew, const Rat& c) {
    if (c == 0) return;
    Key k{ez, ew};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_[k] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

Laurent Laurent::scaled(const Rat& c) const {
    Laurent r;
    if (c == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
    return r;
}

Laurent Laurent::negate_var(int var) const {
    Laurent r;
    for (const auto& [k, c] : terms_) {
        int deg = var == 0 ? k.first : k.second;
        r.terms_[k] = (deg % 2) ? -c : c;
    }
    return r;
}

Laurent Laurent::set_var(int var, const Rat& value) const {
    Laurent r;
    for (const auto& [k, c] : terms_) {
        int deg = var == 0 ? k.first : k.second;
        Rat f = deg >= 0 ? rat_pow(value, static_cast<unsigned>(deg))
                         : Rat(1) / rat_pow(value, static_cast<unsigned>(-deg));
        Key nk = var == 0 ? Key{0, k.second} : Key{k.first, 0};
        r.add(nk.first, nk.second, c * f);
    }
    return r;
}

Laurent Laurent::derive_var(int var) const {
    Laurent r;
    for (const auto& [k, c] : terms_) {
        int deg = var == 0 ? k.first : k.second;
        if (deg == 0) continue;
        Key nk = var == 0 ? Key{k.first - 1, k.second} : Key{k.first, k.second - 1};
        r.add(nk.first, nk.second, c * Rat(deg));
    }
    return r;
}

std::optional<Laurent> Laurent::divide_v_minus_vinv(int var) const {
    // As a polynomial in v: (v - v^-1) Q = L gives q_(j-1) = c_j + q_(j+1),
    // solved downward from the top degree; verified by multiplying back.
    std::map<int, Laurent> slices;
    for (const auto& [k, c] : terms_) {
        int deg = var == 0 ? k.first : k.second;
        int other = var == 0 ? k.second : k.first;
        slices[deg].add(var == 0 ? 0 : other, var == 0 ? other : 0, c);
    }
    Laurent out;
    if (!slices.empty()) {
        int lo = slices.begin()->first, hi = slices.rbegin()->first;
        std::map<int, Laurent> q;
        for (int j = hi; j >= lo; --j) {
            Laurent cj = slices.count(j) ? slices[j] : Laurent();
            Laurent up = q.count(j + 1) ? q[j + 1] : Laurent();
            Laurent val = cj + up;
            q[j - 1] = val;
            for (const auto& [k, c] : val.terms()) {
                int other = var == 0 ? k.second : k.first;
                out.add(var == 0 ? j - 1 : other, var == 0 ? other : j - 1, c);
            }
        }
    }
    Laurent check;
    for (const auto& [k, c] : out.terms()) {
        int deg = var == 0 ? k.first : k.second;
        int other = var == 0 ? k.second : k.first;
        check.add(var == 0 ? deg + 1 : other, var == 0 ? other : deg + 1, c);
        check.add(var == 0 ? deg - 1 : other, var == 0 ? other : deg - 1, -c);
    }
    if (!(check == *this)) return std::nullopt;
    return out;
}

int Laurent::max_abs_degree(int var) const {
    int m = 0;
    for (const auto& [k, c] : terms_) {
        int deg = var == 0 ? k.first : k.second;
        m = std::max(m, std::abs(deg));
    }
    return m;
}

std::string Laurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << rat_str(c);
        if (k.first) out << "*z^" << k.first;
        if (k.second) out << "*w^" << k.second;
    }
    return out.str();
}

QSeries::QSeries(int denom, const Rat& order) : denom_(denom) {
    Rat s(order * Rat(denom));
    if (s.get_den() != 1) fail(ErrorKind::Unsupported, "order off the exponent grid");
    order_ = s.get_num().get_si();
}

QSeries QSeries::unit(int denom, const Rat& order) {
    QSeries s(denom, order);
    s.add_term(Rat(0), Laurent::unit());
    return s;
}

long QSeries::scale_exp(const Rat& e) const {
    Rat s(e * Rat(denom_));
    if (s.get_den() != 1) fail(ErrorKind::Unsupported, "exponent off the grid");
    return s.get_num().get_si();
}

Rat QSeries::order() const { return Rat(order_) / Rat(denom_); }

void QSeries::add_term(const Rat& exponent, const Laurent& c) {
    if (c.is_zero()) return;
    long e = scale_exp(exponent);
    if (e >= order_) return;
    auto it = coef_.find(e);
    if (it == coef_.end()) {
        coef_[e] = c;
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) coef_.erase(it);
    }
}

Laurent QSeries::at(const Rat& exponent) const {
    auto it = coef_.find(scale_exp(exponent));
    return it == coef_.end() ? Laurent() : it->second;
}

std::optional<Rat> QSeries::valuation() const {
    if (coef_.empty()) return std::nullopt;
    return Rat(coef_.begin()->first) / Rat(denom_);
}

namespace {
void check_same_grid(const QSeries& a, const QSeries& b) {
    if (a.denom() != b.denom()) fail(ErrorKind::Unsupported, "series on different grids");
}
} // namespace

QSeries QSeries::operator+(const QSeries& o) const {
    check_same_grid(*this, o);
    QSeries r(denom_, Rat(0));
    r.order_ = std::min(order_, o.order_);
    for (const auto& [e, c] : coef_)
        if (e < r.order_) r.coef_[e] = c;
    for (const auto& [e, c] : o.coef_) {
        if (e >= r.order_) continue;
        auto it = r.coef_.find(e);
        if (it == r.coef_.end()) {
            r.coef_[e] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.coef_.erase(it);
        }
    }
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o.scaled(Rat(-1)); }

QSeries QSeries::operator*(const QSeries& o) const {
    check_same_grid(*this, o);
    QSeries r(denom_, Rat(0));
    long va = coef_.empty() ? kInfinity : coef_.begin()->first;
    long vb = o.coef_.empty() ? kInfinity : o.coef_.begin()->first;
    long oa = (order_ >= kInfinity || vb >= kInfinity) ? kInfinity : order_ + vb;
    long ob = (o.order_ >= kInfinity || va >= kInfinity) ? kInfinity : o.order_ + va;
    r.order_ = std::min(oa, ob);
    for (const auto& [ea, ca] : coef_) {
        for (const auto& [eb, cb] : o.coef_) {
            long e = ea + eb;
            if (e >= r.order_) break; // o.coef_ is sorted ascending
            Laurent c = ca * cb;
            if (c.is_zero()) continue;
            auto it = r.coef_.find(e);
            if (it == r.coef_.end()) {
                r.coef_[e] = c;
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.coef_.erase(it);
            }
        }
    }
    if (prefactor_ && o.prefactor_)
        r.prefactor_ = *prefactor_ + *o.prefactor_;
    else if (prefactor_)
        r.prefactor_ = prefactor_;
    else if (o.prefactor_)
        r.prefactor_ = o.prefactor_;
    return r;
}

QSeries QSeries::scaled(const Rat& c) const {
    QSeries r(denom_, Rat(0));
    r.order_ = order_;
    r.prefactor_ = prefactor_;
    if (c == 0) return r;
    for (const auto& [e, v] : coef_) r.coef_[e] = v.scaled(c);
    return r;
}

QSeries QSeries::scaled(const Laurent& c) const {
    QSeries r(denom_, Rat(0));
    r.order_ = order_;
    r.prefactor_ = prefactor_;
    for (const auto& [e, v] : coef_) {
        Laurent nv = v * c;
        if (!nv.is_zero()) r.coef_[e] = nv;
    }
    return r;
}

QSeries QSeries::shifted(const Rat& r) const {
    QSeries out(denom_, Rat(0));
    long s = scale_exp(r);
    out.order_ = order_ >= kInfinity ? kInfinity : order_ + s;
    out.prefactor_ = prefactor_;
    for (const auto& [e, c] : coef_) out.coef_[e + s] = c;
    return out;
}

QSeries QSeries::truncated(const Rat& new_order) const {
    QSeries r(denom_, new_order);
    r.order_ = std::min(r.order_, order_);
    r.prefactor_ = prefactor_;
    for (const auto& [e, c] : coef_)
        if (e < r.order_) r.coef_[e] = c;
    return r;
}

QSeries QSeries::inverse() const {
    if (coef_.empty()) fail(ErrorKind::DivisionByZero, "inverse of the zero series");
    auto lead = coef_.begin();
    if (!lead->second.is_monomial())
        fail(ErrorKind::Unsupported, "series inverse needs a monomial lowest term");
    long v = lead->first;
    auto [key, c0] = *lead->second.terms().begin();
    Laurent minv = Laurent::monomial(-key.first, -key.second, Rat(1) / c0);
    // X = c0 q^(v/D) m (1 + T); X^-1 = (1 + T)^-1 m^-1 q^(-v/D) / c0.
    QSeries base = shifted(Rat(-v) / Rat(denom_)).scaled(minv);
    QSeries t = base - QSeries::unit(denom_, base.order());
    long tval = t.coef_.empty() ? kInfinity : t.coef_.begin()->first;
    QSeries acc = QSeries::unit(denom_, base.order());
    QSeries cur = QSeries::unit(denom_, base.order());
    if (tval < kInfinity) {
        if (tval <= 0) fail(ErrorKind::Internal, "series inverse: nonpositive tail valuation");
        for (long step = tval; step < base.order_; step += tval) {
            cur = cur * t.scaled(Rat(-1));
            if (cur.coef_.empty()) break;
            acc = acc + cur;
        }
    }
    QSeries r = acc.shifted(Rat(-v) / Rat(denom_)).scaled(minv);
    r.prefactor_ = prefactor_;
    return r;
}

QSeries QSeries::negate_var(int var) const {
    QSeries r(denom_, Rat(0));
    r.order_ = order_;
    r.prefactor_ = prefactor_;
    for (const auto& [e, c] : coef_) r.coef_[e] = c.negate_var(var);
    return r;
}

QSeries QSeries::set_var(int var, const Rat& value) const {
    QSeries r(denom_, Rat(0));
    r.order_ = order_;
    r.prefactor_ = prefactor_;
    for (const auto& [e, c] : coef_) {
        Laurent nc = c.set_var(var, value);
        if (!nc.is_zero()) r.coef_[e] = nc;
    }
    return r;
}

QSeries QSeries::derive_var(int var) const {
    QSeries r(denom_, Rat(0));
    r.order_ = order_;
    r.prefactor_ = prefactor_;
    for (const auto& [e, c] : coef_) {
        Laurent nc = c.derive_var(var);
        if (!nc.is_zero()) r.coef_[e] = nc;
    }
    return r;
}

QSeries QSeries::divide_v_minus_vinv(int var) const {
    QSeries r(denom_, Rat(0));
    r.order_ = order_;
    r.prefactor_ = prefactor_;
    for (const auto& [e, c] : coef_) {
        auto q = c.divide_v_minus_vinv(var);
        if (!q)
            fail(ErrorKind::Internal, "division by (v - 1/v) left a remainder at exponent " +
                                          rat_str(Rat(e) / Rat(denom_)));
        if (!q->is_zero()) r.coef_[e] = *q;
    }
    return r;
}

QSeries QSeries::substitute_q_half(int var, const Rat& result_order) const {
    if (denom_ % 2 != 0) fail(ErrorKind::Unsupported, "grid cannot hold half exponents");
    QSeries r(denom_, result_order);
    for (const auto& [e, c] : coef_) {
        for (const auto& [k, v] : c.terms()) {
            int deg = var == 0 ? k.first : k.second;
            Laurent::Key nk = var == 0 ? Laurent::Key{0, k.second} : Laurent::Key{k.first, 0};
            long ne = e - static_cast<long>(deg) * (denom_ / 2);
            if (ne >= r.order_) continue;
            auto it = r.coef_.find(ne);
            Laurent mono = Laurent::monomial(nk.first, nk.second, v);
            if (it == r.coef_.end()) {
                r.coef_[ne] = mono;
            } else {
                it->second = it->second + mono;
                if (it->second.is_zero()) r.coef_.erase(it);
            }
        }
    }
    r.prefactor_ = prefactor_;
    return r;
}

QSeries QSeries::with_prefactor(Scalar s) const {
    QSeries r = *this;
    r.prefactor_ = std::move(s);
    return r;
}

QSeries QSeries::collapse_prefactor(const Rat& expected) const {
    if (!prefactor_) fail(ErrorKind::Unsupported, "no prefactor to collapse");
    Scalar want = Scalar::from_rat(prefactor_->ctx(), expected);
    if (!(*prefactor_ == want))
        fail(ErrorKind::Inconsistent, "prefactor exponent " + prefactor_->str() +
                                          " does not collapse to " + rat_str(expected));
    QSeries r = shifted(expected);
    r.prefactor_.reset();
    return r;
}

std::string QSeries::Mismatch::str() const {
    std::ostringstream out;
    out << "q^(" << rat_str(exponent) << ")";
    if (ez) out << " z^" << ez;
    if (ew) out << " w^" << ew;
    out << ": " << rat_str(lhs) << " vs " << rat_str(rhs);
    return out.str();
}

std::optional<QSeries::Mismatch> QSeries::first_difference(const QSeries& o) const {
    check_same_grid(*this, o);
    long top = std::min(order_, o.order_);
    auto a = coef_.begin();
    auto b = o.coef_.begin();
    while (true) {
        long ea = a == coef_.end() ? kInfinity : a->first;
        long eb = b == o.coef_.end() ? kInfinity : b->first;
        long e = std::min(ea, eb);
        if (e >= top) return std::nullopt;
        Laurent la = ea == e ? a->second : Laurent();
        Laurent lb = eb == e ? b->second : Laurent();
        if (!(la == lb)) {
            Laurent d = la - lb;
            auto [k, c] = *d.terms().begin();
            Rat va(0), vb(0);
            if (la.terms().count(k)) va = la.terms().at(k);
            if (lb.terms().count(k)) vb = lb.terms().at(k);
            return Mismatch{Rat(e) / Rat(denom_), k.first, k.second, va, vb};
        }
        if (ea == e) ++a;
        if (eb == e) ++b;
    }
}

std::string QSeries::str(int max_terms) const {
    std::ostringstream out;
    int n = 0;
    for (const auto& [e, c] : coef_) {
        if (n++ >= max_terms) {
            out << " + ...";
            break;
        }
        if (n > 1) out << " + ";
        out << "(" << c.str() << ")*q^(" << rat_str(Rat(e) / Rat(denom_)) << ")";
    }
    if (coef_.empty()) out << "0";
    out << "  [below q^(" << rat_str(order()) << ")]";
    return out.str();
}

QSeries theta_series(int denom, int ez, int ew, const Rat& N) {
    QSeries s(denom, N);
    if (Rat(0) < N) s.add_term(Rat(0), Laurent::unit());
    for (long m = 1; Rat(m) * Rat(m) / 2 < N; ++m) {
        Rat e = Rat(m) * Rat(m) / 2;
        s.add_term(e, Laurent::monomial(static_cast<int>(m * ez), static_cast<int>(m * ew),
                                        Rat(1)));
        s.add_term(e, Laurent::monomial(static_cast<int>(-m * ez), static_cast<int>(-m * ew),
                                        Rat(1)));
    }
    return s;
}

QSeries theta_qhalf_diff(int denom, const Rat& N) {
    QSeries s(denom, N);
    for (long n = 1; Rat(n) * Rat(n - 1) / 2 < N; ++n) {
        Laurent l = Laurent::monomial(0, static_cast<int>(n), Rat(1)) +
                    Laurent::monomial(0, static_cast<int>(-n), Rat(-1));
        s.add_term(Rat(n) * Rat(n - 1) / 2, l);
        s.add_term(Rat(n) * Rat(n + 1) / 2, -l);
    }
    return s;
}

QSeries theta_double_specialized(int denom, const Rat& N) {
    QSeries s(denom, N);
    for (long n = 1; Rat(n) * Rat(n - 2) / 2 < N; ++n) {
        s.add_term(Rat(n) * Rat(n - 2) / 2, Laurent::unit());
        s.add_term(Rat(n) * Rat(n + 2) / 2, Laurent::unit());
        s.add_term(Rat(n) * Rat(n) / 2, Laurent::unit().scaled(Rat(-2)));
    }
    return s;
}

QSeries theta_second_derivative(int denom, const Rat& N) {
    QSeries s(denom, N);
    for (long m = 1; Rat(m) * Rat(m) / 2 < N; ++m)
        s.add_term(Rat(m) * Rat(m) / 2,
                   Laurent::unit().scaled(Rat(m) * Rat(m - 1) + Rat(m) * Rat(m + 1)));
    return s;
}

QSeries eta_series(int denom, const Rat& N) {
    QSeries acc = QSeries::unit(denom, N);
    for (long n = 1; Rat(n) < N; ++n) {
        QSeries f = QSeries::unit(denom, N);
        f.add_term(Rat(n), Laurent::unit().scaled(Rat(-1)));
        acc = acc * f;
    }
    return acc.shifted(Rat(1, 24));
}

QSeries inv_prod1(int denom, const Rat& N) {
    QSeries acc = QSeries::unit(denom, N);
    for (long n = 1; Rat(n) < N; ++n) {
        QSeries g(denom, N);
        for (long i = 0; Rat(n) * Rat(i) < N; ++i) g.add_term(Rat(n) * Rat(i), Laurent::unit());
        acc = acc * g;
    }
    return acc;
}

QSeries weyl_denominator(int denom, int var, const Rat& N) {
    QSeries acc(denom, N);
    Laurent zm = var == 0 ? Laurent::monomial(1, 0, Rat(1)) + Laurent::monomial(-1, 0, Rat(-1))
                          : Laurent::monomial(0, 1, Rat(1)) + Laurent::monomial(0, -1, Rat(-1));
    acc.add_term(Rat(0), zm);
    for (long n = 1; Rat(n) < N; ++n) {
        for (int c : {2, 0, -2}) {
            QSeries f = QSeries::unit(denom, N);
            Laurent m = var == 0 ? Laurent::monomial(c, 0, Rat(-1))
                                 : Laurent::monomial(0, c, Rat(-1));
            f.add_term(Rat(n), m);
            acc = acc * f;
        }
    }
    return acc.shifted(Rat(1, 8));
}

QSeries inv_prod3(int denom, int var, const Rat& N) {
    QSeries acc = QSeries::unit(denom, N);
    for (long n = 1; Rat(n) < N; ++n) {
        for (int c : {2, 0, -2}) {
            QSeries g(denom, N);
            for (long i = 0; Rat(n) * Rat(i) < N; ++i) {
                Laurent m = var == 0
                                ? Laurent::monomial(static_cast<int>(c * i), 0, Rat(1))
                                : Laurent::monomial(0, static_cast<int>(c * i), Rat(1));
                g.add_term(Rat(n) * Rat(i), m);
            }
            acc = acc * g;
        }
    }
    return acc;
}

QSeries sch_bc(int denom, int var, const Rat& N) {
    QSeries acc = QSeries::unit(denom, N);
    for (long n = 1; Rat(n - 1) < N; ++n) {
        if (Rat(n) < N) {
            QSeries f = QSeries::unit(denom, N);
            f.add_term(Rat(n), var == 0 ? Laurent::monomial(2, 0, Rat(-1))
                                        : Laurent::monomial(0, 2, Rat(-1)));
            acc = acc * f;
        }
        QSeries g = QSeries::unit(denom, N);
        g.add_term(Rat(n - 1), var == 0 ? Laurent::monomial(-2, 0, Rat(-1))
                                        : Laurent::monomial(0, -2, Rat(-1)));
        acc = acc * g;
    }
    return acc.shifted(Rat(1, 12));
}

QSeries pbw_vacuum_character(int denom, const std::vector<PbwGen>& gens, const Rat& N) {
    QSeries acc = QSeries::unit(denom, N);
    for (const auto& g : gens) {
        for (Rat m = g.weight; m < N; m += 1) {
            if (m <= 0) fail(ErrorKind::Unsupported, "nonpositive mode energy");
            Laurent x = Laurent::unit();
            if (g.var >= 0)
                x = g.var == 0 ? Laurent::monomial(g.charge, 0, Rat(1))
                               : Laurent::monomial(0, g.charge, Rat(1));
            if (g.odd) {
                QSeries f = QSeries::unit(denom, N);
                f.add_term(m, x);
                acc = acc * f;
            } else {
                QSeries b(denom, N);
                Laurent xp = Laurent::unit();
                for (Rat e(0); e < N; e += m) {
                    b.add_term(e, xp);
                    xp = xp * x;
                }
                acc = acc * b;
            }
        }
    }
    return acc;
}

} // namespace voa
