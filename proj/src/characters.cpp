#include "voa/characters.hpp"

#include "voa/grammar.hpp"
#include "voa/presentations.hpp"

namespace voa {

namespace {

constexpr int D = kCharDenom;

long branching_cutoff(const Rat& N) {
    // M = ceil(sqrt(2N)) + 1; summands with m > M start beyond q^N.
    long m = 0;
    while (Rat(m) * Rat(m) < Rat(2) * N) ++m;
    return m + 1;
}

Rat scalar_to_rat(const Scalar& s) {
    if (!s.is_rational()) fail(ErrorKind::Inconsistent, "expected a rational scalar: " + s.str());
    RatFun f = s.rational_part();
    if (!f.is_constant()) fail(ErrorKind::Inconsistent, "expected a constant: " + s.str());
    return f.constant_value();
}

CheckItem series_item(const std::string& label, const std::string& anchor, const QSeries& lhs,
                      const QSeries& rhs, const Rat& N) {
    if (std::min(lhs.order(), rhs.order()) < N)
        return CheckItem::fail(label, anchor,
                               "truncation order too small: " + rat_str(lhs.order()) + " vs " +
                                   rat_str(rhs.order()));
    auto diff = lhs.first_difference(rhs);
    if (!diff) return CheckItem::pass(label, anchor);
    return CheckItem::fail(label, anchor, diff->str());
}

// The charged osp(1|2) PBW vacuum character in the variable w.
QSeries pbw_osp(const Rat& N) {
    std::vector<PbwGen> gens{{Rat(1), false, 2, 1}, {Rat(1), false, 0, 1},
                             {Rat(1), false, -2, 1}, {Rat(1), true, 1, 1},
                             {Rat(1), true, -1, 1}};
    return pbw_vacuum_character(D, gens, N);
}

} // namespace

Laurent finite_char(int var, int m) {
    Laurent l;
    for (int j = -m; j <= m; j += 2) l.add(var == 0 ? j : 0, var == 0 ? 0 : j, Rat(1));
    return l;
}

QSeries weyl_char_series(int var, int m, const Rat& N) {
    return inv_prod3(D, var, N).scaled(finite_char(var, m));
}

Scalar sl2_central_charge(const CtxPtr& ctx, const Scalar& level) {
    Algebra sl2 = affine_sl2(ctx, level, "sl2-c");
    return central_charge(sugawara(sl2), sl2);
}

Scalar weyl_char_prefactor(const CtxPtr& ctx, const Scalar& level, int m) {
    // h_m = m(m+2)/(4(k+2)) (Casimir m(m+2)/2 over 2(k+2)); c from the engine.
    Scalar two = Scalar::from_int(ctx, 2);
    Scalar h = Scalar::from_rat(ctx, Rat(m) * Rat(m + 2) / 4) * (level + two).inverse();
    Scalar c = sl2_central_charge(ctx, level);
    return h - c.scaled(Rat(1, 24));
}

std::vector<CheckItem> branching_check(const Rat& N) {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();
    Scalar k1 = parse_scalar("-(a+3)/2", ctx);
    Scalar k2 = parse_scalar("-(1/a+3)/2", ctx);
    Scalar two = Scalar::from_int(ctx, 2);

    Scalar constraint = (k1 + two).inverse() + (k2 + two).inverse();
    items.push_back(CheckItem::of(constraint == two, "level-constraint",
                                  "1/(k1+2) + 1/(k2+2) = 2", constraint.str()));

    long M = branching_cutoff(N);
    // Exponent collapse: h_m(k1) + h_m(k2) - (c1+c2)/24 = (m+1)^2/2 - 1/4,
    // symbolically in a for every summand.
    {
        bool ok = true;
        std::string residual;
        for (long m = 0; m <= M && ok; ++m) {
            Scalar p = weyl_char_prefactor(ctx, k1, static_cast<int>(m)) +
                       weyl_char_prefactor(ctx, k2, static_cast<int>(m));
            Scalar want =
                Scalar::from_rat(ctx, Rat(m + 1) * Rat(m + 1) / 2 - Rat(1, 4));
            if (p != want) {
                ok = false;
                residual = "m = " + std::to_string(m) + ": " + p.str();
            }
        }
        items.push_back(CheckItem::of(ok, "exponent-collapse",
                                      "h_m(k1) + h_m(k2) - (c1+c2)/24 = (m+1)^2/2 - 1/4",
                                      residual));
    }

    // Series identity to order q^N in both Jacobi variables. Each summand
    // carries its symbolic prefactor and is collapsed onto the grid; a
    // residual parameter dependence would throw here and fail the item.
    Rat work = N + 1;
    QSeries inv_z = inv_prod3(D, 0, work);
    QSeries inv_w = inv_prod3(D, 1, work);
    QSeries lhs(D, work);
    for (long m = 0; m <= M; ++m) {
        QSeries chz = inv_z.scaled(finite_char(0, static_cast<int>(m)))
                          .with_prefactor(weyl_char_prefactor(ctx, k1, static_cast<int>(m)));
        QSeries chw = inv_w.scaled(finite_char(1, static_cast<int>(m)))
                          .with_prefactor(weyl_char_prefactor(ctx, k2, static_cast<int>(m)));
        QSeries term = (chz * chw).collapse_prefactor(Rat(m + 1) * Rat(m + 1) / 2 - Rat(1, 4));
        lhs = lhs + term;
    }
    QSeries numer = theta_series(D, 1, 1, work) - theta_series(D, 1, -1, work);
    QSeries rhs = numer.divide_v_minus_vinv(0).divide_v_minus_vinv(1).shifted(Rat(-1, 4)) *
                  inv_z * inv_w;
    items.push_back(series_item("branching-series",
                                "sum of ch x ch equals (theta(zw)-theta(z/w))/(Pi(z)Pi(w))",
                                lhs.truncated(N), rhs.truncated(N), N));
    return items;
}

std::vector<CheckItem> small_n4_multiplicity_check(const Rat& N) {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();
    Scalar lev = Scalar::from_rat(ctx, Rat(-3, 2));
    long M = branching_cutoff(N);

    // Prefactor of the level -3/2 Weyl characters: m(m+2)/2 - (-9)/24.
    {
        bool ok = true;
        std::string residual;
        for (long m = 0; m <= M && ok; ++m) {
            Scalar p = weyl_char_prefactor(ctx, lev, static_cast<int>(m));
            Scalar want = Scalar::from_rat(ctx, Rat(m) * Rat(m + 2) / 2 + Rat(3, 8));
            if (p != want) {
                ok = false;
                residual = "m = " + std::to_string(m) + ": " + p.str();
            }
        }
        items.push_back(CheckItem::of(ok, "prefactor-at--3/2",
                                      "h_m(-3/2) - c/24 = m(m+2)/2 + 3/8", residual));
    }

    Rat work = N + 1;
    // LHS: sum over m of (m+1) ch[V_(-3/2)(m)](z) times the rank-3 Heisenberg
    // character 1/eta^3.
    QSeries inv_z = inv_prod3(D, 0, work);
    QSeries heis3 = inv_prod1(D, work);
    heis3 = (heis3 * heis3 * heis3).shifted(Rat(-1, 8));
    QSeries lhs(D, work);
    for (long m = 0; m <= M; ++m) {
        QSeries term = inv_z.scaled(finite_char(0, static_cast<int>(m))).scaled(Rat(m + 1));
        lhs = lhs + term.shifted(Rat(m) * Rat(m + 2) / 2 + Rat(3, 8));
    }
    lhs = lhs * heis3;

    // RHS: the branching right-hand side with the second variable sent to 1
    // by the exact division.
    QSeries numer = theta_series(D, 1, 1, work) - theta_series(D, 1, -1, work);
    QSeries rhs = numer.divide_v_minus_vinv(0).divide_v_minus_vinv(1).set_var(1, Rat(1));
    QSeries inv_w_at1 = inv_prod1(D, work);
    inv_w_at1 = inv_w_at1 * inv_w_at1 * inv_w_at1;
    rhs = rhs.shifted(Rat(-1, 4)) * inv_z * inv_w_at1;

    items.push_back(series_item("small-n4-multiplicity",
                                "sum (m+1) ch[V_(-3/2)(m)] / eta^3 equals the w -> 1 limit",
                                lhs.truncated(N), rhs.truncated(N), N));
    return items;
}

std::vector<CheckItem> qhr_char_check_first(const Rat& N) {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();
    Rat work = N + 1;

    // sch[bc](z) eta(q) = z^-1 Pi(z): the ghost supercharacter cancels the
    // Weyl denominator of the reduced factor.
    {
        QSeries lhs = sch_bc(D, 0, work) * eta_series(D, work);
        QSeries rhs = weyl_denominator(D, 0, work).scaled(Laurent::monomial(-1, 0, Rat(1)));
        items.push_back(series_item("ghost-cancellation", "sch[bc](z) eta = z^-1 Pi(z)",
                                    lhs.truncated(N), rhs.truncated(N), N));
    }

    // Exponent bookkeeping: k/4 + 1/2 - 1/6 = -c/24 for the reduced-side
    // level k = -(1/a+3)/2 and c the osp central charge at level -(a+3)/2.
    {
        Scalar k = parse_scalar("-(1/a+3)/2", ctx);
        Algebra osp = affine_osp12(ctx, parse_scalar("-(a+3)/2", ctx), "osp-char");
        Scalar c = central_charge(sugawara(osp), osp);
        Scalar lhs = k.scaled(Rat(1, 4)) + Scalar::from_rat(ctx, Rat(1, 2) - Rat(1, 6));
        Scalar rhs = -c.scaled(Rat(1, 24));
        items.push_back(CheckItem::of(lhs == rhs, "exponent-collapse",
                                      "k/4 + 1/2 - 1/6 = -c/24 along the reduction",
                                      lhs.str() + " vs " + rhs.str()));
    }

    // Series: the exponents cancel exactly (1/6 - 1/8 - 1/24 = 0), leaving
    // (theta(q^-1/2 w) - theta(q^-1/2 w^-1)) / ((w - w^-1) prod3(w) prod1)
    // against the osp(1|2) PBW vacuum character.
    {
        QSeries lhs = theta_qhalf_diff(D, work).divide_v_minus_vinv(1) *
                      inv_prod3(D, 1, work) * inv_prod1(D, work);
        items.push_back(series_item("qhr1-series",
                                    "reduced branching character equals the osp(1|2) PBW "
                                    "vacuum character",
                                    lhs.truncated(N), pbw_osp(work).truncated(N), N));
    }
    return items;
}

std::vector<CheckItem> qhr_char_check_second(const Rat& N) {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();
    Rat work = N + 1;

    // Exponent bookkeeping: (k1+k2)/4 + 1 - 7/12 = -(c_N1 + 1/2)/24.
    {
        Scalar k1 = parse_scalar("-(a+3)/2", ctx);
        Scalar k2 = parse_scalar("-(1/a+3)/2", ctx);
        Scalar cn1 = parse_scalar("3/2 + 3*(a + 2 + 1/a)", ctx);
        Scalar lhs = (k1 + k2).scaled(Rat(1, 4)) + Scalar::from_rat(ctx, Rat(1) - Rat(7, 12));
        Scalar rhs = -(cn1 + Scalar::from_rat(ctx, Rat(1, 2))).scaled(Rat(1, 24));
        items.push_back(CheckItem::of(lhs == rhs, "exponent-collapse",
                                      "(k1+k2)/4 + 1 - 7/12 = -(c_N1 + 1/2)/24",
                                      lhs.str() + " vs " + rhs.str()));
    }

    // Series: (theta(q^-1) - theta(1)) q^(1/2) / prod(1-q^n)^2 equals the N=1
    // vacuum character times a free fermion.
    {
        QSeries p1 = inv_prod1(D, work);
        QSeries lhs = theta_double_specialized(D, work).shifted(Rat(1, 2)) * p1 * p1;
        std::vector<PbwGen> gens{{Rat(2), false, 0, -1},      // Virasoro modes
                                 {Rat(3, 2), true, 0, -1},    // supercurrent modes
                                 {Rat(1, 2), true, 0, -1}};   // free fermion
        QSeries rhs = pbw_vacuum_character(D, gens, work);
        items.push_back(series_item("qhr2-series",
                                    "doubly reduced character equals the N=1 times free "
                                    "fermion PBW character",
                                    lhs.truncated(N), rhs.truncated(N), N));
    }
    return items;
}

std::vector<CheckItem> hopital_limit_check(const Rat& N) {
    std::vector<CheckItem> items;
    Rat work = N + 1;

    // Numerator identity: sum (m+1)^2 q^((m+1)^2/2) = 1/2 theta''(q), the
    // right side computed through the generic derivative operators.
    QSeries direct(D, work);
    for (long m = 0; Rat(m + 1) * Rat(m + 1) / 2 < work; ++m)
        direct.add_term(Rat(m + 1) * Rat(m + 1) / 2,
                        Laurent::unit().scaled(Rat(m + 1) * Rat(m + 1)));
    QSeries via_ops =
        theta_series(D, 1, 0, work).derive_var(0).derive_var(0).set_var(0, Rat(1)).scaled(
            Rat(1, 2));
    // d^2/dz^2 theta at z = 1 is sum m(m-1); add the first derivative part to
    // get sum m^2 = 1/2 (m(m-1) + m(m+1)):
    QSeries first = theta_series(D, 1, 0, work).derive_var(0).set_var(0, Rat(1));
    QSeries lhs_ops = via_ops + first.scaled(Rat(1, 2));
    items.push_back(series_item("numerator-identity",
                                "sum (m+1)^2 q^((m+1)^2/2) = 1/2 (theta'' + theta') at z = 1",
                                direct, lhs_ops, work));
    // The recorded form: 1/2 sum m(m-1) q^(m^2/2) over all integers m.
    items.push_back(series_item("numerator-identity-z",
                                "sum (m+1)^2 q^((m+1)^2/2) = 1/2 sum_Z m(m-1) q^(m^2/2)",
                                direct, theta_second_derivative(D, work).scaled(Rat(1, 2)),
                                work));

    QSeries numer = theta_series(D, 1, 1, work) - theta_series(D, 1, -1, work);
    // Double vanishing at z = 1 before the division.
    items.push_back(CheckItem::of(numer.set_var(0, Rat(1)).is_zero(), "numerator-vanishing",
                                  "theta(zw) - theta(z/w) vanishes at z = 1"));
    QSeries numdiv = numer.divide_v_minus_vinv(0).divide_v_minus_vinv(1);
    QSeries at11 = numdiv.set_var(0, Rat(1)).set_var(1, Rat(1));
    items.push_back(series_item("division-limit",
                                "the divided numerator at z = w = 1 equals the theta'' series",
                                at11, direct, work));

    // Full character limit: numdiv(1,1) q^(-1/4) / prod(1-q^n)^6 = theta''/(2 eta^6).
    QSeries p1 = inv_prod1(D, work);
    QSeries p6 = p1 * p1 * p1;
    p6 = p6 * p6;
    QSeries lhs = at11.shifted(Rat(-1, 4)) * p6;
    QSeries etainv = eta_series(D, work).inverse();
    QSeries e2 = etainv * etainv;
    QSeries e6 = e2 * e2 * e2;
    QSeries rhs = theta_second_derivative(D, work).scaled(Rat(1, 2)) * e6;
    items.push_back(series_item("specialized-character",
                                "lim ch = theta''/(2 eta^6)", lhs.truncated(N),
                                rhs.truncated(N), N));
    items.push_back(CheckItem::of(Rat(6) * Rat(1, 24) == Rat(1, 8) + Rat(1, 8),
                                  "eta-exponent", "6/24 = 1/8 + 1/8"));
    return items;
}

std::vector<CheckItem> supercharacter_check(const Rat& N) {
    std::vector<CheckItem> items;
    Rat work = N + 1;

    // sch of theta: sign per z-degree.
    QSeries theta = theta_series(D, 1, 0, work);
    QSeries alt(D, work);
    if (Rat(0) < work) alt.add_term(Rat(0), Laurent::unit());
    for (long m = 1; Rat(m) * Rat(m) / 2 < work; ++m) {
        Rat sgn = (m % 2) ? Rat(-1) : Rat(1);
        Laurent l = (Laurent::monomial(static_cast<int>(m), 0, Rat(1)) +
                     Laurent::monomial(static_cast<int>(-m), 0, Rat(1)))
                        .scaled(sgn);
        alt.add_term(Rat(m) * Rat(m) / 2, l);
    }
    items.push_back(series_item("sch-theta", "sch flips the sign of odd z-powers",
                                theta.negate_var(0), alt, work));

    // Involution on the branching character itself.
    QSeries numer = theta_series(D, 1, 1, work) - theta_series(D, 1, -1, work);
    QSeries ch = numer.divide_v_minus_vinv(0).divide_v_minus_vinv(1) *
                 inv_prod3(D, 0, work) * inv_prod3(D, 1, work);
    items.push_back(series_item("sch-involution", "sch(sch(ch)) = ch",
                                ch.negate_var(0).negate_var(0), ch, work));
    // Supercharacter of the branching numerator: negate z inside the thetas.
    QSeries alt_numer(D, work);
    for (long m = 1; Rat(m) * Rat(m) / 2 < work; ++m) {
        Rat sgn = (m % 2) ? Rat(-1) : Rat(1);
        Laurent l = (Laurent::monomial(static_cast<int>(m), static_cast<int>(m), Rat(1)) +
                     Laurent::monomial(static_cast<int>(-m), static_cast<int>(-m), Rat(1)) -
                     Laurent::monomial(static_cast<int>(m), static_cast<int>(-m), Rat(1)) -
                     Laurent::monomial(static_cast<int>(-m), static_cast<int>(m), Rat(1)))
                        .scaled(sgn);
        alt_numer.add_term(Rat(m) * Rat(m) / 2, l);
    }
    items.push_back(series_item("sch-branching", "sch of the branching numerator",
                                numer.negate_var(0), alt_numer, work));
    return items;
}

std::vector<CheckItem> weyl_pbw_oracle_check(const Rat& N, int max_m) {
    std::vector<CheckItem> items;
    CtxPtr ctx = standard_context();

    // Brute-force graded state count of the Weyl module: three bosonic mode
    // families of charges +2, 0, -2 over the (m+1)-dimensional top level.
    long nmax = N.get_num().get_si() / std::max(N.get_den().get_si(), 1L) + 1;
    for (int m = 0; m <= max_m; ++m) {
        std::map<std::pair<long, int>, long> count; // (energy, charge) -> states
        for (int j = -m; j <= m; j += 2) count[{0, j}] = 1;
        for (int species = 0; species < 3; ++species) {
            int charge = species == 0 ? 2 : species == 1 ? 0 : -2;
            for (long n = 1; n < nmax; ++n) {
                // multiply by 1/(1 - z^charge q^n): convolve along multiples
                std::map<std::pair<long, int>, long> next;
                for (const auto& [key, v] : count) {
                    long mult = 0;
                    for (long e = key.first; e < nmax; e += n, ++mult) {
                        next[{e, key.second + static_cast<int>(mult) * charge}] += v;
                        if (n == 0) break;
                    }
                }
                count = next;
            }
        }
        QSeries engine = weyl_char_series(0, m, N);
        bool ok = true;
        std::string residual;
        for (const auto& [key, v] : count) {
            if (Rat(key.first) >= N) continue;
            Rat got(0);
            Laurent c = engine.at(Rat(key.first));
            auto it = c.terms().find({key.second, 0});
            if (it != c.terms().end()) got = it->second;
            if (got != Rat(v)) {
                ok = false;
                residual = "q^" + std::to_string(key.first) + " z^" +
                           std::to_string(key.second) + ": " + rat_str(got) + " vs " +
                           std::to_string(v);
                break;
            }
        }
        // And no extra terms on the engine side.
        for (const auto& [e, c] : engine.coef()) {
            if (!ok) break;
            for (const auto& [k, v] : c.terms()) {
                auto it = count.find({e / D, k.first});
                long want = it == count.end() ? 0 : it->second;
                if (e % D != 0 || Rat(v) != Rat(want)) {
                    ok = false;
                    residual = "unexpected engine term at scaled exponent " + std::to_string(e);
                    break;
                }
            }
        }
        items.push_back(CheckItem::of(ok, "pbw-oracle-m" + std::to_string(m),
                                      "Weyl module graded dimensions match the state count",
                                      residual));
    }

    // Prefactors at three numeric levels against direct rational arithmetic.
    for (const Rat& lev : {Rat(-3, 2), Rat(5), Rat(1, 3)}) {
        bool ok = true;
        std::string residual;
        for (int m = 0; m <= max_m && ok; ++m) {
            Scalar p = weyl_char_prefactor(ctx, Scalar::from_rat(ctx, lev), m);
            Rat h = Rat(m) * Rat(m + 2) / (Rat(4) * (lev + 2));
            Rat c = Rat(3) * lev / (lev + 2);
            if (scalar_to_rat(p) != h - c / 24) {
                ok = false;
                residual = "m = " + std::to_string(m) + ": " + p.str();
            }
        }
        items.push_back(CheckItem::of(ok, "prefactor-level-" + rat_str(lev),
                                      "prefactor h - c/24 from the Sugawara data matches "
                                      "direct arithmetic",
                                      residual));
    }
    return items;
}

} // namespace voa
