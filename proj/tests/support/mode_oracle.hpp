#pragma once

// Brute-force mode-expansion model of a free-field presentation (every OPE
// table entry a scalar multiple of the vacuum). States are exact sums of
// creation-operator monomials applied to the vacuum; modes of composite
// fields are expanded with the standard formulas
//   (dA)_(p) = -p A_(p-1),
//   (:AB:)_(p) = sum_j [ A_(-1-j) B_(p+j) + (-1)^(p_A p_B) B_(p-1-j) A_(j) ].
// Nothing here goes through the rewriting engine, so agreement between the
// two is a genuine cross-check of the Wick/skew/quasi-associativity rules.

#include <map>
#include <vector>

#include "voa/algebra.hpp"
#include "voa/errors.hpp"

namespace voa::oracle {

struct CreOp {
    int gen;
    long n; // gen_(-n), n >= 1
    auto operator<=>(const CreOp&) const = default;
};
using StateKey = std::vector<CreOp>;

struct State {
    CtxPtr ctx;
    std::map<StateKey, Scalar> terms;

    void add(const StateKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    State& operator+=(const State& o) {
        for (const auto& [k, c] : o.terms) add(k, c);
        return *this;
    }
    bool operator==(const State& o) const { return terms == o.terms; }
};

class ModeModel {
  public:
    explicit ModeModel(const Algebra& alg) : alg_(alg) {
        for (int i = 0; i < alg.ngens(); ++i) {
            for (int j = 0; j < alg.ngens(); ++j) {
                OpeSingular s = alg.pair_bracket(i, j);
                for (const auto& [n, e] : s.poles()) {
                    if (!e.is_scalar_multiple_of_vacuum())
                        fail(ErrorKind::Unsupported, "mode model needs a free presentation");
                    contr_[{i, j, n - 1}] = e.vacuum_coefficient();
                }
            }
        }
        // Weight floor of the Fock space (odd letters used once each).
        min_weight_ = Rat(0);
        for (const auto& g : alg.generators()) {
            if (g.odd) {
                for (long n = 1; Rat(n) + g.weight - 1 < 0; ++n)
                    min_weight_ += Rat(n) + g.weight - 1;
            } else if (g.weight < 0) {
                fail(ErrorKind::Unsupported, "even generator of negative weight");
            }
        }
    }

    State vacuum() const {
        State s{alg_.ctx(), {}};
        s.add({}, Scalar::one(alg_.ctx()));
        return s;
    }

    State state_of(const FieldExpr& x) const {
        State out{alg_.ctx(), {}};
        for (const auto& [w, c] : x.terms()) {
            State s = word_mode(w, -1, vacuum());
            for (const auto& [k, v] : s.terms) out.add(k, v * c);
        }
        return out;
    }

    State apply(const FieldExpr& x, long p, const State& st) const {
        State out{alg_.ctx(), {}};
        for (const auto& [w, c] : x.terms()) {
            State s = word_mode(w, p, st);
            for (const auto& [k, v] : s.terms) out.add(k, v * c);
        }
        return out;
    }

  private:
    Rat monomial_weight(const StateKey& k) const {
        Rat w(0);
        for (const auto& op : k) w += Rat(op.n) + alg_.generator(op.gen).weight - 1;
        return w;
    }

    Rat state_weight_max(const State& st) const {
        Rat w = min_weight_;
        bool first = true;
        for (const auto& [k, c] : st.terms) {
            Rat mw = monomial_weight(k);
            if (first || mw > w) w = mw;
            first = false;
        }
        return w;
    }

    Rat word_weight(const Word& w) const { return alg_.word_weight(w); }

    // gen_(p) on a single monomial.
    State gen_mode_monomial(int gen, long p, const StateKey& key, const Scalar& coeff) const {
        State out{alg_.ctx(), {}};
        bool g_odd = alg_.generator(gen).odd;
        if (p <= -1) {
            CreOp nu{gen, -p};
            StateKey nk;
            nk.reserve(key.size() + 1);
            int sign = 1;
            size_t pos = 0;
            while (pos < key.size() && key[pos] < nu) {
                if (g_odd && alg_.generator(key[pos].gen).odd) sign = -sign;
                nk.push_back(key[pos]);
                ++pos;
            }
            if (g_odd && pos < key.size() && key[pos] == nu) return out; // repeated fermion
            nk.push_back(nu);
            nk.insert(nk.end(), key.begin() + static_cast<long>(pos), key.end());
            out.add(nk, sign > 0 ? coeff : -coeff);
            return out;
        }
        // Annihilator: contract with each creation op in turn.
        int sign = 1;
        for (size_t i = 0; i < key.size(); ++i) {
            const CreOp& v = key[i];
            long j = p - v.n + 1; // [g_(p), v_(-n)] = binom(p, j) s_j
            if (j >= 0) {
                auto it = contr_.find({gen, v.gen, static_cast<int>(j)});
                if (it != contr_.end()) {
                    Rat b = rat_binom(p, j);
                    if (b != 0) {
                        StateKey nk;
                        nk.reserve(key.size() - 1);
                        for (size_t t = 0; t < key.size(); ++t)
                            if (t != i) nk.push_back(key[t]);
                        Scalar c = coeff * it->second;
                        c = c.scaled(sign > 0 ? b : -b);
                        out.add(nk, c);
                    }
                }
            }
            if (g_odd && alg_.generator(v.gen).odd) sign = -sign;
        }
        return out; // g_(p)|0> = 0 for p >= 0
    }

    State gen_mode(int gen, long p, const State& st) const {
        State out{alg_.ctx(), {}};
        for (const auto& [k, c] : st.terms) out += gen_mode_monomial(gen, p, k, c);
        return out;
    }

    State word_mode(const Word& w, long p, const State& st) const {
        if (st.is_zero()) return st;
        if (w.empty()) return p == -1 ? st : State{alg_.ctx(), {}};
        if (w.size() == 1) {
            // (d^m g)_(p) = (-1)^m p(p-1)...(p-m+1) g_(p-m)
            long m = w[0].der;
            Rat f(1);
            for (long i = 0; i < m; ++i) f *= Rat(-(p - i));
            if (f == 0) return State{alg_.ctx(), {}};
            State s = gen_mode(w[0].gen, p - m, st);
            State out{alg_.ctx(), {}};
            for (const auto& [k, c] : s.terms) out.add(k, c.scaled(f));
            return out;
        }
        Word a{w[0]};
        Word b(w.begin() + 1, w.end());
        bool sgn = alg_.word_odd(a) && alg_.word_odd(b);
        State out{alg_.ctx(), {}};
        // j bounds: annihilation factors vanish once they drop below the floor.
        Rat top = state_weight_max(st);
        long jb = bound(top + word_weight(b), p);
        for (long j = 0; j <= jb; ++j) {
            State inner = word_mode(b, p + j, st);
            if (!inner.is_zero()) out += word_mode(a, -1 - j, inner);
        }
        long ja = bound(top + word_weight(a), 0);
        for (long j = 0; j <= ja; ++j) {
            State inner = word_mode(a, j, st);
            if (!inner.is_zero()) {
                State t = word_mode(b, p - 1 - j, inner);
                if (sgn) {
                    State neg{alg_.ctx(), {}};
                    for (const auto& [k, c] : t.terms) neg.add(k, -c);
                    t = neg;
                }
                out += t;
            }
        }
        return out;
    }

    // Largest j with top_weight + w - j - 1 >= floor, padded.
    long bound(const Rat& top, long p) const {
        Rat r = top - min_weight_ + Rat(std::max(-p, 0L)) + 2;
        return std::max(0L, static_cast<long>(r.get_d()) + 2);
    }

    const Algebra& alg_;
    std::map<std::tuple<int, int, int>, Scalar> contr_;
    Rat min_weight_;
};

} // namespace voa::oracle
