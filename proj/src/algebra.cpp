#include "voa/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

FieldExpr OpeSingular::at_pole(int n, const CtxPtr& ctx) const {
    auto it = pole_.find(n);
    if (it != pole_.end()) return it->second;
    return FieldExpr::zero(ctx);
}

void OpeSingular::set_pole(int n, FieldExpr e) {
    if (e.is_zero())
        pole_.erase(n);
    else
        pole_[n] = std::move(e);
}

void OpeSingular::add_pole(int n, const FieldExpr& e) {
    if (e.is_zero()) return;
    auto it = pole_.find(n);
    if (it == pole_.end()) {
        pole_[n] = e;
    } else {
        it->second += e;
        if (it->second.is_zero()) pole_.erase(it);
    }
}

Algebra::Algebra(CtxPtr ctx, std::vector<Generator> gens, const std::vector<TableEntry>& entries,
                 std::optional<std::string> virasoro, std::string name)
    : ctx_(std::move(ctx)), name_(std::move(name)), gens_(std::move(gens)) {
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            if (gens_[i].name == gens_[j].name)
                fail(ErrorKind::Declaration, "duplicate generator name: " + gens_[i].name);
    if (virasoro) virasoro_ = require_gen(*virasoro);

    // Insert raw entries; remember which direction(s) the data provided.
    std::map<std::pair<int, int>, OpeSingular> given;
    for (const auto& e : entries) {
        int i = require_gen(e.left), j = require_gen(e.right);
        auto key = std::make_pair(i, j);
        if (given.count(key))
            fail(ErrorKind::Inconsistent,
                 "duplicate table entry " + e.left + " " + e.right);
        given[key] = e.ope;
    }
    for (const auto& [key, ope] : given) {
        auto [i, j] = key;
        if (i <= j) table_[key] = ope;
    }
    // Reversed-only entries: store the skewed form.
    for (const auto& [key, ope] : given) {
        auto [i, j] = key;
        if (i > j && !table_.count({j, i}))
            table_[{j, i}] = skewed(ope, gens_[static_cast<size_t>(i)].odd &&
                                             gens_[static_cast<size_t>(j)].odd);
    }

    // Canonicalize every entry (entries may use any letter order), then check
    // entries supplied in both directions against skew-symmetry.
    for (auto& [key, ope] : table_) {
        OpeSingular canon;
        for (const auto& [n, e] : ope.poles()) canon.set_pole(n, canonicalize(e));
        ope = canon;
    }
    for (const auto& [key, ope] : given) {
        auto [i, j] = key;
        if (i <= j) continue;
        bool odd_pair = gens_[static_cast<size_t>(i)].odd && gens_[static_cast<size_t>(j)].odd;
        OpeSingular expect = skewed(table_.at({j, i}), odd_pair);
        for (int n = 1; n <= std::max(expect.max_pole(), ope.max_pole()); ++n) {
            if (!equal(expect.at_pole(n, ctx_), ope.at_pole(n, ctx_)))
                fail(ErrorKind::Inconsistent,
                     "entries " + gens_[static_cast<size_t>(i)].name + " " +
                         gens_[static_cast<size_t>(j)].name +
                         " violate skew-symmetry at pole order " + std::to_string(n));
        }
    }
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        memo_->brackets.clear();
        memo_->inserts.clear();
    }
}

int Algebra::gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Algebra::require_gen(const std::string& name) const {
    int i = gen_index(name);
    if (i < 0) fail(ErrorKind::UnknownGenerator, "unknown generator: " + name);
    return i;
}

const OpeSingular& Algebra::table(int i, int j) const {
    static const OpeSingular empty;
    auto it = table_.find({i, j});
    return it == table_.end() ? empty : it->second;
}

OpeSingular Algebra::pair_bracket(int i, int j) const {
    if (i <= j) return table(i, j);
    bool odd_pair = gens_[static_cast<size_t>(i)].odd && gens_[static_cast<size_t>(j)].odd;
    OpeSingular s = skewed(table(j, i), odd_pair);
    OpeSingular canon;
    for (const auto& [n, e] : s.poles()) canon.set_pole(n, canonicalize(e));
    return canon;
}

bool Algebra::word_odd(const Word& w) const {
    bool odd = false;
    for (const auto& l : w) odd ^= gens_[static_cast<size_t>(l.gen)].odd;
    return odd;
}

bool Algebra::expr_odd(const FieldExpr& e) const {
    if (e.is_zero()) return false;
    return word_odd(e.terms().begin()->first);
}

Rat Algebra::word_weight(const Word& w) const {
    Rat s(0);
    for (const auto& l : w) s += gens_[static_cast<size_t>(l.gen)].weight + Rat(l.der);
    return s;
}

bool Algebra::letter_before(const Letter& x, const Letter& y) const {
    const Generator& gx = gens_[static_cast<size_t>(x.gen)];
    const Generator& gy = gens_[static_cast<size_t>(y.gen)];
    if (gx.weight != gy.weight) return gx.weight < gy.weight;
    if (gx.odd != gy.odd) return !gx.odd;
    if (x.gen != y.gen) return x.gen < y.gen;
    return x.der < y.der;
}

FieldExpr Algebra::gen_expr(const std::string& name) const {
    return FieldExpr::letter(ctx_, require_gen(name));
}

// [x_l y] = -(-1)^(p(x)p(y)) [y_(-l-d) x], expanded in divided powers:
// x_(i) y = -s * sum_(m>=i) (-1)^m / (m-i)! d^(m-i) (y_(m) x).
OpeSingular Algebra::skewed(const OpeSingular& s, bool odd_pair) const {
    OpeSingular out;
    Rat sgn = odd_pair ? Rat(1) : Rat(-1); // -(+/-1)
    for (const auto& [n, e] : s.poles()) {
        int m = n - 1;
        for (int i = 0; i <= m; ++i) {
            Rat c = sgn * (m % 2 ? Rat(-1) : Rat(1)) / rat_factorial(m - i);
            out.add_pole(i + 1, e.derived(m - i).scaled(c));
        }
    }
    return out;
}

OpeSingular Algebra::bracket(const FieldExpr& x, const FieldExpr& y) const {
    OpeSingular out;
    for (const auto& [wx, cx] : x.terms()) {
        for (const auto& [wy, cy] : y.terms()) {
            Scalar c = cx * cy;
            OpeSingular s = br_words(wx, wy);
            for (const auto& [n, e] : s.poles()) out.add_pole(n, e.scaled(c));
        }
    }
    return out;
}

OpeSingular Algebra::br_words(const Word& x, const Word& y) const {
    if (x.empty() || y.empty()) return {};
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->brackets.find({x, y});
        if (it != memo_->brackets.end()) return it->second;
    }
    OpeSingular out;
    if (y.size() >= 2) {
        // Non-commutative Wick formula on y = :b c:.
        Letter b = y.front();
        Word c(y.begin() + 1, y.end());
        FieldExpr c_expr = FieldExpr::term(ctx_, c, Scalar::one(ctx_));
        FieldExpr b_expr = FieldExpr::term(ctx_, Word{b}, Scalar::one(ctx_));
        OpeSingular xb = br_words(x, Word{b});
        OpeSingular xc = br_words(x, c);
        for (const auto& [n, e] : xb.poles()) out.add_pole(n, normal_order(e, c_expr));
        bool neg = word_odd(x) && gens_[static_cast<size_t>(b.gen)].odd;
        for (const auto& [n, e] : xc.poles()) {
            FieldExpr t = normal_order(b_expr, e);
            out.add_pole(n, neg ? -t : t);
        }
        // integral term: sum over j,m of binom(j+m+1, j) ((x_(j)b)_(m)c)
        for (const auto& [n, e] : xb.poles()) {
            int j = n - 1;
            OpeSingular inner = bracket(e, c_expr);
            for (const auto& [nm, f] : inner.poles()) {
                int m = nm - 1;
                int J = j + m + 1;
                out.add_pole(J + 1, f.scaled(rat_binom(J, j)));
            }
        }
    } else if (y[0].der > 0) {
        // x_(J)(db) = d(x_(J)b) + J x_(J-1)b
        OpeSingular inner = br_words(x, Word{Letter{y[0].gen, y[0].der - 1}});
        for (const auto& [n, e] : inner.poles()) {
            int j = n - 1;
            out.add_pole(n, e.derived());
            out.add_pole(n + 1, e.scaled(Rat(j + 1)));
        }
    } else if (x.size() == 1 && x[0].der > 0) {
        // (da)_(J) b = -J a_(J-1) b
        OpeSingular inner = br_words(Word{Letter{x[0].gen, x[0].der - 1}}, y);
        for (const auto& [n, e] : inner.poles()) {
            int j = n - 1;
            out.add_pole(n + 1, e.scaled(Rat(-(j + 1))));
        }
    } else if (x.size() == 1) {
        int gi = x[0].gen, gj = y[0].gen;
        if (gi <= gj)
            out = table(gi, gj);
        else
            out = skewed(table(gj, gi), gens_[static_cast<size_t>(gi)].odd &&
                                            gens_[static_cast<size_t>(gj)].odd);
    } else {
        // Left composite against a plain generator: skew, then the recursive
        // call runs the Wick formula on the composite.
        OpeSingular s = br_words(y, x);
        out = skewed(s, word_odd(x) && gens_[static_cast<size_t>(y[0].gen)].odd);
    }
    OpeSingular canon;
    for (const auto& [n, e] : out.poles()) canon.set_pole(n, canonicalize(e));
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        memo_->brackets.emplace(std::make_pair(x, y), canon);
    }
    return canon;
}

FieldExpr Algebra::qc_integral(const Word& x, const Word& y) const {
    // int_(-d)^0 [x_l y] dl = sum_j (-1)^j d^(j+1)(x_(j)y)/(j+1)!
    FieldExpr out = FieldExpr::zero(ctx_);
    OpeSingular s = br_words(x, y);
    for (const auto& [n, e] : s.poles()) {
        int j = n - 1;
        Rat c = (j % 2 ? Rat(-1) : Rat(1)) / rat_factorial(j + 1);
        out += e.derived(j + 1).scaled(c);
    }
    return canonicalize(out);
}

FieldExpr Algebra::normal_order(const FieldExpr& x, const FieldExpr& y) const {
    FieldExpr out = FieldExpr::zero(ctx_);
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms()) out += no_words(wx, wy).scaled(cx * cy);
    return out;
}

FieldExpr Algebra::no_words(const Word& x, const Word& y) const {
    if (x.empty()) {
        // canonicalize y
        FieldExpr acc = vacuum_expr();
        for (auto it = y.rbegin(); it != y.rend(); ++it) {
            FieldExpr next = FieldExpr::zero(ctx_);
            for (const auto& [w, c] : acc.terms()) next += no_insert(*it, w).scaled(c);
            acc = next;
        }
        return acc;
    }
    if (x.size() == 1) {
        FieldExpr ycan = no_words(Word{}, y);
        FieldExpr out = FieldExpr::zero(ctx_);
        for (const auto& [w, c] : ycan.terms()) out += no_insert(x[0], w).scaled(c);
        return out;
    }
    // Quasi-associativity on x = :B C::
    //   :(:BC:)y: = :B(:Cy:): + sum_j [ :d^(j+1)B/(j+1)! (C_(j)y): +
    //                (-1)^(p(B)p(C)) :d^(j+1)C/(j+1)! (B_(j)y): ]
    Letter B = x.front();
    Word C(x.begin() + 1, x.end());
    FieldExpr B_expr = FieldExpr::term(ctx_, Word{B}, Scalar::one(ctx_));
    FieldExpr C_expr = FieldExpr::term(ctx_, C, Scalar::one(ctx_));
    bool neg = gens_[static_cast<size_t>(B.gen)].odd && word_odd(C);

    FieldExpr out = normal_order(B_expr, no_words(C, y));
    OpeSingular cy = br_words(C, y);
    for (const auto& [n, e] : cy.poles()) {
        int j = n - 1;
        FieldExpr db = B_expr.derived(j + 1).scaled(Rat(1) / rat_factorial(j + 1));
        out += normal_order(db, e);
    }
    OpeSingular by = br_words(Word{B}, y);
    for (const auto& [n, e] : by.poles()) {
        int j = n - 1;
        FieldExpr dc = C_expr.derived(j + 1).scaled(Rat(1) / rat_factorial(j + 1));
        FieldExpr t = normal_order(dc, e);
        out += neg ? -t : t;
    }
    return out;
}

FieldExpr Algebra::no_insert(const Letter& l, const Word& w) const {
    if (w.empty()) return FieldExpr::term(ctx_, Word{l}, Scalar::one(ctx_));
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->inserts.find({l, w});
        if (it != memo_->inserts.end()) return it->second;
    }
    FieldExpr out = FieldExpr::zero(ctx_);
    Letter h = w.front();
    Word tail(w.begin() + 1, w.end());
    FieldExpr tail_expr = FieldExpr::term(ctx_, tail, Scalar::one(ctx_));
    bool l_odd = gens_[static_cast<size_t>(l.gen)].odd;
    bool h_odd = gens_[static_cast<size_t>(h.gen)].odd;
    if (letter_before(l, h) || (l == h && !l_odd)) {
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(l);
        nw.insert(nw.end(), w.begin(), w.end());
        out = FieldExpr::term(ctx_, nw, Scalar::one(ctx_));
    } else if (l == h) {
        // :aa: for odd a is half the quasi-commutativity integral.
        out = normal_order(qc_integral(Word{l}, Word{l}), tail_expr).scaled(Rat(1, 2));
    } else {
        // :l (h tail): = (-1)^(p(l)p(h)) :h (l tail): + :I(l,h) tail:
        FieldExpr inner = no_insert(l, tail);
        FieldExpr swapped = FieldExpr::zero(ctx_);
        for (const auto& [ww, cc] : inner.terms()) swapped += no_insert(h, ww).scaled(cc);
        bool neg = l_odd && h_odd;
        out = neg ? -swapped : swapped;
        out += normal_order(qc_integral(Word{l}, Word{h}), tail_expr);
    }
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        memo_->inserts.emplace(std::make_pair(l, w), out);
    }
    return out;
}

FieldExpr Algebra::canonicalize(const FieldExpr& e) const {
    FieldExpr out = FieldExpr::zero(ctx_);
    for (const auto& [w, c] : e.terms()) out += no_words(Word{}, w).scaled(c);
    return out;
}

FieldExpr Algebra::nth_product(const FieldExpr& x, long j, const FieldExpr& y) const {
    if (j >= 0) return bracket(x, y).nth(static_cast<int>(j), ctx_);
    long n = -j - 1;
    return normal_order(x.derived(static_cast<int>(n)).scaled(Rat(1) / rat_factorial(n)), y);
}

bool Algebra::equal(const FieldExpr& x, const FieldExpr& y) const {
    return canonicalize(x - y).is_zero();
}

JacobiResult Algebra::jacobi(int a, int b, int c) const {
    FieldExpr fa = FieldExpr::letter(ctx_, a);
    FieldExpr fb = FieldExpr::letter(ctx_, b);
    FieldExpr fc = FieldExpr::letter(ctx_, c);
    bool sgn_ab = gens_[static_cast<size_t>(a)].odd && gens_[static_cast<size_t>(b)].odd;

    std::map<std::pair<int, int>, FieldExpr> acc; // (lambda^j/j!, mu^m/m!) -> residual
    auto add = [&](int j, int m, const FieldExpr& e, const Rat& scale) {
        if (e.is_zero() || scale == 0) return;
        auto key = std::make_pair(j, m);
        auto it = acc.find(key);
        if (it == acc.end())
            acc[key] = e.scaled(scale);
        else
            it->second += e.scaled(scale);
    };

    // [a_l [b_m c]]
    OpeSingular bc = bracket(fb, fc);
    for (const auto& [nm, e] : bc.poles()) {
        int m = nm - 1;
        OpeSingular outer = bracket(fa, e);
        for (const auto& [nj, f] : outer.poles()) add(nj - 1, m, f, Rat(1));
    }
    // -(-1)^(p(a)p(b)) [b_m [a_l c]]
    OpeSingular ac = bracket(fa, fc);
    for (const auto& [nj, e] : ac.poles()) {
        int j = nj - 1;
        OpeSingular outer = bracket(fb, e);
        for (const auto& [nm, f] : outer.poles()) add(j, nm - 1, f, sgn_ab ? Rat(1) : Rat(-1));
    }
    // -[[a_l b]_(l+m) c]
    OpeSingular ab = bracket(fa, fb);
    for (const auto& [ni, e] : ab.poles()) {
        int i = ni - 1;
        OpeSingular outer = bracket(e, fc);
        for (const auto& [nn, f] : outer.poles()) {
            int n = nn - 1;
            // l^i/i! (l+m)^n/n! = sum_(s=0..n) binom(i+s, i) l^(i+s)/(i+s)! m^(n-s)/(n-s)!
            for (int s = 0; s <= n; ++s) add(i + s, n - s, f, -rat_binom(i + s, i));
        }
    }

    JacobiResult res;
    for (auto& [key, e] : acc) {
        FieldExpr r = canonicalize(e);
        if (!r.is_zero()) {
            res.pass = false;
            res.failures.push_back(JacobiFailure{key.first, key.second, r});
        }
    }
    return res;
}

void Algebra::validate_table() const {
    for (const auto& [key, ope] : table_) {
        auto [i, j] = key;
        const Generator& gi = gens_[static_cast<size_t>(i)];
        const Generator& gj = gens_[static_cast<size_t>(j)];
        for (const auto& [n, e] : ope.poles()) {
            if (n < 1) fail(ErrorKind::Inconsistent, "pole order below 1");
            for (const auto& [w, c] : e.terms()) {
                if (word_odd(w) != (gi.odd != gj.odd))
                    fail(ErrorKind::Inconsistent, "parity mismatch in entry " + gi.name + " " +
                                                      gj.name + " at pole order " +
                                                      std::to_string(n));
                if (word_weight(w) != gi.weight + gj.weight - Rat(n))
                    fail(ErrorKind::Inconsistent, "weight mismatch in entry " + gi.name + " " +
                                                      gj.name + " at pole order " +
                                                      std::to_string(n));
            }
        }
        if (i == j) {
            OpeSingular sk = skewed(ope, gi.odd);
            for (int n = 1; n <= std::max(sk.max_pole(), ope.max_pole()); ++n)
                if (!equal(sk.at_pole(n, ctx_), ope.at_pole(n, ctx_)))
                    fail(ErrorKind::Inconsistent, "diagonal entry " + gi.name +
                                                      " is not skew-consistent at pole order " +
                                                      std::to_string(n));
        }
    }
}

std::vector<Word> Algebra::weight_basis(const Rat& n) const {
    if (!freely_generated_)
        fail(ErrorKind::Unsupported, "weight basis requires a freely generated presentation");
    long scale = 1;
    for (const auto& g : gens_) {
        if (g.weight <= 0)
            fail(ErrorKind::Unsupported, "weight basis requires positive generator weights");
        scale = std::lcm(scale, g.weight.get_den().get_si());
    }
    Rat target(n * Rat(scale));
    if (target.get_den() != 1 || target < 0) return {};
    long N = target.get_num().get_si();

    // Letters sorted by the canonical order, with scaled integer weights.
    struct L {
        Letter l;
        long w;
    };
    std::vector<L> letters;
    for (int g = 0; g < ngens(); ++g) {
        Rat bw(gens_[static_cast<size_t>(g)].weight * Rat(scale));
        long base = bw.get_num().get_si();
        for (long d = 0; base + d * scale <= N; ++d)
            letters.push_back({Letter{g, static_cast<int>(d)}, base + d * scale});
    }
    std::sort(letters.begin(), letters.end(),
              [&](const L& a, const L& b) { return letter_before(a.l, b.l); });

    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, size_t from, long remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (size_t i = from; i < letters.size(); ++i) {
            if (letters[i].w > remaining) continue;
            bool odd = gens_[static_cast<size_t>(letters[i].l.gen)].odd;
            cur.push_back(letters[i].l);
            self(self, odd ? i + 1 : i, remaining - letters[i].w);
            cur.pop_back();
        }
    };
    rec(rec, 0, N);
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == b[i]) continue;
            return letter_before(a[i], b[i]);
        }
        return false;
    });
    return out;
}

std::vector<std::vector<Scalar>> Algebra::shapovalov_matrix(const Rat& n) const {
    Rat idx = Rat(2) * n - 1;
    if (idx.get_den() != 1)
        fail(ErrorKind::Unsupported, "Shapovalov pairing needs 2n-1 integral");
    long j = idx.get_num().get_si();
    std::vector<Word> basis = weight_basis(n);
    std::vector<std::vector<Scalar>> m(basis.size(),
                                       std::vector<Scalar>(basis.size(), Scalar::zero(ctx_)));
    for (size_t r = 0; r < basis.size(); ++r) {
        FieldExpr wr = FieldExpr::term(ctx_, basis[r], Scalar::one(ctx_));
        for (size_t c = 0; c < basis.size(); ++c) {
            FieldExpr wc = FieldExpr::term(ctx_, basis[c], Scalar::one(ctx_));
            FieldExpr p = nth_product(wr, j, wc);
            if (!p.is_scalar_multiple_of_vacuum())
                fail(ErrorKind::Internal, "Shapovalov pairing left the scalars");
            m[r][c] = p.vacuum_coefficient();
        }
    }
    return m;
}

FieldExpr Algebra::substitute_generator(const FieldExpr& e, int gen, const Scalar& value) const {
    if (gens_[static_cast<size_t>(gen)].odd)
        fail(ErrorKind::Unsupported, "substitution of an odd generator");
    // Re-canonicalization can reintroduce the generator through
    // quasi-commutativity corrections, so substitute until a fixed point.
    FieldExpr cur = e;
    for (int pass = 0; pass < 64; ++pass) {
        FieldExpr out = FieldExpr::zero(ctx_);
        for (const auto& [w, c] : cur.terms()) {
            Scalar coeff = c;
            Word nw;
            bool dead = false;
            for (const auto& l : w) {
                if (l.gen != gen) {
                    nw.push_back(l);
                } else if (l.der == 0) {
                    coeff *= value;
                } else {
                    dead = true; // d^m(gen) -> 0 for m >= 1
                    break;
                }
            }
            if (!dead) out.add_term(nw, coeff);
        }
        cur = canonicalize(out);
        bool clean = true;
        for (const auto& [w, c] : cur.terms())
            for (const auto& l : w)
                if (l.gen == gen) clean = false;
        if (clean) return cur;
    }
    fail(ErrorKind::Internal, "generator substitution did not stabilize");
}

Algebra tensor(const Algebra& a, const Algebra& b, const std::string& name) {
    if (a.ctx() != b.ctx() && !a.ctx()->same_declarations(*b.ctx()))
        fail(ErrorKind::Declaration, "tensor factors over different declarations");
    std::vector<Generator> gens = a.generators();
    for (const auto& g : b.generators()) gens.push_back(g);
    std::vector<Algebra::TableEntry> entries;
    for (int i = 0; i < a.ngens(); ++i)
        for (int j = i; j < a.ngens(); ++j) {
            const OpeSingular& s = a.table(i, j);
            if (!s.empty())
                entries.push_back({a.generator(i).name, a.generator(j).name, s});
        }
    int off = a.ngens();
    for (int i = 0; i < b.ngens(); ++i)
        for (int j = i; j < b.ngens(); ++j) {
            const OpeSingular& s = b.table(i, j);
            if (s.empty()) continue;
            // Reindex letters of the second factor.
            OpeSingular shifted;
            for (const auto& [n, e] : s.poles()) {
                FieldExpr se = FieldExpr::zero(a.ctx());
                for (const auto& [w, c] : e.terms()) {
                    Word nw = w;
                    for (auto& l : nw) l.gen += off;
                    se.add_term(nw, c);
                }
                shifted.set_pole(n, se);
            }
            entries.push_back({b.generator(i).name, b.generator(j).name, shifted});
        }
    std::optional<std::string> vir;
    if (a.virasoro()) vir = a.generator(*a.virasoro()).name;
    return Algebra(a.ctx(), std::move(gens), entries, vir, name);
}

} // namespace voa
