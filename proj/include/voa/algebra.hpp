#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "voa/field_expr.hpp"

namespace voa {

struct Generator {
    std::string name;
    bool odd = false;
    Rat weight; // conformal weight
};

/// Singular part of an OPE, keyed by pole order n >= 1:
///   a(z) b(w) ~ sum_n C_n(w) (z-w)^(-n),  with a_(j) b = C_(j+1).
class OpeSingular {
  public:
    bool empty() const { return pole_.empty(); }
    int max_pole() const { return pole_.empty() ? 0 : pole_.rbegin()->first; }
    /// C_n; zero expression when absent.
    FieldExpr at_pole(int n, const CtxPtr& ctx) const;
    /// j-th product coefficient a_(j) b = C_(j+1).
    FieldExpr nth(int j, const CtxPtr& ctx) const { return at_pole(j + 1, ctx); }
    void set_pole(int n, FieldExpr e);
    void add_pole(int n, const FieldExpr& e);
    const std::map<int, FieldExpr>& poles() const { return pole_; }

  private:
    std::map<int, FieldExpr> pole_;
};

struct JacobiFailure {
    int lambda_power = 0;
    int mu_power = 0;
    FieldExpr residual;
};

struct JacobiResult {
    bool pass = true;
    std::vector<JacobiFailure> failures;
};

/// A strong generator presentation together with the lambda-bracket calculus
/// over it. The OPE table is stored for ordered generator pairs (i <= j); the
/// other direction is produced by skew-symmetry
///   [a_l b] = -(-1)^(p(a)p(b)) [b_(-l-d) a].
/// Composite brackets are computed with sesquilinearity and the
/// non-commutative Wick formula; normally ordered products are canonicalized
/// with quasi-commutativity and quasi-associativity into right-nested words
/// with letters sorted by (weight, parity, declaration index, derivative) and
/// no repeated odd letter.
class Algebra {
  public:
    struct TableEntry {
        std::string left, right;
        OpeSingular ope;
    };

    Algebra(CtxPtr ctx, std::vector<Generator> gens, const std::vector<TableEntry>& entries,
            std::optional<std::string> virasoro = std::nullopt, std::string name = "");

    const CtxPtr& ctx() const { return ctx_; }
    const std::string& name() const { return name_; }
    int ngens() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& generator(int i) const { return gens_[static_cast<size_t>(i)]; }
    int gen_index(const std::string& name) const; // -1 when absent
    int require_gen(const std::string& name) const;
    std::optional<int> virasoro() const { return virasoro_; }
    bool freely_generated() const { return freely_generated_; }
    void set_freely_generated(bool v) { freely_generated_ = v; }

    /// Stored table entry for declaration-ordered pair (i <= j).
    const OpeSingular& table(int i, int j) const;
    /// Bracket of two generators in either order (skew applied as needed).
    OpeSingular pair_bracket(int i, int j) const;

    bool word_odd(const Word& w) const;
    bool expr_odd(const FieldExpr& e) const; // parity of the first term's word
    Rat word_weight(const Word& w) const;
    bool letter_before(const Letter& x, const Letter& y) const;

    FieldExpr gen_expr(const std::string& name) const;
    FieldExpr vacuum_expr() const { return FieldExpr::vacuum(ctx_); }

    /// Canonical form: every word re-sorted through the rewriting relations.
    FieldExpr canonicalize(const FieldExpr& e) const;
    /// Wick-ordered product :x y: in canonical form.
    FieldExpr normal_order(const FieldExpr& x, const FieldExpr& y) const;
    /// Full singular OPE [x_l y], canonical entries.
    OpeSingular bracket(const FieldExpr& x, const FieldExpr& y) const;
    /// x_(j) y for any integer j (negative j gives :d^(-j-1)x/(-j-1)! y:).
    FieldExpr nth_product(const FieldExpr& x, long j, const FieldExpr& y) const;
    bool equal(const FieldExpr& x, const FieldExpr& y) const;

    /// Jacobi identity on a generator triple; residuals reported per
    /// (lambda, mu) divided-power coefficient.
    JacobiResult jacobi(int a, int b, int c) const;
    /// Skew-consistency of every stored table entry (diagonal entries are
    /// self-constrained; off-diagonal entries are checked by double skew).
    void validate_table() const;

    /// Canonical words of exact weight n (freely generated algebras with
    /// strictly positive generator weights only).
    std::vector<Word> weight_basis(const Rat& n) const;
    /// Gram matrix <w_i, w_j> = coefficient of the vacuum in (w_i)_(2n-1) w_j.
    std::vector<std::vector<Scalar>> shapovalov_matrix(const Rat& n) const;

    /// Replace a generator by a scalar (even generators only): letters with
    /// der = 0 become the scalar, any derivative of the generator is dropped.
    FieldExpr substitute_generator(const FieldExpr& e, int gen, const Scalar& value) const;

  private:
    OpeSingular br_words(const Word& x, const Word& y) const;
    FieldExpr no_insert(const Letter& l, const Word& w) const;
    FieldExpr no_words(const Word& x, const Word& y) const;
    /// Quasi-commutativity integral sum_j (-1)^j d^(j+1)(x_(j)y)/(j+1)!.
    FieldExpr qc_integral(const Word& x, const Word& y) const;
    OpeSingular skewed(const OpeSingular& s, bool odd_pair) const;

    CtxPtr ctx_;
    std::string name_;
    std::vector<Generator> gens_;
    std::map<std::pair<int, int>, OpeSingular> table_;
    std::optional<int> virasoro_;
    bool freely_generated_ = true;

    // Copies of an algebra share the memo tables (the table is immutable
    // after construction, so cached results stay valid).
    struct Memo {
        std::mutex mutex;
        std::map<std::pair<Word, Word>, OpeSingular> brackets;
        std::map<std::pair<Letter, Word>, FieldExpr> inserts;
    };
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Tensor product presentation: generators concatenated, cross OPEs regular.
Algebra tensor(const Algebra& a, const Algebra& b, const std::string& name);

} // namespace voa
