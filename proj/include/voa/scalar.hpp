#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "voa/ratfun.hpp"

namespace voa {

class ScalarContext;
using CtxPtr = std::shared_ptr<const ScalarContext>;

/// Session-wide declarations: the ordered parameter list and the adjoined
/// square roots. A root r is declared with its defining relation r^2 = square,
/// where square is a root-free rational function of the parameters.
class ScalarContext {
  public:
    struct Root {
        std::string name;
        RatFun square;
    };

    static CtxPtr make(std::vector<std::string> params);
    static CtxPtr make(std::vector<std::string> params,
                       std::vector<std::pair<std::string, RatFun>> roots);

    int nparams() const { return static_cast<int>(params_.size()); }
    int nroots() const { return static_cast<int>(roots_.size()); }
    const std::vector<std::string>& params() const { return params_; }
    const std::string& param_name(int i) const { return params_[static_cast<size_t>(i)]; }
    int param_index(const std::string& name) const; // -1 if absent
    const Root& root(int i) const { return roots_[static_cast<size_t>(i)]; }
    int root_index(const std::string& name) const; // -1 if absent

    bool same_declarations(const ScalarContext& o) const;

  private:
    std::vector<std::string> params_;
    std::vector<Root> roots_;
};

/// Element of the parameter field extended by the declared roots: a finite sum
/// over square-free root subsets S of coefficients c_S * prod(S). Products
/// reduce r^2 -> square(r) eagerly, so only square-free subsets occur.
class Scalar {
  public:
    Scalar() = default; // unusable placeholder for containers
    static Scalar zero(CtxPtr ctx);
    static Scalar one(CtxPtr ctx) { return from_rat(std::move(ctx), Rat(1)); }
    static Scalar from_rat(CtxPtr ctx, const Rat& c);
    static Scalar from_int(CtxPtr ctx, long c) { return from_rat(std::move(ctx), Rat(c)); }
    static Scalar from_ratfun(CtxPtr ctx, RatFun f);
    static Scalar param(CtxPtr ctx, const std::string& name);
    static Scalar root(CtxPtr ctx, const std::string& name);

    const CtxPtr& ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    bool is_zero() const { return comp_.empty(); }
    bool is_one() const;
    /// Root-free part (the coefficient of the empty subset).
    RatFun rational_part() const;
    bool is_rational() const { return comp_.empty() || (comp_.size() == 1 && comp_.begin()->first == 0); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar scaled(const Rat& c) const;
    Scalar inverse() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
    Scalar pow(int e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const; // deterministic order for maps

    /// Substitute rational values for parameters. Rejects components whose
    /// root defining relations involve a substituted parameter.
    Scalar specialize(const std::map<std::string, Rat>& assignment) const;
    /// Substitute a rational function for a parameter (same root guard).
    Scalar substitute(const std::string& param, const RatFun& value) const;

    /// Twice the degree in `param` of the dominant behaviour as param -> inf;
    /// nullopt for zero. Root factors contribute deg(square)/2 each.
    std::optional<int> degree2(const std::string& param) const;
    Scalar limit_at_infinity(const std::string& param) const;

    const std::map<uint32_t, RatFun>& components() const { return comp_; }

    std::string str() const;

  private:
    void check_same(const Scalar& o) const;
    void prune();

    CtxPtr ctx_;
    std::map<uint32_t, RatFun> comp_; // root-subset mask -> nonzero coefficient
};

} // namespace voa
