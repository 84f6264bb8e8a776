#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cylcert/affine.hpp"
#include "cylcert/curves.hpp"
#include "cylcert/domain.hpp"

namespace cylcert {

/// Formal divisor class: kappa * K + sum(coeff_C * C) with affine-linear
/// coefficients. Zero terms are not stored.
class DivisorExpr {
public:
    DivisorExpr() = default;

    static DivisorExpr canonical(AffineExpr kappa) {
        DivisorExpr d;
        d.kappa_ = std::move(kappa);
        return d;
    }
    static DivisorExpr curve(const std::string& name, AffineExpr coeff = AffineExpr(1));

    const AffineExpr& kappa() const { return kappa_; }
    const std::map<std::string, AffineExpr>& terms() const { return terms_; }

    AffineExpr term(const std::string& name) const;
    void set_term(const std::string& name, AffineExpr coeff);
    void set_kappa(AffineExpr kappa) { kappa_ = std::move(kappa); }

    bool is_zero() const { return kappa_.is_zero() && terms_.empty(); }
    bool is_parameter_free() const;

    DivisorExpr& operator+=(const DivisorExpr& other);
    DivisorExpr& operator-=(const DivisorExpr& other);
    DivisorExpr& operator*=(const Rat& scale);
    friend DivisorExpr operator+(DivisorExpr a, const DivisorExpr& b) { return a += b; }
    friend DivisorExpr operator-(DivisorExpr a, const DivisorExpr& b) { return a -= b; }
    friend DivisorExpr operator*(DivisorExpr a, const Rat& s) { return a *= s; }
    friend DivisorExpr operator*(const Rat& s, DivisorExpr a) { return a *= s; }

    /// Scale by an affine expression; valid when the divisor itself has
    /// parameter-free coefficients.
    DivisorExpr scaled_by(const AffineExpr& scale) const;

    bool operator==(const DivisorExpr& other) const = default;

    std::string str() const;

private:
    AffineExpr kappa_;
    std::map<std::string, AffineExpr> terms_;
};

/// Bilinear extension of the intersection table, with K.C given by adjunction
/// and K.K by the declared k_self. At least one side must be parameter-free.
AffineExpr pairing(const DivisorExpr& a, const DivisorExpr& b, const CurveConfig& cfg);

/// Rank of the (optionally K-extended) Gram matrix over the rationals,
/// computed by fraction-free elimination on the integer matrix.
int gram_rank(const CurveConfig& cfg, bool include_k);

struct ClassCompare {
    enum class Verdict { Equal, NotEqual, Inconclusive } verdict;
    std::string witness;  // violating curve name, or "K" (NotEqual only)
    int rank = 0;         // extended Gram rank (Inconclusive only)
};

/// Numerical-equivalence test: Equal iff the difference pairs to zero against
/// every curve and K, and the configuration plus K spans rank rho.
ClassCompare class_compare(const DivisorExpr& a, const DivisorExpr& b, const CurveConfig& cfg);

struct SpanSolution {
    DivisorExpr particular;
    std::vector<DivisorExpr> kernel;  // parameter-free directions pairing to zero with everything
};

struct NoSolution {};

/// The full affine family of support-combinations numerically equivalent to
/// the target. Requires the extended Gram to span rank rho.
std::variant<SpanSolution, NoSolution> express_in_span(const DivisorExpr& target,
                                                       const std::vector<std::string>& support,
                                                       const CurveConfig& cfg);

/// Curves whose coefficient is not identically zero on the domain (zero after
/// substituting all domain equalities means excluded).
std::set<std::string> support_of(const DivisorExpr& l, const ParamDomain& domain);

}  // namespace cylcert
