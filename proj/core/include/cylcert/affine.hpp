#pragma once

#include <map>
#include <string>

#include "cylcert/rational.hpp"

namespace cylcert {

/// Affine-linear expression c0 + sum(coeff_p * p) over parameter symbols,
/// kept in canonical form: no zero coefficients are stored, so structural
/// equality is expression equality.
class AffineExpr {
public:
    AffineExpr() = default;
    AffineExpr(Rat constant) : constant_(std::move(constant)) {}  // NOLINT: implicit by design
    AffineExpr(long long constant) : constant_(constant) {}       // NOLINT

    static AffineExpr symbol(const std::string& name, Rat scale = Rat(1));

    const Rat& constant() const { return constant_; }
    const std::map<std::string, Rat>& coeffs() const { return coeffs_; }

    Rat coeff(const std::string& name) const;
    void set_coeff(const std::string& name, Rat value);

    bool is_zero() const { return constant_ == 0 && coeffs_.empty(); }
    bool is_constant() const { return coeffs_.empty(); }

    AffineExpr& operator+=(const AffineExpr& other);
    AffineExpr& operator-=(const AffineExpr& other);
    AffineExpr& operator*=(const Rat& scale);

    friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
    friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
    friend AffineExpr operator*(AffineExpr a, const Rat& s) { return a *= s; }
    friend AffineExpr operator*(const Rat& s, AffineExpr a) { return a *= s; }
    friend AffineExpr operator-(AffineExpr a) { return a *= Rat(-1); }

    bool operator==(const AffineExpr& other) const = default;

    /// Exact substitution; every symbol of the expression must be assigned.
    Rat eval(const std::map<std::string, Rat>& assignment) const;

    /// Replace one symbol by an expression.
    AffineExpr substituted(const std::string& name, const AffineExpr& replacement) const;

    std::string str() const;

private:
    Rat constant_ = Rat(0);
    std::map<std::string, Rat> coeffs_;
};

}  // namespace cylcert
