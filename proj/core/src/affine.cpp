#include "cylcert/affine.hpp"

#include <sstream>

#include "cylcert/errors.hpp"

namespace cylcert {

AffineExpr AffineExpr::symbol(const std::string& name, Rat scale) {
    AffineExpr e;
    e.set_coeff(name, std::move(scale));
    return e;
}

Rat AffineExpr::coeff(const std::string& name) const {
    auto it = coeffs_.find(name);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void AffineExpr::set_coeff(const std::string& name, Rat value) {
    if (value == 0)
        coeffs_.erase(name);
    else
        coeffs_[name] = std::move(value);
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& other) {
    constant_ += other.constant_;
    for (const auto& [name, c] : other.coeffs_) set_coeff(name, coeff(name) + c);
    return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& other) {
    constant_ -= other.constant_;
    for (const auto& [name, c] : other.coeffs_) set_coeff(name, coeff(name) - c);
    return *this;
}

AffineExpr& AffineExpr::operator*=(const Rat& scale) {
    if (scale == 0) {
        constant_ = 0;
        coeffs_.clear();
        return *this;
    }
    constant_ *= scale;
    for (auto& [name, c] : coeffs_) c *= scale;
    return *this;
}

Rat AffineExpr::eval(const std::map<std::string, Rat>& assignment) const {
    Rat result = constant_;
    for (const auto& [name, c] : coeffs_) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw Error(ErrorCode::MissingParameter, name);
        result += c * it->second;
    }
    return result;
}

AffineExpr AffineExpr::substituted(const std::string& name, const AffineExpr& replacement) const {
    auto it = coeffs_.find(name);
    if (it == coeffs_.end()) return *this;
    AffineExpr result = *this;
    Rat scale = it->second;
    result.coeffs_.erase(name);
    result += replacement * scale;
    return result;
}

std::string AffineExpr::str() const {
    std::ostringstream out;
    bool first = true;
    if (constant_ != 0 || coeffs_.empty()) {
        out << to_string(constant_);
        first = false;
    }
    for (const auto& [name, c] : coeffs_) {
        if (!first && c > 0) out << "+";
        if (c == -1)
            out << "-";
        else if (c != 1)
            out << to_string(c) << "*";
        out << name;
        first = false;
    }
    return out.str();
}

}  // namespace cylcert
