#include "cylcert/divisor.hpp"

#include <algorithm>
#include <sstream>

#include "cylcert/errors.hpp"

namespace cylcert {

std::optional<std::size_t> CurveConfig::find(const std::string& name) const {
    for (std::size_t i = 0; i < curves_.size(); ++i)
        if (curves_[i].name == name) return i;
    return std::nullopt;
}

const Curve& CurveConfig::at(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw Error(ErrorCode::UnknownCurve, name);
    return curves_[*idx];
}

void CurveConfig::add_curve(Curve c) {
    if (has(c.name)) throw Error(ErrorCode::NameCollision, c.name);
    curves_.push_back(std::move(c));
}

void CurveConfig::remove_curve(const std::string& name) {
    auto idx = find(name);
    if (!idx) throw Error(ErrorCode::UnknownCurve, name);
    curves_.erase(curves_.begin() + static_cast<std::ptrdiff_t>(*idx));
    std::erase_if(inter_, [&](const auto& e) { return e.first.first == name || e.first.second == name; });
}

int CurveConfig::inter(const std::string& a, const std::string& b) const {
    if (a == b) return at(a).self_int;
    auto it = inter_.find(key(a, b));
    return it == inter_.end() ? 0 : it->second;
}

void CurveConfig::set_inter(const std::string& a, const std::string& b, int value) {
    if (a == b) throw Error(ErrorCode::SchemaError, "self-intersection belongs to the curve record: " + a);
    if (value == 0)
        inter_.erase(key(a, b));
    else
        inter_[key(a, b)] = value;
}

bool CurveConfig::operator==(const CurveConfig& other) const {
    if (k_self_ != other.k_self_ || rho_ != other.rho_) return false;
    if (curves_.size() != other.curves_.size()) return false;
    for (std::size_t i = 0; i < curves_.size(); ++i)
        if (curves_[i].name != other.curves_[i].name || curves_[i].self_int != other.curves_[i].self_int)
            return false;
    return inter_ == other.inter_;
}

DivisorExpr DivisorExpr::curve(const std::string& name, AffineExpr coeff) {
    DivisorExpr d;
    d.set_term(name, std::move(coeff));
    return d;
}

AffineExpr DivisorExpr::term(const std::string& name) const {
    auto it = terms_.find(name);
    return it == terms_.end() ? AffineExpr() : it->second;
}

void DivisorExpr::set_term(const std::string& name, AffineExpr coeff) {
    if (coeff.is_zero())
        terms_.erase(name);
    else
        terms_[name] = std::move(coeff);
}

bool DivisorExpr::is_parameter_free() const {
    if (!kappa_.is_constant()) return false;
    for (const auto& [name, c] : terms_)
        if (!c.is_constant()) return false;
    return true;
}

DivisorExpr& DivisorExpr::operator+=(const DivisorExpr& other) {
    kappa_ += other.kappa_;
    for (const auto& [name, c] : other.terms_) set_term(name, term(name) + c);
    return *this;
}

DivisorExpr& DivisorExpr::operator-=(const DivisorExpr& other) {
    kappa_ -= other.kappa_;
    for (const auto& [name, c] : other.terms_) set_term(name, term(name) - c);
    return *this;
}

DivisorExpr& DivisorExpr::operator*=(const Rat& scale) {
    kappa_ *= scale;
    if (scale == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [name, c] : terms_) c *= scale;
    return *this;
}

DivisorExpr DivisorExpr::scaled_by(const AffineExpr& scale) const {
    if (scale.is_constant()) return *this * scale.constant();
    if (!is_parameter_free())
        throw Error(ErrorCode::BothSidesParametric, "scaling a parametric class by a parametric expression");
    DivisorExpr out;
    out.kappa_ = scale * kappa_.constant();
    for (const auto& [name, c] : terms_) out.set_term(name, scale * c.constant());
    return out;
}

std::string DivisorExpr::str() const {
    std::ostringstream out;
    bool first = true;
    if (!kappa_.is_zero()) {
        out << "(" << kappa_.str() << ")K";
        first = false;
    }
    for (const auto& [name, c] : terms_) {
        if (!first) out << " + ";
        out << "(" << c.str() << ")" << name;
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

namespace {

// Intersection number of two basis elements; "" denotes K.
Rat basis_pair(const std::string& a, const std::string& b, const CurveConfig& cfg) {
    if (a.empty() && b.empty()) return Rat(cfg.k_self());
    if (a.empty()) return Rat(cfg.k_degree(b));
    if (b.empty()) return Rat(cfg.k_degree(a));
    return Rat(cfg.inter(a, b));
}

}  // namespace

AffineExpr pairing(const DivisorExpr& a, const DivisorExpr& b, const CurveConfig& cfg) {
    for (const auto& d : {a, b})
        for (const auto& [name, c] : d.terms())
            if (!cfg.has(name)) throw Error(ErrorCode::UnknownCurve, name);

    const DivisorExpr* constant_side = b.is_parameter_free() ? &b : a.is_parameter_free() ? &a : nullptr;
    if (!constant_side) throw Error(ErrorCode::BothSidesParametric, "pairing of two parametric classes");
    const DivisorExpr& affine_side = (constant_side == &b) ? a : b;

    AffineExpr result;
    auto accumulate = [&](const std::string& left, const AffineExpr& lc) {
        Rat against_k = constant_side->kappa().constant();
        if (against_k != 0) result += lc * (basis_pair(left, "", cfg) * against_k);
        for (const auto& [name, rc] : constant_side->terms())
            result += lc * (basis_pair(left, name, cfg) * rc.constant());
    };
    if (!affine_side.kappa().is_zero()) accumulate("", affine_side.kappa());
    for (const auto& [name, lc] : affine_side.terms()) accumulate(name, lc);
    return result;
}

namespace {

// Fraction-free (Bareiss) rank of an integer matrix.
int bareiss_rank(std::vector<std::vector<Int>> m) {
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    Int prev_pivot = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot_row = rank;
        while (pivot_row < rows && m[pivot_row][col] == 0) ++pivot_row;
        if (pivot_row == rows) continue;
        std::swap(m[rank], m[pivot_row]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev_pivot;
            m[r][col] = 0;
        }
        prev_pivot = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<std::string> basis_with_k(const CurveConfig& cfg) {
    std::vector<std::string> rows;
    rows.reserve(cfg.curves().size() + 1);
    for (const auto& c : cfg.curves()) rows.push_back(c.name);
    rows.emplace_back("");  // K
    return rows;
}

}  // namespace

int gram_rank(const CurveConfig& cfg, bool include_k) {
    std::vector<std::string> rows;
    for (const auto& c : cfg.curves()) rows.push_back(c.name);
    if (include_k) rows.emplace_back("");
    std::vector<std::vector<Int>> m(rows.size(), std::vector<Int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            m[i][j] = numerator(basis_pair(rows[i], rows[j], cfg));
    return bareiss_rank(std::move(m));
}

ClassCompare class_compare(const DivisorExpr& a, const DivisorExpr& b, const CurveConfig& cfg) {
    DivisorExpr diff = a - b;
    std::vector<std::string> rows;
    rows.emplace_back("");  // K first: its degree is the coarsest discriminator
    for (const auto& c : cfg.curves()) rows.push_back(c.name);
    for (const std::string& row : rows) {
        DivisorExpr probe = row.empty() ? DivisorExpr::canonical(AffineExpr(1)) : DivisorExpr::curve(row);
        AffineExpr value = pairing(diff, probe, cfg);
        if (!value.is_zero())
            return ClassCompare{ClassCompare::Verdict::NotEqual, row.empty() ? "K" : row, 0};
    }
    int rank = gram_rank(cfg, true);
    if (rank != cfg.rho()) return ClassCompare{ClassCompare::Verdict::Inconclusive, "", rank};
    return ClassCompare{ClassCompare::Verdict::Equal, "", rank};
}

std::variant<SpanSolution, NoSolution> express_in_span(const DivisorExpr& target,
                                                       const std::vector<std::string>& support,
                                                       const CurveConfig& cfg) {
    if (gram_rank(cfg, true) != cfg.rho())
        throw Error(ErrorCode::Underdetermined, "configuration plus K does not span rank rho");
    for (const auto& s : support)
        if (!cfg.has(s)) throw Error(ErrorCode::UnknownCurve, s);

    // Rows: pairings against every curve and K. Columns: support coefficients.
    // The right-hand side is affine in the parameters, so elimination runs on
    // rational columns with an AffineExpr-valued RHS.
    std::vector<std::string> rows = basis_with_k(cfg);
    std::size_t n = rows.size(), k = support.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(k));
    std::vector<AffineExpr> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        DivisorExpr probe =
            rows[i].empty() ? DivisorExpr::canonical(AffineExpr(1)) : DivisorExpr::curve(rows[i]);
        for (std::size_t j = 0; j < k; ++j) a[i][j] = basis_pair(rows[i], support[j], cfg);
        rhs[i] = pairing(target, probe, cfg);
    }

    std::vector<std::optional<std::size_t>> pivot_of_col(k);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < k && rank < n; ++col) {
        std::size_t pr = rank;
        while (pr < n && a[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(a[rank], a[pr]);
        std::swap(rhs[rank], rhs[pr]);
        Rat inv = Rat(1) / a[rank][col];
        for (auto& v : a[rank]) v *= inv;
        rhs[rank] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (std::size_t c = 0; c < k; ++c) a[r][c] -= f * a[rank][c];
            rhs[r] -= rhs[rank] * f;
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (std::size_t r = rank; r < n; ++r)
        if (!rhs[r].is_zero()) return NoSolution{};

    SpanSolution sol;
    for (std::size_t col = 0; col < k; ++col)
        if (pivot_of_col[col]) sol.particular.set_term(support[col], rhs[*pivot_of_col[col]]);
    for (std::size_t free_col = 0; free_col < k; ++free_col) {
        if (pivot_of_col[free_col]) continue;
        DivisorExpr dir = DivisorExpr::curve(support[free_col]);
        for (std::size_t col = 0; col < k; ++col)
            if (pivot_of_col[col]) dir.set_term(support[col], AffineExpr(-a[*pivot_of_col[col]][free_col]));
        sol.kernel.push_back(std::move(dir));
    }
    return sol;
}

std::set<std::string> support_of(const DivisorExpr& l, const ParamDomain& domain) {
    std::set<std::string> out;
    for (const auto& [name, coeff] : l.terms())
        if (!reduce_mod_equalities(coeff, domain).is_zero()) out.insert(name);
    return out;
}

}  // namespace cylcert
