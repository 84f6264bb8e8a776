#include "cylcert/pullback.hpp"

#include "cylcert/errors.hpp"

namespace cylcert {

namespace {

// Solve Gram(exc) * x = rhs for one singular point; the Gram matrix of a du
// Val exceptional set is negative definite, so a singular one signals a bad
// declaration.
std::vector<Rat> solve_exc_system(const std::vector<std::string>& exc, const std::vector<Rat>& rhs,
                                  const CurveConfig& cfg) {
    std::size_t n = exc.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(cfg.inter(exc[i], exc[j]));
        a[i][n] = rhs[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && a[pr][col] == 0) ++pr;
        if (pr == n) throw Error(ErrorCode::SingularGram, "exceptional Gram matrix is singular near " + exc[col]);
        std::swap(a[col], a[pr]);
        Rat inv = Rat(1) / a[col][col];
        for (auto& v : a[col]) v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

}  // namespace

DivisorExpr pullback_curve(const std::string& c, const CurveConfig& cfg,
                           const std::vector<SingularityDecl>& sings) {
    if (!cfg.has(c)) throw Error(ErrorCode::UnknownCurve, c);
    for (const auto& s : sings)
        for (const auto& e : s.exc_curves)
            if (e == c) throw Error(ErrorCode::ExceptionalRef, "pullback of exceptional curve " + c);

    DivisorExpr result = DivisorExpr::curve(c);
    for (const auto& s : sings) {
        std::vector<Rat> rhs(s.exc_curves.size());
        bool meets = false;
        for (std::size_t j = 0; j < s.exc_curves.size(); ++j) {
            rhs[j] = Rat(-cfg.inter(c, s.exc_curves[j]));
            if (rhs[j] != 0) meets = true;
        }
        if (!meets) continue;
        std::vector<Rat> corr = solve_exc_system(s.exc_curves, rhs, cfg);
        for (std::size_t j = 0; j < s.exc_curves.size(); ++j)
            if (corr[j] != 0) result.set_term(s.exc_curves[j], AffineExpr(corr[j]));
    }
    return result;
}

DivisorExpr pullback_ample(const Certificate& cert) {
    DivisorExpr result = DivisorExpr::canonical(AffineExpr(-1));
    for (const auto& summand : cert.ample) {
        DivisorExpr base;
        if (!summand.curve.empty()) {
            base = pullback_curve(summand.curve, cert.cfg, cert.sings);
        } else {
            auto it = cert.aliases.find(summand.alias);
            if (it == cert.aliases.end()) throw Error(ErrorCode::SchemaError, "unknown alias " + summand.alias);
            base = it->second;
        }
        result += base.scaled_by(summand.coeff);
    }
    return result;
}

}  // namespace cylcert
