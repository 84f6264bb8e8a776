#include "cylcert/domain.hpp"

#include <algorithm>

#include "cylcert/errors.hpp"

namespace cylcert {

const char* rel_name(Rel r) {
    switch (r) {
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
        case Rel::Eq: return "=";
    }
    return "?";
}

Constraint make_constraint(AffineExpr expr, Rel rel) { return Constraint{std::move(expr), rel, {}}; }

std::set<std::string> ParamDomain::parameters() const {
    std::set<std::string> out;
    for (const auto& c : constraints)
        for (const auto& [name, coeff] : c.expr.coeffs()) out.insert(name);
    return out;
}

ParamDomain ParamDomain::with(Constraint extra) const {
    ParamDomain d = *this;
    d.constraints.push_back(std::move(extra));
    return d;
}

Constraint normalized(Constraint c) {
    Int den_lcm = 1;
    Int num_gcd = 0;
    auto feed = [&](const Rat& r) {
        if (r == 0) return;
        den_lcm = lcm(den_lcm, denominator(r));
        num_gcd = gcd(num_gcd, numerator(r));
    };
    feed(c.expr.constant());
    for (const auto& [name, coeff] : c.expr.coeffs()) feed(coeff);
    if (num_gcd == 0) return c;  // ground-zero expression
    Rat scale = Rat(den_lcm, num_gcd);
    if (scale < 0) scale = -scale;
    c.expr *= scale;
    for (auto& [idx, m] : c.provenance) m *= scale;
    return c;
}

namespace {

bool ground_true(const Constraint& c) {
    if (!c.expr.is_constant()) return false;
    const Rat& v = c.expr.constant();
    switch (c.rel) {
        case Rel::Gt: return v > 0;
        case Rel::Ge: return v >= 0;
        case Rel::Eq: return v == 0;
    }
    return false;
}

bool ground_false(const Constraint& c) {
    if (!c.expr.is_constant()) return false;
    const Rat& v = c.expr.constant();
    switch (c.rel) {
        case Rel::Gt: return v <= 0;
        case Rel::Ge: return v < 0;
        case Rel::Eq: return v != 0;
    }
    return false;
}

// c_keep implies c_other when both have the same coefficient vector.
bool dominates(const Constraint& keep, const Constraint& other) {
    if (keep.rel == Rel::Eq || other.rel == Rel::Eq)
        return keep.rel == Rel::Eq && other.rel == Rel::Eq && keep.expr == other.expr;
    if (keep.expr.coeffs() != other.expr.coeffs()) return false;
    const Rat& k = keep.expr.constant();
    const Rat& o = other.expr.constant();
    if (keep.rel == Rel::Ge && other.rel == Rel::Gt) return k < o;
    return k <= o;
}

void scaled_append(std::vector<std::pair<std::size_t, Rat>>& dst,
                   const std::vector<std::pair<std::size_t, Rat>>& src, const Rat& scale) {
    for (const auto& [idx, m] : src) {
        auto it = std::find_if(dst.begin(), dst.end(), [&](const auto& e) { return e.first == idx; });
        if (it == dst.end())
            dst.emplace_back(idx, m * scale);
        else
            it->second += m * scale;
    }
    std::erase_if(dst, [](const auto& e) { return e.second == 0; });
}

ParamDomain pruned(ParamDomain d) {
    std::vector<Constraint> kept;
    for (auto& c : d.constraints) {
        Constraint n = normalized(std::move(c));
        if (ground_true(n)) continue;
        bool redundant = false;
        for (auto& k : kept) {
            if (dominates(k, n)) {
                redundant = true;
                break;
            }
        }
        if (redundant) continue;
        std::erase_if(kept, [&](const Constraint& k) { return dominates(n, k); });
        kept.push_back(std::move(n));
    }
    return ParamDomain{std::move(kept)};
}

}  // namespace

ParamDomain fm_eliminate(const ParamDomain& d, const std::string& p, bool track_provenance) {
    // Equalities containing p act as substitutions.
    for (std::size_t i = 0; i < d.constraints.size(); ++i) {
        const Constraint& eq = d.constraints[i];
        if (eq.rel != Rel::Eq || eq.expr.coeff(p) == 0) continue;
        Rat cp = eq.expr.coeff(p);
        AffineExpr rest = eq.expr;
        rest.set_coeff(p, Rat(0));
        AffineExpr p_value = rest * (Rat(-1) / cp);
        ParamDomain out;
        for (std::size_t j = 0; j < d.constraints.size(); ++j) {
            if (j == i) continue;
            Constraint c = d.constraints[j];
            Rat t = c.expr.coeff(p);
            if (t != 0) {
                c.expr = c.expr.substituted(p, p_value);
                if (track_provenance) scaled_append(c.provenance, eq.provenance, -t / cp);
            }
            out.constraints.push_back(std::move(c));
        }
        return pruned(std::move(out));
    }

    ParamDomain out;
    std::vector<const Constraint*> lowers, uppers;
    for (const Constraint& c : d.constraints) {
        Rat cp = c.expr.coeff(p);
        if (cp == 0)
            out.constraints.push_back(c);
        else if (cp > 0)
            lowers.push_back(&c);
        else
            uppers.push_back(&c);
    }
    for (const Constraint* lo : lowers) {
        for (const Constraint* up : uppers) {
            Rat cl = lo->expr.coeff(p);
            Rat cu = up->expr.coeff(p);
            Constraint combined;
            combined.expr = lo->expr * (-cu) + up->expr * cl;
            combined.rel = (lo->rel == Rel::Gt || up->rel == Rel::Gt) ? Rel::Gt : Rel::Ge;
            if (track_provenance) {
                scaled_append(combined.provenance, lo->provenance, -cu);
                scaled_append(combined.provenance, up->provenance, cl);
            }
            out.constraints.push_back(std::move(combined));
        }
    }
    return pruned(std::move(out));
}

FeasibilityResult feasible(const ParamDomain& d) {
    ParamDomain seeded = d;
    for (std::size_t i = 0; i < seeded.constraints.size(); ++i)
        seeded.constraints[i].provenance = {{i, Rat(1)}};

    std::set<std::string> param_set = seeded.parameters();
    std::vector<std::string> params(param_set.begin(), param_set.end());
    std::vector<ParamDomain> stages;
    stages.push_back(std::move(seeded));
    for (const std::string& p : params) stages.push_back(fm_eliminate(stages.back(), p, true));

    for (const Constraint& c : stages.back().constraints)
        if (ground_false(c)) return FeasibilityResult{{}, Infeasible{c}};
    // Intermediate stages can already hold a ground contradiction.
    for (const ParamDomain& s : stages)
        for (const Constraint& c : s.constraints)
            if (ground_false(c)) return FeasibilityResult{{}, Infeasible{c}};

    std::map<std::string, Rat> witness;
    for (std::size_t i = params.size(); i-- > 0;) {
        const std::string& p = params[i];
        std::optional<Rat> forced;
        std::optional<Rat> lo, hi;
        for (const Constraint& c : stages[i].constraints) {
            Rat cp = c.expr.coeff(p);
            if (cp == 0) continue;
            AffineExpr rest = c.expr;
            rest.set_coeff(p, Rat(0));
            Rat bound = -rest.eval(witness) / cp;
            if (c.rel == Rel::Eq) {
                forced = bound;
            } else if (cp > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        Rat value;
        if (forced)
            value = *forced;
        else if (lo && hi)
            value = (*lo + *hi) / 2;
        else if (lo)
            value = *lo + 1;
        else if (hi)
            value = *hi - 1;
        else
            value = 0;
        witness[p] = value;
    }

    // The witness is exact; double-check it against the original system.
    for (const Constraint& c : d.constraints) {
        Rat v = c.expr.eval(witness);
        bool ok = c.rel == Rel::Gt ? v > 0 : c.rel == Rel::Ge ? v >= 0 : v == 0;
        if (!ok) return FeasibilityResult{{}, Infeasible{c}};
    }
    return FeasibilityResult{Feasible{std::move(witness)}, {}};
}

bool entails(const ParamDomain& d, const Constraint& c) {
    auto contradiction_infeasible = [&](AffineExpr e, Rel r) {
        return !feasible(d.with(make_constraint(std::move(e), r))).ok();
    };
    switch (c.rel) {
        case Rel::Gt: return contradiction_infeasible(-c.expr, Rel::Ge);
        case Rel::Ge: return contradiction_infeasible(-c.expr, Rel::Gt);
        case Rel::Eq:
            return contradiction_infeasible(c.expr, Rel::Gt) && contradiction_infeasible(-c.expr, Rel::Gt);
    }
    return false;
}

AffineExpr reduce_mod_equalities(const AffineExpr& e, const ParamDomain& d) {
    std::vector<std::pair<std::string, AffineExpr>> subs;
    for (const Constraint& c : d.constraints) {
        if (c.rel != Rel::Eq) continue;
        AffineExpr eq = c.expr;
        for (const auto& [p, rhs] : subs) eq = eq.substituted(p, rhs);
        if (eq.is_constant()) continue;
        const auto& [lead, coeff] = *eq.coeffs().begin();
        AffineExpr rest = eq;
        std::string lead_name = lead;
        Rat lead_coeff = coeff;
        rest.set_coeff(lead_name, Rat(0));
        subs.emplace_back(lead_name, rest * (Rat(-1) / lead_coeff));
    }
    AffineExpr out = e;
    for (const auto& [p, rhs] : subs) out = out.substituted(p, rhs);
    return out;
}

bool check_refutation(const ParamDomain& d, const Infeasible& inf) {
    if (!ground_false(inf.refutation)) return false;
    AffineExpr combo;
    bool any_strict = false;
    for (const auto& [idx, m] : inf.refutation.provenance) {
        if (idx >= d.constraints.size()) return false;
        const Constraint& src = d.constraints[idx];
        if (src.rel != Rel::Eq && m < 0) return false;
        if (src.rel == Rel::Gt && m > 0) any_strict = true;
        combo += src.expr * m;
    }
    if (!(combo == inf.refutation.expr)) return false;
    Rel derived = any_strict ? Rel::Gt : Rel::Ge;
    Constraint derived_c{combo, derived, {}};
    if (inf.refutation.rel == Rel::Eq) return false;  // eliminations never emit equalities as refutations
    return ground_false(derived_c);
}

}  // namespace cylcert
