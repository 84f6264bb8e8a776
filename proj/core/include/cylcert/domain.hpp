#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cylcert/affine.hpp"

namespace cylcert {

/// Relation of an expression against zero.
enum class Rel { Gt, Ge, Eq };

const char* rel_name(Rel r);

struct Constraint {
    AffineExpr expr;  // constraint reads: expr REL 0
    Rel rel = Rel::Ge;

    /// Farkas provenance: this constraint equals sum(multiplier * original
    /// constraint expr) over the source system. Maintained by fm_eliminate so
    /// an Infeasible verdict carries an independently checkable refutation.
    std::vector<std::pair<std::size_t, Rat>> provenance;

    bool same_shape(const Constraint& o) const { return rel == o.rel && expr == o.expr; }
};

Constraint make_constraint(AffineExpr expr, Rel rel);

struct ParamDomain {
    std::vector<Constraint> constraints;

    std::set<std::string> parameters() const;
    ParamDomain with(Constraint extra) const;
};

struct Feasible {
    std::map<std::string, Rat> witness;
};

struct Infeasible {
    /// The contradictory ground constraint, with provenance over the input
    /// system (indices into the ParamDomain handed to feasible()).
    Constraint refutation;
};

struct FeasibilityResult {
    std::optional<Feasible> feasible;
    std::optional<Infeasible> infeasible;
    bool ok() const { return feasible.has_value(); }
};

/// Normalize to integer coefficients with content 1 (orientation preserved).
Constraint normalized(Constraint c);

/// Projection of the solution set onto the remaining parameters. Equalities
/// containing p are used as substitutions first; combining a strict with a
/// non-strict inequality yields a strict one. Pairwise-dominated constraints
/// are pruned.
ParamDomain fm_eliminate(const ParamDomain& d, const std::string& p, bool track_provenance = false);

/// Existential feasibility with a deterministic rational witness found by
/// back-substitution through the elimination order (midpoint of each feasible
/// interval, or the forced value when the interval is a point).
FeasibilityResult feasible(const ParamDomain& d);

/// True iff d together with the negation of c is infeasible.
bool entails(const ParamDomain& d, const Constraint& c);

/// Rewrite an expression modulo the equality constraints of the domain
/// (e.g. a+b = 1+lambda lets b be eliminated everywhere).
AffineExpr reduce_mod_equalities(const AffineExpr& e, const ParamDomain& d);

/// Check a Farkas refutation against the system it was derived from.
bool check_refutation(const ParamDomain& d, const Infeasible& inf);

}  // namespace cylcert
