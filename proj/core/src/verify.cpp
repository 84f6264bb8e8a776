#include "cylcert/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "cylcert/errors.hpp"

namespace cylcert {

const std::vector<std::string> kStages = {
    "schema",        "dynkin", "pullback", "class-identity", "effectivity",   "ample-lint",
    "surgery-replay", "fiber-classes", "euler",  "section",        "support-match", "hirzebruch"};

const StageResult* VerificationReport::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.stage == name) return &s;
    return nullptr;
}

std::string VerificationReport::first_fail() const {
    for (const auto& s : stages)
        if (s.verdict == Verdict::Fail) return s.stage;
    return {};
}

namespace {

DivisorExpr fiber_class(const std::map<std::string, int>& fiber) {
    DivisorExpr f;
    for (const auto& [name, mult] : fiber) f.set_term(name, AffineExpr(mult));
    return f;
}

bool support_connected(const std::map<std::string, int>& fiber, const CurveConfig& cfg) {
    if (fiber.empty()) return false;
    std::set<std::string> seen;
    std::vector<std::string> queue{fiber.begin()->first};
    seen.insert(queue.front());
    while (!queue.empty()) {
        std::string cur = queue.back();
        queue.pop_back();
        for (const auto& [name, mult] : fiber) {
            if (seen.count(name) || cfg.inter(cur, name) == 0) continue;
            seen.insert(name);
            queue.push_back(name);
        }
    }
    return seen.size() == fiber.size();
}

}  // namespace

bool check_fiber_class(const DivisorExpr& f, const CurveConfig& cfg) {
    static const DivisorExpr k = DivisorExpr::canonical(AffineExpr(1));
    return pairing(f, f, cfg) == AffineExpr(0) && pairing(f, k, cfg) == AffineExpr(-2);
}

bool check_singular_fiber(const std::map<std::string, int>& fiber, const DivisorExpr& f_ref,
                          const CurveConfig& cfg) {
    for (const auto& [name, mult] : fiber)
        if (mult < 1) return false;
    DivisorExpr f = fiber_class(fiber);
    if (class_compare(f, f_ref, cfg).verdict != ClassCompare::Verdict::Equal) return false;
    for (const auto& [name, mult] : fiber)
        if (!(pairing(DivisorExpr::curve(name), f, cfg) == AffineExpr(0))) return false;
    return support_connected(fiber, cfg);
}

bool check_section(const std::string& s, const FibrationClaim& fib, const CurveConfig& cfg) {
    if (!cfg.has(s) || fib.fibers.empty()) return false;
    for (const auto& fiber : fib.fibers)
        if (fiber.count(s)) return false;
    DivisorExpr f = fiber_class(fib.fibers.front());
    return pairing(DivisorExpr::curve(s), f, cfg) == AffineExpr(1);
}

bool euler_completeness(const FibrationClaim& fib, const CurveConfig& final_cfg) {
    int drops = 0;
    for (const auto& fiber : fib.fibers) drops += static_cast<int>(fiber.size()) - 1;
    return drops == (final_cfg.rho() + 2) - 4;
}

AmpleLint ample_necessary_check(const Certificate& cert) {
    AmpleLint lint;
    DivisorExpr phi = pullback_ample(cert);
    for (const Curve& c : cert.cfg.curves()) {
        AffineExpr value = pairing(phi, DivisorExpr::curve(c.name), cert.cfg);
        if (cert.is_exceptional(c.name)) {
            if (!reduce_mod_equalities(value, cert.domain).is_zero()) {
                lint.ok = false;
                lint.violations.push_back(c.name + ": pullback not orthogonal, got " + value.str());
            }
            continue;
        }
        if (reduce_mod_equalities(value, cert.domain).is_zero()) {
            lint.ok = false;
            lint.violations.push_back(c.name + ": degree is identically zero but curve is not declared exceptional");
            continue;
        }
        if (!entails(cert.domain, make_constraint(value, Rel::Gt))) {
            lint.ok = false;
            lint.violations.push_back(c.name + ": cannot certify (" + value.str() + ") > 0 on the domain");
        }
    }
    return lint;
}

HirzebruchReport contract_fibration(const FibrationClaim& fib, const CurveConfig& final_cfg,
                                    unsigned tie_break_seed) {
    CurveConfig cfg = final_cfg;
    std::vector<std::map<std::string, int>> fibers = fib.fibers;
    const std::string& section = fib.section;
    HirzebruchReport report;
    std::mt19937 rng(tie_break_seed);

    auto total_components = [&] {
        std::size_t t = 0;
        for (const auto& f : fibers) t += f.size();
        return t;
    };

    while (true) {
        bool done = true;
        for (const auto& f : fibers)
            if (f.size() > 1) done = false;
        if (done) break;

        std::vector<std::pair<std::size_t, std::string>> candidates;
        for (std::size_t i = 0; i < fibers.size(); ++i) {
            if (fibers[i].size() <= 1) continue;
            for (const auto& [name, mult] : fibers[i]) {
                if (cfg.at(name).self_int != -1) continue;
                if (cfg.inter(name, section) != 0) continue;
                candidates.emplace_back(i, name);
            }
        }
        // Contraction reconnects the neighbours of the contracted component,
        // so support connectivity is preserved; the preference reduces to the
        // deterministic (or randomized) pick among (-1) components.
        if (candidates.empty())
            throw Error(ErrorCode::Stuck, "no contractible (-1) fiber component away from the section");
        std::pair<std::size_t, std::string> pick;
        if (tie_break_seed == 0) {
            pick = *std::min_element(candidates.begin(), candidates.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        } else {
            pick = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
        }
        cfg = blow_down(cfg, pick.second);
        fibers[pick.first].erase(pick.second);
        report.contracted.push_back(pick.second);
        if (report.contracted.size() > total_components() + fib.fibers.size() * 4)
            throw Error(ErrorCode::Stuck, "contraction does not terminate");
    }

    std::vector<std::string> residual;
    for (const auto& f : fibers) {
        const auto& [name, mult] = *f.begin();
        if (mult != 1) throw Error(ErrorCode::LeftoverCurve, "residual fiber " + name + " has multiplicity " +
                                                                  std::to_string(mult));
        if (cfg.at(name).self_int != 0)
            throw Error(ErrorCode::LeftoverCurve, "residual fiber " + name + " is not a 0-curve");
        if (cfg.inter(section, name) != 1)
            throw Error(ErrorCode::LeftoverCurve, "section does not meet residual fiber " + name + " once");
        residual.push_back(name);
    }
    for (std::size_t i = 0; i < residual.size(); ++i)
        for (std::size_t j = i + 1; j < residual.size(); ++j)
            if (cfg.inter(residual[i], residual[j]) != 0)
                throw Error(ErrorCode::LeftoverCurve,
                            "residual fibers " + residual[i] + " and " + residual[j] + " meet");
    report.n = -cfg.at(section).self_int;
    return report;
}

namespace {

struct PipelineState {
    std::optional<DivisorExpr> phi;
    std::optional<CurveConfig> final_cfg;
    std::optional<std::map<std::string, Rat>> witness;
};

StageResult run_stage(const std::string& name, const std::function<StageResult()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return StageResult{name, Verdict::Fail, e.what()};
    } catch (const std::exception& e) {
        return StageResult{name, Verdict::Fail, std::string("internal: ") + e.what()};
    }
}

std::set<std::string> used_parameters(const Certificate& cert) {
    std::set<std::string> used;
    auto feed_expr = [&](const AffineExpr& e) {
        for (const auto& [p, c] : e.coeffs()) used.insert(p);
    };
    for (const auto& c : cert.domain.constraints) feed_expr(c.expr);
    feed_expr(cert.l.kappa());
    for (const auto& [n, e] : cert.l.terms()) feed_expr(e);
    for (const auto& s : cert.ample) feed_expr(s.coeff);
    for (const auto& [n, d] : cert.aliases) {
        feed_expr(d.kappa());
        for (const auto& [cn, e] : d.terms()) feed_expr(e);
    }
    return used;
}

}  // namespace

VerificationReport verify_certificate(const Certificate& cert) {
    VerificationReport report;
    report.id = cert.id;
    PipelineState st;

    auto add = [&](StageResult r) { report.stages.push_back(std::move(r)); };

    add(run_stage("schema", [&]() -> StageResult {
        std::set<std::string> names;
        for (const auto& c : cert.cfg.curves()) {
            if (c.name.empty()) return {"schema", Verdict::Fail, "empty curve name"};
            if (!names.insert(c.name).second) return {"schema", Verdict::Fail, "duplicate curve " + c.name};
        }
        if (cert.degree == 1 && (cert.cfg.rho() != 9 || cert.cfg.k_self() != 1))
            return {"schema", Verdict::Fail, "degree 1 requires rho = 9 and k_self = 1 before surgery"};
        if (!cert.l.kappa().is_zero()) return {"schema", Verdict::Fail, "L must have zero K-part"};
        for (const auto& [n, e] : cert.l.terms())
            if (!cert.cfg.has(n)) return {"schema", Verdict::Fail, "L references unknown curve " + n};
        std::set<std::string> declared(cert.parameters.begin(), cert.parameters.end());
        for (const auto& p : used_parameters(cert))
            if (!declared.count(p)) return {"schema", Verdict::Fail, "undeclared parameter " + p};
        int rank = gram_rank(cert.cfg, true);
        if (rank > cert.cfg.rho())
            return {"schema", Verdict::Fail,
                    "extended Gram rank " + std::to_string(rank) + " exceeds rho = " + std::to_string(cert.cfg.rho())};
        std::set<std::string> new_names;
        for (const auto& s : cert.script) new_names.insert(s.new_name);
        std::set<std::string> fiber_union;
        for (const auto& f : cert.fib.fibers) {
            for (const auto& [n, m] : f) {
                if (!cert.cfg.has(n) && !new_names.count(n))
                    return {"schema", Verdict::Fail, "fiber references unknown curve " + n};
                if (m < 1) return {"schema", Verdict::Fail, "fiber multiplicity must be >= 1 on " + n};
                if (!fiber_union.insert(n).second)
                    return {"schema", Verdict::Fail, "fiber supports are not disjoint at " + n};
            }
        }
        if (!cert.fib.section.empty() && !cert.cfg.has(cert.fib.section) && !new_names.count(cert.fib.section))
            return {"schema", Verdict::Fail, "section references unknown curve " + cert.fib.section};
        return {"schema", Verdict::Pass, ""};
    }));

    add(run_stage("dynkin", [&]() -> StageResult {
        std::set<std::string> seen;
        for (const auto& s : cert.sings) {
            for (const auto& c : s.exc_curves)
                if (!seen.insert(c).second)
                    return {"dynkin", Verdict::Fail, c + " appears in two singular points"};
            if (!check_dynkin(s, cert.cfg))
                return {"dynkin", Verdict::Fail, "declared " + s.kind() + " does not match the dual graph"};
        }
        return {"dynkin", Verdict::Pass, ""};
    }));

    add(run_stage("pullback", [&]() -> StageResult {
        DivisorExpr phi = pullback_ample(cert);
        for (const auto& s : cert.sings) {
            for (const auto& d : s.exc_curves) {
                AffineExpr v = pairing(phi, DivisorExpr::curve(d), cert.cfg);
                if (!v.is_zero())
                    return {"pullback", Verdict::Fail,
                            "pullback meets exceptional " + d + ": " + v.str()};
            }
        }
        st.phi = std::move(phi);
        return {"pullback", Verdict::Pass, ""};
    }));

    add(run_stage("class-identity", [&]() -> StageResult {
        if (!st.phi) return {"class-identity", Verdict::Inconclusive, "pullback stage failed"};
        DivisorExpr diff = *st.phi - cert.l;
        std::vector<std::string> rows;
        for (const auto& c : cert.cfg.curves()) rows.push_back(c.name);
        rows.emplace_back("");
        for (const auto& row : rows) {
            DivisorExpr probe = row.empty() ? DivisorExpr::canonical(AffineExpr(1)) : DivisorExpr::curve(row);
            AffineExpr residual = reduce_mod_equalities(pairing(diff, probe, cert.cfg), cert.domain);
            if (!residual.is_zero())
                return {"class-identity", Verdict::Fail,
                        "pullback(H) - L pairs with " + (row.empty() ? std::string("K") : row) + " to " +
                            residual.str()};
        }
        int rank = gram_rank(cert.cfg, true);
        if (rank != cert.cfg.rho())
            return {"class-identity", Verdict::Inconclusive,
                    "curves plus K span rank " + std::to_string(rank) + " < rho"};
        return {"class-identity", Verdict::Pass, ""};
    }));

    add(run_stage("effectivity", [&]() -> StageResult {
        ParamDomain query = cert.domain;
        for (const auto& name : support_of(cert.l, cert.domain))
            query.constraints.push_back(make_constraint(cert.l.term(name), Rel::Gt));
        FeasibilityResult r = feasible(query);
        if (!r.ok())
            return {"effectivity", Verdict::Fail,
                    "Infeasible: " + r.infeasible->refutation.expr.str() + " " +
                        rel_name(r.infeasible->refutation.rel) + " 0 fails"};
        st.witness = r.feasible->witness;
        report.witness = r.feasible->witness;
        return {"effectivity", Verdict::Pass, ""};
    }));

    add(run_stage("ample-lint", [&]() -> StageResult {
        AmpleLint lint = ample_necessary_check(cert);
        if (lint.ok) return {"ample-lint", Verdict::Pass, ""};
        std::ostringstream detail;
        for (std::size_t i = 0; i < lint.violations.size(); ++i)
            detail << (i ? "; " : "") << lint.violations[i];
        return {"ample-lint", Verdict::Warn, detail.str()};
    }));

    add(run_stage("surgery-replay", [&]() -> StageResult {
        CurveConfig final_cfg = apply_script(cert.cfg, cert.script);
        if (final_cfg.rho() + final_cfg.k_self() != cert.cfg.rho() + cert.cfg.k_self())
            return {"surgery-replay", Verdict::Fail, "rho + k_self drifted during replay"};
        st.final_cfg = std::move(final_cfg);
        return {"surgery-replay", Verdict::Pass, ""};
    }));

    add(run_stage("fiber-classes", [&]() -> StageResult {
        if (!st.final_cfg) return {"fiber-classes", Verdict::Inconclusive, "surgery stage failed"};
        if (cert.fib.fibers.empty()) return {"fiber-classes", Verdict::Fail, "no fibers declared"};
        DivisorExpr f_ref = fiber_class(cert.fib.fibers.front());
        if (!check_fiber_class(f_ref, *st.final_cfg))
            return {"fiber-classes", Verdict::Fail,
                    "reference fiber fails F.F = 0, F.K = -2: F.F = " +
                        pairing(f_ref, f_ref, *st.final_cfg).str()};
        for (std::size_t i = 0; i < cert.fib.fibers.size(); ++i)
            if (!check_singular_fiber(cert.fib.fibers[i], f_ref, *st.final_cfg))
                return {"fiber-classes", Verdict::Fail, "fiber " + std::to_string(i + 1) + " fails"};
        return {"fiber-classes", Verdict::Pass, ""};
    }));

    add(run_stage("euler", [&]() -> StageResult {
        if (!st.final_cfg) return {"euler", Verdict::Inconclusive, "surgery stage failed"};
        if (!euler_completeness(cert.fib, *st.final_cfg)) {
            int drops = 0;
            for (const auto& f : cert.fib.fibers) drops += static_cast<int>(f.size()) - 1;
            return {"euler", Verdict::Fail,
                    "sum(components - 1) = " + std::to_string(drops) + " but rho - 2 = " +
                        std::to_string(st.final_cfg->rho() - 2)};
        }
        return {"euler", Verdict::Pass, ""};
    }));

    add(run_stage("section", [&]() -> StageResult {
        if (!st.final_cfg) return {"section", Verdict::Inconclusive, "surgery stage failed"};
        if (!check_section(cert.fib.section, cert.fib, *st.final_cfg))
            return {"section", Verdict::Fail, "curve " + cert.fib.section + " is not a section of the claim"};
        return {"section", Verdict::Pass, ""};
    }));

    add(run_stage("support-match", [&]() -> StageResult {
        if (!st.final_cfg) return {"support-match", Verdict::Inconclusive, "surgery stage failed"};
        if (!st.witness) return {"support-match", Verdict::Inconclusive, "effectivity stage failed"};
        std::map<std::string, Rat> w = *st.witness;
        for (const auto& p : cert.parameters) w.emplace(p, Rat(0));
        std::set<std::string> lhs;
        for (const auto& [name, coeff] : cert.l.terms())
            if (coeff.eval(w) > 0) lhs.insert(name);
        for (const auto& s : cert.script) lhs.insert(s.new_name);
        std::set<std::string> rhs;
        rhs.insert(cert.fib.section);
        for (const auto& f : cert.fib.fibers)
            for (const auto& [name, m] : f) rhs.insert(name);
        if (lhs != rhs) {
            std::ostringstream detail;
            detail << "support mismatch;";
            for (const auto& n : lhs)
                if (!rhs.count(n)) detail << " +" << n;
            for (const auto& n : rhs)
                if (!lhs.count(n)) detail << " -" << n;
            return {"support-match", Verdict::Fail, detail.str()};
        }
        return {"support-match", Verdict::Pass, ""};
    }));

    add(run_stage("hirzebruch", [&]() -> StageResult {
        if (!st.final_cfg) return {"hirzebruch", Verdict::Inconclusive, "surgery stage failed"};
        for (const auto& s : report.stages)
            if ((s.stage == "fiber-classes" || s.stage == "section") && s.verdict != Verdict::Pass)
                return {"hirzebruch", Verdict::Inconclusive, "fiber checks did not pass"};
        HirzebruchReport hr = contract_fibration(cert.fib, *st.final_cfg);
        if (hr.n != cert.fib.hirzebruch_n)
            return {"hirzebruch", Verdict::Fail,
                    "contraction reaches n = " + std::to_string(hr.n) + ", claim says " +
                        std::to_string(cert.fib.hirzebruch_n)};
        return {"hirzebruch", Verdict::Pass, ""};
    }));

    report.overall_pass = true;
    for (const auto& s : report.stages) {
        if (s.stage == "ample-lint" && s.verdict == Verdict::Warn) continue;
        if (s.verdict != Verdict::Pass) report.overall_pass = false;
    }
    return report;
}

}  // namespace cylcert
