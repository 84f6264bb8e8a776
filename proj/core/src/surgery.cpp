#include "cylcert/surgery.hpp"

#include "cylcert/errors.hpp"

namespace cylcert {

CurveConfig blow_up(const CurveConfig& cfg, const std::vector<std::string>& at,
                    const std::string& new_name) {
    if (cfg.has(new_name)) throw Error(ErrorCode::NameCollision, new_name);
    for (std::size_t i = 0; i < at.size(); ++i) {
        if (!cfg.has(at[i])) throw Error(ErrorCode::UnknownCurve, at[i]);
        for (std::size_t j = i + 1; j < at.size(); ++j) {
            if (at[i] == at[j]) throw Error(ErrorCode::SchemaError, "repeated curve in blow-up center: " + at[i]);
            if (cfg.inter(at[i], at[j]) < 1)
                throw Error(ErrorCode::NotThroughPoint, at[i] + " and " + at[j] + " do not meet");
        }
    }
    CurveConfig out = cfg;
    for (std::size_t i = 0; i < at.size(); ++i) {
        for (std::size_t j = i + 1; j < at.size(); ++j)
            out.set_inter(at[i], at[j], out.inter(at[i], at[j]) - 1);
    }
    std::vector<Curve> curves = out.curves();
    CurveConfig rebuilt(std::vector<Curve>{}, out.k_self() - 1, out.rho() + 1);
    for (Curve c : curves) {
        for (const auto& name : at)
            if (c.name == name) c.self_int -= 1;
        rebuilt.add_curve(c);
    }
    rebuilt.add_curve(Curve{new_name, -1});
    for (const auto& [pair, value] : out.inter_table()) rebuilt.set_inter(pair.first, pair.second, value);
    for (const auto& name : at) rebuilt.set_inter(name, new_name, 1);
    return rebuilt;
}

CurveConfig blow_down(const CurveConfig& cfg, const std::string& e) {
    if (!cfg.has(e)) throw Error(ErrorCode::UnknownCurve, e);
    if (cfg.at(e).self_int != -1) throw Error(ErrorCode::NotMinusOne, e);
    CurveConfig rebuilt(std::vector<Curve>{}, cfg.k_self() + 1, cfg.rho() - 1);
    for (const Curve& c : cfg.curves()) {
        if (c.name == e) continue;
        int me = cfg.inter(c.name, e);
        rebuilt.add_curve(Curve{c.name, c.self_int + me * me});
    }
    for (const Curve& c : rebuilt.curves()) {
        for (const Curve& d : rebuilt.curves()) {
            if (d.name <= c.name) continue;
            int value = cfg.inter(c.name, d.name) + cfg.inter(c.name, e) * cfg.inter(d.name, e);
            rebuilt.set_inter(c.name, d.name, value);
        }
    }
    return rebuilt;
}

CurveConfig apply_script(const CurveConfig& cfg, const std::vector<SurgeryStep>& steps) {
    CurveConfig current = cfg;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        try {
            current = blow_up(current, steps[i].at, steps[i].new_name);
        } catch (const Error& err) {
            throw Error(err.code(), "step " + std::to_string(i) + ": " + err.what());
        }
    }
    return current;
}

}  // namespace cylcert
