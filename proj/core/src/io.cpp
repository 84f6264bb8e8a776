#include "cylcert/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cylcert/errors.hpp"

namespace cylcert {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::SchemaError, path + ": " + what);
}

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) schema_error(path, "expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) schema_error(path, "unknown field '" + key + "'");
}

long long expect_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<long long>();
}

std::string expect_str(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a string");
    return j.get<std::string>();
}

Rat parse_rat(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) schema_error(path, "rationals are [numerator, denominator]");
    Int num(expect_int(j[0], path + "[0]"));
    Int den(expect_int(j[1], path + "[1]"));
    if (den <= 0) throw Error(ErrorCode::NonCanonicalRational, path + ": denominator must be positive");
    if (gcd(abs(num), den) != 1 && !(num == 0 && den == 1))
        throw Error(ErrorCode::NonCanonicalRational, path + ": " + num.str() + "/" + den.str());
    if (num == 0 && den != 1)
        throw Error(ErrorCode::NonCanonicalRational, path + ": zero is [0, 1]");
    return Rat(num, den);
}

AffineExpr parse_affine(const json& j, const std::string& path) {
    expect_keys(j, path, {"const", "terms"});
    AffineExpr e;
    if (j.contains("const")) e += AffineExpr(parse_rat(j["const"], path + ".const"));
    if (j.contains("terms")) {
        if (!j["terms"].is_object()) schema_error(path + ".terms", "expected an object");
        for (const auto& [param, value] : j["terms"].items()) {
            Rat r = parse_rat(value, path + ".terms." + param);
            if (r == 0) schema_error(path + ".terms." + param, "zero coefficients are omitted");
            e.set_coeff(param, r);
        }
    }
    return e;
}

DivisorExpr parse_divisor(const json& j, const std::string& path, const CurveConfig& cfg) {
    expect_keys(j, path, {"kappa", "terms"});
    DivisorExpr d;
    if (j.contains("kappa")) d.set_kappa(parse_affine(j["kappa"], path + ".kappa"));
    if (j.contains("terms")) {
        for (const auto& [curve, value] : j["terms"].items()) {
            if (!cfg.has(curve)) schema_error(path + ".terms", "unknown curve " + curve);
            d.set_term(curve, parse_affine(value, path + ".terms." + curve));
        }
    }
    return d;
}

json rat_to_json(const Rat& r) { return json::array({(long long)numerator(r), (long long)denominator(r)}); }

json affine_to_json(const AffineExpr& e) {
    json terms = json::object();
    for (const auto& [param, c] : e.coeffs()) terms[param] = rat_to_json(c);
    return json{{"const", rat_to_json(e.constant())}, {"terms", terms}};
}

json divisor_to_json(const DivisorExpr& d) {
    json terms = json::object();
    for (const auto& [curve, c] : d.terms()) terms[curve] = affine_to_json(c);
    return json{{"kappa", affine_to_json(d.kappa())}, {"terms", terms}};
}

SingularityDecl parse_singularity(const json& j, const std::string& path, const CurveConfig& cfg) {
    expect_keys(j, path, {"kind", "curves"});
    if (!j.contains("kind") || !j.contains("curves")) schema_error(path, "kind and curves are required");
    std::string kind = expect_str(j["kind"], path + ".kind");
    if (kind.size() < 2 || (kind[0] != 'A' && kind[0] != 'D' && kind[0] != 'E'))
        schema_error(path + ".kind", "expected A<n>, D<n> or E<n>");
    SingularityDecl s;
    s.family = kind[0];
    try {
        s.index = std::stoi(kind.substr(1));
    } catch (...) {
        schema_error(path + ".kind", "bad index in " + kind);
    }
    if (!j["curves"].is_array()) schema_error(path + ".curves", "expected a list");
    for (const auto& c : j["curves"]) {
        std::string name = expect_str(c, path + ".curves");
        if (!cfg.has(name)) schema_error(path + ".curves", "unknown curve " + name);
        s.exc_curves.push_back(name);
    }
    return s;
}

}  // namespace

Certificate parse_certificate(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i < bytes.size(); ++i) {
            if (bytes[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::SyntaxError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col));
    }

    expect_keys(doc, "$",
                {"id", "lemma", "degree", "k_self", "rho", "curves", "intersections", "singularities",
                 "fujita_type", "parameters", "domain", "ample", "aliases", "L", "script", "fibration",
                 "errata"});
    for (const char* required : {"id", "lemma", "degree", "k_self", "rho", "curves"})
        if (!doc.contains(required)) schema_error("$", std::string("missing field '") + required + "'");

    Certificate cert;
    cert.id = expect_str(doc["id"], "$.id");
    cert.lemma = expect_str(doc["lemma"], "$.lemma");
    cert.degree = static_cast<int>(expect_int(doc["degree"], "$.degree"));

    if (!doc["curves"].is_array()) schema_error("$.curves", "expected a list");
    std::vector<Curve> curves;
    for (std::size_t i = 0; i < doc["curves"].size(); ++i) {
        const json& c = doc["curves"][i];
        std::string path = "$.curves[" + std::to_string(i) + "]";
        expect_keys(c, path, {"name", "self"});
        if (!c.contains("name") || !c.contains("self")) schema_error(path, "name and self are required");
        curves.push_back(Curve{expect_str(c["name"], path + ".name"),
                               static_cast<int>(expect_int(c["self"], path + ".self"))});
    }
    try {
        cert.cfg = CurveConfig(curves, static_cast<int>(expect_int(doc["k_self"], "$.k_self")),
                               static_cast<int>(expect_int(doc["rho"], "$.rho")));
        for (const Curve& c : curves) (void)cert.cfg.at(c.name);
    } catch (const Error& e) {
        schema_error("$.curves", e.what());
    }
    {
        std::set<std::string> names;
        for (const Curve& c : curves)
            if (!names.insert(c.name).second) schema_error("$.curves", "duplicate curve " + c.name);
    }

    if (doc.contains("intersections")) {
        if (!doc["intersections"].is_array()) schema_error("$.intersections", "expected a list");
        std::set<std::pair<std::string, std::string>> seen;
        for (std::size_t i = 0; i < doc["intersections"].size(); ++i) {
            const json& e = doc["intersections"][i];
            std::string path = "$.intersections[" + std::to_string(i) + "]";
            if (!e.is_array() || e.size() != 3) schema_error(path, "expected [name, name, multiplicity]");
            std::string a = expect_str(e[0], path);
            std::string b = expect_str(e[1], path);
            long long m = expect_int(e[2], path);
            if (!cert.cfg.has(a)) schema_error(path, "unknown curve " + a);
            if (!cert.cfg.has(b)) schema_error(path, "unknown curve " + b);
            if (a == b) schema_error(path, "self-intersections live in the curve records");
            if (m < 0) schema_error(path, "intersection numbers are non-negative");
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            if (!seen.insert(key).second) schema_error(path, "duplicate pair " + a + ", " + b);
            cert.cfg.set_inter(a, b, static_cast<int>(m));
        }
    }

    if (doc.contains("singularities")) {
        if (!doc["singularities"].is_array()) schema_error("$.singularities", "expected a list");
        for (std::size_t i = 0; i < doc["singularities"].size(); ++i)
            cert.sings.push_back(parse_singularity(doc["singularities"][i],
                                                   "$.singularities[" + std::to_string(i) + "]", cert.cfg));
    }

    if (doc.contains("fujita_type")) {
        cert.fujita_type = expect_str(doc["fujita_type"], "$.fujita_type");
        if (cert.fujita_type != "B" && cert.fujita_type != "C")
            schema_error("$.fujita_type", "expected B or C");
    }

    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_array()) schema_error("$.parameters", "expected a list");
        for (const auto& p : doc["parameters"]) cert.parameters.push_back(expect_str(p, "$.parameters"));
    }

    if (doc.contains("domain")) {
        if (!doc["domain"].is_array()) schema_error("$.domain", "expected a list");
        for (std::size_t i = 0; i < doc["domain"].size(); ++i) {
            const json& c = doc["domain"][i];
            std::string path = "$.domain[" + std::to_string(i) + "]";
            expect_keys(c, path, {"expr", "rel"});
            if (!c.contains("expr") || !c.contains("rel")) schema_error(path, "expr and rel are required");
            std::string rel = expect_str(c["rel"], path + ".rel");
            Rel r;
            if (rel == ">")
                r = Rel::Gt;
            else if (rel == ">=")
                r = Rel::Ge;
            else if (rel == "=")
                r = Rel::Eq;
            else
                schema_error(path + ".rel", "expected >, >= or =");
            cert.domain.constraints.push_back(make_constraint(parse_affine(c["expr"], path + ".expr"), r));
        }
    }

    if (doc.contains("ample")) {
        if (!doc["ample"].is_array()) schema_error("$.ample", "expected a list");
        for (std::size_t i = 0; i < doc["ample"].size(); ++i) {
            const json& s = doc["ample"][i];
            std::string path = "$.ample[" + std::to_string(i) + "]";
            expect_keys(s, path, {"coeff", "curve", "alias"});
            if (!s.contains("coeff")) schema_error(path, "coeff is required");
            if (s.contains("curve") == s.contains("alias"))
                schema_error(path, "exactly one of curve / alias");
            AmpleSummand summand;
            if (s["coeff"].is_string())
                summand.coeff = AffineExpr::symbol(s["coeff"].get<std::string>());
            else
                summand.coeff = AffineExpr(parse_rat(s["coeff"], path + ".coeff"));
            if (s.contains("curve")) {
                summand.curve = expect_str(s["curve"], path + ".curve");
                if (!cert.cfg.has(summand.curve)) schema_error(path + ".curve", "unknown curve " + summand.curve);
            } else {
                summand.alias = expect_str(s["alias"], path + ".alias");
            }
            cert.ample.push_back(std::move(summand));
        }
    }

    if (doc.contains("aliases")) {
        if (!doc["aliases"].is_object()) schema_error("$.aliases", "expected an object");
        for (const auto& [name, d] : doc["aliases"].items())
            cert.aliases[name] = parse_divisor(d, "$.aliases." + name, cert.cfg);
    }
    for (const auto& s : cert.ample)
        if (!s.alias.empty() && !cert.aliases.count(s.alias))
            schema_error("$.ample", "alias " + s.alias + " is not declared");

    if (doc.contains("L")) {
        if (!doc["L"].is_object()) schema_error("$.L", "expected an object");
        for (const auto& [curve, value] : doc["L"].items()) {
            if (!cert.cfg.has(curve)) schema_error("$.L", "unknown curve " + curve);
            cert.l.set_term(curve, parse_affine(value, "$.L." + curve));
        }
    }

    std::set<std::string> known = [&] {
        std::set<std::string> k;
        for (const Curve& c : cert.cfg.curves()) k.insert(c.name);
        return k;
    }();
    if (doc.contains("script")) {
        if (!doc["script"].is_array()) schema_error("$.script", "expected a list");
        for (std::size_t i = 0; i < doc["script"].size(); ++i) {
            const json& s = doc["script"][i];
            std::string path = "$.script[" + std::to_string(i) + "]";
            expect_keys(s, path, {"at", "new"});
            if (!s.contains("at") || !s.contains("new")) schema_error(path, "at and new are required");
            SurgeryStep step;
            if (!s["at"].is_array() || s["at"].size() < 2) schema_error(path + ".at", "expected >= 2 curves");
            for (const auto& n : s["at"]) {
                std::string name = expect_str(n, path + ".at");
                if (!known.count(name)) schema_error(path + ".at", "unknown curve " + name);
                step.at.push_back(name);
            }
            step.new_name = expect_str(s["new"], path + ".new");
            if (!known.insert(step.new_name).second)
                schema_error(path + ".new", "name " + step.new_name + " already in use");
            cert.script.push_back(std::move(step));
        }
    }

    if (doc.contains("fibration")) {
        const json& f = doc["fibration"];
        expect_keys(f, "$.fibration", {"fibers", "section", "hirzebruch_n"});
        if (!f.contains("fibers") || !f.contains("section") || !f.contains("hirzebruch_n"))
            schema_error("$.fibration", "fibers, section and hirzebruch_n are required");
        if (!f["fibers"].is_array()) schema_error("$.fibration.fibers", "expected a list");
        for (std::size_t i = 0; i < f["fibers"].size(); ++i) {
            const json& fiber = f["fibers"][i];
            std::string path = "$.fibration.fibers[" + std::to_string(i) + "]";
            if (!fiber.is_object()) schema_error(path, "expected curve -> multiplicity");
            std::map<std::string, int> m;
            for (const auto& [name, mult] : fiber.items()) {
                if (!known.count(name)) schema_error(path, "unknown curve " + name);
                long long v = expect_int(mult, path + "." + name);
                if (v < 1) schema_error(path + "." + name, "multiplicities are positive");
                m[name] = static_cast<int>(v);
            }
            cert.fib.fibers.push_back(std::move(m));
        }
        cert.fib.section = expect_str(f["section"], "$.fibration.section");
        if (!cert.fib.section.empty() && !known.count(cert.fib.section))
            schema_error("$.fibration.section", "unknown curve " + cert.fib.section);
        long long n = expect_int(f["hirzebruch_n"], "$.fibration.hirzebruch_n");
        if (n < 0) schema_error("$.fibration.hirzebruch_n", "expected a non-negative integer");
        cert.fib.hirzebruch_n = static_cast<int>(n);
    }

    if (doc.contains("errata")) {
        if (!doc["errata"].is_array()) schema_error("$.errata", "expected a list");
        for (std::size_t i = 0; i < doc["errata"].size(); ++i) {
            const json& e = doc["errata"][i];
            std::string path = "$.errata[" + std::to_string(i) + "]";
            expect_keys(e, path, {"location", "verbatim", "corrected"});
            ErrataNote note;
            if (e.contains("location")) note.location = expect_str(e["location"], path + ".location");
            if (e.contains("verbatim")) note.verbatim = expect_str(e["verbatim"], path + ".verbatim");
            if (e.contains("corrected")) note.corrected = expect_str(e["corrected"], path + ".corrected");
            cert.errata.push_back(std::move(note));
        }
    }

    return cert;
}

std::string serialize_certificate(const Certificate& cert) {
    json doc;
    doc["id"] = cert.id;
    doc["lemma"] = cert.lemma;
    doc["degree"] = cert.degree;
    doc["k_self"] = cert.cfg.k_self();
    doc["rho"] = cert.cfg.rho();
    json curves = json::array();
    for (const Curve& c : cert.cfg.curves()) curves.push_back(json{{"name", c.name}, {"self", c.self_int}});
    doc["curves"] = curves;
    json inter = json::array();
    for (const auto& [pair, m] : cert.cfg.inter_table())
        inter.push_back(json::array({pair.first, pair.second, m}));
    doc["intersections"] = inter;
    json sings = json::array();
    for (const auto& s : cert.sings) sings.push_back(json{{"kind", s.kind()}, {"curves", s.exc_curves}});
    doc["singularities"] = sings;
    doc["fujita_type"] = cert.fujita_type;
    doc["parameters"] = cert.parameters;
    json domain = json::array();
    for (const auto& c : cert.domain.constraints)
        domain.push_back(json{{"expr", affine_to_json(c.expr)}, {"rel", rel_name(c.rel)}});
    doc["domain"] = domain;
    json ample = json::array();
    for (const auto& s : cert.ample) {
        json j;
        if (s.coeff.is_constant())
            j["coeff"] = rat_to_json(s.coeff.constant());
        else
            j["coeff"] = s.coeff.coeffs().begin()->first;
        if (!s.curve.empty())
            j["curve"] = s.curve;
        else
            j["alias"] = s.alias;
        ample.push_back(j);
    }
    doc["ample"] = ample;
    json aliases = json::object();
    for (const auto& [name, d] : cert.aliases) aliases[name] = divisor_to_json(d);
    doc["aliases"] = aliases;
    json l = json::object();
    for (const auto& [curve, c] : cert.l.terms()) l[curve] = affine_to_json(c);
    doc["L"] = l;
    json script = json::array();
    for (const auto& s : cert.script) script.push_back(json{{"at", s.at}, {"new", s.new_name}});
    doc["script"] = script;
    json fibers = json::array();
    for (const auto& f : cert.fib.fibers) {
        json fiber = json::object();
        for (const auto& [name, m] : f) fiber[name] = m;
        fibers.push_back(fiber);
    }
    doc["fibration"] =
        json{{"fibers", fibers}, {"section", cert.fib.section}, {"hirzebruch_n", cert.fib.hirzebruch_n}};
    json errata = json::array();
    for (const auto& e : cert.errata)
        errata.push_back(
            json{{"location", e.location}, {"verbatim", e.verbatim}, {"corrected", e.corrected}});
    doc["errata"] = errata;
    return doc.dump(2) + "\n";
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::SyntaxError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str());
}

std::string report_to_json(const VerificationReport& report) {
    json doc;
    doc["schema_version"] = 1;
    doc["id"] = report.id;
    doc["overall"] = report.overall_pass ? "Pass" : "Fail";
    json stages = json::array();
    for (const auto& s : report.stages)
        stages.push_back(json{{"stage", s.stage}, {"verdict", verdict_name(s.verdict)}, {"detail", s.detail}});
    doc["stages"] = stages;
    json witness = json::object();
    for (const auto& [p, v] : report.witness) witness[p] = to_string(v);
    doc["witness"] = witness;
    return doc.dump(2) + "\n";
}

}  // namespace cylcert
