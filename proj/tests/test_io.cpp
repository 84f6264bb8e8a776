#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "cylcert/cli.hpp"
#include "cylcert/errors.hpp"
#include "cylcert/io.hpp"

using namespace cylcert;

namespace {

const char* kMinimal = R"({
  "id": "minimal",
  "lemma": "3.1",
  "degree": 1,
  "k_self": 1,
  "rho": 9,
  "curves": [{"name": "E", "self": -1}]
})";

Certificate random_certificate(std::mt19937& rng) {
    std::uniform_int_distribution<int> n_curves(1, 6);
    std::uniform_int_distribution<int> self(-3, 0);
    std::uniform_int_distribution<int> edge(0, 2);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> pick(0, 3);

    Certificate cert;
    cert.id = "random-" + std::to_string(rng() % 100000);
    cert.lemma = "3." + std::to_string(1 + rng() % 14);
    cert.degree = 1;
    int n = n_curves(rng);
    std::vector<Curve> curves;
    for (int i = 0; i < n; ++i) curves.push_back({"C" + std::to_string(i), self(rng)});
    cert.cfg = CurveConfig(curves, 1, 9);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            cert.cfg.set_inter("C" + std::to_string(i), "C" + std::to_string(j), edge(rng));
    cert.parameters = {"a", "b"};
    auto rat = [&] { return Rat(num(rng), den(rng)); };
    auto affine = [&] {
        AffineExpr e(rat());
        if (pick(rng) > 1) e += AffineExpr::symbol("a", rat());
        if (pick(rng) > 2) e += AffineExpr::symbol("b", rat());
        return e;
    };
    cert.domain.constraints.push_back(make_constraint(affine(), Rel::Gt));
    cert.domain.constraints.push_back(make_constraint(affine(), Rel::Eq));
    for (int i = 0; i < n; ++i)
        if (pick(rng) > 0) cert.l.set_term("C" + std::to_string(i), affine());
    if (n >= 2) {
        cert.ample.push_back(AmpleSummand{AffineExpr::symbol("a"), "C0", ""});
        DivisorExpr alias = DivisorExpr::curve("C1", AffineExpr(2));
        cert.aliases["R"] = alias;
        cert.ample.push_back(AmpleSummand{AffineExpr(rat()), "", "R"});
        cert.cfg.set_inter("C0", "C1", 1);
        cert.script.push_back(SurgeryStep{{"C0", "C1"}, "N1"});
        cert.fib.fibers = {{{"C0", 1}, {"N1", 2}}};
        cert.fib.section = "C1";
        cert.fib.hirzebruch_n = 1;
    }
    cert.errata.push_back(ErrataNote{"figure", "as printed", "as encoded"});
    return cert;
}

}  // namespace

TEST_CASE("minimal document parses with defaults") {
    Certificate cert = parse_certificate(kMinimal);
    CHECK(cert.id == "minimal");
    CHECK(cert.cfg.curves().size() == 1);
    CHECK(cert.script.empty());
    CHECK(cert.fib.fibers.empty());
    CHECK(cert.ample.empty());
}

TEST_CASE("non-canonical rationals are rejected") {
    std::string doc = kMinimal;
    doc.insert(doc.rfind('}'), R"(, "domain": [{"expr": {"const": [2, 4], "terms": {}}, "rel": ">"}])");
    CHECK_THROWS_AS(parse_certificate(doc), Error);
    try {
        parse_certificate(doc);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonCanonicalRational);
    }

    std::string negden = kMinimal;
    negden.insert(negden.rfind('}'), R"(, "domain": [{"expr": {"const": [1, -2], "terms": {}}, "rel": ">"}])");
    CHECK_THROWS_AS(parse_certificate(negden), Error);
}

TEST_CASE("unknown fields are rejected with a path") {
    std::string doc = kMinimal;
    doc.insert(doc.rfind('}'), R"(, "surprise": 1)");
    try {
        parse_certificate(doc);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SchemaError);
        CHECK(std::string(e.what()).find("surprise") != std::string::npos);
    }
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_certificate("{\n  \"id\": ,\n}");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SyntaxError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("serialization is canonical and round-trip stable") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Certificate cert = random_certificate(rng);
        std::string bytes = serialize_certificate(cert);
        CHECK(bytes.back() == '\n');
        CHECK(bytes[bytes.size() - 2] != '\n');
        Certificate back = parse_certificate(bytes);
        CHECK(serialize_certificate(back) == bytes);
        CHECK(back.id == cert.id);
        CHECK(back.cfg == cert.cfg);
        CHECK(back.l == cert.l);
        CHECK(back.fib.fibers == cert.fib.fibers);
    }
}

TEST_CASE("parse never crashes on fuzzed documents") {
    std::mt19937 rng(99);
    std::string base = serialize_certificate(random_certificate(rng));
    for (int trial = 0; trial < 500; ++trial) {
        std::string doc = base;
        std::uniform_int_distribution<std::size_t> pos(0, doc.size() - 1);
        std::uniform_int_distribution<int> ch(32, 126);
        for (int k = 0; k < 5; ++k) doc[pos(rng)] = static_cast<char>(ch(rng));
        try {
            (void)parse_certificate(doc);
        } catch (const Error&) {
            // graceful diagnostics only
        }
    }
    CHECK(true);
}

TEST_CASE("cli exit codes") {
    std::ostringstream out, err;
    CHECK(run_cli({"verify", "/nonexistent/missing.json"}, out, err) == 2);
    CHECK(run_cli({"bogus-subcommand"}, out, err) == 2);
    CHECK(run_cli({}, out, err) == 2);
}
