#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cylcert/pullback.hpp"
#include "cylcert/verify.hpp"

using namespace cylcert;

namespace {

// A_n chain D1-...-Dn plus a (-1)-curve E meeting D1 once.
CurveConfig chain_config(int n) {
    std::vector<Curve> curves{{"E", -1}};
    for (int i = 1; i <= n; ++i) curves.push_back({"D" + std::to_string(i), -2});
    CurveConfig cfg(curves, 1, 9);
    cfg.set_inter("E", "D1", 1);
    for (int i = 1; i < n; ++i) cfg.set_inter("D" + std::to_string(i), "D" + std::to_string(i + 1), 1);
    return cfg;
}

SingularityDecl chain_decl(int n) {
    SingularityDecl s;
    s.family = 'A';
    s.index = n;
    for (int i = 1; i <= n; ++i) s.exc_curves.push_back("D" + std::to_string(i));
    return s;
}

}  // namespace

TEST_CASE("check_dynkin accepts the matching diagrams") {
    CurveConfig single({{"D1", -2}}, 1, 9);
    CHECK(check_dynkin(SingularityDecl{'A', 1, {"D1"}}, single));

    CurveConfig chain = chain_config(4);
    CHECK(check_dynkin(chain_decl(4), chain));
    CHECK(!check_dynkin(SingularityDecl{'A', 4, {"D1", "D3", "D2", "D4"}}, chain));
}

TEST_CASE("check_dynkin separates stars from chains") {
    CurveConfig star({{"D1", -2}, {"D2", -2}, {"D3", -2}, {"D4", -2}}, 1, 9);
    star.set_inter("D1", "D2", 1);
    star.set_inter("D2", "D3", 1);
    star.set_inter("D2", "D4", 1);
    CHECK(check_dynkin(SingularityDecl{'D', 4, {"D1", "D2", "D3", "D4"}}, star));
    CHECK(!check_dynkin(SingularityDecl{'A', 4, {"D1", "D2", "D3", "D4"}}, star));
}

TEST_CASE("check_dynkin rejects wrong self-intersections and multiplicities") {
    CurveConfig bad({{"D1", -1}}, 1, 9);
    CHECK(!check_dynkin(SingularityDecl{'A', 1, {"D1"}}, bad));

    CurveConfig tangent({{"D1", -2}, {"D2", -2}}, 1, 9);
    tangent.set_inter("D1", "D2", 2);
    CHECK(!check_dynkin(SingularityDecl{'A', 2, {"D1", "D2"}}, tangent));

    CHECK_THROWS(check_dynkin(SingularityDecl{'A', 1, {"missing"}}, bad));
}

TEST_CASE("pullback corrections for chains met at the first node") {
    auto corrections = [](int n) {
        CurveConfig cfg = chain_config(n);
        DivisorExpr pb = pullback_curve("E", cfg, {chain_decl(n)});
        std::vector<Rat> out;
        for (int i = 1; i <= n; ++i) out.push_back(pb.term("D" + std::to_string(i)).constant());
        return out;
    };

    CHECK(corrections(1) == std::vector<Rat>{make_rat(1, 2)});
    CHECK(corrections(2) == std::vector<Rat>{make_rat(2, 3), make_rat(1, 3)});
    CHECK(corrections(3) == std::vector<Rat>{make_rat(3, 4), make_rat(2, 4), make_rat(1, 4)});
    CHECK(corrections(4) ==
          std::vector<Rat>{make_rat(4, 5), make_rat(3, 5), make_rat(2, 5), make_rat(1, 5)});

    // Endpoint closed form (n+1-j)/(n+1) against the linear solve.
    for (int n = 1; n <= 7; ++n) {
        auto c = corrections(n);
        for (int j = 1; j <= n; ++j) CHECK(c[static_cast<std::size_t>(j - 1)] == Rat(n + 1 - j, n + 1));
    }
}

TEST_CASE("pullback is orthogonal to the exceptional set and non-negative") {
    for (int n = 1; n <= 7; ++n) {
        CurveConfig cfg = chain_config(n);
        SingularityDecl s = chain_decl(n);
        DivisorExpr pb = pullback_curve("E", cfg, {s});
        for (const auto& d : s.exc_curves) {
            CHECK(pairing(pb, DivisorExpr::curve(d), cfg) == AffineExpr(0));
            CHECK(pb.term(d).constant() > 0);  // connected chain, strict positivity
        }
    }
}

TEST_CASE("pullback of a curve missing the singular locus is the curve itself") {
    CurveConfig cfg = chain_config(3);
    cfg.add_curve({"F", -1});
    DivisorExpr pb = pullback_curve("F", cfg, {chain_decl(3)});
    CHECK(pb == DivisorExpr::curve("F"));
}

TEST_CASE("pullback rejects exceptional refs and degenerate declarations") {
    CurveConfig cfg = chain_config(2);
    CHECK_THROWS(pullback_curve("D1", cfg, {chain_decl(2)}));

    SingularityDecl dup{'A', 2, {"D1", "D1"}};
    CHECK_THROWS(pullback_curve("E", cfg, {dup}));
}

TEST_CASE("self-intersection drop under pullback") {
    for (int n = 1; n <= 5; ++n) {
        CurveConfig cfg = chain_config(n);
        DivisorExpr pb = pullback_curve("E", cfg, {chain_decl(n)});
        // pb.pb = E^2 + sum(c_j * (E.D_j)) by orthogonality.
        Rat expected = Rat(-1) + pb.term("D1").constant();
        CHECK(pairing(pb, pb, cfg) == AffineExpr(expected));
    }
}

TEST_CASE("pullback_ample with no summands is the anticanonical class") {
    Certificate cert;
    cert.cfg = chain_config(2);
    cert.sings = {chain_decl(2)};
    DivisorExpr phi = pullback_ample(cert);
    CHECK(phi == DivisorExpr::canonical(AffineExpr(-1)));
}

TEST_CASE("pullback_ample reproduces the displayed five-term class") {
    // H = -K + lambda * (image of E), with E meeting the first node of the A4
    // chain: corrections 4/5, 3/5, 2/5, 1/5 scale with lambda.
    Certificate cert;
    cert.cfg = chain_config(4);
    cert.sings = {chain_decl(4)};
    cert.ample = {AmpleSummand{AffineExpr::symbol("lambda"), "E", ""}};
    DivisorExpr phi = pullback_ample(cert);
    CHECK(phi.kappa() == AffineExpr(-1));
    CHECK(phi.term("E") == AffineExpr::symbol("lambda"));
    CHECK(phi.term("D1") == AffineExpr::symbol("lambda", make_rat(4, 5)));
    CHECK(phi.term("D2") == AffineExpr::symbol("lambda", make_rat(3, 5)));
    CHECK(phi.term("D3") == AffineExpr::symbol("lambda", make_rat(2, 5)));
    CHECK(phi.term("D4") == AffineExpr::symbol("lambda", make_rat(1, 5)));
}

TEST_CASE("pullback_ample resolves class aliases") {
    Certificate cert;
    cert.cfg = chain_config(2);
    cert.sings = {chain_decl(2)};
    DivisorExpr r = DivisorExpr::curve("D1", AffineExpr(2)) + DivisorExpr::curve("D2");
    cert.aliases["R"] = r;
    cert.ample = {AmpleSummand{AffineExpr::symbol("a"), "", "R"}};
    DivisorExpr phi = pullback_ample(cert);
    CHECK(phi.kappa() == AffineExpr(-1));
    CHECK(phi.term("D1") == AffineExpr::symbol("a", Rat(2)));
    CHECK(phi.term("D2") == AffineExpr::symbol("a"));
}

TEST_CASE("ample_necessary_check flags zero-degree non-exceptional curves") {
    Certificate cert;
    cert.cfg = CurveConfig({{"A", -1}, {"B", -2}}, 1, 2);
    AmpleLint lint = ample_necessary_check(cert);
    CHECK(!lint.ok);
    REQUIRE(lint.violations.size() == 1);
    CHECK(lint.violations[0].find("B") == 0);

    cert.sings = {SingularityDecl{'A', 1, {"B"}}};
    CHECK(ample_necessary_check(cert).ok);
}

TEST_CASE("ample_necessary_check certifies strict positivity over the domain") {
    Certificate cert;
    cert.cfg = chain_config(4);
    cert.sings = {chain_decl(4)};
    cert.parameters = {"lambda"};
    cert.ample = {AmpleSummand{AffineExpr::symbol("lambda"), "E", ""}};
    // phi*H . E = 1 - lambda/5: positive exactly when lambda < 5.
    cert.domain.constraints = {make_constraint(AffineExpr::symbol("lambda"), Rel::Gt),
                               make_constraint(AffineExpr(5) - AffineExpr::symbol("lambda"), Rel::Gt)};
    CHECK(ample_necessary_check(cert).ok);

    cert.domain.constraints[1] = make_constraint(AffineExpr(6) - AffineExpr::symbol("lambda"), Rel::Gt);
    AmpleLint widened = ample_necessary_check(cert);
    CHECK(!widened.ok);
    REQUIRE(widened.violations.size() == 1);
    CHECK(widened.violations[0].find("E:") == 0);
}
