#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylcert/errors.hpp"
#include "cylcert/surgery.hpp"

using namespace cylcert;

namespace {

std::mt19937 rng(2024);

CurveConfig random_config() {
    std::uniform_int_distribution<int> n_curves(2, 7);
    std::uniform_int_distribution<int> self(-4, 0);
    std::uniform_int_distribution<int> edge(0, 2);
    int n = n_curves(rng);
    std::vector<Curve> curves;
    for (int i = 0; i < n; ++i) curves.push_back({"C" + std::to_string(i), self(rng)});
    CurveConfig cfg(curves, 1, 9);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cfg.set_inter(curves[static_cast<std::size_t>(i)].name, curves[static_cast<std::size_t>(j)].name, edge(rng));
    return cfg;
}

}  // namespace

TEST_CASE("blow_up of two meeting (-2)-curves") {
    CurveConfig cfg({{"A", -2}, {"B", -2}}, 1, 9);
    cfg.set_inter("A", "B", 1);
    CurveConfig out = blow_up(cfg, {"A", "B"}, "F");
    CHECK(out.at("A").self_int == -3);
    CHECK(out.at("B").self_int == -3);
    CHECK(out.at("F").self_int == -1);
    CHECK(out.inter("A", "B") == 0);
    CHECK(out.inter("A", "F") == 1);
    CHECK(out.inter("B", "F") == 1);
    CHECK(out.k_self() == 0);
    CHECK(out.rho() == 10);
}

TEST_CASE("blow_up bookkeeping over a four-step script") {
    CurveConfig cfg({{"A", -2}, {"B", -2}, {"C", 0}}, 1, 9);
    cfg.set_inter("A", "B", 1);
    cfg.set_inter("B", "C", 1);
    cfg.set_inter("A", "C", 1);
    std::vector<SurgeryStep> steps = {{{"A", "B", "C"}, "N1"},
                                      {{"N1", "B"}, "N2"},
                                      {{"N2", "B"}, "N3"},
                                      {{"N3", "N2"}, "F"}};
    CurveConfig out = apply_script(cfg, steps);
    CHECK(out.k_self() == -3);
    CHECK(out.rho() == 13);
    CHECK(out.rho() + out.k_self() == cfg.rho() + cfg.k_self());
    // Genus bookkeeping: adjunction degree equals -self - 2 throughout.
    for (const auto& c : out.curves()) CHECK(out.k_degree(c.name) == -c.self_int - 2);
}

TEST_CASE("blow_up requires a common point and a fresh name") {
    CurveConfig cfg({{"A", -2}, {"B", -2}}, 1, 9);
    CHECK_THROWS(blow_up(cfg, {"A", "B"}, "F"));  // disjoint
    cfg.set_inter("A", "B", 1);
    CHECK_THROWS(blow_up(cfg, {"A", "B"}, "A"));  // collision
    CHECK_THROWS(blow_up(cfg, {"A", "missing"}, "F"));
}

TEST_CASE("triple points lose all pairwise intersections at once") {
    CurveConfig cfg({{"D2", -2}, {"D3", -2}, {"M", 0}}, 1, 9);
    cfg.set_inter("D2", "D3", 1);
    cfg.set_inter("M", "D2", 1);
    cfg.set_inter("M", "D3", 1);
    CurveConfig out = blow_up(cfg, {"D2", "D3", "M"}, "N");
    CHECK(out.inter("D2", "D3") == 0);
    CHECK(out.inter("M", "D2") == 0);
    CHECK(out.inter("M", "D3") == 0);
    CHECK(out.at("M").self_int == -1);
    for (const auto& other : {"D2", "D3", "M"}) CHECK(out.inter("N", other) == 1);
}

TEST_CASE("blow_down undoes the fiber contraction examples") {
    CurveConfig cfg({{"E", -1}, {"E1", -1}}, 0, 10);
    cfg.set_inter("E", "E1", 1);
    CurveConfig out = blow_down(cfg, "E");
    CHECK(out.at("E1").self_int == 0);
    CHECK(out.k_self() == 1);
    CHECK(out.rho() == 9);

    CurveConfig three({{"C", -2}, {"D", -1}, {"e", -1}}, 0, 10);
    three.set_inter("C", "e", 1);
    three.set_inter("D", "e", 1);
    CurveConfig after = blow_down(three, "e");
    CHECK(after.at("C").self_int == -1);
    CHECK(after.at("D").self_int == 0);
    CHECK(after.inter("C", "D") == 1);
}

TEST_CASE("blow_down requires a (-1)-curve") {
    CurveConfig cfg({{"A", -2}}, 1, 9);
    CHECK_THROWS(blow_down(cfg, "A"));
    CHECK_THROWS(blow_down(cfg, "missing"));
}

TEST_CASE("round-trip blow_down after blow_up is the identity") {
    int performed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CurveConfig cfg = random_config();
        // Pick a meeting pair if one exists.
        std::string a, b;
        for (const auto& c : cfg.curves()) {
            for (const auto& d : cfg.curves()) {
                if (c.name < d.name && cfg.inter(c.name, d.name) >= 1) {
                    a = c.name;
                    b = d.name;
                }
            }
        }
        if (a.empty()) continue;
        ++performed;
        CurveConfig up = blow_up(cfg, {a, b}, "Fresh");
        CHECK(up.rho() + up.k_self() == cfg.rho() + cfg.k_self());
        CurveConfig down = blow_down(up, "Fresh");
        CHECK(down == cfg);
    }
    CHECK(performed > 500);
}

TEST_CASE("pairings away from the centre are preserved") {
    for (int trial = 0; trial < 200; ++trial) {
        CurveConfig cfg = random_config();
        std::string a, b;
        for (const auto& c : cfg.curves())
            for (const auto& d : cfg.curves())
                if (c.name < d.name && cfg.inter(c.name, d.name) >= 1) {
                    a = c.name;
                    b = d.name;
                }
        if (a.empty()) continue;
        CurveConfig up = blow_up(cfg, {a, b}, "Fresh");
        for (const auto& c : cfg.curves()) {
            for (const auto& d : cfg.curves()) {
                if (c.name >= d.name) continue;
                bool touched = c.name == a || c.name == b || d.name == a || d.name == b;
                if (!touched) CHECK(up.inter(c.name, d.name) == cfg.inter(c.name, d.name));
            }
        }
    }
}

TEST_CASE("apply_script reports the failing step index") {
    CurveConfig cfg({{"A", -2}, {"B", -2}}, 1, 9);
    cfg.set_inter("A", "B", 1);
    std::vector<SurgeryStep> steps = {{{"A", "B"}, "N1"}, {{"A", "B"}, "N2"}};
    try {
        apply_script(cfg, steps);
        FAIL("expected a NotThroughPoint error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotThroughPoint);
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
    CHECK(apply_script(cfg, {}) == cfg);
}
