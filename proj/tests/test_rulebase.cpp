#include "builders.hpp"
#include "nfs/errors.hpp"
#include "nfs/rulebase.hpp"
#include "nfs/serialization.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace nfs;
using namespace testing;
using Catch::Approx;

namespace {

// Rule whose premise fires at exactly `g` everywhere near x = 0 (Gaussian with
// core shifted so that its value at 0 is g).
Premise firing_at_origin(double g) {
    const double offset = std::sqrt(-2.0 * std::log(g));  // sigma = 1
    return gaussian_premise({offset}, {1.0});
}

}  // namespace

TEST_CASE("firing strength", "[rulebase]") {
    const double x[] = {7.0, 7.0};
    CHECK(firing_strength(Premise{}, x) == 1.0);
    CHECK(firing_strength(gaussian_premise({5}, {2}), std::span(x, 1)) == Approx(std::exp(-0.5)).margin(1e-15));
    const double x5[] = {5.0};
    CHECK(firing_strength(gaussian_premise({5}, {2}), x5) == 1.0);
    CHECK(firing_strength(gaussian_premise({5, 5}, {2, 2}), x) == Approx(std::exp(-1.0)).margin(1e-15));
    CHECK(firing_strength(gaussian_premise({5, 5}, {2, 2}), x) == Approx(0.36788).margin(1e-5));
}

TEST_CASE("MA inference", "[rulebase]") {
    const double x[] = {0.0};
    const auto names = input_names(1);
    {
        const RuleBase rb(SystemKind::Mamdani, names, "y", {ma_rule(Premise{}, 0, 2, 4)});
        CHECK(infer_ma(rb, x).value == Approx(2.0));
    }
    {
        const RuleBase rb(SystemKind::Mamdani, names, "y", {ma_rule(Premise{}, -1, 0, 1), ma_rule(Premise{}, 9, 10, 11)});
        CHECK(infer_ma(rb, x).value == Approx(5.0));
    }
    {
        const RuleBase rb(SystemKind::Mamdani, names, "y",
                          {ma_rule(firing_at_origin(0.75), -1, 0, 1), ma_rule(firing_at_origin(0.25), 7, 8, 9)});
        CHECK(infer_ma(rb, x).value == Approx(2.0).margin(1e-12));
    }
    // Asymmetric triangle: centroid is (a + b + c) / 3.
    const RuleBase skew(SystemKind::Mamdani, names, "y", {ma_rule(Premise{}, 0, 0, 3)});
    CHECK(infer(skew, x).value == Approx(1.0));
}

TEST_CASE("TSK inference", "[rulebase]") {
    const auto names = input_names(1);
    const double x3[] = {3.0};
    const RuleBase one(SystemKind::Tsk, names, "y", {tsk_rule(Premise{}, {2.0}, 1.0)});
    CHECK(infer_tsk(one, x3).value == 7.0);

    const RuleBase same(SystemKind::Tsk, names, "y",
                        {tsk_rule(gaussian_premise({0}, {1}), {1.0}, 2.0), tsk_rule(gaussian_premise({9}, {3}), {1.0}, 2.0)});
    CHECK(infer_tsk(same, x3).value == Approx(5.0).margin(1e-14));

    const double x0[] = {0.0};
    const RuleBase half(SystemKind::Tsk, names, "y",
                        {tsk_rule(firing_at_origin(0.5), {0.0}, 4.0), tsk_rule(firing_at_origin(0.5), {0.0}, 8.0)});
    CHECK(infer_tsk(half, x0).value == Approx(6.0).margin(1e-12));
}

TEST_CASE("ANNBFIS inference", "[rulebase]") {
    const auto names = input_names(1);
    const double x0[] = {0.0};
    const RuleBase one(SystemKind::Annbfis, names, "y", {annbfis_rule(Premise{}, 1.0, {0.0}, 3.0)});
    CHECK(infer_annbfis(one, x0).value == 3.0);
    const RuleBase two(SystemKind::Annbfis, names, "y",
                       {annbfis_rule(Premise{}, 1.0, {0.0}, 1.0), annbfis_rule(Premise{}, 2.0, {0.0}, 5.0)});
    CHECK(infer_annbfis(two, x0).value == Approx(3.0));
    const RuleBase weighted(SystemKind::Annbfis, names, "y",
                            {annbfis_rule(firing_at_origin(0.2), 1.0, {0.0}, 0.0),
                             annbfis_rule(firing_at_origin(0.8), 1.0, {0.0}, 10.0)});
    CHECK(infer_annbfis(weighted, x0).value == Approx(8.0).margin(1e-12));
}

TEST_CASE("all-zero firing falls back to the unweighted mean", "[rulebase]") {
    const auto names = input_names(1);
    const double far[] = {1e6};
    const RuleBase rb(SystemKind::Tsk, names, "y",
                      {tsk_rule(gaussian_premise({0}, {1}), {0.0}, 2.0), tsk_rule(gaussian_premise({1}, {1}), {0.0}, 6.0)});
    const auto r = infer(rb, far);
    CHECK(r.fallback);
    CHECK(r.value == 4.0);
    const double near[] = {0.5};
    CHECK_FALSE(infer(rb, near).fallback);

    const double w[] = {0.0, 0.0}, o[] = {1.0, 3.0};
    CHECK(weighted_mean(w, o).fallback);
    CHECK(weighted_mean(w, o).value == 2.0);
}

TEST_CASE("inference rejects mismatched inputs and kinds", "[rulebase]") {
    oracle::Random rng(31);
    const auto rb = random_tsk(rng, 2, 2);
    const double one[] = {1.0};
    CHECK_THROWS_AS(infer(rb, one), std::invalid_argument);
    const double two[] = {1.0, 2.0};
    CHECK_THROWS_AS(infer_ma(rb, two), std::invalid_argument);
    CHECK_THROWS_AS(infer_annbfis(rb, two), std::invalid_argument);
}

TEST_CASE("rule base validation", "[rulebase]") {
    const auto names = input_names(2);
    CHECK_THROWS_AS(RuleBase(SystemKind::Tsk, names, "y", {tsk_rule(Premise{}, {1.0}, 0.0)}), std::invalid_argument);
    CHECK_THROWS_AS(RuleBase(SystemKind::Tsk, names, "y", {ma_rule(Premise{}, 0, 1, 2)}), std::invalid_argument);
    Premise dup;
    dup.clauses = {{0, MembershipFunction::gaussian(0, 1)}, {0, MembershipFunction::gaussian(1, 1)}};
    CHECK_THROWS_AS(RuleBase(SystemKind::Tsk, names, "y", {tsk_rule(dup, {1.0, 1.0}, 0.0)}), std::invalid_argument);
    Premise out_of_range;
    out_of_range.clauses = {{2, MembershipFunction::gaussian(0, 1)}};
    CHECK_THROWS_AS(RuleBase(SystemKind::Tsk, names, "y", {tsk_rule(out_of_range, {1.0, 1.0}, 0.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RuleBase(SystemKind::Annbfis, names, "y", {annbfis_rule(Premise{}, 0.0, {1.0, 1.0}, 0.0)}),
                    std::invalid_argument);
    CHECK(parse_system_kind("tsk") == SystemKind::Tsk);
    CHECK(parse_system_kind("Ma") == SystemKind::Mamdani);
    CHECK_FALSE(parse_system_kind("mamdami").has_value());
}

TEST_CASE("inference stays inside the rule outputs", "[rulebase][property]") {
    oracle::Random rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t width = rng.integer(1, 3);
        const auto tsk = random_tsk(rng, rng.integer(1, 6), width);
        const auto ma = random_ma(rng, rng.integer(1, 6), width);
        std::vector<double> x(width);
        for (double& v : x) v = rng.uniform(-2, 12);

        std::vector<double> outs;
        for (const auto& r : tsk.rules()) outs.push_back(rule_output(r.consequence, x));
        const double y = infer(tsk, x).value;
        REQUIRE(y >= *std::min_element(outs.begin(), outs.end()) - 1e-12);
        REQUIRE(y <= *std::max_element(outs.begin(), outs.end()) + 1e-12);

        double lo = INFINITY, hi = -INFINITY;
        for (const auto& r : ma.rules()) {
            const auto& t = std::get<MamdaniConsequence>(r.consequence).triangle;
            lo = std::min(lo, (t.a + t.b + t.c) / 3);
            hi = std::max(hi, (t.a + t.b + t.c) / 3);
        }
        const double z = infer(ma, x).value;
        REQUIRE(z >= lo - 1e-12);
        REQUIRE(z <= hi + 1e-12);
    }
}

TEST_CASE("common scaling of firing strengths leaves the output unchanged", "[rulebase][property]") {
    oracle::Random rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.integer(1, 8);
        std::vector<double> w(n), o(n), scaled(n);
        for (std::size_t r = 0; r < n; ++r) {
            w[r] = rng.uniform(0.01, 1);
            o[r] = rng.uniform(-10, 10);
        }
        const double k = rng.uniform(1e-3, 1e3);
        for (std::size_t r = 0; r < n; ++r) scaled[r] = k * w[r];
        REQUIRE(weighted_mean(scaled, o).value == Approx(weighted_mean(w, o).value).margin(1e-12));
    }
}

TEST_CASE("a duplicated rule equals that rule with doubled weight", "[rulebase][property]") {
    oracle::Random rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t width = rng.integer(1, 3);
        const auto rb = rng.integer(0, 1) ? random_tsk(rng, rng.integer(1, 5), width) : random_ma(rng, rng.integer(1, 5), width);
        const std::size_t k = rng.integer(0, static_cast<int>(rb.rules().size()) - 1);
        auto rules = rb.rules();
        rules.push_back(rules[k]);
        const auto doubled = rb.with_rules(rules);

        std::vector<double> x(width);
        for (double& v : x) v = rng.uniform(0, 10);
        std::vector<double> w, o;
        for (const auto& r : rb.rules()) {
            w.push_back(firing_strength(r.premise, x));
            o.push_back(rule_output(r.consequence, x));
        }
        w[k] *= 2;
        REQUIRE(std::abs(infer(doubled, x).value - weighted_mean(w, o).value) <= 1e-12);
    }
}

TEST_CASE("rule base JSON round trip", "[rulebase][json]") {
    oracle::Random rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        for (const auto& rb : {random_tsk(rng, 3, 2), random_ma(rng, 3, 2), random_annbfis(rng, 3, 2)}) {
            REQUIRE(rulebase_from_json(to_json(rb)) == rb);
            REQUIRE(rulebase_from_json(nlohmann::json::parse(to_json(rb).dump())) == rb);
        }
    }
    const auto fixture = load_rulebase(std::filesystem::path(NFS_FIXTURE_DIR) / "handcrafted_triangular.json");
    CHECK(rulebase_from_json(to_json(fixture)) == fixture);
    CHECK(fixture.kind() == SystemKind::Mamdani);
    CHECK(fixture.rules().size() == 4);

    const auto path = std::filesystem::temp_directory_path() / "nfs_test_rb.json";
    save_rulebase(fixture, path);
    CHECK(load_rulebase(path) == fixture);
    std::filesystem::remove(path);
}

TEST_CASE("rule base JSON errors name the path", "[rulebase][json]") {
    oracle::Random rng(36);
    auto j = to_json(random_tsk(rng, 2, 2));
    auto expect_path = [](const nlohmann::json& doc, const std::string& path) {
        try {
            rulebase_from_json(doc);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(e.path() == path);
        }
    };
    {
        auto bad = j;
        bad["kind"] = "FOO";
        expect_path(bad, "/kind");
    }
    {
        auto bad = j;
        bad["rules"][0]["premise"][1]["mf"]["kind"] = "bell";
        expect_path(bad, "/rules/0/premise/1/mf/kind");
    }
    {
        auto bad = j;
        bad["rules"][1]["consequence"].erase("weights");
        expect_path(bad, "/rules/1/consequence/weights");
    }
    {
        auto bad = j;
        bad["rules"][0]["consequence"]["weights"] = {1.0};
        CHECK_THROWS_AS(rulebase_from_json(bad), SchemaError);
    }
    CHECK_THROWS_AS(rulebase_from_json(nlohmann::json::array()), SchemaError);
}
