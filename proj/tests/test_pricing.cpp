#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superrep/certificates.hpp"
#include "superrep/pricing.hpp"
#include "superrep/render.hpp"

#include "support/fig3.hpp"
#include "support/generator.hpp"
#include "support/oracle.hpp"

using namespace superrep;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

Market binomial(std::set<std::size_t> restricted) {
    ScenarioSpace space({"d", "u"}, {rat(1, 2), rat(1, 2)});
    Process bond;
    bond.horizon = 1;
    bond.values.assign(2, std::vector<Rational>(2, rat(1)));
    Process stock;
    stock.horizon = 1;
    stock.values = {{rat(2), rat(2)}, {rat(1), rat(3)}};
    Filtration f({Partition::trivial(2), Partition::discrete(2)});
    return Market{std::move(space), 1,
                  {"bond", "stock"},
                  {std::move(bond), std::move(stock)},
                  f,
                  f,
                  std::move(restricted)};
}

std::size_t count_nonnegative(const LinearProgram& lp) {
    std::size_t c = 0;
    for (const auto& v : lp.variables) c += v.nonnegative ? 1 : 0;
    return c;
}

std::size_t count_relation(const LinearProgram& lp, Relation rel) {
    std::size_t c = 0;
    for (const auto& r : lp.rows) c += r.relation == rel ? 1 : 0;
    return c;
}

Rational price_value(const Market& m, const Claim& b, PriceMethod method) {
    const PriceResult r = price(m, b, method);
    REQUIRE(r.outcome.status == LpStatus::optimal);
    return *r.outcome.value;
}

}  // namespace

TEST_CASE("fixture primal has the documented shape") {
    const Market m = fig3::make_market({0, 1});
    const PrimalBuild build = build_primal_lp(m, fig3::call_claim());
    CHECK(build.lp.variables.size() == 9);  // v, 2 at t=0, 6 at t=1
    CHECK(build.lp.rows.size() == 10);      // 5 + 3 + budget + initial cost
    CHECK(count_relation(build.lp, Relation::greater_equal) == 6);
    CHECK(count_relation(build.lp, Relation::equal) == 3);
    CHECK(count_relation(build.lp, Relation::less_equal) == 1);
    CHECK(count_nonnegative(build.lp) == 8);  // every holding, v free
    CHECK(build.lp.variables[0].name == "v");
}

TEST_CASE("degenerate horizon drops the self-financing rows") {
    const Market m = binomial({});
    const PrimalBuild build = build_primal_lp(m, Claim({rat(0), rat(1)}));
    CHECK(build.lp.variables.size() == 3);  // v, H0(0), H1(0)
    CHECK(build.lp.rows.size() == 4);       // 2 superreplication + budget + initial cost
    CHECK(count_relation(build.lp, Relation::equal) == 0);
    CHECK(count_nonnegative(build.lp) == 0);
}

TEST_CASE("zero claim prices at zero") {
    const Market m = binomial({});
    CHECK(price_value(m, Claim({rat(0), rat(0)}), PriceMethod::primal) == 0);
}

TEST_CASE("fixture dual has the documented shape and relation pattern") {
    const Market m = fig3::make_market({0, 1});
    const DualBuild build = build_dual_lp(m, fig3::call_claim());
    CHECK(build.lp.variables.size() == 10);  // y1 and y2_1 per scenario
    CHECK(build.lp.rows.size() == 8);        // 2 assets x (1 atom at t=0 + 3 atoms at t=1)
    CHECK(count_relation(build.lp, Relation::less_equal) == 8);
    CHECK(count_nonnegative(build.lp) == 5);  // y1 only

    const Market m1 = fig3::make_market({1});
    const DualBuild b1 = build_dual_lp(m1, fig3::call_claim());
    CHECK(b1.lp.rows.size() == 8);
    CHECK(count_relation(b1.lp, Relation::equal) == 4);  // the bond rows flip
    CHECK(count_relation(b1.lp, Relation::less_equal) == 4);
}

TEST_CASE("degenerate horizon has no y2 block") {
    const Market m = binomial({});
    const DualBuild build = build_dual_lp(m, Claim({rat(0), rat(1)}));
    CHECK(build.lp.variables.size() == 2);
    for (const auto& v : build.lp.variables) CHECK(v.name.substr(0, 2) == "y1");
    CHECK(build.lp.rows.size() == 2);  // one per asset at the trivial atom
}

TEST_CASE("fixture measure polytope rows match the tree data") {
    const Market m = fig3::make_market({0, 1});
    const MeasurePolytope poly = build_measure_polytope(m);
    CHECK(poly.description.variables ==
          std::vector<std::string>{"q1", "q2", "q3", "q4", "q5"});
    // normalization + 5 nonnegativity + stock t=0 + 3 stock atoms at t=1;
    // all bond rows reduce to 0 <= 0 and are dropped
    REQUIRE(poly.description.rows.size() == 10);
    REQUIRE(poly.tags.size() == 10);
    CHECK(poly.tags[0].kind == MeasureRowKind::normalization);
    for (int i = 1; i <= 5; ++i) {
        CHECK(poly.tags[static_cast<std::size_t>(i)].kind == MeasureRowKind::nonnegativity);
    }
    for (std::size_t i = 6; i < 10; ++i) {
        CHECK(poly.tags[i].kind == MeasureRowKind::price);
        CHECK(poly.tags[i].asset == 1);
    }
    std::vector<std::string> rendered;
    for (std::size_t i = 6; i < 10; ++i) {
        rendered.push_back(format_poly_row(poly.description, i));
    }
    CHECK(rendered[0] == "q1 - q2 + 3*q3 + q4 + 3*q5 <= 0");  // t=0
    std::sort(rendered.begin() + 1, rendered.end());
    CHECK(rendered[1] == "-2*q3 - 5*q5 <= 0");  // atom {w3,w5}
    CHECK(rendered[2] == "-4*q1 + q4 <= 0");    // atom {w1,w4}
    CHECK(rendered[3] == "4*q2 <= 0");          // atom {w2}: 9 q2 <= 5 q2
}

TEST_CASE("projecting the fixture set onto q3 exposes the empty interval") {
    // the externally reported bound for this coordinate is 6/21; the set
    // recomputed from the tree data admits no q3 at all
    const MeasurePolytope poly = build_measure_polytope(fig3::make_market({0, 1}));
    const HPolytope proj =
        fourier_motzkin_project(poly.description, {"q1", "q2", "q4", "q5"});
    REQUIRE(proj.variables == std::vector<std::string>{"q3"});
    std::vector<std::string> rendered;
    for (std::size_t i = 0; i < proj.rows.size(); ++i) {
        rendered.push_back(format_poly_row(proj, i));
    }
    std::sort(rendered.begin(), rendered.end());
    CHECK(rendered == std::vector<std::string>{"-q3 <= 0", "q3 <= -5/6"});
    CHECK(!polytope_feasible(proj));
    CHECK(!polytope_feasible(poly.description));
}

TEST_CASE("unrestricted assets give equality rows") {
    const Market m = fig3::make_market({});
    const MeasurePolytope poly = build_measure_polytope(m);
    for (std::size_t i = 0; i < poly.tags.size(); ++i) {
        if (poly.tags[i].kind == MeasureRowKind::price) {
            CHECK(poly.description.rows[i].relation == PolyRelation::equal);
        }
    }
}

TEST_CASE("deterministic prices leave only the simplex") {
    Market m = binomial({});
    m.prices[1].values[1] = {rat(2), rat(2)};  // stock frozen at 2
    const MeasurePolytope poly = build_measure_polytope(m);
    CHECK(poly.description.rows.size() == 3);  // normalization + 2 nonnegativity
}

TEST_CASE("cash replication prices at face value on an arbitrage-free market") {
    const Market m = binomial({});
    const Claim cash(std::vector<Rational>(2, rat(7, 3)));
    for (PriceMethod method :
         {PriceMethod::primal, PriceMethod::dual_lp, PriceMethod::measures}) {
        CHECK(price_value(m, cash, method) == rat(7, 3));
    }
}

TEST_CASE("binomial digital claim prices at one half by every route") {
    const Market m = binomial({});
    const Claim digital({rat(0), rat(1)});
    for (PriceMethod method :
         {PriceMethod::primal, PriceMethod::dual_lp, PriceMethod::measures}) {
        CHECK(price_value(m, digital, method) == rat(1, 2));
    }
}

TEST_CASE("fixture prices match the pre-registered enumeration oracle values") {
    const Market m = fig3::make_market({0, 1});
    // frozen before the build from exhaustive basic-solution enumeration of
    // the 9-variable primal; recomputed here by the independent oracle
    const Rational expected_unit(6, 7);
    const Rational expected_call(41, 24);

    const PrimalBuild unit = build_primal_lp(m, fig3::unit_claim());
    const oracle::Result unit_ref = oracle::solve(unit.lp);
    REQUIRE(unit_ref.status == LpStatus::optimal);
    CHECK(*unit_ref.value == expected_unit);
    CHECK(price_value(m, fig3::unit_claim(), PriceMethod::primal) == expected_unit);
    CHECK(price_value(m, fig3::unit_claim(), PriceMethod::dual_lp) == expected_unit);

    const PrimalBuild call = build_primal_lp(m, fig3::call_claim());
    const oracle::Result call_ref = oracle::solve(call.lp);
    REQUIRE(call_ref.status == LpStatus::optimal);
    CHECK(*call_ref.value == expected_call);
    CHECK(price_value(m, fig3::call_claim(), PriceMethod::primal) == expected_call);
    CHECK(price_value(m, fig3::call_claim(), PriceMethod::dual_lp) == expected_call);

    // with borrowing banned the optimal strategy undercuts the bond: the
    // recomputed measure set is empty, so the measure route has no value
    CHECK(price(m, fig3::unit_claim(), PriceMethod::measures).outcome.status ==
          LpStatus::infeasible);
}

TEST_CASE("optimal primal strategies pass the audit at their own price") {
    const Market m = fig3::make_market({0, 1});
    for (const Claim& b : {fig3::unit_claim(), fig3::call_claim()}) {
        const PriceResult r = price(m, b, PriceMethod::primal);
        REQUIRE(r.outcome.status == LpStatus::optimal);
        REQUIRE(r.strategy);
        CHECK(strategy_audit(m, *r.strategy, b, *r.outcome.value).all_passed());
    }
}

TEST_CASE("uniform density maps to the uniform measure") {
    const Market m = fig3::make_market({0, 1});
    DualSolution d;
    d.y1.assign(5, rat(1));
    d.y2.push_back(std::vector<Rational>(5, rat(1)));
    const Measure q = measure_from_dual(m, d);
    for (std::size_t w = 0; w < 5; ++w) CHECK(q.weight(w) == rat(1, 5));
}

TEST_CASE("unnormalized mass rescales to a point mass") {
    const Market m = fig3::make_market({0, 1});
    DualSolution d;
    d.y1 = {rat(2), rat(0), rat(0), rat(0), rat(0)};
    d.y2.push_back(std::vector<Rational>(5, rat(0)));
    const Measure q = measure_from_dual(m, d);
    CHECK(q.weight(0) == 1);

    d.y1.assign(5, rat(0));
    CHECK_THROWS_AS(measure_from_dual(m, d), input_error);
}

TEST_CASE("density of the reference measure is identically one") {
    const Market m = fig3::make_market({0, 1});
    const DualSolution d = dual_from_measure(m, Measure(m.space.probabilities()));
    for (const auto& v : d.y1) CHECK(v == 1);
    REQUIRE(d.y2.size() == 1);
    for (const auto& v : d.y2[0]) CHECK(v == 1);
}

TEST_CASE("point mass density concentrates on the isolating atom") {
    const Market m = fig3::make_market({0, 1});
    const DualSolution d =
        dual_from_measure(m, Measure({rat(1), rat(0), rat(0), rat(0), rat(0)}));
    CHECK(d.y1 == std::vector<Rational>{rat(5), rat(0), rat(0), rat(0), rat(0)});
    // F_1 isolates w1, so the conditional density is 5 there and 0 elsewhere
    CHECK(d.y2[0] == std::vector<Rational>{rat(5), rat(0), rat(0), rat(0), rat(0)});
}

TEST_CASE("the two constructive maps are mutually inverse on measures") {
    const Market m = fig3::make_market({0, 1});
    testgen::Rng rng(5150);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<Rational> w(5);
        Rational total = 0;
        for (auto& v : w) {
            v = Rational(testgen::rand_int(rng, 0, 5));
            total += v;
        }
        if (total == 0) continue;
        for (auto& v : w) v /= total;
        const Measure q(w);
        CHECK(measure_from_dual(m, dual_from_measure(m, q)) == q);
    }
}

TEST_CASE("membership on the binomial spot cases") {
    CHECK(check_membership(binomial({}), Measure({rat(1, 2), rat(1, 2)})).member());
    CHECK(check_membership(binomial({1}), Measure({rat(1), rat(0)})).member());
    CHECK(!check_membership(binomial({}), Measure({rat(1), rat(0)})).member());
}

TEST_CASE("any measure charging the cheap-then-rising atom is rejected") {
    const Market m = fig3::make_market({0, 1});
    const MembershipReport rep =
        check_membership(m, Measure({rat(0), rat(1), rat(0), rat(0), rat(0)}));
    CHECK(!rep.member());
    bool found = false;
    for (const auto& v : rep.violations) {
        if (v.t == 1 && v.k == 1 && v.asset == 1) found = true;
    }
    CHECK(found);
}

TEST_CASE("full report on the fixture market prices with zero gap") {
    const Market m = fig3::make_market({0, 1});
    const auto reports = full_report(
        m, {{"unit", fig3::unit_claim()}, {"call", fig3::call_claim()}});
    REQUIRE(reports.size() == 2);
    for (const auto& rep : reports) {
        CHECK(!rep.arbitrage_detected);
        REQUIRE(rep.gap_primal_dual);
        CHECK(*rep.gap_primal_dual == 0);
        CHECK(*rep.primal_equals_dual);
        CHECK(*rep.strategy_audit_ok);
        CHECK(*rep.primal_certificate_ok);
        CHECK(*rep.dual_certificate_ok);
        CHECK(*rep.measure_certificate_ok);
        CHECK(rep.measure_lp->outcome.status == LpStatus::infeasible);
    }
}

TEST_CASE("full report flags arbitrage instead of pricing") {
    const Market m = fig3::make_market({});
    const auto reports = full_report(m, {{"call", fig3::call_claim()}});
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].arbitrage_detected);
    CHECK(!reports[0].primal);
}

TEST_CASE("empty claim list gives an empty report") {
    CHECK(full_report(fig3::make_market({0, 1}), {}).empty());
}

TEST_CASE("unrestricted asset claims price at their initial quote") {
    const Market m = binomial({});
    const Claim stock_claim({rat(1), rat(3)});  // the stock's terminal values
    CHECK(price_value(m, stock_claim, PriceMethod::primal) == rat(2));
    CHECK(price_value(m, stock_claim, PriceMethod::measures) == rat(2));
}

TEST_CASE("generated instances: duality, the measure route and the maps agree") {
    testgen::Rng rng(271828);
    int bond_free = 0;
    for (int iter = 0; iter < 25; ++iter) {
        const Market m = testgen::random_market(rng);
        const Claim b = testgen::random_claim(rng, m.space.size());
        CAPTURE(iter);

        const PriceResult pr = price(m, b, PriceMethod::primal);
        const PriceResult du = price(m, b, PriceMethod::dual_lp);
        REQUIRE(pr.outcome.status == LpStatus::optimal);
        REQUIRE(du.outcome.status == LpStatus::optimal);
        CHECK(*pr.outcome.value == *du.outcome.value);

        if (m.short_restricted.count(0)) continue;
        ++bond_free;
        const PriceResult me = price(m, b, PriceMethod::measures);
        REQUIRE(me.outcome.status == LpStatus::optimal);
        CHECK(*me.outcome.value == *du.outcome.value);

        const Measure q = measure_from_dual(m, *du.dual);
        CHECK(check_membership(m, q).member());
        Rational eq = 0;
        for (std::size_t w = 0; w < q.size(); ++w) eq += q.weight(w) * b[w];
        CHECK(eq == *du.outcome.value);

        const DualSolution d = dual_from_measure(m, *me.measure);
        const DualBuild db = build_dual_lp(m, b);
        CHECK(point_feasible(db.lp, dual_vector(m, d)));
        Rational obj = 0;
        for (std::size_t w = 0; w < m.space.size(); ++w) {
            obj += m.space.probability(w) * d.y1[w] * b[w];
        }
        CHECK(obj == *me.outcome.value);
    }
    CHECK(bond_free > 0);
}
