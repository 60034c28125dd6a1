#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superrep/scenario.hpp"

#include "support/fig3.hpp"
#include "support/generator.hpp"

#include <random>

using namespace superrep;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

Measure uniform(std::size_t n) {
    return Measure(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

Measure random_measure_with_zeros(testgen::Rng& rng, std::size_t n) {
    std::vector<Rational> w(n, Rational(0));
    Rational total = 0;
    for (auto& v : w) {
        v = Rational(testgen::rand_int(rng, 0, 4));
        total += v;
    }
    if (total == 0) {
        w[testgen::rand_index(rng, n)] = 1;
        total = 1;
    }
    for (auto& v : w) v /= total;
    return Measure(std::move(w));
}

}  // namespace

TEST_CASE("scenario space enforces positive probabilities summing to one") {
    CHECK_THROWS_AS(ScenarioSpace({"a", "b"}, {rat(1, 2), rat(2, 5)}), input_error);
    CHECK_THROWS_AS(ScenarioSpace({"a", "b"}, {rat(0), rat(1)}), input_error);
    CHECK_THROWS_AS(ScenarioSpace({"a", "b"}, {rat(-1, 2), rat(3, 2)}), input_error);
    CHECK_THROWS_AS(ScenarioSpace({"a", "a"}, {rat(1, 2), rat(1, 2)}), input_error);
    const ScenarioSpace s({"a", "b"}, {rat(1, 3), rat(2, 3)});
    CHECK(s.index_of("b") == 1);
    CHECK_THROWS_AS(s.index_of("zzz"), input_error);
}

TEST_CASE("partition invariants") {
    CHECK_THROWS_AS(Partition(3, {{0, 1}}), input_error);          // not covering
    CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), input_error);  // overlap
    CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), input_error);   // empty block
    CHECK_THROWS_AS(Partition(2, {{0, 5}}), input_error);          // out of range
}

TEST_CASE("refines on nested and crossing partitions") {
    const Partition trivial = Partition::trivial(3);
    const Partition discrete = Partition::discrete(3);
    const Partition ab_c(3, {{0, 1}, {2}});
    const Partition ac_b(3, {{0, 2}, {1}});
    CHECK(refines(trivial, discrete));
    CHECK(refines(trivial, ab_c));
    CHECK(refines(ab_c, discrete));
    CHECK(!refines(ab_c, ac_b));
    CHECK_THROWS_AS(refines(Partition::trivial(2), discrete), input_error);
}

TEST_CASE("price paths generate the seller partition of the fixture market") {
    const auto m = fig3::make_market({0, 1});
    const Filtration& g = m.seller_filtration;
    CHECK(g.at(0) == Partition::trivial(5));
    CHECK(g.at(1) == Partition(5, {{0, 3}, {1}, {2, 4}}));
    CHECK(g.at(2) == Partition::discrete(5));
}

TEST_CASE("joint hidden factors separate w1 at t=1") {
    // One factor takes 4 on {w1,w2} and 2 elsewhere at t=1; the other takes 3
    // on {w1,w3,w5} and 5 on {w2,w4}; their joint level sets isolate w1.
    Process x;
    x.horizon = 2;
    x.values = {{3, 3, 3, 3, 3}, {4, 4, 2, 2, 2}, {1, 4, 4, 4, 1}};
    Process xi;
    xi.horizon = 2;
    xi.values = {{3, 3, 3, 3, 3}, {3, 5, 3, 5, 3}, {2, 5, 3, 4, 3}};
    const Filtration f = filtration_from_processes(5, {x, xi});
    CHECK(f.at(1) == Partition(5, {{0}, {1}, {2, 4}, {3}}));
    CHECK(f.at(2) == Partition::discrete(5));
}

TEST_CASE("constant process cannot generate a filtration") {
    Process c;
    c.horizon = 2;
    c.values.assign(3, std::vector<Rational>(4, rat(7)));
    CHECK_THROWS_WITH_AS(filtration_from_processes(4, {c}),
                         doctest::Contains("terminal partition is not discrete"), input_error);
}

TEST_CASE("filtration invariants are enforced") {
    CHECK_THROWS_AS(Filtration({Partition::discrete(3), Partition::discrete(3)}), input_error);
    CHECK_THROWS_AS(Filtration({Partition::trivial(3), Partition::trivial(3)}), input_error);
    CHECK_THROWS_AS(Filtration({Partition::trivial(3), Partition(3, {{0, 1}, {2}}),
                                Partition(3, {{0}, {1, 2}})}),
                    input_error);  // t=2 does not refine t=1
}

TEST_CASE("conditional expectation block averages") {
    const Partition p(3, {{0, 1}, {2}});
    const auto ce = conditional_expectation({rat(1), rat(2), rat(3)}, p, uniform(3));
    CHECK(ce == std::vector<Rational>{rat(3, 2), rat(3, 2), rat(3)});
}

TEST_CASE("zero-mass atoms evaluate to exactly zero") {
    const Partition p(3, {{0, 1}, {2}});
    const Measure q({rat(1, 2), rat(1, 2), rat(0)});
    const auto ce = conditional_expectation({rat(9), rat(1), rat(123)}, p, q);
    CHECK(ce[2] == 0);
    CHECK(ce[0] == rat(5));
}

TEST_CASE("trivial partition gives the total expectation everywhere") {
    const Measure q({rat(1, 4), rat(1, 4), rat(1, 2)});
    const auto ce = conditional_expectation({rat(4), rat(8), rat(1)}, Partition::trivial(3), q);
    const Rational expected = rat(4) / 4 + rat(8) / 4 + rat(1) / 2;
    for (const auto& v : ce) CHECK(v == expected);
}

TEST_CASE("atom lookup") {
    const auto m = fig3::make_market({});
    CHECK(m.seller_filtration.at(1).block_of(3) == 0);  // w4 sits with w1
    CHECK(m.seller_filtration.at(1).block(0) == std::vector<std::size_t>{0, 3});
    CHECK(Partition::trivial(4).block_of(2) == 0);
    CHECK(Partition::discrete(4).block(1) == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(Partition::trivial(4).block_of(9), input_error);
}

TEST_CASE("conditional expectation properties on random triples") {
    testgen::Rng rng(4242);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n = 2 + testgen::rand_index(rng, 6);
        const Partition fine = testgen::random_coarsening(rng, Partition::discrete(n),
                                                          testgen::rand_index(rng, n));
        const Partition coarse =
            testgen::random_coarsening(rng, fine, 1 + testgen::rand_index(rng, n));
        const Measure q = random_measure_with_zeros(rng, n);
        std::vector<Rational> x(n), y(n);
        for (auto& v : x) {
            v = Rational(testgen::rand_int(rng, -6, 6), testgen::rand_int(rng, 1, 3));
        }
        for (auto& v : y) {
            v = Rational(testgen::rand_int(rng, -6, 6), testgen::rand_int(rng, 1, 3));
        }

        // tower
        const auto inner = conditional_expectation(x, fine, q);
        const auto towered = conditional_expectation(inner, coarse, q);
        const auto direct = conditional_expectation(x, coarse, q);
        CHECK(towered == direct);

        // linearity
        const Rational a(testgen::rand_int(rng, -3, 3), testgen::rand_int(rng, 1, 2));
        const Rational b(testgen::rand_int(rng, -3, 3), testgen::rand_int(rng, 1, 2));
        std::vector<Rational> combo(n);
        for (std::size_t w = 0; w < n; ++w) combo[w] = a * x[w] + b * y[w];
        const auto ce_combo = conditional_expectation(combo, fine, q);
        const auto ce_x = conditional_expectation(x, fine, q);
        const auto ce_y = conditional_expectation(y, fine, q);
        for (std::size_t w = 0; w < n; ++w) CHECK(ce_combo[w] == a * ce_x[w] + b * ce_y[w]);

        // total expectation
        Rational lhs = 0, rhs = 0;
        for (std::size_t w = 0; w < n; ++w) {
            lhs += q.weight(w) * ce_x[w];
            rhs += q.weight(w) * x[w];
        }
        CHECK(lhs == rhs);

        // discrete identity on q-positive scenarios
        const auto ce_disc = conditional_expectation(x, Partition::discrete(n), q);
        for (std::size_t w = 0; w < n; ++w) {
            if (q.weight(w) > 0) {
                CHECK(ce_disc[w] == x[w]);
            } else {
                CHECK(ce_disc[w] == 0);
            }
        }
    }
}

TEST_CASE("measure invariants") {
    CHECK_THROWS_AS(Measure({rat(1, 2), rat(1, 3)}), input_error);
    CHECK_THROWS_AS(Measure({rat(3, 2), rat(-1, 2)}), input_error);
}

TEST_CASE("generated filtrations refine over time and stay coarser for the seller") {
    testgen::Rng rng(99);
    for (int iter = 0; iter < 25; ++iter) {
        const Market m = testgen::random_market(rng);
        for (std::size_t t = 0; t < m.horizon; ++t) {
            CHECK(refines(m.full_filtration.at(t), m.full_filtration.at(t + 1)));
            CHECK(refines(m.seller_filtration.at(t), m.seller_filtration.at(t + 1)));
            CHECK(refines(m.seller_filtration.at(t), m.full_filtration.at(t)));
        }
    }
}
