#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "abst/groebner.hpp"
#include "abst/pbasis.hpp"
#include "support/data.hpp"
#include "support/oracles.hpp"

using namespace abst;

namespace {

LatticeBinomial lb(std::vector<long> v) {
    std::vector<Int> w(v.begin(), v.end());
    return LatticeBinomial(std::move(w));
}

ExponentVector ev(std::vector<long> e) {
    std::vector<Int> v(e.begin(), e.end());
    return ExponentVector(std::move(v));
}

std::set<std::vector<Int>> element_set(const GroebnerBasis& g) {
    std::set<std::vector<Int>> s;
    for (const auto& b : g.elements) s.insert(b.vec());
    return s;
}

GroebnerBasis gb_of(const Presentation& pres) {
    return buchberger_reduced(relations_to_binomials(pres),
                              TermOrder::identity(pres.generator_count()), {});
}

}  // namespace

TEST_CASE("reduced basis of the order-3 group ring example") {
    GroebnerBasis g = gb_of(abst::testing::load("ex52.json"));
    std::set<std::vector<Int>> expected;
    for (auto v : {std::vector<long>{27, 0, 0, 0, 0},
                   {0, 9, 0, 0, 0},
                   {-3, -3, 1, 0, 0},
                   {0, -3, 0, 1, 0},
                   {-9, 0, 0, 0, 1}})
        expected.insert(lb(v).vec());
    CHECK(element_set(g) == expected);
}

TEST_CASE("a single binomial is its own reduced basis") {
    TermOrder id1 = TermOrder::identity(1);
    std::vector<LatticeBinomial> in{lb({15})};
    GroebnerBasis g = buchberger_reduced(in, id1, {});
    REQUIRE(g.elements.size() == 1);
    CHECK(g.elements[0] == lb({15}));
}

TEST_CASE("reduced basis of the rank-8 example") {
    GroebnerBasis g = gb_of(abst::testing::load("paper_sec4.json"));
    std::set<std::vector<Int>> expected;
    for (auto v : {std::vector<long>{25, 0, 0, 0, 0, 0, 0, 0},
                   {0, 25, 0, 0, 0, 0, 0, 0},
                   {0, 0, 25, 0, 0, 0, 0, 0},
                   {0, 0, 0, 5, 0, 0, 0, 0},
                   {0, 0, 0, 0, 5, 0, 0, 0},
                   {0, -20, -15, 0, 0, 1, 0, 0},
                   {0, 0, -20, 0, 0, 0, 1, 0},
                   {-5, -10, -10, 0, -1, 0, 0, 1}})
        expected.insert(lb(v).vec());
    CHECK(element_set(g) == expected);
}

TEST_CASE("normal forms against the order-3 basis") {
    GroebnerBasis g = gb_of(abst::testing::load("ex52.json"));
    CHECK(normal_form_monomial(ev({0, 0, 0, 0, 1}), g) == ev({9, 0, 0, 0, 0}));
    CHECK(normal_form_monomial(ev({27, 0, 0, 0, 0}), g) == ev({0, 0, 0, 0, 0}));
    CHECK(normal_form_monomial(ev({0, 0, 0, 0, 0}), g) == ev({0, 0, 0, 0, 0}));
}

TEST_CASE("membership by reduction to zero") {
    GroebnerBasis g = gb_of(abst::testing::load("ex52.json"));
    CHECK(contains_binomial(lb({-9, 0, 0, 0, 1}), g));
    CHECK(contains_binomial(LatticeBinomial::zero(5), g));
    CHECK_FALSE(contains_binomial(lb({1, 0, 0, 0, 0}), g));
}

TEST_CASE("element orders match the worked examples") {
    GroebnerBasis g52 = gb_of(abst::testing::load("ex52.json"));
    Int three(3);
    CHECK(element_order(0, g52, three).value == 27);
    CHECK(element_order(1, g52, three).value == 9);
    CHECK(element_order(3, g52, three).value == 3);

    // one generator with p c = 0
    GroebnerBasis tiny = buchberger_reduced(std::vector<LatticeBinomial>{lb({5})},
                                            TermOrder::identity(1), {});
    CHECK(element_order(0, tiny, Int(5)).value == 5);

    GroebnerBasis g53 = gb_of(abst::testing::load("ex53.json"));
    CHECK(element_order(0, g53, three).value == 81);

    // a free generator never reaches 1
    GroebnerBasis free_gb = buchberger_reduced(std::vector<LatticeBinomial>{lb({3, -3})},
                                               TermOrder::identity(2), {});
    CHECK_THROWS_AS(element_order(0, free_gb, three, 12), diagnostic_error);
}

TEST_CASE("standard monomial counts") {
    CHECK(standard_monomial_count(gb_of(abst::testing::load("ex52.json"))) == Int(243));
    CHECK(standard_monomial_count(gb_of(abst::testing::load("paper_sec4.json"))) == Int(390625));

    // x_j - 1 for every j: the trivial group
    std::vector<LatticeBinomial> ones{lb({1, 0, 0}), lb({0, 1, 0}), lb({0, 0, 1})};
    CHECK(standard_monomial_count(buchberger_reduced(ones, TermOrder::identity(3), {})) ==
          Int(1));
}

TEST_CASE("buchberger is idempotent on a reduced basis") {
    GroebnerBasis g = gb_of(abst::testing::load("ex54.json"));
    GroebnerBasis again = buchberger_reduced(g.elements, g.order, {});
    CHECK(element_set(g) == element_set(again));
}

TEST_CASE("counts and orders are independent of the term order") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 25; ++round) {
        Presentation pres = abst::testing::random_triangular_presentation(rng, 3, 5);
        auto bins = relations_to_binomials(pres);
        std::vector<std::size_t> ranks{1, 2, 3, 4, 5};
        std::shuffle(ranks.begin(), ranks.end(), rng);
        GroebnerBasis a = buchberger_reduced(bins, TermOrder::identity(5), {});
        GroebnerBasis b = buchberger_reduced(bins, TermOrder(ranks), {});
        CHECK(standard_monomial_count(a) == standard_monomial_count(b));
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(element_order(j, a, pres.prime()).value ==
                  element_order(j, b, pres.prime()).value);
    }
}

TEST_CASE("pairwise coprime leads are already a basis") {
    // random bases in the extractable shape: pure-power leads on distinct
    // variables (hence pairwise coprime) with tails already in normal form
    std::mt19937_64 rng(22);
    const Int p(3);
    for (int round = 0; round < 25; ++round) {
        const std::size_t q = 5;
        std::vector<unsigned> r{3, 2, 2, 1, 1};  // descending pivot exponents
        std::vector<LatticeBinomial> bins;
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<Int> v(q);
            v[j] = pow_int(p, r[j]);
            for (std::size_t t = 0; t < j; ++t) {
                if (r[t] <= r[j]) continue;
                Int bound = pow_int(p, r[t] - r[j]);
                Int a = Int(static_cast<unsigned long>(rng() % bound.get_ui()));
                v[t] = -a * v[j];
            }
            bins.push_back(LatticeBinomial(std::move(v)));
        }
        TermOrder order = TermOrder::identity(q);
        GroebnerBasis g = buchberger_reduced(bins, order, {});
        std::set<std::vector<Int>> in_set, out_set;
        for (const auto& b : bins) in_set.insert(orient(order, b).vec());
        for (const auto& b : g.elements) out_set.insert(b.vec());
        CHECK(in_set == out_set);
    }
}

TEST_CASE("every generator is contained in the ideal of its basis") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 25; ++round) {
        Presentation pres = abst::testing::random_triangular_presentation(rng, 5, 5);
        auto bins = relations_to_binomials(pres);
        GroebnerBasis g = buchberger_reduced(bins, TermOrder::identity(5), {});
        for (const auto& b : bins) CHECK(contains_binomial(b, g));
    }
}

TEST_CASE("element order divides the group order") {
    std::mt19937_64 rng(24);
    for (int round = 0; round < 20; ++round) {
        Presentation pres = abst::testing::random_triangular_presentation(rng, 3, 5);
        GroebnerBasis g = gb_of(pres);
        auto count = standard_monomial_count(g);
        REQUIRE(count.has_value());
        for (std::size_t j = 0; j < 5; ++j) {
            Int ord = element_order(j, g, pres.prime()).value;
            CHECK(mpz_divisible_p(count->get_mpz_t(), ord.get_mpz_t()));
        }
    }
}

TEST_CASE("mixed leads fall back to box enumeration") {
    // assembled by hand: leads x^3, y^3 and the mixed x^2 y^2; the staircase
    // is the 3x3 box minus its top corner
    GroebnerBasis g;
    g.order = TermOrder::identity(2);
    g.reduced = true;
    for (auto v : {std::vector<long>{3, 0}, {0, 3}, {2, 2}}) g.elements.push_back(lb(v));
    auto count = standard_monomial_count(g);
    REQUIRE(count.has_value());
    CHECK(*count == Int(8));
    CHECK(standard_monomial_count(g, Int(7)) == std::nullopt);
}
