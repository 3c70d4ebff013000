#include "ntl/errors.hpp"
#include "ntl/expansion.hpp"
#include "ntl/matrixlab.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ntl;

namespace {

mpz_class binom(std::size_t n, std::size_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpq_class dyadic(long num, std::size_t e) {
    mpq_class q(num, mpz_class(1) << e);
    q.canonicalize();
    return q;
}

// Over all p^n tuples of directions: weight 1 when all distinct, 1/2 when
// exactly one pair coincides (the two rows must then also agree in sign).
mpq_class tuple_ratio(std::uint64_t p, std::size_t n, bool allow_one_collision) {
    std::vector<std::uint64_t> t(n, 0);
    mpq_class good = 0;
    std::uint64_t total = 0;
    while (true) {
        ++total;
        std::size_t collisions = 0;
        bool triple = false;
        for (std::size_t a = 0; a < n; ++a) {
            std::size_t same = 0;
            for (std::size_t b = a + 1; b < n; ++b) same += t[a] == t[b];
            collisions += same;
            triple = triple || same > 1;
        }
        if (collisions == 0) good += 1;
        else if (allow_one_collision && collisions == 1 && !triple) good += mpq_class(1, 2);
        std::size_t i = 0;
        while (i < n && ++t[i] == p) t[i++] = 0;
        if (i == n) break;
    }
    return good / mpq_class(mpz_class(static_cast<unsigned long>(total)));
}

}  // namespace

TEST_CASE("expansion terms and their rates") {
    const auto& terms = expansion_terms();
    REQUIRE(terms.size() == 8);
    const char* names[] = {"1,1", "1^4", "1^6", "1^8", "2,1^4", "1^10", "2,1^6", "1^12"};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(terms[i].partition == Partition::parse(names[i]));
        CHECK(terms[i].rate == r_lambda(terms[i].partition).value());
        if (i > 0) CHECK(terms[i - 1].rate >= terms[i].rate);
    }
    CHECK(terms[0].rate == mpq_class(1, 2));
    CHECK(terms[4].rate == mpq_class(1, 4));
}

TEST_CASE("Q coefficients count template vectors on both sides") {
    CHECK(q_values(2)[0] == 4);
    CHECK(q_values(5)[4] == -1000);
    CHECK(q_values(7)[3] == 0);
    CHECK_THROWS_AS(q_values(1), DomainError);
    const auto& terms = expansion_terms();
    for (std::size_t n = 2; n <= 30; ++n) {
        CAPTURE(n);
        const auto q = q_values(n);
        for (std::size_t i = 0; i < 8; ++i) {
            if (i == 4) continue;
            const std::size_t k = terms[i].partition.size();
            const mpz_class both_sides = n < k ? mpz_class(0) : 2 * count_template_vectors(terms[i].partition, n);
            CHECK(q[i] == both_sides);
        }
        const mpz_class c = binom(n, 2);
        CHECK(q[4] == 160 * binom(n, 5) - 4 * (2 * c * c + 8 * binom(n, 4) + 5 * binom(n, 3)));
    }
    for (std::size_t n = 4; n <= 7; ++n)
        CHECK(q_values(n)[1] == 2 * static_cast<long>(oracle::templates({1, 1, 1, 1}, n).size()));
}

TEST_CASE("small-n closed forms") {
    CHECK(e8_estimate(2) == mpq_class(1, 2));
    CHECK(d11_lower_bound(2) == mpq_class(1, 2));
    CHECK(d11_lower_bound(3) == 0);
    CHECK(ie_t(2) == mpq_class(1, 2));
    CHECK(ie_t(4) == mpq_class(3, 4));
    for (std::size_t n = 2; n <= 40; ++n) {
        CHECK(ie_moments(n).ew == 2 * ie_t(n));
        CHECK(d11_lower_bound(n) == ie_moments(n).ew - ie_moments(n).ew2);
    }
}

TEST_CASE("moment closed forms against exhaustive enumeration") {
    for (std::size_t n = 2; n <= 4; ++n) {
        CAPTURE(n);
        const auto full = oracle::w_moments_full(n);
        const auto stats = exact_event_stats(n, 2);
        CHECK(stats.moments.ew == full[0]);
        CHECK(stats.moments.ew2 == full[1]);
        CHECK(stats.moments.ew3 == full[2]);
        CHECK(ie_moments(n).ew == full[0]);
        CHECK(ie_moments(n).ew2 == full[1]);
    }
    const auto five = exact_event_stats(5, 0);
    CHECK(ie_moments(5).ew == five.moments.ew);
    CHECK(ie_moments(5).ew2 == five.moments.ew2);
    // The third closed form is not exact; record the known discrepancy.
    CHECK(ie_moments(2).ew3 == mpq_class(-1, 24));
    CHECK(oracle::w_moments_full(3)[2] == mpq_class(5, 4));
    CHECK(ie_moments(3).ew3 == mpq_class(37, 32));
}

TEST_CASE("Bonferroni bounds") {
    const auto b = bonferroni_bounds({mpq_class(1, 4), mpq_class(1, 4)}, {mpq_class(1, 16)});
    CHECK(b.upper == mpq_class(1, 2));
    CHECK(b.lower == mpq_class(7, 16));
    const auto c = bonferroni_bounds({mpq_class(1, 4), mpq_class(1, 4)}, {mpq_class(1, 16)}, {mpq_class(1, 32)});
    CHECK(c.lower == mpq_class(13, 32));
    CHECK(bonferroni_bounds({}, {}).upper == 0);
}

TEST_CASE("R11 without L11 lower bound sits below the exact probability") {
    for (std::size_t n = 2; n <= 5; ++n) {
        CAPTURE(n);
        const auto stats = exact_event_stats(n, 0);
        CHECK(r11_minus_l11_bound(n) <= stats.p_r11_minus_l11);
    }
    const mpq_class t = ie_t(7);
    CHECK(r11_minus_l11_bound(7) == t - (t * t - t * dyadic(1, 6)) - 2 * t * t);
}

TEST_CASE("pairwise intersections against brute-force placement") {
    struct Case {
        const char* lambda;
        const char* mu;
    };
    for (const Case c : {Case{"1,1", "1^4"}, Case{"1,1", "2,1^4"}, Case{"1,1", "1^6"}, Case{"1^4", "1,1"},
                         Case{"2,1,1", "1,1"}}) {
        CAPTURE(c.lambda);
        CAPTURE(c.mu);
        const Partition lambda = Partition::parse(c.lambda);
        const Partition mu = Partition::parse(c.mu);
        const PairReport rep = pair_intersection_check(lambda, mu, 2);
        const mpq_class want = oracle::pair_max_joint(lambda.parts(), mu.parts(), lambda.size() + mu.size());
        CHECK(rep.max_joint == want);
        CHECK(rep.bound == std::max(r_lambda(lambda).value(), r_lambda(mu).value()) / 2);
        CHECK(rep.holds == (rep.max_joint <= rep.bound));
        CHECK(has_template(rep.worst_v, lambda));
        CHECK(has_template(rep.worst_w, mu));
        CHECK(pair_intersection_check(lambda, mu, 1).max_joint == rep.max_joint);
    }
    const PairReport eq = pair_intersection_check(Partition::parse("2,1^4"), Partition::parse("1^4"));
    CHECK(eq.max_joint == mpq_class(3, 16));
    CHECK(eq.bound == mpq_class(3, 16));
    CHECK(eq.holds);
    CHECK_THROWS_AS(pair_intersection_check(Partition::parse("1,1"), Partition::parse("1,1")), DomainError);
    CHECK_THROWS_AS(pair_intersection_check(Partition::parse("1^8"), Partition::parse("1^7")), InfeasibleSize);
}

TEST_CASE("conditional ratios") {
    CHECK(falling_factorial(10, 6) == 151200);
    CHECK(falling_factorial(3, 5) == 0);
    CHECK(falling_factorial(7, 0) == 1);

    CHECK(conditional_ratio_r11(Partition::parse("1^6"), 6) == mpq_class(189, 1250));
    CHECK(conditional_ratio_r11(Partition::parse("1^6"), 6) == tuple_ratio(10, 6, false));
    CHECK(conditional_ratio_r11(Partition::parse("2,1^4"), 5) == tuple_ratio(4, 5, false));
    CHECK(conditional_ratio_r11(Partition::parse("1^4"), 4) == tuple_ratio(3, 4, false));

    CHECK(conditional_ratio_r11_r1111(Partition::parse("1^6"), 7) == mpq_class(5481, 25000));
    CHECK(conditional_ratio_r11_r1111(Partition::parse("1^6"), 7) == tuple_ratio(10, 7, true));
    CHECK(conditional_ratio_r11_r1111(Partition::parse("2,1^4"), 6) == tuple_ratio(4, 6, true));
    CHECK(conditional_ratio_r11_r1111(Partition::parse("1,1"), 3) == 0);

    CHECK_THROWS_AS(conditional_ratio_r11(Partition::parse("1^6"), 7), DomainError);
    CHECK_THROWS_AS(conditional_ratio_r11(Partition::parse("2,1"), 2), DomainError);
    CHECK_THROWS_AS(conditional_ratio_r11(Partition::parse("2^2,1^2"), 4), DomainError);
    CHECK_THROWS_AS(conditional_ratio_r11_r1111(Partition::parse("1^6"), 6), DomainError);
}

TEST_CASE("binomial identity") {
    for (std::size_t n = 0; n <= 1000; ++n) CHECK(lemma_trivial(n));
}
