#include "ntl/bounds.hpp"
#include "ntl/catalog.hpp"
#include "ntl/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace ntl;

namespace {

mpz_class binom(std::size_t n, std::size_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

TEST_CASE("binomial bounds") {
    CHECK(elo_bound(4) == 6);
    CHECK(elo_bound(5) == 10);
    CHECK(elo_bound(8) == 70);
    CHECK(erdos_interval_bound(4, 4) == 15);
    CHECK(erdos_interval_bound(6, 4) == 56);
    CHECK(erdos_interval_bound(3, 10) == 8);
    CHECK(not_all_equal_bound(8) == 56);
    for (std::size_t k = 1; k <= 20; ++k) {
        std::vector<mpz_class> row;
        for (std::size_t j = 0; j <= k; ++j) row.push_back(binom(k, j));
        std::sort(row.rbegin(), row.rend());
        mpz_class top4 = 0;
        for (std::size_t j = 0; j < std::min<std::size_t>(4, row.size()); ++j) top4 += row[j];
        CHECK(erdos_interval_bound(k, 4) == top4);
        CHECK(elo_bound(k) == row[0]);
    }
}

TEST_CASE("complement sizes respect both bounds, with equality only on equal parts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t k = 2 + rng() % 11;
        std::vector<std::int64_t> v(k);
        for (auto& x : v) x = 1 + static_cast<std::int64_t>(rng() % 5);
        if (trial % 10 == 0) std::fill(v.begin(), v.end(), 1 + static_cast<std::int64_t>(rng() % 3));
        const Partition lambda = Partition::from_values(v);
        CAPTURE(lambda.to_string());
        const std::uint64_t size = complement_size(lambda);
        const bool all_equal = lambda.largest() == lambda.parts().back();
        CHECK(mpz_class(static_cast<unsigned long>(size)) <= elo_bound(k));
        CHECK((mpz_class(static_cast<unsigned long>(size)) == elo_bound(k)) == (all_equal && k % 2 == 0));
        if (!all_equal && k >= 4) CHECK(mpz_class(static_cast<unsigned long>(size)) <= not_all_equal_bound(k));
    }
}

TEST_CASE("runner-up scan matches brute force") {
    for (std::size_t k : {4u, 5u, 6u, 8u}) {
        CAPTURE(k);
        const RunnerUpReport rep = runner_up_scan(k, 4);
        std::map<std::uint64_t, std::vector<Partition>, std::greater<>> by_size;
        std::size_t scanned = 0;
        for_each_partition(k, 4, [&](const Partition& lambda) {
            if (lambda.gcd() != 1) return;
            ++scanned;
            by_size[oracle::complement_count(lambda.parts())].push_back(lambda);
        });
        CHECK(rep.scanned == scanned);
        auto it = by_size.begin();
        CHECK(rep.best_size == it->first);
        CHECK(std::set(rep.best.begin(), rep.best.end()) == std::set(it->second.begin(), it->second.end()));
        ++it;
        CHECK(rep.second_size == it->first);
        CHECK(std::set(rep.second.begin(), rep.second.end()) == std::set(it->second.begin(), it->second.end()));
    }
    const RunnerUpReport four = runner_up_scan(4, 4);
    CHECK(four.claim_applies);
    CHECK(four.best_matches);
    CHECK(four.second_contains_claim);
    CHECK_FALSE(four.second_unique);

    const RunnerUpReport five = runner_up_scan(5, 4);
    CHECK_FALSE(five.claim_applies);
    CHECK(five.best_size == 8);
    CHECK(five.second_size == 6);

    const RunnerUpReport eight = runner_up_scan(8, 4);
    CHECK(eight.holds_in_scope);
    CHECK(eight.second == std::vector<Partition>{Partition::parse("2,2,1^6")});
    CHECK(eight.second_size == 52);
    CHECK_THROWS_AS(runner_up_scan(11, 3), InfeasibleSize);
}

TEST_CASE("the length-8 list") {
    const auto& list = length8_list();
    REQUIRE(list.size() == 122);
    CHECK(list.front().digits == "11111111");
    std::set<std::string_view> seen;
    for (const auto& entry : list) {
        CAPTURE(entry.digits);
        CHECK(seen.insert(entry.digits).second);
        const Partition lambda = Partition::from_digits(entry.digits);
        CHECK(lambda.size() == 8);
        CHECK(oracle::complement_count(lambda.parts()) == entry.complement_size);
        if (entry.digits != "11111111") CHECK(entry.complement_size <= 56);
    }
    CHECK(known_novel(8).size() == 122);
    CHECK(known_novel(9).empty());
    CHECK(known_novel_up_to(7).size() == 1 + 1 + 1 + 4 + 14);
}

TEST_CASE("band checks hold on the known catalog") {
    const auto eight = first_eight();
    CHECK(eight.size() == 8);
    CHECK(eight.front() == Partition::parse("1,1"));
    for (std::size_t i = 1; i < eight.size(); ++i) CHECK(r_lambda(eight[i - 1]) >= r_lambda(eight[i]));

    const auto checks = lemma_band_checks(known_novel_up_to(8));
    REQUIRE(checks.size() == 5);
    CHECK(checks[0].checked == 4 + 14 - 2);
    CHECK(checks[4].checked == 1 + 1 + 1 + 4 + 14 + 122 - 6);
    for (const auto& c : checks) {
        CAPTURE(c.label);
        CHECK(c.holds);
        CHECK(c.violations.empty());
    }
}

TEST_CASE("ranked table ordering") {
    const std::vector<Partition> cands = {Partition::parse("1^6"), Partition::parse("1,1"),
                                          Partition::parse("1^4"), Partition::parse("1,1"),
                                          Partition::parse("2,1^4")};
    const auto rows = ranked_table(cands, mpq_class(0));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].partition == Partition::parse("1,1"));
    CHECK(rows[1].partition == Partition::parse("1^4"));
    CHECK(rows[2].partition == Partition::parse("1^6"));
    CHECK(rows[3].partition == Partition::parse("2,1^4"));
    CHECK(rows[0].index == 1);
    CHECK(rows[3].provenance == "proved");
    const auto cut = ranked_table(cands, mpq_class(3, 8));
    CHECK(cut.size() == 2);
}
