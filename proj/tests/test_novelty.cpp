#include "ntl/bounds.hpp"
#include "ntl/errors.hpp"
#include "ntl/novelty.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace ntl;

namespace {

std::vector<std::vector<int>> complement_columns(const std::vector<std::uint32_t>& parts) {
    const auto cols = oracle::complement_strings(parts);
    std::vector<std::vector<int>> m(parts.size(), std::vector<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < parts.size(); ++r) m[r][c] = cols[c][r] == '+' ? 1 : -1;
    return m;
}

bool oracle_novel(const std::vector<std::uint32_t>& parts) {
    std::uint32_t g = 0;
    for (auto x : parts) g = std::gcd(g, x);
    if (g != 1) return false;
    const auto m = complement_columns(parts);
    if (m[0].empty()) return false;
    return oracle::rank(oracle::from_signs(m)) + 1 == parts.size();
}

}  // namespace

TEST_CASE("is_novel agrees with rational rank on all small partitions") {
    for (std::size_t k = 1; k <= 7; ++k) {
        for_each_partition(k, k <= 5 ? 6 : 4, [&](const Partition& lambda) {
            CAPTURE(lambda.to_string());
            const NoveltyCertificate cert = is_novel(lambda);
            CHECK(cert.novel == oracle_novel(lambda.parts()));
            CHECK(cert.p * 2 == oracle::complement_count(lambda.parts()));
            if (cert.p > 0) CHECK(cert.rank == complement_rank(lambda));
        });
    }
}

TEST_CASE("novelty examples") {
    const auto c = is_novel(Partition::parse("2,1,1,1,1"));
    CHECK(c.novel);
    CHECK(c.rank == 4);
    CHECK(c.p == 4);

    const auto d = is_novel(Partition::parse("4,3,3,2,1,1"));
    CHECK_FALSE(d.novel);
    CHECK(d.rank == 4);

    const auto e = is_novel(Partition::parse("2,2,2,2"));
    CHECK_FALSE(e.novel);
    CHECK(e.gcd == 2);

    const auto f = is_novel(Partition::parse("8,7,6,5,4,3,2,1"));
    CHECK(f.novel);
    CHECK(f.p == 7);
    CHECK(f.rank == 7);

    CHECK_FALSE(is_novel(Partition::parse("2,1")).novel);
    CHECK(complement_rank(Partition::parse("2,1")) == 0);
    CHECK(is_novel(Partition::parse("2,2,1,1,1,1,1,1")).p == 26);
}

TEST_CASE("stream and certify strategies agree") {
    for (std::size_t k = 2; k <= 8; ++k) {
        for_each_partition(k, 3, [&](const Partition& lambda) {
            CAPTURE(lambda.to_string());
            const auto s = is_novel(lambda, RankStrategy::Stream);
            const auto c = is_novel(lambda, RankStrategy::Certify);
            CHECK(s.novel == c.novel);
            if (s.novel) CHECK(c.rank == s.rank);
        });
    }
    for (const char* text : {"1^22", "2,1^21", "3,2^4,1^17", "2^3,1^14", "3,1^11"}) {
        CAPTURE(text);
        const Partition lambda = Partition::parse(text);
        CHECK(is_novel(lambda, RankStrategy::Stream).novel == is_novel(lambda, RankStrategy::Certify).novel);
    }
}

TEST_CASE("exhaustive enumeration by length") {
    CHECK(enumerate_novel(2).size() == 1);
    CHECK(enumerate_novel(3).empty());
    CHECK(enumerate_novel(4) == std::vector<Partition>{Partition::parse("1,1,1,1")});
    CHECK(enumerate_novel(5) == std::vector<Partition>{Partition::parse("2,1,1,1,1")});
    const std::vector<Partition> six = enumerate_novel(6);
    CHECK(six == std::vector<Partition>{Partition::from_digits("111111"), Partition::from_digits("221111"),
                                        Partition::from_digits("311111"), Partition::from_digits("322111")});
    for (const auto& lambda : six) CHECK(oracle_novel(lambda.parts()));
    CHECK(enumerate_novel(6, 1) == enumerate_novel(6, 4));
    CHECK_THROWS_AS(enumerate_novel(8), InfeasibleSize);
}

TEST_CASE("reduction and equivalence") {
    CHECK(implies_11(Partition::parse("2,1,1")));
    CHECK_FALSE(implies_11(Partition::parse("2,1,1,1,1")));
    CHECK_FALSE(implies_11(Partition::parse("3,3,2,2,1,1")));
    CHECK_THROWS_AS(implies_11(Partition::parse("2,1")), DomainError);

    CHECK(reduces(Partition::parse("2,1,1"), Partition::parse("1,1")));
    CHECK(reduces(Partition::parse("3,3,2,2,1,1"), Partition::parse("2,2,1,1,1,1")));
    CHECK_FALSE(reduces(Partition::parse("2,1,1,1,1"), Partition::parse("1,1")));

    CHECK(equivalent(Partition::parse("3,2,1"), Partition::parse("2,1,1")));
    CHECK(equivalent(Partition::parse("9,7,4,4,3,1"), Partition::parse("7,5,5,4,4,3")));
    CHECK(equivalent(Partition::parse("1,1"), Partition::parse("2,2")));
    CHECK_FALSE(equivalent(Partition::parse("1,1,1,1"), Partition::parse("2,2,1,1")));
}

TEST_CASE("minimal witnesses") {
    const WitnessMatrix w11 = minimal_witness(Partition::parse("1,1"));
    CHECK(w11.entries.to_strings() == std::vector<std::string>{"++", "--"});
    CHECK(w11.kernel == std::vector<std::int64_t>{1, 1});
    CHECK(w11.padded);
    CHECK_THROWS_AS(minimal_witness(Partition::parse("2,2,2,2")), DomainError);

    for (std::size_t k = 2; k <= 7; ++k) {
        for (const auto& lambda : enumerate_novel(k)) {
            CAPTURE(lambda.to_string());
            const WitnessMatrix w = minimal_witness(lambda);
            CHECK_NOTHROW(verify_witness(w, lambda));
            std::vector<std::vector<int>> m(w.side(), std::vector<int>(w.side()));
            for (std::size_t r = 0; r < w.side(); ++r)
                for (std::size_t c = 0; c < w.side(); ++c) m[r][c] = w.entries.at(r, c);
            CHECK(oracle::rank(oracle::from_signs(m)) + 1 == w.side());
            CHECK(has_template(w.kernel, lambda));
            for (std::size_t c = 0; c < w.side(); ++c) {
                std::int64_t s = 0;
                for (std::size_t r = 0; r < w.side(); ++r) s += w.kernel[r] * m[r][c];
                CHECK(s == 0);
            }
        }
    }
}

TEST_CASE("verify_witness rejects a tampered matrix") {
    WitnessMatrix w = minimal_witness(Partition::parse("2,1,1,1,1"));
    w.entries.set(0, 0, -w.entries.at(0, 0));
    CHECK_THROWS_AS(verify_witness(w, Partition::parse("2,1,1,1,1")), VerificationError);
}
