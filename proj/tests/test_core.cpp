#include "ntl/errors.hpp"
#include "ntl/linalg.hpp"
#include "ntl/partition.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

using namespace ntl;

namespace {

Partition random_partition(std::mt19937_64& rng, std::size_t max_len, std::uint32_t max_part) {
    const std::size_t k = 1 + rng() % max_len;
    std::vector<std::int64_t> v(k);
    for (auto& x : v) x = 1 + static_cast<std::int64_t>(rng() % max_part);
    return Partition::from_values(v);
}

std::vector<std::string> strings_of(const Complement& c) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < c.p(); ++i) out.push_back(c.at(i).to_string());
    return out;
}

}  // namespace

TEST_CASE("partition parsing and rendering") {
    CHECK(Partition::parse("2,2,1,1").to_string() == "2,2,1,1");
    CHECK(Partition::parse("1,2,1,2") == Partition::parse("2^2,1^2"));
    CHECK(Partition::parse(" 3 , 2^2 ,1 ").to_string() == "3,2,2,1");
    CHECK(Partition::from_digits("221111").compact() == "221111");
    CHECK(Partition::parse("10,1").compact() == "10,1");
    CHECK(Partition::from_values({0, -2, 3, 0, 1}).to_string() == "3,2,1");
    CHECK(Partition::parse("6,4,2").gcd() == 2);
    CHECK(Partition::parse("3,2,2,1").sum() == 8);

    CHECK_THROWS_AS(Partition::parse(""), DomainError);
    CHECK_THROWS_AS(Partition::parse("2,0"), DomainError);
    CHECK_THROWS_AS(Partition::parse("a,b"), DomainError);
    CHECK_THROWS_AS(Partition::parse("1^33"), DomainError);
    CHECK_THROWS_AS(Partition::parse("65537"), DomainError);
    CHECK_THROWS_AS(Partition({1, 2}), DomainError);
    CHECK_NOTHROW(Partition::parse("65536,1^31"));
}

TEST_CASE("sign vectors order coordinates first to last with + before -") {
    const SignVector a{4, 0b0110};  // +--+
    const SignVector b{4, 0b1010};  // +-+-
    CHECK(a.to_string() == "+--+");
    CHECK(b < a);
    CHECK(a.normalized());
    CHECK(a.negated().to_string() == "-++-");
    CHECK(a.dot(Partition::parse("1,1,1,1")) == 0);
}

TEST_CASE("complement of 1111 is the displayed 4x3 matrix") {
    const Complement c = complement(Partition::parse("1,1,1,1"));
    CHECK(strings_of(c) == std::vector<std::string>{"++--", "+-+-", "+--+"});
    const SignMatrix a = a_matrix(Partition::parse("1,1,1,1"));
    CHECK(a.rows() == 4);
    CHECK(a.cols() == 3);
    CHECK(a.to_strings() == std::vector<std::string>{"+++", "+--", "-+-", "--+"});
}

TEST_CASE("complement examples") {
    CHECK(complement(Partition::parse("2,1")).p() == 0);
    CHECK_THROWS_AS(a_matrix(Partition::parse("2,1")), DomainError);
    CHECK(a_matrix(Partition::parse("1,1")).to_strings() == std::vector<std::string>{"+", "-"});
    // 21111: the 2 is +, exactly one of the four 1s is +
    CHECK(strings_of(complement(Partition::parse("2,1,1,1,1"))) ==
          std::vector<std::string>{"++---", "+-+--", "+--+-", "+---+"});
    CHECK(a_matrix(Partition::parse("2,2,1,1,1,1")).cols() == 7);
}

TEST_CASE("complement, stream and size agree with brute force") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const Partition lambda = random_partition(rng, 14, 9);
        CAPTURE(lambda.to_string());
        const auto want = oracle::complement_strings(lambda.parts());
        CHECK(strings_of(complement(lambda)) == want);

        ComplementStream stream(lambda);
        std::vector<std::string> streamed;
        Mask m;
        while (stream.next(m)) streamed.push_back(SignVector{static_cast<std::uint32_t>(lambda.size()), m}.to_string());
        CHECK(streamed == want);

        CHECK(complement_size(lambda) == oracle::complement_count(lambda.parts()));
    }
}

TEST_CASE("r_lambda values") {
    CHECK(r_lambda(Partition::parse("1,1")).fraction() == "1/2");
    CHECK(r_lambda(Partition::parse("2,1,1,1,1")).fraction() == "1/4");
    CHECK(r_lambda(Partition::parse("2,2,1,1,1,1")).fraction() == "7/32");
    CHECK(r_lambda(Partition::parse("2,2,1,1,1,1")).scaled256() == "56");
    CHECK(r_lambda(Partition::parse("1")).fraction() == "0");
    CHECK(r_lambda(Partition::parse("1^12")).scaled256() == "57.75");
    CHECK(r_lambda(Partition::parse("1^16")).scaled256() == "50.2734375");
    CHECK(r_lambda(Partition::parse("1^28")).fraction() == "5014575/33554432");
    CHECK(r_lambda(Partition::parse("2,2,1,1,1,1")).decimal() == "0.21875");
    mpq_class c32(601080390, mpz_class(1) << 32);
    c32.canonicalize();
    CHECK(r_lambda(Partition::parse("1^32")).value() == c32);
}

TEST_CASE("dyadic probabilities are kept in lowest terms") {
    const DyadicProbability p(mpz_class(14), 6);
    CHECK(p.numerator() == 7);
    CHECK(p.exponent() == 5);
    CHECK(p == DyadicProbability(mpz_class(28), 7));
    CHECK(DyadicProbability(mpz_class(0), 9).fraction() == "0");
    CHECK(DyadicProbability(mpz_class(1), 0).fraction() == "1");
    CHECK(dyadic_decimal(mpz_class(3), 3) == "0.375");
    CHECK(DyadicProbability(mpz_class(3), 3) > DyadicProbability(mpz_class(5), 4));
}

TEST_CASE("template vectors") {
    CHECK(count_template_vectors(Partition::parse("1,1"), 2) == 2);
    CHECK(count_template_vectors(Partition::parse("1,1,1,1"), 4) == 8);
    CHECK(count_template_vectors(Partition::parse("2,1,1,1,1"), 5) == 80);
    CHECK(template_vectors(Partition::parse("1,1"), 3).size() == 6);
    const auto t11 = template_vectors(Partition::parse("1,1"), 2);
    CHECK(std::set(t11.begin(), t11.end()) == std::set<std::vector<std::int64_t>>{{1, 1}, {1, -1}});
    CHECK_THROWS_AS(count_template_vectors(Partition::parse("1,1,1"), 2), DomainError);
    CHECK_THROWS_AS(template_vectors(Partition::parse("1,1,1"), 2), DomainError);

    for (const char* text : {"2,1,1,1,1", "3,2,2,1", "1,1,1", "4,4,1"}) {
        const Partition lambda = Partition::parse(text);
        for (std::size_t n = lambda.size(); n <= lambda.size() + 2; ++n) {
            CAPTURE(text);
            CAPTURE(n);
            const auto got = template_vectors(lambda, n);
            const auto want = oracle::templates(lambda.parts(), n);
            CHECK(std::set(got.begin(), got.end()) == std::set(want.begin(), want.end()));
            CHECK(got.size() == want.size());
            CHECK(count_template_vectors(lambda, n) == static_cast<unsigned long>(want.size()));
            for (const auto& v : got) CHECK(has_template(v, lambda));
        }
    }
    CHECK_FALSE(has_template({-1, 1}, Partition::parse("1,1")));
    CHECK_FALSE(has_template({1, 2}, Partition::parse("1,1")));
}

TEST_CASE("rank_of matches rational elimination on both sides of the f64 limit") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t rows = 1 + rng() % 18;
        const std::size_t cols = 1 + rng() % 18;
        std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
        for (auto& r : m)
            for (auto& v : r) v = (rng() & 1) ? 1 : -1;
        if (rows > 3 && trial % 2) m[3] = m[0];
        SignMatrix s(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) s.set(r, c, m[r][c]);
        CHECK(rank_of(s) == oracle::rank(oracle::from_signs(m)));
    }
    SignMatrix col(2, 1);
    col.set(0, 0, 1);
    col.set(1, 0, -1);
    CHECK(rank_of(col) == 1);
}

TEST_CASE("streaming rank agrees across integer widths") {
    std::mt19937_64 rng(9);
    for (std::size_t dim : {6u, 15u, 16u, 26u, 27u, 34u}) {
        CAPTURE(dim);
        StreamingRank sr(dim);
        oracle::Matrix rows;
        for (std::size_t i = 0; i < dim + 4; ++i) {
            std::vector<std::int64_t> v(dim);
            for (auto& x : v) x = (rng() & 1) ? 1 : -1;
            if (i % 4 == 3) v = std::vector<std::int64_t>(dim, 1);  // repeats
            sr.add(v);
            std::vector<mpq_class> q(v.begin(), v.end());
            rows.push_back(q);
            REQUIRE(sr.rank() == oracle::rank(rows));
        }
    }
}

TEST_CASE("left kernels") {
    CHECK(kernel_primitive(a_matrix(Partition::parse("1,1,1,1"))) == std::vector<std::int64_t>{1, 1, 1, 1});
    CHECK(kernel_primitive(a_matrix(Partition::parse("2,1,1,1,1"))) == std::vector<std::int64_t>{2, 1, 1, 1, 1});
    // rank 1 with three rows: kernel has dimension 2
    CHECK_FALSE(kernel_primitive(SignMatrix::from_strings({"++", "++", "--"})).has_value());

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 2 + rng() % 10;
        const std::size_t p = 1 + rng() % 12;
        SignMatrix m(k, p);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < p; ++c) m.set(r, c, (rng() & 1) ? 1 : -1);
        const auto basis = left_kernel_basis(m);
        CHECK(basis.size() == k - rank_of(m));
        for (const auto& v : basis) {
            for (std::size_t c = 0; c < p; ++c) {
                mpz_class s = 0;
                for (std::size_t r = 0; r < k; ++r) s += v[r] * m.at(r, c);
                CHECK(s == 0);
            }
        }
        if (const auto v = kernel_primitive(m)) {
            std::int64_t g = 0;
            for (auto x : *v) g = std::gcd(g, x);
            CHECK(g == 1);
            std::size_t lead = 0;
            while ((*v)[lead] == 0) ++lead;
            CHECK((*v)[lead] > 0);
        }
    }
}

TEST_CASE("orthogonal complement is orthogonal and of the right dimension") {
    std::vector<std::vector<mpz_class>> rows = {{1, 1, 0, 0}, {0, 1, 1, 0}};
    const auto perp = orthogonal_complement(rows, 4);
    CHECK(perp.size() == 2);
    for (const auto& v : perp)
        for (const auto& r : rows) {
            mpz_class s = 0;
            for (std::size_t i = 0; i < 4; ++i) s += v[i] * r[i];
            CHECK(s == 0);
        }
    std::vector<mpz_class> v = {0, -6, 4, 2};
    make_primitive(v);
    CHECK(v == std::vector<mpz_class>{0, 3, -2, -1});
    CHECK_THROWS_AS(to_int64({mpz_class("100000000000000000000")}), InfeasibleSize);
}

TEST_CASE("template counts match listings for short partitions") {
    for (std::size_t k = 1; k <= 5; ++k) {
        for (std::size_t n = k; n <= 8; ++n) {
            for (const char* text : {"1^5", "2,1^4", "3,2,1,1,1", "3,3,2,2,1", "2,2,2,1,1"}) {
                const auto parts = Partition::parse(text).parts();
                const Partition lambda(std::vector<std::uint32_t>(parts.begin(), parts.begin() + static_cast<long>(k)));
                CHECK(count_template_vectors(lambda, n) == static_cast<unsigned long>(template_vectors(lambda, n).size()));
            }
        }
    }
}

TEST_CASE("a nonempty complement means every sign vector is caught by some template vector") {
    for (const char* text : {"1,1", "2,1,1", "1^4", "2,1^4", "3,2,2,1,1,1", "2,2,1^4"}) {
        const Partition lambda = Partition::parse(text);
        const std::size_t k = lambda.size();
        const auto vs = oracle::templates(lambda.parts(), k);
        for (std::uint32_t x = 0; x < (1u << k); ++x) {
            bool caught = false;
            for (const auto& v : vs) {
                std::int64_t s = 0;
                for (std::size_t i = 0; i < k; ++i) s += v[i] * oracle::sign_of(x, i);
                caught = caught || s == 0;
            }
            CHECK(caught);
        }
    }
}
