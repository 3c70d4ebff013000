#include "ntl/matrixlab.hpp"

#include "ntl/catalog.hpp"
#include "ntl/errors.hpp"
#include "ntl/linalg.hpp"
#include "ntl/parallel.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace ntl {

namespace {

constexpr std::size_t kSmall = kMaxInt64Dim;
using SmallMatrix = std::array<std::int64_t, kSmall * kSmall>;

// Fraction-free elimination in place on an r x c block (row stride kSmall).
// Returns the rank; with stop_on_gap it returns as soon as a column has no
// pivot, which for square input means singular. `sign` tracks row swaps.
std::size_t bareiss(SmallMatrix& a, std::size_t rows, std::size_t cols, bool stop_on_gap, int* sign = nullptr) {
    std::int64_t prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p * kSmall + c] == 0) ++p;
        if (p == rows) {
            if (stop_on_gap) return rank;
            continue;
        }
        if (p != rank) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * kSmall + j], a[rank * kSmall + j]);
            if (sign) *sign = -*sign;
        }
        const std::int64_t piv = a[rank * kSmall + c];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const std::int64_t f = a[i * kSmall + c];
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i * kSmall + j] = (a[i * kSmall + j] * piv - f * a[rank * kSmall + j]) / prev;
            a[i * kSmall + c] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

SmallMatrix load(const BernoulliMatrix& m) {
    SmallMatrix a{};
    for (std::size_t r = 0; r < m.n(); ++r)
        for (std::size_t c = 0; c < m.n(); ++c) a[r * kSmall + c] = m.at(r, c);
    return a;
}

bool singular_bits(const std::uint32_t* rows, std::size_t n) {
    SmallMatrix a;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r * kSmall + c] = (rows[r] >> c) & 1u ? -1 : 1;
    return bareiss(a, n, n, true) < n;
}

std::size_t rank_bits(const std::uint32_t* rows, std::size_t n) {
    SmallMatrix a;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r * kSmall + c] = (rows[r] >> c) & 1u ? -1 : 1;
    return bareiss(a, n, n, false);
}

// det of `m` with row `skip_row` and column `skip_col` removed.
std::int64_t minor_det(const BernoulliMatrix& m, std::size_t skip_row, std::size_t skip_col) {
    const std::size_t n = m.n();
    SmallMatrix a{};
    std::size_t ri = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r == skip_row) continue;
        std::size_t ci = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (c == skip_col) continue;
            a[ri * kSmall + ci++] = m.at(r, c);
        }
        ++ri;
    }
    const std::size_t s = n - 1;
    if (s == 0) return 1;
    int sign = 1;
    if (bareiss(a, s, s, true, &sign) < s) return 0;
    return sign * a[(s - 1) * kSmall + (s - 1)];
}

// Left null vector of a corank-1 matrix from a nonzero row of its adjugate:
// v_r = (-1)^{r+c} det(M without row r, column c) for a column c whose
// removal leaves full row rank.
std::vector<std::int64_t> corank1_left_kernel(const BernoulliMatrix& m) {
    const std::size_t n = m.n();
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::int64_t> v(n);
        bool nonzero = false;
        for (std::size_t r = 0; r < n; ++r) {
            const std::int64_t d = minor_det(m, r, c);
            v[r] = ((r + c) % 2 == 0) ? d : -d;
            nonzero = nonzero || d != 0;
        }
        if (nonzero) {
            make_primitive(v);
            return v;
        }
    }
    throw VerificationError("corank-1 matrix with zero adjugate");
}

std::uint32_t low_bits(std::size_t n) { return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1; }

mpq_class fraction(std::uint64_t count, std::size_t log2_total) {
    mpz_class d = 1;
    d <<= log2_total;
    mpq_class q(mpz_class(static_cast<unsigned long>(count)), d);
    q.canonicalize();
    return q;
}

void fill_normalized(std::uint32_t* rows, std::size_t n, std::uint64_t idx) {
    const std::uint32_t block = low_bits(n - 1);
    rows[0] = 0;
    for (std::size_t r = 1; r < n; ++r) rows[r] = static_cast<std::uint32_t>((idx >> ((r - 1) * (n - 1))) & block) << 1;
}

constexpr std::uint64_t kChunk = 1u << 12;

}  // namespace

BernoulliMatrix::BernoulliMatrix(std::size_t n) : BernoulliMatrix(n, std::vector<std::uint32_t>(n, 0)) {}

BernoulliMatrix::BernoulliMatrix(std::size_t n, std::vector<std::uint32_t> rows) : n_(n), rows_(std::move(rows)) {
    if (n < 1 || n > kMaxMatrixDim) throw DomainError("matrix dimension must be between 1 and 32");
    if (rows_.size() != n) throw DomainError("matrix must have n rows");
    for (auto& r : rows_) {
        if (r & ~low_bits(n)) throw DomainError("row has bits beyond column n");
    }
}

BernoulliMatrix BernoulliMatrix::from_sign_matrix(const SignMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("matrix must be square");
    std::vector<std::uint32_t> rows(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c) < 0) rows[r] |= std::uint32_t{1} << c;
    return BernoulliMatrix(m.rows(), std::move(rows));
}

BernoulliMatrix BernoulliMatrix::sample(SplitMix64& rng, std::size_t n) {
    std::vector<std::uint32_t> rows(n);
    for (auto& r : rows) r = static_cast<std::uint32_t>(rng.next()) & low_bits(n);
    return BernoulliMatrix(n, std::move(rows));
}

SignMatrix BernoulliMatrix::to_sign_matrix() const {
    SignMatrix m(n_, n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) m.set(r, c, at(r, c));
    return m;
}

BernoulliMatrix BernoulliMatrix::transposed() const {
    std::vector<std::uint32_t> cols(n_, 0);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c)
            if ((rows_[r] >> c) & 1u) cols[c] |= std::uint32_t{1} << r;
    return BernoulliMatrix(n_, std::move(cols));
}

KernelInfo integer_corank_and_kernel(const BernoulliMatrix& m) {
    KernelInfo info;
    if (m.n() <= kSmall) {
        SmallMatrix a = load(m);
        info.corank = m.n() - bareiss(a, m.n(), m.n(), false);
        if (info.corank == 1) info.kernel = corank1_left_kernel(m);
        return info;
    }
    const SignMatrix s = m.to_sign_matrix();
    info.corank = m.n() - rank_of(s);
    if (info.corank == 1) info.kernel = kernel_primitive(s);
    return info;
}

mpq_class exact_pn(std::size_t n, Enumeration mode, std::size_t jobs) {
    if (n == 0) throw DomainError("n must be positive");
    if (n > kMaxExhaustiveDim) throw InfeasibleSize("exhaustive enumeration is limited to n <= 6");
    if (n == 1) return 0;
    if (mode == Enumeration::Full && n > kMaxFullEnumerationDim)
        throw InfeasibleSize("full enumeration is limited to n <= 4");

    const std::size_t bits = mode == Enumeration::Full ? n * n : (n - 1) * (n - 1);
    const std::uint64_t total = std::uint64_t{1} << bits;
    const std::size_t tasks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
    std::vector<std::uint64_t> singular(tasks, 0);
    parallel_for(tasks, jobs, [&](std::size_t t) {
        std::array<std::uint32_t, kMaxExhaustiveDim> rows{};
        const std::uint64_t end = std::min(total, (t + 1) * kChunk);
        for (std::uint64_t idx = t * kChunk; idx < end; ++idx) {
            if (mode == Enumeration::Full) {
                for (std::size_t r = 0; r < n; ++r) rows[r] = static_cast<std::uint32_t>((idx >> (r * n)) & low_bits(n));
            } else {
                fill_normalized(rows.data(), n, idx);
            }
            if (singular_bits(rows.data(), n)) ++singular[t];
        }
    });
    return fraction(std::accumulate(singular.begin(), singular.end(), std::uint64_t{0}), bits);
}

namespace {

struct TemplateSet {
    std::vector<Partition> templates;  // expansion templates that fit in n, other than 11
    std::vector<std::vector<std::vector<std::int64_t>>> vectors;
};

bool has_null_vector_with(const BernoulliMatrix& m, const std::vector<std::vector<std::int64_t>>& vectors) {
    const std::size_t n = m.n();
    for (const auto& v : vectors) {
        bool left = true;
        bool right = true;
        for (std::size_t c = 0; c < n && (left || right); ++c) {
            std::int64_t sl = 0;
            std::int64_t sr = 0;
            for (std::size_t r = 0; r < n; ++r) {
                sl += v[r] * m.at(r, c);
                sr += v[r] * m.at(c, r);
            }
            left = left && sl == 0;
            right = right && sr == 0;
        }
        if (left || right) return true;
    }
    return false;
}

}  // namespace

EventStats exact_event_stats(std::size_t n, std::size_t jobs) {
    if (n < 2) throw DomainError("n must be at least 2");
    if (n > kMaxExhaustiveDim) throw InfeasibleSize("exhaustive enumeration is limited to n <= 6");

    TemplateSet tset;
    for (const ExpansionTerm& term : expansion_terms()) {
        if (term.partition.size() > n || term.partition.size() == 2) continue;
        tset.templates.push_back(term.partition);
        tset.vectors.push_back(template_vectors(term.partition, n));
    }

    const std::size_t bits = (n - 1) * (n - 1);
    const std::uint64_t total = std::uint64_t{1} << bits;
    const std::size_t max_w = n * (n - 1);
    const std::size_t tasks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);

    struct Counts {
        std::uint64_t singular = 0;
        std::uint64_t e8 = 0;
        std::uint64_t r11_not_l11 = 0;
        std::vector<std::uint64_t> w;
    };
    std::vector<Counts> counts(tasks);
    const std::uint32_t full = low_bits(n);

    parallel_for(tasks, jobs, [&](std::size_t t) {
        Counts& local = counts[t];
        local.w.assign(max_w + 1, 0);
        std::array<std::uint32_t, kMaxExhaustiveDim> rows{};
        std::array<std::uint32_t, kMaxExhaustiveDim> cols{};
        const std::uint64_t end = std::min(total, (t + 1) * kChunk);
        for (std::uint64_t idx = t * kChunk; idx < end; ++idx) {
            fill_normalized(rows.data(), n, idx);
            cols.fill(0);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if ((rows[r] >> c) & 1u) cols[c] |= std::uint32_t{1} << r;

            std::size_t w_left = 0;
            std::size_t w_right = 0;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    if (rows[a] == rows[b] || (rows[a] ^ rows[b]) == full) ++w_left;
                    if (cols[a] == cols[b] || (cols[a] ^ cols[b]) == full) ++w_right;
                }
            }
            ++local.w[w_left + w_right];
            if (w_right > 0 && w_left == 0) ++local.r11_not_l11;

            const std::size_t rank = rank_bits(rows.data(), n);
            if (rank == n) continue;
            ++local.singular;
            if (w_left + w_right > 0) {
                ++local.e8;
                continue;
            }
            const BernoulliMatrix m(n, std::vector<std::uint32_t>(rows.begin(), rows.begin() + n));
            bool hit = false;
            if (rank == n - 1) {
                const auto left = Partition::from_values(corank1_left_kernel(m));
                const auto right = Partition::from_values(corank1_left_kernel(m.transposed()));
                for (const Partition& p : tset.templates) hit = hit || p == left || p == right;
            } else {
                for (const auto& vs : tset.vectors) hit = hit || has_null_vector_with(m, vs);
            }
            if (hit) ++local.e8;
        }
    });

    EventStats st;
    st.n = n;
    st.matrices = total;
    std::uint64_t singular = 0;
    std::uint64_t e8 = 0;
    std::uint64_t r11 = 0;
    std::vector<std::uint64_t> w(max_w + 1, 0);
    for (const Counts& c : counts) {
        singular += c.singular;
        e8 += c.e8;
        r11 += c.r11_not_l11;
        for (std::size_t j = 0; j <= max_w; ++j) w[j] += c.w[j];
    }
    st.pn = fraction(singular, bits);
    st.p_e8_union = fraction(e8, bits);
    st.p_r11_minus_l11 = fraction(r11, bits);
    st.p_d11 = 1 - fraction(w[0], bits);
    for (std::size_t j = 0; j <= max_w; ++j) {
        const mpq_class pj = fraction(w[j], bits);
        st.w_distribution.push_back(pj);
        const mpq_class jj(static_cast<unsigned long>(j));
        st.moments.ew += jj * pj;
        st.moments.ew2 += jj * (jj - 1) / 2 * pj;
        st.moments.ew3 += jj * (jj - 1) * (jj - 2) / 6 * pj;
    }
    return st;
}

std::optional<Partition> SurveyReport::mode() const {
    std::optional<Partition> best;
    std::uint64_t count = 0;
    for (const auto& [p, c] : histogram) {
        if (c > count) {
            best = p;
            count = c;
        }
    }
    return best;
}

SurveyReport survey(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t jobs) {
    if (n < 1 || n > kMaxMatrixDim) throw DomainError("matrix dimension must be between 1 and 32");
    if (samples < 1) throw DomainError("at least one sample is required");

    SurveyReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    {
        std::ostringstream os;
        os << "splitmix64; shard s covers samples [65536 s, 65536 (s+1)) and starts from state "
              "mix64(seed + (s+1) * 0x9E3779B97F4A7C15); each sample takes n consecutive outputs, "
              "row r being the low n bits of output r (bit c set means entry -1)";
        rep.rng = os.str();
    }

    struct Shard {
        std::uint64_t singular = 0;
        std::uint64_t corank_ge2 = 0;
        std::map<Partition, std::uint64_t> histogram;
    };
    const std::uint64_t shard_count = (samples + kSurveyShardSize - 1) / kSurveyShardSize;
    std::vector<Shard> shards(static_cast<std::size_t>(shard_count));
    parallel_for(shards.size(), jobs, [&](std::size_t s) {
        SplitMix64 rng = SplitMix64::for_shard(seed, s);
        const std::uint64_t begin = s * kSurveyShardSize;
        const std::uint64_t end = std::min(samples, begin + kSurveyShardSize);
        Shard& out = shards[s];
        for (std::uint64_t i = begin; i < end; ++i) {
            const BernoulliMatrix m = BernoulliMatrix::sample(rng, n);
            if (n <= kSmall && !singular_bits(m.rows().data(), n)) continue;
            const KernelInfo info = integer_corank_and_kernel(m);
            if (info.corank == 0) continue;
            ++out.singular;
            if (info.corank >= 2) {
                ++out.corank_ge2;
                continue;
            }
            ++out.histogram[Partition::from_values(*info.kernel)];
        }
    });

    for (const Shard& s : shards) {
        rep.singular += s.singular;
        rep.corank_ge2 += s.corank_ge2;
        for (const auto& [p, c] : s.histogram) rep.histogram[p] += c;
    }
    for (const auto& [p, c] : rep.histogram) {
        const auto& known = known_novel(p.size());
        if (std::find(known.begin(), known.end(), p) == known.end()) rep.unclassified.push_back(p);
    }
    return rep;
}

}  // namespace ntl
