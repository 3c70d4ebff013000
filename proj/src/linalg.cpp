#include "ntl/linalg.hpp"

#include "ntl/errors.hpp"
#include "ntl/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ntl {

namespace {

Int128 iabs(Int128 a) { return a < 0 ? -a : a; }

std::int64_t igcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

Int128 igcd(Int128 a, Int128 b) {
    unsigned __int128 x = static_cast<unsigned __int128>(iabs(a));
    unsigned __int128 y = static_cast<unsigned __int128>(iabs(b));
    while (y != 0) {
        const unsigned __int128 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<Int128>(x);
}

mpz_class igcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

bool is_one(std::int64_t g) { return g == 1; }
bool is_one(Int128 g) { return g == 1; }
bool is_one(const mpz_class& g) { return g == 1; }

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

mpz_class to_mpz(Int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

mpz_class to_mpz(const mpz_class& v) { return v; }

template <class Int>
Int from_i64(std::int64_t v) {
    if constexpr (std::is_same_v<Int, mpz_class>) {
        return mpz_class(static_cast<long>(v));
    } else {
        return static_cast<Int>(v);
    }
}

template <class Int>
void normalize(std::vector<Int>& x) {
    Int g = 0;
    for (const Int& e : x) {
        if (e != 0) {
            g = igcd(g, e);
            if (is_one(g)) return;
        }
    }
    if (g == 0) return;
    for (Int& e : x) e /= g;
}

}  // namespace

template <class Int>
bool EchelonBasis<Int>::add(std::span<const std::int64_t> v) {
    scratch_.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j) scratch_[j] = from_i64<Int>(v[j]);
    for (std::size_t idx = 0; idx < rows_.size(); ++idx) {
        const std::size_t p = pivots_[idx];
        if (scratch_[p] == 0) continue;
        const std::vector<Int>& row = rows_[idx];
        const Int a = row[p];
        const Int b = scratch_[p];
        for (std::size_t j = 0; j < dim_; ++j) {
            if (row[j] == 0) {
                if (a != 1) scratch_[j] *= a;
            } else {
                scratch_[j] = a * scratch_[j] - b * row[j];
            }
        }
        normalize(scratch_);
    }
    std::size_t lead = 0;
    while (lead < dim_ && scratch_[lead] == 0) ++lead;
    if (lead == dim_) return false;
    normalize(scratch_);
    if (scratch_[lead] < 0) {
        for (Int& e : scratch_) e = -e;
    }
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
    const auto offset = at - pivots_.begin();
    pivots_.insert(at, lead);
    rows_.insert(rows_.begin() + offset, scratch_);
    return true;
}

template class EchelonBasis<std::int64_t>;
template class EchelonBasis<Int128>;
template class EchelonBasis<mpz_class>;

namespace {

using RankImpl = std::variant<EchelonBasis<std::int64_t>, EchelonBasis<Int128>, EchelonBasis<mpz_class>>;

RankImpl make_impl(std::size_t dim) {
    if (dim <= kMaxInt64Dim) return EchelonBasis<std::int64_t>(dim);
    if (dim <= kMaxInt128Dim) return EchelonBasis<Int128>(dim);
    return EchelonBasis<mpz_class>(dim);
}

}  // namespace

StreamingRank::StreamingRank(std::size_t dim) : dim_(dim), impl_(make_impl(dim)), buf_(dim) {}

std::size_t StreamingRank::rank() const {
    return std::visit([](const auto& e) { return e.rank(); }, impl_);
}

bool StreamingRank::add(std::span<const std::int64_t> v) {
    return std::visit([&](auto& e) { return e.add(v); }, impl_);
}

bool StreamingRank::add_signs(Mask mask) {
    for (std::size_t i = 0; i < dim_; ++i) buf_[i] = (mask >> i) & 1u ? -1 : 1;
    return add(buf_);
}

std::vector<std::vector<mpz_class>> StreamingRank::basis() const {
    return std::visit(
        [](const auto& e) {
            std::vector<std::vector<mpz_class>> out;
            for (const auto& row : e.rows()) {
                std::vector<mpz_class> r;
                r.reserve(row.size());
                for (const auto& x : row) r.push_back(to_mpz(x));
                out.push_back(std::move(r));
            }
            return out;
        },
        impl_);
}

void make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& e : v) g = igcd(g, e);
    if (g == 0) return;
    const auto lead = std::find_if(v.begin(), v.end(), [](const mpz_class& e) { return e != 0; });
    if (*lead < 0) g = -g;
    for (auto& e : v) e /= g;
}

void make_primitive(std::vector<std::int64_t>& v) {
    std::int64_t g = 0;
    for (std::int64_t e : v) g = std::gcd(g, e);
    if (g == 0) return;
    const auto lead = std::find_if(v.begin(), v.end(), [](std::int64_t e) { return e != 0; });
    if (*lead < 0) g = -g;
    for (auto& e : v) e /= g;
}

std::vector<std::int64_t> to_int64(const std::vector<mpz_class>& v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.fits_slong_p()) throw InfeasibleSize("kernel entry exceeds 64 bits");
        out.push_back(e.get_si());
    }
    return out;
}

std::vector<std::vector<mpz_class>> orthogonal_complement(const std::vector<std::vector<mpz_class>>& rows,
                                                          std::size_t dim) {
    std::vector<std::vector<mpq_class>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) a.emplace_back(r.begin(), r.end());

    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < dim && rank < a.size(); ++c) {
        std::size_t pr = rank;
        while (pr < a.size() && a[pr][c] == 0) ++pr;
        if (pr == a.size()) continue;
        std::swap(a[pr], a[rank]);
        const mpq_class inv = 1 / a[rank][c];
        for (auto& e : a[rank]) e *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][c] == 0) continue;
            const mpq_class f = a[i][c];
            for (std::size_t j = 0; j < dim; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_cols.push_back(c);
        ++rank;
    }

    std::vector<std::vector<mpz_class>> out;
    std::size_t next_pivot = 0;
    for (std::size_t f = 0; f < dim; ++f) {
        if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        std::vector<mpq_class> v(dim, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[pivot_cols[i]] = -a[i][f];
        mpz_class l = 1;
        for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
        std::vector<mpz_class> w(dim);
        for (std::size_t j = 0; j < dim; ++j) w[j] = mpz_class(v[j] * l);
        make_primitive(w);
        out.push_back(std::move(w));
    }
    return out;
}

std::size_t rank_of(const SignMatrix& m) {
    const std::size_t s = std::min(m.rows(), m.cols());
    if (s == 0) return 0;
    if (s <= kernels::kMaxExactF64Dim) {
        std::vector<double> a(m.rows() * m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) a[r * m.cols() + c] = m.at(r, c);
        }
        return kernels::active().elimination_rank(a.data(), m.rows(), m.cols(), m.cols());
    }
    const bool by_columns = m.rows() <= m.cols();
    StreamingRank sr(s);
    std::vector<std::int64_t> v(s);
    const std::size_t count = by_columns ? m.cols() : m.rows();
    for (std::size_t i = 0; i < count && sr.rank() < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) v[j] = by_columns ? m.at(j, i) : m.at(i, j);
        sr.add(v);
    }
    return sr.rank();
}

std::vector<std::vector<mpz_class>> left_kernel_basis(const SignMatrix& m) {
    const std::size_t k = m.rows();
    StreamingRank sr(k);
    std::vector<std::int64_t> v(k);
    for (std::size_t c = 0; c < m.cols() && sr.rank() < k; ++c) {
        for (std::size_t r = 0; r < k; ++r) v[r] = m.at(r, c);
        sr.add(v);
    }
    return orthogonal_complement(sr.basis(), k);
}

std::optional<std::vector<std::int64_t>> kernel_primitive(const SignMatrix& m) {
    const auto basis = left_kernel_basis(m);
    if (basis.size() != 1) return std::nullopt;
    return to_int64(basis.front());
}

}  // namespace ntl
