#include "ntl/novelty.hpp"

#include "ntl/errors.hpp"
#include "ntl/parallel.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace ntl {

namespace {

std::size_t stream_rank(const Partition& lambda) {
    const std::size_t k = lambda.size();
    StreamingRank span(k);
    ComplementStream stream(lambda);
    Mask m = 0;
    while (span.rank() + 1 < k && stream.next(m)) span.add_signs(m);
    return span.rank();
}

Int128 to_int128(const mpz_class& v) {
    const mpz_class bound = mpz_class(1) << 100;
    if (abs(v) >= bound) throw InfeasibleSize("kernel entry too large for certification");
    const bool neg = v < 0;
    mpz_class a = abs(v);
    const mpz_class lo_part = a & ((mpz_class(1) << 64) - 1);
    const mpz_class hi_part = a >> 64;
    Int128 r = (static_cast<Int128>(hi_part.get_ui()) << 64) | static_cast<Int128>(lo_part.get_ui());
    return neg ? -r : r;
}

// Some x with lambda . x = 0 and u . x != 0, found by splitting the
// coordinates in two halves and matching partial lambda-sums.
std::optional<Mask> find_nonorthogonal(const Partition& lambda, const std::vector<Int128>& u) {
    const std::size_t k = lambda.size();
    const std::size_t h = k / 2;
    const std::size_t tail = k - h;

    struct Group {
        Int128 first_value;
        Mask first_mask;
        bool has_second = false;
        Int128 second_value = 0;
        Mask second_mask = 0;
    };
    std::unordered_map<std::int64_t, Group> right;
    for (Mask m = 0; m < (Mask{1} << tail); ++m) {
        std::int64_t ls = 0;
        Int128 us = 0;
        for (std::size_t i = 0; i < tail; ++i) {
            const bool neg = (m >> i) & 1u;
            ls += neg ? -static_cast<std::int64_t>(lambda[h + i]) : lambda[h + i];
            us += neg ? -u[h + i] : u[h + i];
        }
        auto [it, inserted] = right.try_emplace(ls, Group{us, m});
        if (!inserted && !it->second.has_second && it->second.first_value != us) {
            it->second.has_second = true;
            it->second.second_value = us;
            it->second.second_mask = m;
        }
    }
    for (Mask m = 0; m < (Mask{1} << h); m += 2) {  // coordinate 0 stays +
        std::int64_t ls = 0;
        Int128 us = 0;
        for (std::size_t i = 0; i < h; ++i) {
            const bool neg = (m >> i) & 1u;
            ls += neg ? -static_cast<std::int64_t>(lambda[i]) : lambda[i];
            us += neg ? -u[i] : u[i];
        }
        const auto it = right.find(-ls);
        if (it == right.end()) continue;
        const Group& g = it->second;
        if (g.first_value != -us) return m | (g.first_mask << h);
        if (g.has_second) return m | (g.second_mask << h);
    }
    return std::nullopt;
}

std::size_t certified_rank(const Partition& lambda) {
    const std::size_t k = lambda.size();
    if (k < 2 || complement_size(lambda) == 0) return 0;
    StreamingRank span(k);
    {
        ComplementStream stream(lambda);
        Mask m = 0;
        for (std::size_t i = 0; i < 4 * k && span.rank() + 1 < k && stream.next(m); ++i) span.add_signs(m);
    }
    while (span.rank() + 1 < k) {
        bool grew = false;
        for (const auto& kv : orthogonal_complement(span.basis(), k)) {
            std::vector<Int128> u(k);
            for (std::size_t i = 0; i < k; ++i) u[i] = to_int128(kv[i]);
            if (const auto x = find_nonorthogonal(lambda, u)) {
                if (!span.add_signs(*x)) throw VerificationError("certification found a dependent column");
                grew = true;
                break;
            }
        }
        if (!grew) break;
    }
    return span.rank();
}

}  // namespace

std::size_t complement_rank(const Partition& lambda, RankStrategy strategy) {
    if (strategy == RankStrategy::Automatic) {
        strategy = lambda.size() <= kStreamMaxLength ? RankStrategy::Stream : RankStrategy::Certify;
    }
    return strategy == RankStrategy::Stream ? stream_rank(lambda) : certified_rank(lambda);
}

NoveltyCertificate is_novel(const Partition& lambda, RankStrategy strategy) {
    NoveltyCertificate c;
    c.gcd = lambda.gcd();
    c.p = complement_size(lambda) / 2;
    c.rank = c.p == 0 ? 0 : complement_rank(lambda, strategy);
    c.novel = c.p > 0 && c.rank + 1 == lambda.size() && c.gcd == 1;
    return c;
}

bool implies_11(const Partition& lambda) {
    const Complement c = complement(lambda);
    if (c.p() == 0) throw DomainError("partition " + lambda.to_string() + " is not fairly divisible");
    const std::size_t k = lambda.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            bool equal = true;
            bool opposite = true;
            for (Mask m : c.masks) {
                const bool same = ((m >> i) & 1u) == ((m >> j) & 1u);
                equal = equal && same;
                opposite = opposite && !same;
                if (!equal && !opposite) break;
            }
            if (equal || opposite) return true;
        }
    }
    return false;
}

namespace {

void check_relation_length(std::size_t len) {
    if (len > kMaxRelationLength) {
        throw InfeasibleSize("reduction and equivalence searches are limited to length " +
                             std::to_string(kMaxRelationLength));
    }
}

bool dot_is_zero(const std::vector<std::int64_t>& v, Mask x) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (x >> i) & 1u ? -v[i] : v[i];
    return s == 0;
}

}  // namespace

bool reduces(const Partition& mu, const Partition& lambda) {
    const std::size_t m = mu.size();
    const std::size_t k = lambda.size();
    if (m < k) throw DomainError("reduction needs len(mu) >= len(lambda)");
    check_relation_length(m);
    const Complement cm = complement(mu);
    if (cm.p() == 0) return true;

    for (Mask subset = 0; subset < (Mask{1} << m); ++subset) {
        if (static_cast<std::size_t>(__builtin_popcount(subset)) != k) continue;
        std::vector<std::size_t> coords;
        for (std::size_t i = 0; i < m; ++i) {
            if ((subset >> i) & 1u) coords.push_back(i);
        }
        std::vector<Mask> projected;
        projected.reserve(cm.p());
        StreamingRank span(k);
        for (Mask x : cm.masks) {
            Mask y = 0;
            for (std::size_t i = 0; i < k; ++i) y |= ((x >> coords[i]) & 1u) << i;
            projected.push_back(y);
            if (span.rank() < k) span.add_signs(y);
        }
        if (span.rank() == k) continue;
        if (span.rank() + 1 == k) {
            const auto u = to_int64(orthogonal_complement(span.basis(), k).front());
            std::vector<std::uint32_t> a;
            for (std::int64_t e : u) a.push_back(static_cast<std::uint32_t>(e < 0 ? -e : e));
            std::sort(a.begin(), a.end(), std::greater<>());
            if (a.back() == 0 || lambda.largest() % a.front() != 0) continue;
            const std::uint32_t c = lambda.largest() / a.front();
            for (auto& e : a) e *= c;
            if (a == lambda.parts()) return true;
            continue;
        }
        bool found = false;
        for_each_template_vector(lambda, k, [&](const std::vector<std::int64_t>& v) {
            if (found) return;
            found = std::all_of(projected.begin(), projected.end(), [&](Mask y) { return dot_is_zero(v, y); });
        });
        if (found) return true;
    }
    return false;
}

bool equivalent(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw DomainError("equivalence needs partitions of equal length");
    check_relation_length(lambda.size());
    const Complement cl = complement(lambda);
    if (cl.p() != complement_size(mu) / 2) return false;
    if (cl.p() == 0) return true;
    bool found = false;
    for_each_template_vector(mu, mu.size(), [&](const std::vector<std::int64_t>& w) {
        if (found) return;
        found = std::all_of(cl.masks.begin(), cl.masks.end(), [&](Mask x) { return dot_is_zero(w, x); });
    });
    return found;
}

namespace {

constexpr std::size_t kEnumMax = kMaxEnumerationLength;
using Key = std::array<std::uint16_t, kEnumMax>;

struct KeyHash {
    std::size_t operator()(const Key& key) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint16_t v : key) h = (h ^ v) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

// Fully reduced integer echelon form: row i is zero on every other pivot
// column and positive on its own.
struct Echelon {
    std::size_t rank = 0;
    std::array<std::array<std::int64_t, kEnumMax>, kEnumMax> rows{};
    std::array<std::size_t, kEnumMax> pivot{};
};

void normalize_row(std::array<std::int64_t, kEnumMax>& r, std::size_t k) {
    std::int64_t g = 0;
    for (std::size_t j = 0; j < k; ++j) g = std::gcd(g, r[j]);
    if (g > 1) {
        for (std::size_t j = 0; j < k; ++j) r[j] /= g;
    }
}

bool extend(const Echelon& in, Mask x, std::size_t k, Echelon& out) {
    std::array<std::int64_t, kEnumMax> v{};
    for (std::size_t j = 0; j < k; ++j) v[j] = (x >> j) & 1u ? -1 : 1;
    for (std::size_t i = 0; i < in.rank; ++i) {
        const std::size_t p = in.pivot[i];
        if (v[p] == 0) continue;
        const std::int64_t a = in.rows[i][p];
        const std::int64_t b = v[p];
        for (std::size_t j = 0; j < k; ++j) v[j] = a * v[j] - b * in.rows[i][j];
        normalize_row(v, k);
    }
    std::size_t lead = 0;
    while (lead < k && v[lead] == 0) ++lead;
    if (lead == k) return false;
    if (v[lead] < 0) {
        for (std::size_t j = 0; j < k; ++j) v[j] = -v[j];
    }
    out.rank = in.rank + 1;
    for (std::size_t i = 0; i < in.rank; ++i) {
        auto r = in.rows[i];
        if (r[lead] != 0) {
            const std::int64_t a = v[lead];
            const std::int64_t b = r[lead];
            for (std::size_t j = 0; j < k; ++j) r[j] = a * r[j] - b * v[j];
            normalize_row(r, k);
        }
        out.rows[i] = r;
        out.pivot[i] = in.pivot[i];
    }
    out.rows[in.rank] = v;
    out.pivot[in.rank] = lead;
    return true;
}

// With k-2 rows fixed, adds the last column and reads off the one-dimensional
// left kernel directly. Returns false when x is dependent or the kernel has a
// zero entry.
bool leaf_kernel(const Echelon& e, Mask x, std::size_t k, Key& key) {
    std::array<bool, kEnumMax> is_pivot{};
    for (std::size_t i = 0; i < e.rank; ++i) is_pivot[e.pivot[i]] = true;
    std::size_t f1 = k;
    std::size_t f2 = k;
    for (std::size_t j = 0; j < k; ++j) {
        if (is_pivot[j]) continue;
        (f1 == k ? f1 : f2) = j;
    }
    std::int64_t l = 1;
    for (std::size_t i = 0; i < e.rank; ++i) l = std::lcm(l, e.rows[i][e.pivot[i]]);

    auto sign = [&](std::size_t j) -> std::int64_t { return (x >> j) & 1u ? -1 : 1; };
    std::int64_t alpha = l * sign(f1);
    std::int64_t beta = l * sign(f2);
    for (std::size_t i = 0; i < e.rank; ++i) {
        const std::size_t p = e.pivot[i];
        const std::int64_t scale = (l / e.rows[i][p]) * sign(p);
        alpha -= scale * e.rows[i][f1];
        beta -= scale * e.rows[i][f2];
    }
    if (alpha == 0 && beta == 0) return false;
    const std::int64_t g = std::gcd(alpha, beta);
    alpha /= g;
    beta /= g;

    std::array<std::int64_t, kEnumMax> v{};
    v[f1] = beta * l;
    v[f2] = -alpha * l;
    for (std::size_t i = 0; i < e.rank; ++i) {
        const std::size_t p = e.pivot[i];
        v[p] = -(l / e.rows[i][p]) * (e.rows[i][f1] * beta - e.rows[i][f2] * alpha);
    }
    std::int64_t c = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (v[j] == 0) return false;
        c = std::gcd(c, v[j]);
    }
    std::array<std::int64_t, kEnumMax> a{};
    for (std::size_t j = 0; j < k; ++j) a[j] = (v[j] < 0 ? -v[j] : v[j]) / c;
    std::sort(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());
    if (a[0] > static_cast<std::int64_t>(kMaxPartValue)) return false;
    key.fill(0);
    for (std::size_t j = 0; j < k; ++j) key[j] = static_cast<std::uint16_t>(a[j]);
    return true;
}

struct EnumContext {
    std::size_t k;
    std::vector<Mask> columns;
    std::unordered_set<Key, KeyHash>* found;
};

void descend(const EnumContext& ctx, const Echelon& e, std::size_t start) {
    const std::size_t need = ctx.k - 1;
    const std::size_t n = ctx.columns.size();
    if (e.rank + 1 == need) {
        Key key;
        for (std::size_t i = start; i < n; ++i) {
            if (leaf_kernel(e, ctx.columns[i], ctx.k, key)) ctx.found->insert(key);
        }
        return;
    }
    const std::size_t remaining = need - e.rank;
    for (std::size_t i = start; i + remaining <= n; ++i) {
        Echelon next;
        if (extend(e, ctx.columns[i], ctx.k, next)) descend(ctx, next, i + 1);
    }
}

}  // namespace

std::vector<Partition> enumerate_novel(std::size_t k, std::size_t jobs) {
    if (k < 2) throw DomainError("novel partitions have length at least 2");
    if (k > kMaxEnumerationLength) {
        throw InfeasibleSize("exact enumeration is limited to length " + std::to_string(kMaxEnumerationLength) +
                             "; use `pn survey` for longer templates");
    }
    std::vector<Mask> columns;
    for (Mask m = 1; m < (Mask{1} << (k - 1)); ++m) columns.push_back(m << 1);

    std::vector<Key> keys;
    if (k == 2) {
        keys.push_back(Key{1, 1});
    } else {
        const std::size_t tasks = columns.size() - (k - 1) + 1;
        std::vector<std::unordered_set<Key, KeyHash>> per_task(tasks);
        parallel_for(tasks, jobs, [&](std::size_t t) {
            EnumContext ctx{k, columns, &per_task[t]};
            Echelon root;
            Echelon first;
            if (!extend(root, columns[t], k, first)) return;
            descend(ctx, first, t + 1);
        });
        std::unordered_set<Key, KeyHash> all;
        for (const auto& s : per_task) all.insert(s.begin(), s.end());
        keys.assign(all.begin(), all.end());
    }

    std::vector<Partition> out;
    for (const Key& key : keys) {
        std::vector<std::uint32_t> parts(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(k));
        Partition lambda(std::move(parts));
        if (is_novel(lambda).novel) out.push_back(std::move(lambda));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void verify_witness(const WitnessMatrix& w, const Partition& lambda) {
    const std::size_t m = w.side();
    if (w.entries.cols() != m) throw VerificationError("witness matrix is not square");
    if (rank_of(w.entries) + 1 != m) throw VerificationError("witness matrix does not have corank 1");
    const auto kernel = kernel_primitive(w.entries);
    if (!kernel || *kernel != w.kernel || !has_template(*kernel, lambda)) {
        throw VerificationError("witness kernel does not have template " + lambda.to_string());
    }
}

WitnessMatrix minimal_witness(const Partition& lambda) {
    if (!is_novel(lambda).novel) throw DomainError("partition " + lambda.to_string() + " is not novel");
    const SignMatrix a = a_matrix(lambda);
    const std::size_t k = a.rows();
    const std::size_t p = a.cols();

    WitnessMatrix w;
    if (p <= k) {
        w.padded = true;
        w.entries = SignMatrix(k, k);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) w.entries.set(r, c, a.at(r, std::min(c, p - 1)));
        }
    } else {
        StreamingRank span(p);
        std::vector<std::int64_t> v(p);
        auto load_row = [&](std::size_t r) {
            for (std::size_t c = 0; c < p; ++c) v[c] = a.at(r, c);
        };
        for (std::size_t r = 0; r + 1 < k; ++r) {
            load_row(r);
            if (!span.add(v)) throw VerificationError("leading rows of the complement matrix are dependent");
        }
        std::vector<std::size_t> chosen;
        for (std::size_t j = 0; j < p && span.rank() < p; ++j) {
            std::fill(v.begin(), v.end(), 1);
            v[j] = -1;
            if (span.add(v)) chosen.push_back(j);
        }
        if (span.rank() < p) throw VerificationError("basis extension did not reach full rank");
        w.entries = SignMatrix(p, p);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < p; ++c) w.entries.set(r, c, a.at(r, c));
        }
        for (std::size_t i = 1; i < chosen.size(); ++i) {
            for (std::size_t c = 0; c < p; ++c) w.entries.set(k + i - 1, c, c == chosen[i] ? -1 : 1);
        }
    }
    const auto kernel = kernel_primitive(w.entries);
    if (!kernel) throw VerificationError("witness matrix does not have corank 1");
    w.kernel = *kernel;
    verify_witness(w, lambda);
    return w;
}

}  // namespace ntl
