#include "ntl/expansion.hpp"

#include "ntl/errors.hpp"
#include "ntl/kernels.hpp"
#include "ntl/novelty.hpp"
#include "ntl/parallel.hpp"

#include <algorithm>

namespace ntl {

namespace {

mpz_class binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

mpq_class pow2_inverse(std::size_t e) {
    mpz_class d = 1;
    d <<= e;
    return mpq_class(mpz_class(1), d);
}

mpq_class power(const mpq_class& base, std::size_t e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

Partition ones(std::size_t k) { return Partition(std::vector<std::uint32_t>(k, 1)); }

Partition two_then_ones(std::size_t k) {
    std::vector<std::uint32_t> parts(k, 1);
    parts[0] = 2;
    return Partition(std::move(parts));
}

void require_n(std::size_t n) {
    if (n < 2) throw DomainError("n must be at least 2");
}

}  // namespace

const std::vector<ExpansionTerm>& expansion_terms() {
    static const std::vector<ExpansionTerm> terms = [] {
        std::vector<ExpansionTerm> out;
        for (const Partition& lambda : {ones(2), ones(4), ones(6), ones(8), two_then_ones(5), ones(10),
                                        two_then_ones(7), ones(12)}) {
            out.push_back({lambda, r_lambda(lambda).value()});
        }
        return out;
    }();
    return terms;
}

std::vector<mpz_class> q_values(std::size_t n) {
    require_n(n);
    const mpz_class c2 = binomial(n, 2);
    std::vector<mpz_class> q(8);
    q[0] = 4 * c2;
    q[1] = 16 * binomial(n, 4);
    q[2] = 64 * binomial(n, 6);
    q[3] = 256 * binomial(n, 8);
    q[4] = 32 * 5 * binomial(n, 5) - 4 * (2 * c2 * c2 + 8 * binomial(n, 4) + 5 * binomial(n, 3));
    q[5] = 1024 * binomial(n, 10);
    q[6] = 128 * 7 * binomial(n, 7);
    q[7] = 4096 * binomial(n, 12);
    return q;
}

mpq_class e8_estimate(std::size_t n) {
    const auto q = q_values(n);
    const auto& terms = expansion_terms();
    mpq_class sum = 0;
    for (std::size_t i = 0; i < q.size(); ++i) sum += mpq_class(q[i]) * power(terms[i].rate, n);
    return sum;
}

mpq_class d11_lower_bound(std::size_t n) {
    require_n(n);
    const mpz_class c = binomial(n, 2);
    return mpq_class(4 * c) * pow2_inverse(n) - mpq_class(12 * c * c - 4 * c) * pow2_inverse(2 * n);
}

mpq_class ie_t(std::size_t n) {
    require_n(n);
    return mpq_class(2 * binomial(n, 2)) * pow2_inverse(n);
}

MomentTriple ie_moments(std::size_t n) {
    require_n(n);
    const mpz_class c = binomial(n, 2);
    const mpz_class c3 = binomial(n, 3);
    MomentTriple m;
    m.ew = mpq_class(4 * c) * pow2_inverse(n);
    m.ew2 = mpq_class(12 * c * c - 4 * c) * pow2_inverse(2 * n);
    const mpq_class bracket = mpq_class(13, 3) * mpq_class(c * c * c) - mpq_class(4 * c * c) - mpq_class(2, 3) * mpq_class(c) -
                              mpq_class(9 * c3) - mpq_class(c * binomial(n - 2, 2));
    // 2^{3-3n} = 8 / 2^{3n}
    m.ew3 = mpq_class(4 * c3) * pow2_inverse(2 * n) + 8 * bracket * pow2_inverse(3 * n);
    return m;
}

BonferroniBounds bonferroni_bounds(const std::vector<mpq_class>& singles, const std::vector<mpq_class>& pairs,
                                   const std::vector<mpq_class>& cross) {
    BonferroniBounds b;
    for (const auto& x : singles) b.upper += x;
    b.lower = b.upper;
    for (const auto& x : pairs) b.lower -= x;
    for (const auto& x : cross) b.lower -= x;
    return b;
}

mpq_class r11_minus_l11_bound(std::size_t n) {
    const mpq_class t = ie_t(n);
    const mpq_class g1 = t * t - t * pow2_inverse(n - 1);
    const mpq_class g2 = 2 * t * t;
    return t - g1 - g2;
}

PairReport pair_intersection_check(const Partition& lambda, const Partition& mu, std::size_t jobs) {
    if (lambda == mu) throw DomainError("the two templates must differ");
    const std::size_t j = lambda.size();
    const std::size_t k = mu.size();
    if (j + k > kMaxPairSupport) throw InfeasibleSize("combined support is limited to 14 coordinates");

    PairReport rep{lambda, mu, 0, 0, 0, 0, {}, {}, false};
    const mpq_class rl = r_lambda(lambda).value();
    const mpq_class rm = r_lambda(mu).value();
    rep.bound = (rl > rm ? rl : rm) / 2;

    // v = lambda on coordinates 0..j-1; these are the x restricted there with v.x = 0.
    std::vector<std::uint32_t> zero_masks;
    for (Mask x = 0; x < (Mask{1} << j); ++x) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < j; ++i) s += ((x >> i) & 1u) ? -std::int64_t(lambda[i]) : std::int64_t(lambda[i]);
        if (s == 0) zero_masks.push_back(x);
    }

    // One task per placement of the overlap O inside v's support.
    struct Task {
        std::size_t overlap;
        std::vector<std::size_t> positions;
    };
    std::vector<Task> tasks;
    for (std::size_t o = 0; o <= std::min(j, k); ++o) {
        std::vector<bool> pick(j, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(o), true);
        do {
            Task t{o, {}};
            for (std::size_t i = 0; i < j; ++i)
                if (pick[i]) t.positions.push_back(i);
            tasks.push_back(std::move(t));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }

    struct Best {
        std::size_t configurations = 0;
        mpq_class joint = -1;
        std::vector<std::int64_t> w;
        std::size_t m = 0;
    };
    std::vector<Best> results(tasks.size());
    const auto& kern = kernels::active();

    parallel_for(tasks.size(), jobs, [&](std::size_t ti) {
        const Task& task = tasks[ti];
        const std::size_t o = task.overlap;
        const std::size_t fresh = k - o;
        const std::size_t m = j + fresh;
        Best& best = results[ti];
        best.m = m;

        std::vector<std::uint32_t> perm(mu.parts().rbegin(), mu.parts().rend());
        std::vector<std::int32_t> weights(j);
        std::vector<std::int32_t> dots(zero_masks.size());
        do {
            // Fresh coordinates are exchangeable: keep one ordering of their values.
            if (!std::is_sorted(perm.begin() + static_cast<std::ptrdiff_t>(o), perm.end(), std::greater<>()))
                continue;
            std::int64_t span = 0;
            for (std::size_t i = o; i < k; ++i) span += perm[i];
            // ways[s + span] = number of signings of the fresh values summing to s
            std::vector<std::uint64_t> ways(static_cast<std::size_t>(2 * span + 1), 0);
            ways[static_cast<std::size_t>(span)] = 1;
            for (std::size_t i = o; i < k; ++i) {
                std::vector<std::uint64_t> next(ways.size(), 0);
                kern.shifted_sum(ways.data(), ways.size(), perm[i], next.data());
                ways.swap(next);
            }
            // Signs on fresh coordinates are absorbed by flipping X there; with no
            // fresh coordinates the global sign of w is fixed instead.
            const Mask sign_count = Mask{1} << o;
            for (Mask signs = 0; signs < sign_count; ++signs) {
                if (fresh == 0 && (signs & 1u)) continue;
                std::fill(weights.begin(), weights.end(), 0);
                for (std::size_t t = 0; t < o; ++t) {
                    const auto value = static_cast<std::int32_t>(perm[t]);
                    weights[task.positions[t]] = ((signs >> t) & 1u) ? -value : value;
                }
                if (!zero_masks.empty())
                    kern.signed_dot(weights.data(), j, zero_masks.data(), zero_masks.size(), dots.data());
                std::uint64_t count = 0;
                for (std::int32_t d : dots) {
                    const std::int64_t need = -static_cast<std::int64_t>(d);
                    if (need < -span || need > span) continue;
                    count += ways[static_cast<std::size_t>(need + span)];
                }
                ++best.configurations;
                mpq_class joint = mpq_class(mpz_class(static_cast<unsigned long>(count))) * pow2_inverse(m);
                if (joint > best.joint) {
                    best.joint = joint;
                    best.w.assign(m, 0);
                    for (std::size_t i = 0; i < j; ++i) best.w[i] = weights[i];
                    for (std::size_t i = o; i < k; ++i) best.w[j + (i - o)] = perm[i];
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    });

    rep.max_joint = -1;
    std::size_t worst_m = 0;
    for (const Best& b : results) {
        rep.configurations += b.configurations;
        if (b.joint > rep.max_joint) {
            rep.max_joint = b.joint;
            rep.worst_w = b.w;
            worst_m = b.m;
        }
    }
    rep.worst_v.assign(worst_m, 0);
    for (std::size_t i = 0; i < j && i < worst_m; ++i) rep.worst_v[i] = lambda[i];
    rep.max_ratio = rep.bound > 0 ? mpq_class(rep.max_joint / rep.bound) : mpq_class(0);
    rep.holds = rep.max_joint <= rep.bound;
    return rep;
}

mpz_class falling_factorial(std::uint64_t p, std::size_t n) {
    mpz_class out = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (p <= i) return 0;
        out *= static_cast<unsigned long>(p - i);
    }
    return out;
}

namespace {

std::uint64_t novel_p(const Partition& lambda) {
    const NoveltyCertificate cert = is_novel(lambda);
    if (cert.p == 0) throw DomainError("partition is not fairly divisible");
    if (!cert.novel) throw DomainError("partition is not novel");
    return cert.p;
}

mpq_class falling_ratio(std::uint64_t p, std::size_t n) {
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    mpq_class out(falling_factorial(p, n), pn);
    out.canonicalize();
    return out;
}

}  // namespace

mpq_class conditional_ratio_r11(const Partition& lambda, std::size_t n) {
    if (lambda.size() != n) throw DomainError("this ratio needs len(lambda) = n");
    return falling_ratio(novel_p(lambda), n);
}

mpq_class conditional_ratio_r11_r1111(const Partition& lambda, std::size_t n) {
    if (lambda.size() + 1 != n) throw DomainError("this ratio needs len(lambda) = n - 1");
    const std::uint64_t p = novel_p(lambda);
    mpq_class second = mpq_class(binomial(n, 2)) * falling_ratio(p, n - 1) / mpq_class(mpz_class(static_cast<unsigned long>(2 * p)));
    return falling_ratio(p, n) + second;
}

bool lemma_trivial(std::size_t n) {
    const mpz_class c = binomial(n, 2);
    return (c * c - c) == 2 * (3 * binomial(n, 4) + 3 * binomial(n, 3));
}

}  // namespace ntl
