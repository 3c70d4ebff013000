#include "ntl/bounds.hpp"

#include "ntl/catalog.hpp"
#include "ntl/errors.hpp"
#include "ntl/novelty.hpp"
#include "ntl/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace ntl {

namespace {

mpz_class binomial(std::size_t n, std::size_t k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Partition repeated(std::vector<std::pair<std::uint32_t, std::size_t>> blocks) {
    std::vector<std::uint32_t> parts;
    for (const auto& [value, count] : blocks) parts.insert(parts.end(), count, value);
    return Partition(std::move(parts));
}

}  // namespace

mpz_class elo_bound(std::size_t k) { return binomial(k, k / 2); }

mpz_class erdos_interval_bound(std::size_t k, std::size_t r) {
    std::vector<mpz_class> coeffs;
    for (std::size_t j = 0; j <= k; ++j) coeffs.push_back(binomial(k, j));
    std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
    mpz_class sum = 0;
    for (std::size_t i = 0; i < r && i < coeffs.size(); ++i) sum += coeffs[i];
    return sum;
}

mpz_class not_all_equal_bound(std::size_t k) {
    if (k < 2) throw DomainError("partitions with unequal parts have at least two parts");
    return erdos_interval_bound(k - 2, 4);
}

bool ranked_before(const Partition& a, const DyadicProbability& ra, const Partition& b,
                   const DyadicProbability& rb) {
    if (ra != rb) return ra > rb;
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.sum() != b.sum()) return a.sum() < b.sum();
    return a < b;
}

std::vector<RankedRow> ranked_table(const std::vector<Partition>& candidates, const mpq_class& r_min) {
    std::set<Partition> unique(candidates.begin(), candidates.end());
    std::vector<RankedRow> rows;
    for (const Partition& lambda : unique) {
        DyadicProbability r = r_lambda(lambda);
        if (r.value() < r_min) continue;
        rows.push_back({0, lambda, std::move(r), lambda.size() <= kMaxEnumerationLength ? "proved" : "conjectured"});
    }
    std::sort(rows.begin(), rows.end(), [](const RankedRow& x, const RankedRow& y) {
        return ranked_before(x.partition, x.r, y.partition, y.r);
    });
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].index = i + 1;
    return rows;
}

std::vector<Partition> table_candidates(const mpq_class& r_min, std::size_t max_len, std::size_t jobs) {
    if (max_len > kMaxParts) throw DomainError("max length is limited to 32");
    std::vector<Partition> out = known_novel_up_to(std::min<std::size_t>(max_len, 8));

    std::vector<Partition> family;
    for (std::size_t k = 2; k <= max_len; ++k) {
        for (std::size_t c3 = 0; c3 <= k; ++c3) {
            for (std::size_t c2 = 0; c2 + c3 <= k; ++c2) {
                Partition lambda = repeated({{3, c3}, {2, c2}, {1, k - c3 - c2}});
                if (lambda.gcd() != 1) continue;
                if (r_lambda(lambda).value() < r_min) continue;
                family.push_back(std::move(lambda));
            }
        }
    }
    std::vector<char> novel(family.size(), 0);
    parallel_for(family.size(), jobs, [&](std::size_t i) { novel[i] = is_novel(family[i]).novel ? 1 : 0; });
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (novel[i]) out.push_back(family[i]);
    }
    return out;
}

std::string ranked_table_csv(const std::vector<RankedRow>& rows) {
    std::ostringstream os;
    os << "index,partition,len,r,r256,provenance\n";
    for (const RankedRow& row : rows) {
        os << row.index << ",\"" << row.partition.to_string() << "\"," << row.length() << ',' << row.r.fraction()
           << ',' << row.scaled() << ',' << row.provenance << '\n';
    }
    return os.str();
}

void for_each_partition(std::size_t k, std::uint32_t max_part, const std::function<void(const Partition&)>& visit) {
    if (k == 0 || max_part == 0) return;
    std::vector<std::uint32_t> parts(k, 1);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t cap) {
        if (i == k) {
            visit(Partition(parts));
            return;
        }
        for (std::uint32_t v = cap; v >= 1; --v) {
            parts[i] = v;
            rec(i + 1, v);
        }
    };
    rec(0, max_part);
}

RunnerUpReport runner_up_scan(std::size_t k, std::uint32_t part_bound) {
    if (k < 1 || k > 10) throw InfeasibleSize("runner-up scans are limited to 1 <= k <= 10");
    if (part_bound < 1 || part_bound > 6) throw InfeasibleSize("runner-up scans are limited to parts <= 6");
    RunnerUpReport rep;
    rep.k = k;
    rep.part_bound = part_bound;

    std::vector<std::pair<std::uint64_t, Partition>> sized;
    for_each_partition(k, part_bound, [&](const Partition& lambda) {
        if (lambda.gcd() != 1) return;
        ++rep.scanned;
        sized.emplace_back(complement_size(lambda), lambda);
    });
    std::set<std::uint64_t, std::greater<>> values;
    for (const auto& [s, lambda] : sized) values.insert(s);
    auto it = values.begin();
    if (it != values.end()) rep.best_size = *it++;
    if (it != values.end()) rep.second_size = *it;
    for (const auto& [s, lambda] : sized) {
        if (s == rep.best_size) rep.best.push_back(lambda);
        if (values.size() > 1 && s == rep.second_size) rep.second.push_back(lambda);
    }
    std::sort(rep.best.begin(), rep.best.end());
    std::sort(rep.second.begin(), rep.second.end());

    std::optional<Partition> claim_best;
    std::optional<Partition> claim_second;
    if (k >= 4 && k % 2 == 0) {
        claim_best = repeated({{1, k}});
        claim_second = repeated({{2, 2}, {1, k - 2}});
    } else if (k >= 7 && k % 2 == 1) {
        claim_best = repeated({{2, 1}, {1, k - 1}});
        claim_second = repeated({{2, 3}, {1, k - 3}});
    }
    rep.claim_applies = claim_second.has_value() && part_bound >= 2;
    if (rep.claim_applies) {
        rep.claimed_best = claim_best->to_string();
        rep.claimed_second = claim_second->to_string();
        rep.best_matches = std::find(rep.best.begin(), rep.best.end(), *claim_best) != rep.best.end();
        rep.second_contains_claim = std::find(rep.second.begin(), rep.second.end(), *claim_second) != rep.second.end();
        rep.second_unique = rep.second_contains_claim && rep.second.size() == 1;
        rep.holds_in_scope = rep.best_matches && rep.second_unique;
    }
    return rep;
}

std::vector<Partition> first_eight() {
    return {repeated({{1, 2}}),  repeated({{1, 4}}),          repeated({{1, 6}}),
            repeated({{1, 8}}),  repeated({{2, 1}, {1, 4}}),  repeated({{1, 10}}),
            repeated({{2, 1}, {1, 6}}), repeated({{1, 12}})};
}

std::vector<BandCheck> lemma_band_checks(const std::vector<Partition>& catalog) {
    const auto top = first_eight();
    const Partition ones14 = repeated({{1, 14}});
    const Partition ones16 = repeated({{1, 16}});
    std::vector<BandCheck> bands = {
        {"k=6,7", mpq_class(60, 256), 0, true, {}},
        {"k=8,9", mpq_class(56, 256), 0, true, {}},
        {"k=10,11", mpq_class(105, 512), 0, true, {}},
        {"k>=12 except 1^14,1^16", mpq_class(99, 512), 0, true, {}},
        {"all except the first eight", mpq_class(56, 256), 0, true, {}},
    };
    for (const Partition& lambda : std::set<Partition>(catalog.begin(), catalog.end())) {
        if (std::find(top.begin(), top.end(), lambda) != top.end()) continue;
        const mpq_class r = r_lambda(lambda).value();
        const std::size_t k = lambda.size();
        auto check = [&](BandCheck& band) {
            ++band.checked;
            if (r > band.bound) {
                band.holds = false;
                band.violations.push_back(lambda.to_string());
            }
        };
        if (k == 6 || k == 7) check(bands[0]);
        if (k == 8 || k == 9) check(bands[1]);
        if (k == 10 || k == 11) check(bands[2]);
        if (k >= 12 && lambda != ones14 && lambda != ones16) check(bands[3]);
        check(bands[4]);
    }
    return bands;
}

}  // namespace ntl
