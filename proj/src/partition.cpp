#include "ntl/partition.hpp"

#include "ntl/errors.hpp"
#include "ntl/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace ntl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::uint64_t parse_number(std::string_view s, std::string_view whole) {
    s = trim(s);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("cannot parse partition '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Partition::Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("a partition needs at least one part");
    if (parts_.size() > kMaxParts) {
        throw DomainError("partitions are limited to " + std::to_string(kMaxParts) + " parts");
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0) throw DomainError("partition parts must be positive");
        if (parts_[i] > kMaxPartValue) throw DomainError("partition parts are limited to 65536");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be nonincreasing");
    }
}

Partition Partition::from_values(const std::vector<std::int64_t>& values) {
    std::vector<std::uint32_t> parts;
    for (std::int64_t v : values) {
        if (v == 0) continue;
        const std::uint64_t a = v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
        if (a > kMaxPartValue) throw DomainError("partition parts are limited to 65536");
        parts.push_back(static_cast<std::uint32_t>(a));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

Partition Partition::parse(std::string_view text) {
    std::vector<std::uint32_t> parts;
    std::string_view rest = text;
    while (true) {
        const std::size_t comma = rest.find(',');
        std::string_view token = trim(rest.substr(0, comma));
        std::uint64_t value = 0;
        std::uint64_t repeat = 1;
        if (const std::size_t caret = token.find('^'); caret != std::string_view::npos) {
            value = parse_number(token.substr(0, caret), text);
            repeat = parse_number(token.substr(caret + 1), text);
        } else {
            value = parse_number(token, text);
        }
        if (value == 0) throw DomainError("partition parts must be positive");
        if (value > kMaxPartValue) throw DomainError("partition parts are limited to 65536");
        if (repeat == 0 || parts.size() + repeat > kMaxParts) {
            throw DomainError("partitions need between 1 and 32 parts");
        }
        parts.insert(parts.end(), repeat, static_cast<std::uint32_t>(value));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

Partition Partition::from_digits(std::string_view digits) {
    std::vector<std::uint32_t> parts;
    for (char c : digits) {
        if (c < '1' || c > '9') throw DomainError("expected digits 1-9 in '" + std::string(digits) + "'");
        parts.push_back(static_cast<std::uint32_t>(c - '0'));
    }
    return Partition(std::move(parts));
}

std::uint64_t Partition::sum() const {
    return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
}

std::uint32_t Partition::gcd() const {
    std::uint32_t g = 0;
    for (std::uint32_t v : parts_) g = std::gcd(g, v);
    return g;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Partition::multiplicities() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t v : parts_) {
        if (!out.empty() && out.back().first == v) {
            ++out.back().second;
        } else {
            out.emplace_back(v, 1);
        }
    }
    return out;
}

std::string Partition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    return s;
}

std::string Partition::compact() const {
    if (parts_.front() >= 10) return to_string();
    std::string s;
    for (std::uint32_t v : parts_) s += static_cast<char>('0' + v);
    return s;
}

SignVector SignVector::negated() const {
    const Mask full = k == 32 ? ~Mask{0} : ((Mask{1} << k) - 1);
    return {k, mask ^ full};
}

std::uint32_t SignVector::lex_key() const {
    std::uint32_t key = 0;
    for (std::uint32_t i = 0; i < k; ++i) key = (key << 1) | ((mask >> i) & 1u);
    return key;
}

std::int64_t SignVector::dot(const Partition& lambda) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        s += (*this)[i] * static_cast<std::int64_t>(lambda[i]);
    }
    return s;
}

std::string SignVector::to_string() const {
    std::string s;
    for (std::uint32_t i = 0; i < k; ++i) s += (mask >> i) & 1u ? '-' : '+';
    return s;
}

namespace {

void shift_up(const std::uint64_t* src, std::size_t words, std::size_t shift, std::uint64_t* dst) {
    const std::size_t ws = shift / 64;
    const std::size_t bs = shift % 64;
    for (std::size_t i = words; i-- > 0;) {
        std::uint64_t v = 0;
        if (i >= ws) {
            v = src[i - ws] << bs;
            if (bs && i >= ws + 1) v |= src[i - ws - 1] >> (64 - bs);
        }
        dst[i] |= v;
    }
}

void shift_down(const std::uint64_t* src, std::size_t words, std::size_t shift, std::uint64_t* dst) {
    const std::size_t ws = shift / 64;
    const std::size_t bs = shift % 64;
    for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t v = 0;
        if (i + ws < words) {
            v = src[i + ws] >> bs;
            if (bs && i + ws + 1 < words) v |= src[i + ws + 1] << (64 - bs);
        }
        dst[i] |= v;
    }
}

}  // namespace

ComplementStream::ComplementStream(const Partition& lambda)
    : parts_(lambda.parts()), total_(static_cast<std::int64_t>(lambda.sum())) {
    const std::size_t k = parts_.size();
    const std::size_t bits = static_cast<std::size_t>(2 * total_ + 1);
    words_ = (bits + 63) / 64;
    reach_.assign((k + 1) * words_, 0);
    std::uint64_t* last = reach_.data() + k * words_;
    last[total_ / 64] |= std::uint64_t{1} << (total_ % 64);
    for (std::size_t i = k; i-- > 0;) {
        const std::uint64_t* src = reach_.data() + (i + 1) * words_;
        std::uint64_t* dst = reach_.data() + i * words_;
        shift_up(src, words_, parts_[i], dst);
        shift_down(src, words_, parts_[i], dst);
    }
}

bool ComplementStream::reachable(std::size_t from, std::int64_t target) const {
    if (target < -total_ || target > total_) return false;
    const auto bit = static_cast<std::size_t>(target + total_);
    return (reach_[from * words_ + bit / 64] >> (bit % 64)) & 1u;
}

bool ComplementStream::next(Mask& out) {
    if (done_) return false;
    const std::size_t k = parts_.size();
    if (!started_) {
        started_ = true;
        if (k < 2) {
            done_ = true;
            return false;
        }
        stack_.push_back({static_cast<std::int64_t>(parts_[0]), 0});
        current_ = 0;
    }
    while (!stack_.empty()) {
        Frame& f = stack_.back();
        const std::size_t i = stack_.size();
        if (f.tried == 2) {
            stack_.pop_back();
            continue;
        }
        std::int64_t sum = 0;
        if (f.tried == 0) {
            sum = f.sum + parts_[i];
            current_ &= ~(Mask{1} << i);
            f.tried = 1;
        } else {
            sum = f.sum - parts_[i];
            current_ |= Mask{1} << i;
            f.tried = 2;
        }
        if (!reachable(i + 1, -sum)) continue;
        if (i + 1 == k) {
            out = current_;
            return true;
        }
        stack_.push_back({sum, 0});
    }
    done_ = true;
    return false;
}

Complement complement(const Partition& lambda) {
    Complement c;
    c.k = static_cast<std::uint32_t>(lambda.size());
    ComplementStream stream(lambda);
    Mask m = 0;
    while (stream.next(m)) c.masks.push_back(m);
    return c;
}

DyadicProbability::DyadicProbability(mpz_class numerator, std::uint32_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
    if (numerator_ < 0) throw DomainError("probabilities are nonnegative");
    if (numerator_ == 0) {
        exponent_ = 0;
        return;
    }
    const mp_bitcnt_t twos = mpz_scan1(numerator_.get_mpz_t(), 0);
    const std::uint32_t drop = std::min<std::uint32_t>(exponent_, static_cast<std::uint32_t>(twos));
    numerator_ >>= drop;
    exponent_ -= drop;
}

mpq_class DyadicProbability::value() const {
    mpz_class den = 1;
    den <<= exponent_;
    mpq_class q(numerator_, den);
    q.canonicalize();
    return q;
}

std::string DyadicProbability::fraction() const {
    if (exponent_ == 0) return numerator_.get_str();
    mpz_class den = 1;
    den <<= exponent_;
    return numerator_.get_str() + "/" + den.get_str();
}

std::string DyadicProbability::decimal() const { return dyadic_decimal(numerator_, exponent_); }

std::string DyadicProbability::scaled256() const {
    if (exponent_ >= 8) return dyadic_decimal(numerator_, exponent_ - 8);
    mpz_class m = numerator_;
    m <<= (8 - exponent_);
    return m.get_str();
}

std::strong_ordering DyadicProbability::operator<=>(const DyadicProbability& other) const {
    mpz_class a = numerator_;
    mpz_class b = other.numerator_;
    a <<= other.exponent_;
    b <<= exponent_;
    const int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool DyadicProbability::operator==(const DyadicProbability& other) const {
    return numerator_ == other.numerator_ && exponent_ == other.exponent_;
}

std::string dyadic_decimal(const mpz_class& m, std::uint32_t e) {
    mpz_class scaled;
    mpz_ui_pow_ui(scaled.get_mpz_t(), 5, e);
    scaled *= m;
    std::string digits = scaled.get_str();
    if (e == 0) return digits;
    if (digits.size() <= e) digits.insert(0, e + 1 - digits.size(), '0');
    std::string whole = digits.substr(0, digits.size() - e);
    std::string frac = digits.substr(digits.size() - e);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? whole : whole + "." + frac;
}

std::uint64_t complement_size(const Partition& lambda) {
    const std::size_t total = static_cast<std::size_t>(lambda.sum());
    const std::size_t len = 2 * total + 1;
    std::vector<std::uint64_t> a(len, 0);
    std::vector<std::uint64_t> b(len, 0);
    a[total] = 1;
    const auto& kern = kernels::active();
    for (std::uint32_t part : lambda.parts()) {
        kern.shifted_sum(a.data(), len, part, b.data());
        a.swap(b);
    }
    return a[total];
}

DyadicProbability r_lambda(const Partition& lambda) {
    return DyadicProbability(mpz_class(static_cast<unsigned long>(complement_size(lambda))),
                             static_cast<std::uint32_t>(lambda.size()));
}

mpz_class count_template_vectors(const Partition& lambda, std::size_t n) {
    const std::size_t k = lambda.size();
    if (n < k) throw DomainError("template dimension n must be at least the partition length");
    mpz_class result = 1;
    result <<= (k - 1);
    for (std::size_t i = 0; i < k; ++i) result *= static_cast<unsigned long>(n - i);
    for (const auto& [value, count] : lambda.multiplicities()) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), count);
        result /= f;
    }
    return result;
}

void for_each_template_vector(const Partition& lambda, std::size_t n,
                              const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    const std::size_t k = lambda.size();
    if (n < k) throw DomainError("template dimension n must be at least the partition length");
    std::vector<std::size_t> pos(k);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::vector<std::int64_t> v(n, 0);
    while (true) {
        std::vector<std::uint32_t> perm(lambda.parts().rbegin(), lambda.parts().rend());
        do {
            for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << (k - 1)); ++signs) {
                std::fill(v.begin(), v.end(), 0);
                v[pos[0]] = perm[0];
                for (std::size_t i = 1; i < k; ++i) {
                    const std::int64_t a = perm[i];
                    v[pos[i]] = (signs >> (i - 1)) & 1u ? -a : a;
                }
                visit(v);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::size_t i = k;
        while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
}

std::vector<std::vector<std::int64_t>> template_vectors(const Partition& lambda, std::size_t n) {
    std::vector<std::vector<std::int64_t>> out;
    for_each_template_vector(lambda, n, [&](const std::vector<std::int64_t>& v) { out.push_back(v); });
    return out;
}

bool has_template(const std::vector<std::int64_t>& v, const Partition& lambda) {
    std::vector<std::uint32_t> abs;
    bool leading = true;
    for (std::int64_t x : v) {
        if (x == 0) continue;
        if (leading && x < 0) return false;
        leading = false;
        const std::uint64_t a = x < 0 ? static_cast<std::uint64_t>(-x) : static_cast<std::uint64_t>(x);
        if (a > kMaxPartValue) return false;
        abs.push_back(static_cast<std::uint32_t>(a));
    }
    std::sort(abs.begin(), abs.end(), std::greater<>());
    return abs == lambda.parts();
}

SignMatrix::SignMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 1) {}

SignMatrix SignMatrix::transposed() const {
    SignMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    }
    return t;
}

std::vector<std::string> SignMatrix::to_strings() const {
    std::vector<std::string> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c) > 0 ? '+' : '-';
    }
    return out;
}

SignMatrix SignMatrix::from_strings(const std::vector<std::string>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    SignMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DomainError("ragged sign matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            const char ch = rows[r][c];
            if (ch != '+' && ch != '-') throw DomainError("sign matrix entries must be '+' or '-'");
            m.set(r, c, ch == '+' ? 1 : -1);
        }
    }
    return m;
}

SignMatrix a_matrix(const Partition& lambda) {
    const Complement c = complement(lambda);
    if (c.p() == 0) throw DomainError("partition " + lambda.to_string() + " is not fairly divisible");
    SignMatrix a(c.k, c.p());
    for (std::size_t j = 0; j < c.p(); ++j) {
        for (std::size_t i = 0; i < c.k; ++i) a.set(i, j, (c.masks[j] >> i) & 1u ? -1 : 1);
    }
    return a;
}

}  // namespace ntl
