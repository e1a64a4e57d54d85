#include <algorithm>
#include <stdexcept>

#include "smforge/groups.hpp"

namespace smforge {

namespace {

// Exponents up to this size are multiplied out into the coefficient.
constexpr unsigned kFoldLimit = 64;

std::uint64_t join_base(std::uint64_t a, std::uint64_t b) {
    if (a && b && a != b) throw std::invalid_argument("Huge values with different bases");
    return a ? a : b;
}

std::optional<std::uint64_t> small_value(const Huge& h, std::uint64_t limit) {
    if (h.is_zero()) return 0;
    if (h.terms().size() != 1 || !h.terms()[0].exp.is_zero()) return std::nullopt;
    const auto& c = h.terms()[0].coef;
    if (c > limit) return std::nullopt;
    return static_cast<std::uint64_t>(c);
}

BigInt ipow(std::uint64_t b, std::uint64_t e) { return boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(e)); }

}  // namespace

Huge::Huge(BigInt v) {
    if (v < 0) throw std::invalid_argument("Huge values are nonnegative");
    if (v != 0) terms_.push_back(Term{Huge(), std::move(v)});
}

Huge Huge::power(std::uint64_t base, const Huge& e) {
    if (base < 2) throw std::invalid_argument("Huge base must be at least 2");
    Huge r;
    r.base_ = base;
    r.terms_.push_back(Term{e, 1});
    r.normalize();
    return r;
}

void Huge::normalize() {
    BigInt folded = 0;
    std::vector<Term> rest;
    for (auto& t : terms_) {
        if (t.coef == 0) continue;
        if (auto e = small_value(t.exp, kFoldLimit)) {
            if (*e && !base_) throw std::logic_error("Huge power term without a base");
            folded += t.coef * (*e ? ipow(base_, *e) : BigInt(1));
        } else {
            rest.push_back(std::move(t));
        }
    }
    std::stable_sort(rest.begin(), rest.end(), [](const Term& a, const Term& b) { return compare(a.exp, b.exp) > 0; });
    std::vector<Term> merged;
    for (auto& t : rest) {
        if (!merged.empty() && compare(merged.back().exp, t.exp) == 0) merged.back().coef += t.coef;
        else merged.push_back(std::move(t));
    }
    if (folded != 0) merged.push_back(Term{Huge(), folded});
    terms_ = std::move(merged);
}

Huge operator+(const Huge& a, const Huge& b) {
    Huge r;
    r.base_ = join_base(a.base_, b.base_);
    r.terms_ = a.terms_;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.normalize();
    return r;
}

Huge operator*(const Huge& a, const Huge& b) {
    Huge r;
    r.base_ = join_base(a.base_, b.base_);
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.terms_.push_back(Huge::Term{x.exp + y.exp, x.coef * y.coef});
    r.normalize();
    return r;
}

int compare(const Huge& a, const Huge& b) {
    struct Entry {
        const Huge* exp;
        BigInt coef;
    };
    std::vector<Entry> d;
    for (const auto& t : a.terms_) d.push_back({&t.exp, t.coef});
    for (const auto& t : b.terms_) d.push_back({&t.exp, -t.coef});
    std::stable_sort(d.begin(), d.end(), [](const Entry& x, const Entry& y) { return compare(*x.exp, *y.exp) > 0; });
    std::vector<Entry> m;
    for (auto& e : d) {
        if (!m.empty() && compare(*m.back().exp, *e.exp) == 0) m.back().coef += e.coef;
        else m.push_back(std::move(e));
    }
    std::erase_if(m, [](const Entry& e) { return e.coef == 0; });
    if (m.empty()) return 0;
    const std::uint64_t base = join_base(a.base_, b.base_);

    BigInt acc = m[0].coef;
    const Huge* cur = m[0].exp;
    for (std::size_t i = 1; i < m.size(); ++i) {
        if (acc != 0) {
            BigInt rest = 0;
            for (std::size_t j = i; j < m.size(); ++j) rest += abs(m[j].coef);
            // base^k > rest, so a leading gap of k or more decides the sign.
            const std::uint64_t k = boost::multiprecision::msb(rest) + 2;
            if (compare(*cur, *m[i].exp + Huge(k)) >= 0) return acc > 0 ? 1 : -1;
            std::uint64_t lo = 1, hi = k - 1;
            while (lo < hi) {
                const std::uint64_t mid = (lo + hi + 1) / 2;
                if (compare(*m[i].exp + Huge(mid), *cur) <= 0) lo = mid;
                else hi = mid - 1;
            }
            acc = acc * ipow(base, lo) + m[i].coef;
        } else {
            acc = m[i].coef;
        }
        cur = m[i].exp;
    }
    return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

std::optional<BigInt> Huge::to_integer(std::size_t max_bits) const {
    BigInt v = 0;
    for (const auto& t : terms_) {
        auto e = small_value(t.exp, max_bits);
        if (!e) return std::nullopt;
        v += t.coef * (*e ? ipow(base_, *e) : BigInt(1));
        if (v != 0 && boost::multiprecision::msb(v) >= max_bits) return std::nullopt;
    }
    return v;
}

std::string Huge::to_string() const {
    if (auto v = to_integer(4096)) return v->str();
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        if (t.exp.is_zero()) {
            s += t.coef.str();
            continue;
        }
        if (t.coef != 1) s += t.coef.str() + "*";
        s += std::to_string(base_) + "^(" + t.exp.to_string() + ")";
    }
    return s;
}

}  // namespace smforge
