#include <limits>
#include <stdexcept>

#include "smforge/machines.hpp"

namespace smforge {
namespace {

void push_back_reduced(std::deque<Letter>& d, Letter l) {
    if (!d.empty() && d.back() == -l) d.pop_back();
    else d.push_back(l);
}

void push_front_reduced(std::deque<Letter>& d, Letter l) {
    if (!d.empty() && d.front() == -l) d.pop_front();
    else d.push_front(l);
}

}  // namespace

SegmentWord::SegmentWord(const NoiseScheme& s, const Word& w) : s_(&s) {
    segments_.emplace_back();
    for (Letter l : w) {
        const SymbolId id = symbol_of(l);
        if (s.index_A1(id)) {
            skeleton_.push_back(l);
            segments_.emplace_back();
        } else if (s.index_B(id)) {
            segments_.back().push_back(l);
        } else {
            throw std::invalid_argument("letter " + to_string(l) + " is not in 𝒜₁⊔ℬ");
        }
    }
}

std::size_t SegmentWord::length() const {
    std::size_t n = skeleton_.size();
    for (const auto& s : segments_) n += s.size();
    return n;
}

Word SegmentWord::to_word() const {
    std::vector<Letter> out;
    out.reserve(length());
    for (std::size_t j = 0; j < segments_.size(); ++j) {
        out.insert(out.end(), segments_[j].begin(), segments_[j].end());
        if (j < skeleton_.size()) out.push_back(skeleton_[j]);
    }
    return Word::from_reduced(std::move(out));
}

Word SegmentWord::tail_word() const {
    return Word::from_reduced(std::vector<Letter>(tail().begin(), tail().end()));
}

// segments_[j] precedes skeleton_[j]; a positive letter receives its noise
// on the left, a negative one on the right.
void SegmentWord::noise(std::size_t y, int sign) {
    for (std::size_t j = 0; j < skeleton_.size(); ++j) {
        const Letter x = skeleton_[j];
        const std::size_t a = *s_->index_A1(symbol_of(x));
        const auto& v = s_->noise(y, a).letters();
        if (x > 0) {
            auto& seg = segments_[j];
            if (sign > 0) for (Letter l : v) push_back_reduced(seg, l);
            else for (auto it = v.rbegin(); it != v.rend(); ++it) push_back_reduced(seg, -*it);
        } else {
            auto& seg = segments_[j + 1];
            // prepend v^{-sign}
            if (sign > 0) for (Letter l : v) push_front_reduced(seg, -l);
            else for (auto it = v.rbegin(); it != v.rend(); ++it) push_front_reduced(seg, *it);
        }
    }
}

void SegmentWord::append(const Word& piece) {
    for (Letter l : piece) {
        if (s_->index_B(symbol_of(l))) {
            push_back_reduced(segments_.back(), l);
        } else if (segments_.back().empty() && !skeleton_.empty() && skeleton_.back() == -l) {
            skeleton_.pop_back();
            segments_.pop_back();
        } else {
            skeleton_.push_back(l);
            segments_.emplace_back();
        }
    }
}

void SegmentWord::apply(std::size_t y, int sign) {
    noise(y, sign);
    const Letter t = s_->y_tape(y);
    if (sign > 0) {
        append(Word{-t});
    } else if (s_->y_is_b(y)) {
        append(Word{t});
    } else {
        append(s_->noise(y, y).inverse() * Word{t});
    }
}

namespace {

// Rear shift for a negative top letter: the tail must read N·T with T a
// ℬ-word y_m^{e_m}…y_1^{e_1} and N = v(y_1,a)^{e_1}…v(y_m,a)^{e_m}.
std::optional<std::vector<std::pair<std::size_t, int>>> negative_split(const NoiseScheme& s, const Word& u,
                                                                       std::size_t a) {
    const auto prefixes = s.folded().base_prefixes(u);
    const std::size_t n = s.size();
    for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it) {
        const std::size_t p = *it;
        const std::size_t m = u.size() - p;
        if (m > p) break;
        auto terms = s.folded().express(u.subword(0, p));
        if (!terms || terms->size() != m) continue;
        std::vector<std::pair<std::size_t, int>> steps;
        bool ok = true;
        for (std::size_t i = 1; i <= m && ok; ++i) {
            const Letter l = u[u.size() - i];
            const std::size_t y = n + *s.index_B(symbol_of(l));
            const int e = sign_of(l);
            const auto& t = (*terms)[i - 1];
            ok = t.index + 1 == s.eta(y, a) && t.sign == e;
            steps.emplace_back(y, e);
        }
        if (ok) return steps;
    }
    return std::nullopt;
}

}  // namespace

std::optional<ShiftResult> shift_history(const M1& m, const Word& w) {
    const auto& s = *m.scheme;
    for (Letter l : w)
        if (!s.index_A1(symbol_of(l)) && !s.index_B(symbol_of(l))) return std::nullopt;
    SegmentWord sw(s, w);
    ShiftResult res;
    const std::size_t n = s.size();
    auto step = [&](std::size_t y, int e) {
        sw.apply(y, e);
        res.history.push_back(m.rule(y, e));
    };
    auto spell_tail = [&] {
        while (!sw.tail().empty()) {
            const Letter l = sw.tail().back();
            step(n + *s.index_B(symbol_of(l)), sign_of(l));
        }
    };
    while (!sw.empty()) {
        if (sw.skeleton_size() == 0) {
            spell_tail();
            break;
        }
        const std::size_t k = sw.skeleton_size();
        const Letter top = sw.skeleton(k - 1);
        const std::size_t a = *s.index_A1(symbol_of(top));
        if (top > 0) {
            spell_tail();
            step(a, 1);
        } else {
            auto steps = negative_split(s, sw.tail_word(), a);
            if (!steps) return std::nullopt;
            for (auto [y, e] : *steps) step(y, e);
            if (!sw.tail().empty()) throw std::logic_error("rear shift left a nonempty tail");
            step(a, -1);
        }
        if (sw.skeleton_size() != k - 1) throw std::logic_error("rear shift did not remove the top letter");
    }
    return res;
}

Word replay_shift(const M1& m, const Word& w, const History& h) {
    SegmentWord sw(*m.scheme, w);
    for (RuleRef r : h) {
        auto d = m.decode_rule(r);
        if (!d) throw std::invalid_argument("history contains a rule outside M1");
        sw.apply(d->first, d->second);
    }
    return sw.to_word();
}

std::optional<Computation> shift(const M1& m, const Word& w, std::size_t letter_budget) {
    auto h = shift_history(m, w);
    if (!h) return std::nullopt;
    SegmentWord sw(*m.scheme, w);
    std::size_t total = sw.length() + 2;
    for (RuleRef r : h->history) {
        auto d = *m.decode_rule(r);
        sw.apply(d.first, d.second);
        total += sw.length() + 2;
        if (total > letter_budget)
            throw std::length_error("shift computation of " + to_string(w) + " exceeds the letter budget");
    }
    const auto& p = m.machine.hw.parts;
    AdmissibleWord start{{make_letter(p[0].start), make_letter(p[1].start)}, {w}};
    return run(m.machine, start, h->history);
}

std::uint64_t shift_time_bound(const NoiseScheme& s, std::size_t n) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t base = 2 * s.D() + 1;
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (p > cap / base) return cap;
        p *= base;
    }
    if (n != 0 && p > (cap - n) / n) return cap;
    return n + n * p;
}

}  // namespace smforge
