#include <stdexcept>

#include "smforge/machines.hpp"

namespace smforge {

SpecialSector::SpecialSector(const MainMachine& mm) : mm_(&mm) {
    for (std::size_t y = 0; y < mm.scheme->y_count(); ++y)
        working_.push_back(mm.machine.ref(mm.m1.machine.rule_name(mm.m1.theta[y]) + "#1"));
}

std::optional<std::pair<std::size_t, int>> SpecialSector::decode_working(RuleRef r) const {
    for (std::size_t y = 0; y < working_.size(); ++y) {
        if (working_[y] == r) return std::pair{y, 1};
        if (working_[y] == -r) return std::pair{y, -1};
    }
    return std::nullopt;
}

SemiComputation SpecialSector::run(const Word& w, const History& h) const {
    return semi_run(mm_->machine, w, h, sector());
}

Word SpecialSector::compress(const Word& w) const {
    const auto& s = scheme();
    auto is_a = [&](Letter l) { return s.index_A(symbol_of(l)) || s.index_A1(symbol_of(l)); };
    std::size_t first = w.size(), last = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!is_a(w[i])) continue;
        if (first == w.size()) first = i;
        last = i;
    }
    if (first == w.size()) return Word{};
    return w.subword(first, last - first + 1);
}

SemiComputation SpecialSector::compressed_run(const Word& w, const History& h) const {
    SemiComputation c;
    c.history = h;
    c.sector = sector();
    c.words.push_back(compress(w));
    for (std::size_t i = 0; i < h.size(); ++i) {
        try {
            c.words.push_back(compress(semi_apply(mm_->machine, c.words.back(), h[i], sector())));
        } catch (const ApplyError& e) {
            throw StepError(i, e);
        }
    }
    return c;
}

std::optional<SpecialSector::Blocks> SpecialSector::blocks(const Word& w) const {
    const auto& s = scheme();
    Blocks b;
    std::vector<Letter> cur;
    for (Letter l : w) {
        if (s.index_A1(symbol_of(l))) {
            b.gaps.push_back(Word::from_reduced(std::move(cur)));
            cur.clear();
            b.letters.push_back(l);
        } else if (s.index_B(symbol_of(l))) {
            cur.push_back(l);
        } else {
            return std::nullopt;
        }
    }
    b.gaps.push_back(Word::from_reduced(std::move(cur)));
    return b;
}

// A gap between letters x (left) and x' (right) reads
// [x negative ? v_x^{-1}] [x' positive ? v_{x'}], where v_x is the noise
// that the history has accumulated next to x.
std::optional<std::vector<std::pair<std::size_t, int>>> SpecialSector::decode_history(const Blocks& b,
                                                                                      bool cyclic) const {
    const auto& s = scheme();
    const std::size_t k = b.letters.size();
    if (k == 0) return std::nullopt;
    auto letter_index = [&](Letter l) { return *s.index_A1(symbol_of(l)); };
    std::optional<Letter> left, right;
    Word gap;
    if (b.letters.front() > 0 && !cyclic) {
        right = b.letters.front();
        gap = b.gaps.front();
    } else {
        bool found = false;
        for (std::size_t j = 1; j < k && !found; ++j) {
            if (b.letters[j - 1] < 0 || b.letters[j] > 0) {
                left = b.letters[j - 1];
                right = b.letters[j];
                gap = b.gaps[j];
                found = true;
            }
        }
        if (!found && cyclic && (b.letters.back() < 0 || b.letters.front() > 0)) {
            left = b.letters.back();
            right = b.letters.front();
            gap = b.gaps.back() * b.gaps.front();
            found = true;
        }
        if (!found && !cyclic && b.letters.back() < 0) {
            left = b.letters.back();
            gap = b.gaps.back();
            found = true;
        }
        if (!found) return std::nullopt;
    }
    if (left && *left > 0) left.reset();
    if (right && *right < 0) right.reset();
    auto terms = decode_noise(s, gap);
    if (!terms) return std::nullopt;
    std::size_t p = 0;
    if (left) {
        const std::size_t a = letter_index(*left);
        while (p < terms->size() && (*terms)[p].a == a) ++p;
    }
    std::vector<std::pair<std::size_t, int>> from_left, from_right;
    for (std::size_t i = p; i-- > 0;) from_left.emplace_back((*terms)[i].y, -(*terms)[i].sign);
    for (std::size_t i = p; i < terms->size(); ++i) {
        if (!right || (*terms)[i].a != letter_index(*right)) return std::nullopt;
        from_right.emplace_back((*terms)[i].y, (*terms)[i].sign);
    }
    if (left && right) {
        if (from_left != from_right) return std::nullopt;
        return from_left;
    }
    return left ? from_left : from_right;
}

std::optional<LambdaWitness> SpecialSector::lambda_accept(const Word& w, const LambdaOracle& oracle) const {
    const auto& s = scheme();
    bool pure = true;
    for (Letter l : w) pure &= s.index_A(symbol_of(l)).has_value();
    if (pure) {
        if (w.empty() || !is_cyclically_reduced(w) || !oracle(w)) return std::nullopt;
        return LambdaWitness{run(w, {}), w};
    }
    auto b = blocks(w);
    if (!b || b->letters.empty() || !delta_is_reduced(s, w)) return std::nullopt;
    const Word z = delta(s, w);
    if (!is_cyclically_reduced(z) || !oracle(z)) return std::nullopt;
    auto steps = decode_history(*b, false);
    if (!steps) return std::nullopt;
    History H;
    for (auto [y, e] : *steps) H.push_back(working(y, e));
    if (run(s.phi1(z), H).words.back() != w) return std::nullopt;
    History witness = invert_history(H);
    witness.push_back(-start_rule());
    auto semi = run(w, witness);
    if (semi.words.back() != z) throw std::logic_error("lambda witness does not reach its target");
    return LambdaWitness{std::move(semi), z};
}

bool SpecialSector::omega_member(const Word& w, const LambdaOracle& oracle) const {
    const auto& s = scheme();
    const Word c = cyclic_reduce(w).core;
    if (c.empty()) return false;
    bool pure = true;
    for (Letter l : c) pure &= s.index_A(symbol_of(l)).has_value();
    if (pure) return oracle(c);
    std::size_t first = c.size();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const SymbolId id = symbol_of(c[i]);
        if (!s.index_A1(id) && !s.index_B(id)) return false;
        if (first == c.size() && s.index_A1(id)) first = i;
    }
    if (first == c.size()) return false;
    std::vector<Letter> rot(c.begin() + first, c.end());
    rot.insert(rot.end(), c.begin(), c.begin() + first);
    const Word r = Word::from_reduced(rot);
    const auto d = delta_letters(s, r);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == -d[(i + 1) % d.size()]) return false;
    const Word z = Word::from_reduced(d);
    if (!oracle(z)) return false;
    auto b = blocks(r);
    if (!b) return false;
    auto steps = decode_history(*b, true);
    if (!steps) return false;
    History H;
    for (auto [y, e] : *steps) H.push_back(working(y, e));
    const Word e = cyclic_reduce(run(s.phi1(z), H).words.back()).core;
    if (e.size() != c.size()) return false;
    for (const auto& p : cyclic_permutations(e))
        if (p == c) return true;
    return false;
}

ThreeLetterNoise measure_three_letter(const SpecialSector& ss, const Word& x, const Word& result, std::size_t h) {
    auto b = ss.blocks(result);
    if (!b || b->letters.size() != x.size() || x.size() != 3)
        throw std::invalid_argument("measure_three_letter: result does not keep three a-letters");
    ThreeLetterNoise n;
    n.inner = b->gaps[1].size() + b->gaps[2].size();
    n.lower = ss.scheme().D() * h / 2;
    n.upper = 3 * ss.scheme().D() * h;
    return n;
}

}  // namespace smforge
