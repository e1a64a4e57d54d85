#include "support.hpp"

#include <cstdlib>
#include <cstring>

namespace smforge::testing {

std::uint64_t test_seed() {
    if (const char* s = std::getenv("SMFORGE_SEED"); s && *s) return std::strtoull(s, nullptr, 10);
    return 20261016;
}

std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(test_seed() * 1000003ULL + salt); }

std::vector<Letter> stack_reduce(const std::vector<Letter>& raw) {
    std::vector<Letter> st;
    for (Letter l : raw) {
        if (!st.empty() && st.back() == -l) st.pop_back();
        else st.push_back(l);
    }
    return st;
}

std::vector<Letter> signed_letters(const std::vector<SymbolId>& gens) {
    std::vector<Letter> out;
    for (SymbolId g : gens) {
        out.push_back(make_letter(g));
        out.push_back(make_letter(g, -1));
    }
    return out;
}

std::vector<Word> all_reduced_words(const std::vector<SymbolId>& gens, std::size_t max_len) {
    const auto alpha = signed_letters(gens);
    std::vector<Word> out{Word{}};
    std::vector<std::vector<Letter>> layer{{}};
    for (std::size_t n = 1; n <= max_len; ++n) {
        std::vector<std::vector<Letter>> next;
        for (const auto& w : layer)
            for (Letter l : alpha) {
                if (!w.empty() && w.back() == -l) continue;
                auto v = w;
                v.push_back(l);
                out.push_back(Word::from_reduced(v));
                next.push_back(std::move(v));
            }
        layer = std::move(next);
    }
    return out;
}

Word random_reduced_word(std::mt19937_64& rng, const std::vector<SymbolId>& gens, std::size_t len) {
    const auto alpha = signed_letters(gens);
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    std::vector<Letter> w;
    while (w.size() < len) {
        const Letter l = alpha[pick(rng)];
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
    }
    return Word::from_reduced(std::move(w));
}

Word random_positive_word(std::mt19937_64& rng, const std::vector<SymbolId>& gens, std::size_t len) {
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::vector<Letter> w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(make_letter(gens[pick(rng)]));
    return Word::from_reduced(std::move(w));
}

// ------------------------------------------------------------------ shift --

Word ShiftStepper::closed_form_noise(const NoiseScheme& s, std::size_t y, std::size_t a) {
    const std::size_t n = s.size();
    const std::size_t D = 4 * n * (n + 2);
    const std::size_t k = y * n + a + 1;
    const Letter b1 = letter("b1"), b2 = letter("b2");
    std::vector<Letter> w(k, b1);
    for (std::size_t i = 0; i < (D - 2 * k) / 2; ++i) {
        w.push_back(b2);
        w.push_back(b1);
    }
    w.insert(w.end(), k, b2);
    return Word::from_reduced(std::move(w));
}

ShiftStepper::ShiftStepper(const NoiseScheme& s) {
    const std::size_t n = s.size();
    for (std::size_t y = 0; y < n + 2; ++y) {
        tape_.push_back(y < n ? make_letter(s.A1(y)) : letter(y == n ? "b1" : "b2"));
        noise_.emplace_back();
        for (std::size_t a = 0; a < n; ++a) noise_.back().push_back(closed_form_noise(s, y, a));
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (a1_index_.size() <= s.A1(a)) a1_index_.resize(s.A1(a) + 1, -1);
        a1_index_[s.A1(a)] = static_cast<int>(a);
    }
}

void ShiftStepper::step_into(const std::vector<Letter>& w, std::size_t y, int sign, std::vector<Letter>& out) const {
    out.clear();
    auto push = [&](Letter l) {
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    };
    auto put = [&](const Word& v, int e) {
        if (e > 0)
            for (Letter l : v) push(l);
        else
            for (auto it = v.letters().rbegin(); it != v.letters().rend(); ++it) push(-*it);
    };
    auto map = [&](Letter l) {
        const SymbolId id = symbol_of(l);
        const int a = id < a1_index_.size() ? a1_index_[id] : -1;
        if (a < 0) {
            push(l);
        } else if (l > 0) {
            put(noise_[y][a], sign);
            push(l);
        } else {
            push(l);
            put(noise_[y][a], -sign);
        }
    };
    for (Letter l : w) map(l);
    // The inverse rule first restores the removed letter, then undoes the map.
    if (sign < 0) map(tape_[y]);
    else push(-tape_[y]);
}

std::vector<Letter> ShiftStepper::step(const std::vector<Letter>& w, std::size_t y, int sign) const {
    std::vector<Letter> out;
    step_into(w, y, sign, out);
    return out;
}

std::uint64_t ShiftOracle::hash(const std::vector<Letter>& w) {
    std::uint64_t h = 1469598103934665603ULL ^ w.size();
    for (Letter l : w) {
        h ^= static_cast<std::uint32_t>(l);
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return h;
}

std::uint64_t ShiftOracle::pack(const std::vector<Step>& path) {
    std::uint64_t code = path.size();
    for (std::size_t i = 0; i < path.size(); ++i)
        code |= static_cast<std::uint64_t>(path[i].first * 2 + (path[i].second < 0)) << (5 + 4 * i);
    return code;
}

std::vector<ShiftOracle::Step> ShiftOracle::unpack(std::uint64_t code) {
    std::vector<Step> path(code & 31);
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto c = (code >> (5 + 4 * i)) & 15;
        path[i] = {c / 2, c % 2 ? -1 : 1};
    }
    return path;
}

std::vector<Letter> ShiftOracle::replay_from_empty(const std::vector<Step>& path) const {
    std::vector<Letter> u;
    for (auto [y, e] : path) u = stepper_.step(u, y, e);
    return u;
}

ShiftOracle::ShiftOracle(const NoiseScheme& s, std::size_t front_radius, std::size_t back_radius)
    : stepper_(s), front_(front_radius), back_(back_radius) {
    if (back_ > 14) throw std::invalid_argument("ball radius too large to pack");
    struct Node {
        std::vector<Letter> w;
        std::vector<Step> path;
    };
    std::vector<Node> layer{{{}, {}}};
    ball_[hash({})].push_back(pack({}));
    ball_nodes_ = 1;
    for (std::size_t d = 1; d <= back_; ++d) {
        std::vector<Node> next;
        for (const auto& n : layer)
            for (std::size_t y = 0; y < stepper_.rules(); ++y)
                for (int e : {1, -1}) {
                    if (!n.path.empty() && n.path.back() == Step{y, -e}) continue;
                    Node m{stepper_.step(n.w, y, e), n.path};
                    m.path.push_back({y, e});
                    ball_[hash(m.w)].push_back(pack(m.path));
                    ++ball_nodes_;
                    if (d < back_) next.push_back(std::move(m));
                }
        layer = std::move(next);
    }
}

std::vector<ShiftPath> ShiftOracle::search(const Word& w) const {
    std::vector<ShiftPath> found;
    std::vector<Step> hist;
    std::vector<std::vector<Letter>> buf(front_ + 1);
    buf[0].assign(w.begin(), w.end());
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        const auto& u = buf[depth];
        if (depth < front_) {
            if (u.empty()) found.push_back({hist});
            for (std::size_t y = 0; y < stepper_.rules(); ++y)
                for (int e : {1, -1}) {
                    if (!hist.empty() && hist.back() == Step{y, -e}) continue;
                    hist.push_back({y, e});
                    stepper_.step_into(u, y, e, buf[depth + 1]);
                    self(self, depth + 1);
                    hist.pop_back();
                }
            return;
        }
        auto it = ball_.find(hash(u));
        if (it == ball_.end()) return;
        for (std::uint64_t code : it->second) {
            const auto p = unpack(code);
            if (replay_from_empty(p) != u) continue;  // hash collision
            if (!hist.empty() && !p.empty() && hist.back() == p.back()) continue;
            ShiftPath sp{hist};
            for (auto r = p.rbegin(); r != p.rend(); ++r) sp.steps.push_back({r->first, -r->second});
            found.push_back(std::move(sp));
        }
    };
    dfs(dfs, 0);
    return found;
}

// --------------------------------------------------------- free products --

FreeProductOracle::FreeProductOracle(const ExpandedPresentation& e) : e_(&e) {}

namespace {
constexpr Letter kBlockBase = 1 << 28;
}

Letter FreeProductOracle::block_code(std::size_t i, int sign) const {
    const Letter v = kBlockBase + static_cast<Letter>(i) + 1;
    return sign > 0 ? v : -v;
}

bool FreeProductOracle::is_block_code(Letter l) const { return (l > 0 ? l : -l) > kBlockBase; }

bool FreeProductOracle::trivial(const Word& w) const {
    const std::size_t C = e_->C();
    std::vector<Letter> raw;
    for (Letter l : w) {
        auto loc = e_->locate(symbol_of(l));
        if (!loc) throw std::invalid_argument("letter outside Y_C");
        const auto [i, j] = *loc;
        if (j + 1 < C) {
            raw.push_back(l);
            continue;
        }
        // last block letter = (first C-1 letters)^-1 · block
        std::vector<Letter> piece;
        for (std::size_t k = C - 1; k-- > 0;) piece.push_back(make_letter(e_->block_letter(i, k), -1));
        piece.push_back(block_code(i, 1));
        if (l < 0) {
            std::vector<Letter> inv;
            for (auto it = piece.rbegin(); it != piece.rend(); ++it) inv.push_back(-*it);
            piece = std::move(inv);
        }
        raw.insert(raw.end(), piece.begin(), piece.end());
    }
    auto cur = stack_reduce(raw);

    const auto& trick = e_->trick();
    auto xi_letter = [&](std::size_t i, int sign) {
        const SymbolId y = trick.Y()[i];
        for (SymbolId x : trick.X()) {
            if (x == y) return make_letter(x, sign);
            if (trick.bar(x) == y) return make_letter(x, -sign);
        }
        throw std::logic_error("Y letter without an X preimage");
    };

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < cur.size() && !changed;) {
            if (!is_block_code(cur[s])) {
                ++s;
                continue;
            }
            std::size_t t = s;
            std::vector<Letter> x;
            while (t < cur.size() && is_block_code(cur[t])) {
                const Letter c = cur[t];
                x.push_back(xi_letter(static_cast<std::size_t>((c > 0 ? c : -c) - kBlockBase - 1), c > 0 ? 1 : -1));
                ++t;
            }
            if (trick.oracle().trivial(Word::reduce(x))) {
                std::vector<Letter> rest(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(s));
                rest.insert(rest.end(), cur.begin() + static_cast<std::ptrdiff_t>(t), cur.end());
                cur = stack_reduce(rest);
                changed = true;
            } else {
                s = t;
            }
        }
    }
    return cur.empty();
}

}  // namespace smforge::testing
