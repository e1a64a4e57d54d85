#include <map>
#include <mutex>
#include <numeric>

#include "smforge/smachine.hpp"

namespace smforge {
namespace {

// Folded graphs are shared between rules that act on the same basis.
std::shared_ptr<const SubgroupBasis> shared_basis(const std::vector<Word>& words) {
    static std::mutex mu;
    static std::map<std::vector<Word>, std::shared_ptr<const SubgroupBasis>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(words);
    if (it != cache.end()) return it->second;
    auto b = std::make_shared<const SubgroupBasis>(words);
    cache.emplace(words, b);
    return b;
}

}  // namespace

SectorAction SectorAction::locked_sector() {
    SectorAction a;
    a.locked_ = true;
    return a;
}

SectorAction SectorAction::identity(std::vector<Word> domain) {
    auto z = domain;
    return make(std::move(domain), std::move(z));
}

SectorAction SectorAction::make(std::vector<Word> X, std::vector<Word> Z, std::vector<std::size_t> perm) {
    if (X.empty() && Z.empty()) return locked_sector();
    if (X.size() != Z.size()) throw MachineError("sector bases differ in size");
    if (perm.empty()) {
        perm.resize(X.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
    }
    if (perm.size() != X.size()) throw MachineError("sector bijection has the wrong size");
    std::vector<bool> hit(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || hit[p]) throw MachineError("sector map is not a bijection");
        hit[p] = true;
    }
    SectorAction a;
    a.X_ = std::move(X);
    a.Z_ = std::move(Z);
    a.perm_ = std::move(perm);
    a.prepare();
    return a;
}

void SectorAction::prepare() {
    if (locked_) return;
    for (const auto& w : X_)
        if (w.empty()) throw MachineError("sector basis contains the empty word");
    for (const auto& w : Z_)
        if (w.empty()) throw MachineError("sector basis contains the empty word");
    xb_ = shared_basis(X_);
    zb_ = shared_basis(Z_);
    bool single = true;
    for (const auto& w : X_) single &= w.size() == 1;
    if (single) {
        auto m = std::make_shared<std::unordered_map<Letter, Word>>();
        for (std::size_t k = 0; k < X_.size(); ++k) {
            const Word& img = image_of(k);
            if (!m->emplace(X_[k][0], img).second || !m->emplace(-X_[k][0], img.inverse()).second) {
                m.reset();
                break;
            }
        }
        letter_image_ = std::move(m);
    } else {
        letter_image_.reset();
    }
}

SectorAction SectorAction::inverted() const {
    if (locked_) return *this;
    std::vector<std::size_t> inv(perm_.size());
    for (std::size_t k = 0; k < perm_.size(); ++k) inv[perm_[k]] = k;
    SectorAction a;
    a.X_ = Z_;
    a.Z_ = X_;
    a.perm_ = std::move(inv);
    a.xb_ = zb_;
    a.zb_ = xb_;
    a.prepare();
    return a;
}

std::optional<std::vector<Term>> SectorAction::express(const Word& w) const {
    if (locked_) {
        if (w.empty()) return std::vector<Term>{};
        return std::nullopt;
    }
    return xb_->express(w);
}

std::optional<Word> SectorAction::try_image(const Word& w) const {
    if (w.empty()) return Word();
    if (locked_) return std::nullopt;
    if (letter_image_) {
        std::vector<Letter> acc;
        acc.reserve(w.size());
        for (Letter l : w) {
            auto it = letter_image_->find(l);
            if (it == letter_image_->end()) return std::nullopt;
            append_reduced(acc, it->second.letters());
        }
        return Word::from_reduced(std::move(acc));
    }
    auto terms = xb_->express(w);
    if (!terms) return std::nullopt;
    std::vector<Letter> acc;
    for (const auto& t : *terms) {
        const Word& img = image_of(t.index);
        if (t.sign > 0) append_reduced(acc, img.letters());
        else append_reduced(acc, img.inverse().letters());
    }
    return Word::from_reduced(std::move(acc));
}

bool Rule::same_as(const Rule& o) const {
    if (name != o.name || parts != o.parts || sectors.size() != o.sectors.size()) return false;
    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (!sectors[i].same_as(o.sectors[i])) return false;
    return true;
}

namespace {

std::string inverse_name(const std::string& n) {
    constexpr std::string_view suffix = "^-1";
    if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0)
        return n.substr(0, n.size() - suffix.size());
    return n + std::string(suffix);
}

Word preimage(const SectorAction& s, const Word& w, const std::string& rule) {
    if (w.empty()) return w;
    auto inv = s.inverted();
    auto r = inv.try_image(w);
    if (!r) throw MachineError("rule " + rule + ": part word " + to_string(w) + " is outside its sector range");
    return *r;
}

}  // namespace

// Sector k lies right of part k, so part p has sector p-1 on its left.
Rule invert_rule(const Rule& r) {
    Rule inv;
    inv.name = inverse_name(r.name);
    const std::size_t n = r.parts.size();
    inv.sectors.reserve(r.sectors.size());
    for (const auto& s : r.sectors) inv.sectors.push_back(s.inverted());
    inv.parts.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        const auto& a = r.parts[p];
        const std::size_t left = (p + n - 1) % n;
        PartAction b;
        b.from = a.to;
        b.to = a.from;
        b.u = preimage(r.sectors[left], a.u.inverse(), r.name);
        b.v = preimage(r.sectors[p], a.v.inverse(), r.name);
        inv.parts.push_back(std::move(b));
    }
    return inv;
}

void Machine::freeze() {
    if (frozen_) return;
    hw.finalize();
    const std::size_t n = hw.size();
    by_name_.clear();
    inverses_.clear();
    for (std::size_t k = 0; k < rules.size(); ++k) {
        auto& r = rules[k];
        if (r.parts.size() != n) throw MachineError("rule " + r.name + " has the wrong number of parts");
        if (r.sectors.size() + 1 == n) r.sectors.push_back(SectorAction::locked_sector());
        if (r.sectors.size() != n) throw MachineError("rule " + r.name + " has the wrong number of sectors");
        if (!hw.cyclic) r.sectors.back() = SectorAction::locked_sector();
        for (std::size_t p = 0; p < n; ++p) {
            const auto& a = r.parts[p];
            const auto pa = hw.part_of(make_letter(a.from));
            const auto pb = hw.part_of(make_letter(a.to));
            if (!pa || !pb || *pa != static_cast<int>(p) || *pb != static_cast<int>(p))
                throw MachineError("rule " + r.name + ": part " + std::to_string(p) + " uses letters of another part");
        }
        for (std::size_t s = 0; s < n; ++s) {
            const auto& sa = r.sectors[s];
            if (sa.locked()) continue;
            for (const auto* basis : {&sa.X(), &sa.Z()})
                for (const auto& w : *basis)
                    for (Letter l : w) {
                        auto sl = hw.sector_of(l);
                        if (!sl || *sl != static_cast<int>(s))
                            throw MachineError("rule " + r.name + ": letter " + to_string(l) + " is not in sector " +
                                               std::to_string(s + 1));
                    }
            if (!sa.domain().is_free_basis() || !sa.codomain().is_free_basis())
                throw MachineError("rule " + r.name + ": sector " + std::to_string(s + 1) + " bases are not free");
        }
        for (std::size_t p = 0; p < n; ++p) {
            const auto& a = r.parts[p];
            const auto& left = r.sectors[(p + n - 1) % n];
            const auto& right = r.sectors[p];
            auto in_range = [](const SectorAction& s, const Word& w) {
                return w.empty() || (!s.locked() && s.codomain().contains(w));
            };
            if (!in_range(left, a.u) || !in_range(right, a.v))
                throw MachineError("rule " + r.name + ": part words of part " + std::to_string(p) +
                                   " are not in the sector ranges");
        }
        if (!by_name_.emplace(r.name, static_cast<int>(k + 1)).second)
            throw MachineError("duplicate rule name " + r.name);
    }
    inverses_.reserve(rules.size());
    for (std::size_t k = 0; k < rules.size(); ++k) {
        inverses_.push_back(invert_rule(rules[k]));
        by_name_.emplace(inverses_.back().name, -static_cast<int>(k + 1));
    }
    frozen_ = true;
}

const Rule& Machine::rule(RuleRef r) const {
    if (r > 0 && static_cast<std::size_t>(r) <= rules.size()) return rules[r - 1];
    if (r < 0 && static_cast<std::size_t>(-r) <= inverses_.size()) return inverses_[-r - 1];
    throw MachineError("rule reference " + std::to_string(r) + " out of range");
}

std::string Machine::rule_name(RuleRef r) const { return rule(r).name; }

std::optional<RuleRef> Machine::find_rule(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

RuleRef Machine::ref(std::string_view name) const {
    auto r = find_rule(name);
    if (!r) throw MachineError("unknown rule " + std::string(name));
    return *r;
}

std::vector<SymbolId> Machine::start_letters() const {
    std::vector<SymbolId> r;
    for (const auto& p : hw.parts) r.push_back(p.start);
    return r;
}

std::vector<SymbolId> Machine::end_letters() const {
    std::vector<SymbolId> r;
    for (const auto& p : hw.parts) r.push_back(p.end);
    return r;
}

History parse_history(const Machine& m, std::string_view text) {
    History h;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == ',')) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != ',') ++j;
        auto tok = text.substr(i, j - i);
        i = j;
        if (tok == "1") continue;
        auto r = m.find_rule(tok);
        if (!r) throw ParseError("unknown rule '" + std::string(tok) + "'");
        h.push_back(*r);
    }
    return h;
}

std::string history_to_string(const Machine& m, const History& h) {
    if (h.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) s += ' ';
        s += m.rule_name(h[i]);
    }
    return s;
}

History reduce_history(const History& h) {
    History r;
    r.reserve(h.size());
    for (RuleRef x : h) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    return r;
}

History invert_history(const History& h) {
    History r(h.rbegin(), h.rend());
    for (auto& x : r) x = -x;
    return r;
}

}  // namespace smforge
