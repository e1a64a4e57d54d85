#include <unordered_set>

#include "smforge/smachine.hpp"

namespace smforge {

void Hardware::finalize() {
    if (parts.empty()) throw MachineError("hardware has no parts");
    if (sectors.size() != parts.size()) throw MachineError("hardware needs one sector per part (last one wraps)");
    alphabet_ = Alphabet();
    std::unordered_set<SymbolId> seen;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto& p = parts[i];
        if (p.letters.empty()) throw MachineError("part " + p.name + " is empty");
        bool has_start = false, has_end = false;
        for (SymbolId s : p.letters) {
            if (!seen.insert(s).second) throw MachineError("letter '" + symbol_name(s) + "' used twice in hardware");
            alphabet_.add_state(s, static_cast<int>(i));
            has_start |= s == p.start;
            has_end |= s == p.end;
        }
        if (!has_start || !has_end) throw MachineError("part " + p.name + " lacks its start or end letter");
    }
    for (std::size_t k = 0; k < sectors.size(); ++k) {
        for (const auto& t : sectors[k].letters) {
            if (!seen.insert(t.id).second) throw MachineError("letter '" + symbol_name(t.id) + "' used twice in hardware");
            alphabet_.add_tape(t.id, static_cast<int>(k), t.cls);
        }
    }
    if (!cyclic && !sectors.back().letters.empty()) throw MachineError("wrap sector of a non-cyclic machine must be empty");
}

std::optional<int> Hardware::part_of(Letter l) const {
    const auto* i = alphabet_.find(l);
    if (!i || i->kind != SymbolKind::state) return std::nullopt;
    return i->index;
}

std::optional<int> Hardware::sector_of(Letter l) const {
    const auto* i = alphabet_.find(l);
    if (!i || i->kind != SymbolKind::tape) return std::nullopt;
    return i->index;
}

int Hardware::oriented_sign(Letter state) const {
    const int p = *part_of(state);
    return sign_of(state) * (parts[p].inverted ? -1 : 1);
}

int Hardware::right_sector(Letter state) const {
    const int p = *part_of(state);
    const int n = static_cast<int>(parts.size());
    return oriented_sign(state) > 0 ? p : (p + n - 1) % n;
}

int Hardware::left_sector(Letter state) const {
    const int p = *part_of(state);
    const int n = static_cast<int>(parts.size());
    return oriented_sign(state) > 0 ? (p + n - 1) % n : p;
}

std::optional<int> Hardware::sector_between(Letter left, Letter right) const {
    const int a = right_sector(left);
    if (a != left_sector(right)) return std::nullopt;
    if (!cyclic && a == static_cast<int>(wrap_sector())) return std::nullopt;
    return a;
}

std::vector<int> Hardware::input_sectors() const {
    std::vector<int> r;
    for (std::size_t k = 0; k < sectors.size(); ++k)
        if (sectors[k].input) r.push_back(static_cast<int>(k));
    return r;
}

Letter Hardware::base_letter(SymbolId id) const {
    const int p = *part_of(make_letter(id));
    return make_letter(id, parts[p].inverted ? -1 : 1);
}

Word AdmissibleWord::to_word() const {
    std::vector<Letter> raw;
    for (std::size_t j = 0; j < states.size(); ++j) {
        raw.push_back(states[j]);
        if (j < tapes.size()) raw.insert(raw.end(), tapes[j].begin(), tapes[j].end());
    }
    return Word::reduce(raw);
}

std::size_t AdmissibleWord::length() const {
    std::size_t n = states.size();
    for (const auto& t : tapes) n += t.size();
    return n;
}

std::vector<Letter> base_of(const AdmissibleWord& w) { return w.states; }

AdmissibleWord to_admissible(const Hardware& hw, const Word& w) {
    AdmissibleWord a;
    std::vector<Letter> cur;
    bool started = false;
    for (Letter l : w) {
        if (hw.part_of(l)) {
            if (started) a.tapes.push_back(Word::from_reduced(std::move(cur)));
            cur.clear();
            a.states.push_back(l);
            started = true;
        } else {
            if (!started) throw MachineError("admissible word must start with a state letter");
            if (!hw.sector_of(l)) throw MachineError("letter '" + to_string(l) + "' is not in the hardware");
            cur.push_back(l);
        }
    }
    if (!started) throw MachineError("admissible word has no state letters");
    if (!cur.empty()) throw MachineError("admissible word must end with a state letter");
    if (!is_well_formed(hw, a)) throw MachineError("word does not match any admissible base shape");
    return a;
}

AdmissibleWord parse_admissible(const Hardware& hw, std::string_view text) {
    return to_admissible(hw, parse_word(text));
}

std::string to_string(const AdmissibleWord& w) { return to_string(w.to_word()); }

std::vector<int> sectors_of(const Hardware& hw, const AdmissibleWord& w) {
    std::vector<int> r;
    for (std::size_t j = 0; j + 1 < w.states.size(); ++j) {
        auto s = hw.sector_between(w.states[j], w.states[j + 1]);
        if (!s) throw MachineError("state letters " + to_string(w.states[j]) + " and " + to_string(w.states[j + 1]) +
                                   " do not bound a sector");
        r.push_back(*s);
    }
    return r;
}

bool is_well_formed(const Hardware& hw, const AdmissibleWord& w) {
    if (w.states.empty() || w.tapes.size() + 1 != w.states.size()) return false;
    for (Letter q : w.states)
        if (!hw.part_of(q)) return false;
    for (std::size_t j = 0; j + 1 < w.states.size(); ++j) {
        auto s = hw.sector_between(w.states[j], w.states[j + 1]);
        if (!s) return false;
        if (w.tapes[j].empty() && w.states[j] == -w.states[j + 1]) return false;
        for (Letter l : w.tapes[j]) {
            auto sl = hw.sector_of(l);
            if (!sl || *sl != *s) return false;
        }
        const auto& ls = w.tapes[j].letters();
        for (std::size_t i = 1; i < ls.size(); ++i)
            if (ls[i] == -ls[i - 1]) return false;
    }
    return true;
}

AdmissibleWord standard_configuration(const Hardware& hw, const std::vector<SymbolId>& states,
                                      const std::vector<Word>& tapes) {
    AdmissibleWord a;
    for (SymbolId s : states) a.states.push_back(hw.base_letter(s));
    a.tapes = tapes;
    a.tapes.resize(a.states.size() - 1);
    return a;
}

}  // namespace smforge
