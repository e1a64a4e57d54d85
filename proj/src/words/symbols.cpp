#include "smforge/words.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

namespace smforge {
namespace {

struct NameTable {
    std::shared_mutex mu;
    std::deque<std::string> names;  // deque keeps references stable
    std::unordered_map<std::string, SymbolId> ids;
};

NameTable& table() {
    static NameTable t;
    return t;
}

}  // namespace

SymbolId intern(std::string_view name) {
    if (name.empty()) throw ParseError("empty symbol name");
    auto& t = table();
    {
        std::shared_lock lock(t.mu);
        auto it = t.ids.find(std::string(name));
        if (it != t.ids.end()) return it->second;
    }
    std::unique_lock lock(t.mu);
    auto [it, inserted] = t.ids.emplace(std::string(name), static_cast<SymbolId>(t.names.size()));
    if (inserted) t.names.emplace_back(name);
    return it->second;
}

std::optional<SymbolId> find_symbol(std::string_view name) {
    auto& t = table();
    std::shared_lock lock(t.mu);
    auto it = t.ids.find(std::string(name));
    if (it == t.ids.end()) return std::nullopt;
    return it->second;
}

const std::string& symbol_name(SymbolId id) {
    auto& t = table();
    std::shared_lock lock(t.mu);
    if (id >= t.names.size()) throw std::out_of_range("unknown symbol id");
    return t.names[id];
}

Letter letter(std::string_view name, int sign) { return make_letter(intern(name), sign); }

void Alphabet::put(SymbolId id, SymbolInfo info) {
    auto [it, inserted] = info_.emplace(id, info);
    if (!inserted) {
        const auto& old = it->second;
        if (old.kind != info.kind || old.index != info.index || old.tape_class != info.tape_class ||
            old.position != info.position)
            throw std::invalid_argument("symbol '" + symbol_name(id) + "' typed twice");
    }
}

void Alphabet::add_state(SymbolId id, int part) { put(id, {SymbolKind::state, part, TapeClass::none, 0}); }

void Alphabet::add_tape(SymbolId id, int sector, TapeClass cls) {
    if (cls == TapeClass::none) cls = TapeClass::ordinary;
    put(id, {SymbolKind::tape, sector, cls, 0});
}

void Alphabet::add_theta(SymbolId id, int rule, int position) {
    put(id, {SymbolKind::theta, rule, TapeClass::none, position});
}

const SymbolInfo* Alphabet::find(SymbolId id) const {
    auto it = info_.find(id);
    return it == info_.end() ? nullptr : &it->second;
}

bool Alphabet::is_state(Letter l) const {
    const auto* i = find(l);
    return i && i->kind == SymbolKind::state;
}

bool Alphabet::is_tape(Letter l) const {
    const auto* i = find(l);
    return i && i->kind == SymbolKind::tape;
}

TypedLengths Alphabet::lengths(const Word& w) const {
    TypedLengths r;
    r.total = w.size();
    for (Letter l : w) {
        const auto* i = find(l);
        if (!i) {
            ++r.untyped;
            continue;
        }
        switch (i->kind) {
            case SymbolKind::state: ++r.q; break;
            case SymbolKind::theta: ++r.theta; break;
            case SymbolKind::tape:
                ++r.a;
                if (i->tape_class == TapeClass::A) ++r.A;
                else if (i->tape_class == TapeClass::b) ++r.b;
                else ++r.o;
                break;
        }
    }
    return r;
}

}  // namespace smforge
