#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "smforge/machines.hpp"

namespace smforge {
namespace {

using Rename = std::function<SymbolId(SymbolId)>;

Word rename(const Word& w, const Rename& f) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter l : w) out.push_back(make_letter(f(symbol_of(l)), sign_of(l)));
    return Word::from_reduced(std::move(out));
}

SectorAction rename(const SectorAction& s, const Rename& f) {
    if (s.locked()) return s;
    std::vector<Word> X, Z;
    for (const auto& w : s.X()) X.push_back(rename(w, f));
    for (const auto& w : s.Z()) Z.push_back(rename(w, f));
    return SectorAction::make(std::move(X), std::move(Z), s.perm());
}

Sector rename(const Sector& s, const Rename& f) {
    Sector out;
    out.input = s.input;
    for (const auto& t : s.letters) out.letters.push_back({f(t.id), t.cls});
    return out;
}

Part rename(const Part& p, const Rename& f, std::string name) {
    Part out = p;
    out.name = std::move(name);
    out.letters.clear();
    for (auto s : p.letters) out.letters.push_back(f(s));
    out.start = f(p.start);
    out.end = f(p.end);
    return out;
}

Rename by_name(std::function<std::string(std::string_view)> f) {
    return [f = std::move(f)](SymbolId s) { return intern(f(symbol_name(s))); };
}

}  // namespace

std::string mirror_name(std::string_view s) { return std::string(s) + "~"; }

std::string coordinate_name(std::string_view s, int i) { return std::string(s) + "(" + std::to_string(i) + ")"; }

Machine compose(const Machine& a, const Machine& b, const TransitionSpec& sigma) {
    const std::size_t n = a.hw.parts.size();
    if (b.hw.parts.size() != n) throw MachineError("compose: machines have different numbers of parts");
    if (a.hw.cyclic != b.hw.cyclic) throw MachineError("compose: machines differ in cyclicity");
    Machine m;
    m.name = a.name + "+" + b.name;
    m.hw.cyclic = a.hw.cyclic;
    for (std::size_t i = 0; i < n; ++i) {
        Part p = a.hw.parts[i];
        p.letters.insert(p.letters.end(), b.hw.parts[i].letters.begin(), b.hw.parts[i].letters.end());
        p.end = b.hw.parts[i].end;
        m.hw.parts.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < n; ++k) {
        Sector s = a.hw.sectors[k];
        std::unordered_map<SymbolId, TapeClass> have;
        for (const auto& t : s.letters) have[t.id] = t.cls;
        for (const auto& t : b.hw.sectors[k].letters) {
            auto it = have.find(t.id);
            if (it == have.end()) {
                s.letters.push_back(t);
                have[t.id] = t.cls;
            } else if (it->second != t.cls) {
                throw MachineError("compose: letter " + symbol_name(t.id) + " has two classes");
            }
        }
        m.hw.sectors.push_back(std::move(s));
    }
    for (const auto& r : a.rules) m.rules.push_back(r);
    Rule s;
    s.name = sigma.name;
    for (std::size_t i = 0; i < n; ++i) s.parts.push_back({a.hw.parts[i].end, b.hw.parts[i].start, {}, {}});
    if (sigma.sectors.size() != n && sigma.sectors.size() + 1 != n)
        throw MachineError("compose: transition rule needs one entry per sector");
    for (const auto& spec : sigma.sectors) {
        if (spec.locked) {
            s.sectors.push_back(SectorAction::locked_sector());
        } else {
            std::vector<Word> dom;
            for (auto x : spec.domain) dom.push_back(Word{make_letter(x)});
            s.sectors.push_back(SectorAction::identity(std::move(dom)));
        }
    }
    m.rules.push_back(std::move(s));
    for (const auto& r : b.rules) m.rules.push_back(r);
    m.freeze();
    return m;
}

Machine reflect(const Machine& src) {
    if (src.hw.cyclic) throw MachineError("reflect: machine must not be cyclic");
    const std::size_t n = src.hw.parts.size();
    const Rename mir = by_name(mirror_name);
    Machine m;
    m.name = "reflect(" + src.name + ")";
    for (const auto& p : src.hw.parts) m.hw.parts.push_back(p);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& p = src.hw.parts[n - 1 - k];
        Part q = rename(p, mir, mirror_name(p.name));
        q.inverted = !p.inverted;
        m.hw.parts.push_back(std::move(q));
    }
    for (std::size_t j = 0; j + 1 < n; ++j) m.hw.sectors.push_back(src.hw.sectors[j]);
    m.hw.sectors.emplace_back();
    for (std::size_t k = 0; k + 1 < n; ++k) m.hw.sectors.push_back(rename(src.hw.sectors[n - 2 - k], mir));
    m.hw.sectors.emplace_back();

    for (const auto& r : src.rules) {
        Rule t;
        t.name = r.name;
        t.parts = r.parts;
        for (std::size_t k = 0; k < n; ++k) {
            const auto& a = r.parts[n - 1 - k];
            t.parts.push_back({mir(a.from), mir(a.to), rename(a.v, mir).inverse(), rename(a.u, mir).inverse()});
        }
        for (std::size_t j = 0; j + 1 < n; ++j) t.sectors.push_back(r.sectors[j]);
        t.sectors.push_back(SectorAction::locked_sector());
        for (std::size_t k = 0; k + 1 < n; ++k) t.sectors.push_back(rename(r.sectors[n - 2 - k], mir));
        t.sectors.push_back(SectorAction::locked_sector());
        m.rules.push_back(std::move(t));
    }
    m.freeze();
    return m;
}

Machine cyclify(const Machine& src) {
    if (src.hw.cyclic) throw MachineError("cyclify: machine is already cyclic");
    if (!src.hw.sectors.back().letters.empty()) throw MachineError("cyclify: wrap sector must be empty");
    Machine m;
    m.name = "cyclify(" + src.name + ")";
    m.hw.cyclic = true;
    const SymbolId t = intern("t");
    Part tp{"T", {t}, t, t};
    tp.t_part = true;
    m.hw.parts.push_back(tp);
    for (const auto& p : src.hw.parts) m.hw.parts.push_back(p);
    m.hw.sectors.emplace_back();
    for (const auto& s : src.hw.sectors) m.hw.sectors.push_back(s);
    for (const auto& r : src.rules) {
        Rule c;
        c.name = r.name;
        c.parts.push_back({t, t, {}, {}});
        c.parts.insert(c.parts.end(), r.parts.begin(), r.parts.end());
        c.sectors.push_back(SectorAction::locked_sector());
        c.sectors.insert(c.sectors.end(), r.sectors.begin(), r.sectors.end());
        c.sectors.back() = SectorAction::locked_sector();
        m.rules.push_back(std::move(c));
    }
    m.freeze();
    return m;
}

Machine parallelize(const Machine& src, int L, bool lock_first, int special) {
    if (!src.hw.cyclic) throw MachineError("parallelize: machine must be cyclic");
    if (L < 1) throw MachineError("parallelize: need at least one coordinate");
    const std::size_t n = src.hw.parts.size();
    if (special < 0 || static_cast<std::size_t>(special) + 1 >= n)
        throw MachineError("parallelize: special sector out of range");
    Machine m;
    m.name = "parallel(" + src.name + "," + std::to_string(L) + (lock_first ? ",locked" : "") + ")";
    m.hw.cyclic = true;
    auto coord = [](int i) { return by_name([i](std::string_view s) { return coordinate_name(s, i); }); };
    for (int i = 1; i <= L; ++i) {
        const Rename f = coord(i);
        for (const auto& p : src.hw.parts) {
            Part q = rename(p, f, coordinate_name(p.name, i));
            q.coordinate = i;
            m.hw.parts.push_back(std::move(q));
        }
        for (std::size_t k = 0; k < n; ++k) {
            const bool plain = i == 1 && static_cast<int>(k) == special;
            m.hw.sectors.push_back(plain ? src.hw.sectors[k] : rename(src.hw.sectors[k], f));
        }
    }
    for (const auto& r : src.rules) {
        Rule p;
        p.name = r.name;
        for (int i = 1; i <= L; ++i) {
            const Rename f = coord(i);
            for (std::size_t j = 0; j < n; ++j) {
                const auto& a = r.parts[j];
                PartAction b{f(a.from), f(a.to), a.u, a.v};
                const bool u_plain = i == 1 && static_cast<int>(j) == special + 1;
                const bool v_plain = i == 1 && static_cast<int>(j) == special;
                b.u = u_plain ? (lock_first ? Word{} : a.u) : rename(a.u, f);
                b.v = v_plain ? (lock_first ? Word{} : a.v) : rename(a.v, f);
                p.parts.push_back(std::move(b));
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (i == 1 && static_cast<int>(k) == special)
                    p.sectors.push_back(lock_first ? SectorAction::locked_sector() : r.sectors[k]);
                else
                    p.sectors.push_back(rename(r.sectors[k], f));
            }
        }
        m.rules.push_back(std::move(p));
    }
    m.freeze();
    return m;
}

AdmissibleWord reflect_configuration(const Machine& reflected, const AdmissibleWord& W1, const AdmissibleWord& W2) {
    if (W1.states.size() != W2.states.size() || 2 * W1.states.size() != reflected.hw.parts.size())
        throw MachineError("reflect_configuration: base lengths do not match the reflected machine");
    const Rename mir = by_name(mirror_name);
    AdmissibleWord W = W1;
    W.tapes.emplace_back();
    for (std::size_t j = W2.states.size(); j-- > 0;) {
        W.states.push_back(make_letter(mir(symbol_of(W2.states[j])), -sign_of(W2.states[j])));
        if (j > 0) W.tapes.push_back(rename(W2.tapes[j - 1], mir).inverse());
    }
    return W;
}

std::pair<AdmissibleWord, AdmissibleWord> associated_pair(const Machine& reflected, const AdmissibleWord& W) {
    const std::size_t n = reflected.hw.parts.size() / 2;
    if (W.states.size() != 2 * n) throw MachineError("associated_pair: not a full configuration");
    auto unmirror = [](SymbolId s) {
        const auto& name = symbol_name(s);
        if (name.empty() || name.back() != '~') throw MachineError("associated_pair: letter " + name + " is not mirrored");
        return intern(std::string_view(name).substr(0, name.size() - 1));
    };
    AdmissibleWord W1, W2;
    W1.states.assign(W.states.begin(), W.states.begin() + n);
    W1.tapes.assign(W.tapes.begin(), W.tapes.begin() + (n - 1));
    for (std::size_t j = 2 * n; j-- > n;) {
        W2.states.push_back(make_letter(unmirror(symbol_of(W.states[j])), -sign_of(W.states[j])));
        if (j > n) W2.tapes.push_back(rename(W.tapes[j - 1], unmirror).inverse());
    }
    return {W1, W2};
}

Machine build_M3(const M1& m1, const Recognizer& rec) {
    auto bad = check_recognizer(rec, *m1.scheme);
    if (!bad.empty()) throw MachineError("recognizer contract: " + bad.front());
    TransitionSpec sigma;
    sigma.sectors.resize(3);
    sigma.sectors[1].locked = false;
    sigma.sectors[1].domain = m1.scheme->A2();
    Machine m = compose(m1.machine, rec.machine(), sigma);
    m.name = "M3";
    return m;
}

}  // namespace smforge
