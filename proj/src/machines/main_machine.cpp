#include <limits>
#include <stdexcept>

#include "smforge/machines.hpp"

namespace smforge {
namespace {

constexpr int kSpecial = 1;  // sector between T and Q0 is 0; Q0Q1 is 1

std::string copy_name(std::string_view s, int c) { return std::string(s) + "#" + std::to_string(c); }

SymbolId copy_letter(SymbolId s, int c) { return intern(copy_name(symbol_name(s), c)); }

// Name of an 𝒜-side letter inside input sector `k` of coordinate `c`.
SymbolId input_letter(SymbolId base, bool mirrored, int c) {
    std::string n = symbol_name(base);
    if (mirrored) n = mirror_name(n);
    if (mirrored || c != 1) n = coordinate_name(n, c);
    return intern(n);
}

}  // namespace

MainMachine build_main(std::shared_ptr<const NoiseScheme> scheme, std::shared_ptr<const Recognizer> rec,
                       const Params& params) {
    params.validate();
    params.require_numeric();
    MainMachine mm;
    mm.scheme = scheme;
    mm.recognizer = rec;
    mm.params = params;
    mm.m1 = build_M1(scheme);
    mm.m3 = build_M3(mm.m1, *rec);
    if (params.N + 1 != mm.m3.hw.parts.size())
        throw std::invalid_argument("parameter N must equal the number of parts of M3 minus one");
    const Machine cyc = cyclify(reflect(mm.m3));
    const int L = static_cast<int>(params.L);
    const Machine m61 = parallelize(cyc, L, false, kSpecial);
    const Machine m62 = parallelize(cyc, L, true, kSpecial);
    const std::size_t per = cyc.hw.parts.size();
    mm.parts_per_coordinate = per;
    mm.special_sector = kSpecial;

    Machine& m = mm.machine;
    m.name = "main";
    m.hw.cyclic = true;
    m.hw.sectors = m61.hw.sectors;
    const std::size_t n = m61.hw.parts.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Part& p = m61.hw.parts[j];
        Part q = p;
        q.letters.clear();
        for (int c : {1, 2})
            for (auto s : p.letters) q.letters.push_back(copy_letter(s, c));
        q.start = intern(p.name + ".s");
        q.end = intern(p.name + ".a");
        q.letters.push_back(q.start);
        q.letters.push_back(q.end);
        m.hw.parts.push_back(std::move(q));
    }
    for (std::size_t k = 0; k < m.hw.sectors.size(); ++k)
        if (m.hw.sectors[k].input) mm.input_sectors.push_back(static_cast<int>(k));

    auto start_rule = [&](int c) {
        Rule r;
        r.name = "θ(s)_" + std::to_string(c);
        for (std::size_t j = 0; j < n; ++j)
            r.parts.push_back({m.hw.parts[j].start, copy_letter(m61.hw.parts[j].start, c), {}, {}});
        r.sectors.assign(n, SectorAction::locked_sector());
        for (int k : mm.input_sectors) {
            if (c == 2 && k == kSpecial) continue;
            const int coord = k / static_cast<int>(per) + 1;
            const bool mirrored = k % static_cast<int>(per) != kSpecial;
            std::vector<Word> X, Z;
            for (std::size_t i = 0; i < scheme->size(); ++i) {
                X.push_back(Word{make_letter(input_letter(scheme->A(i), mirrored, coord))});
                Z.push_back(Word{make_letter(input_letter(scheme->A1(i), mirrored, coord))});
            }
            r.sectors[k] = SectorAction::make(std::move(X), std::move(Z));
        }
        return r;
    };
    auto accept_rule = [&](int c) {
        Rule r;
        r.name = "θ(a)_" + std::to_string(c);
        for (std::size_t j = 0; j < n; ++j)
            r.parts.push_back({copy_letter(m61.hw.parts[j].end, c), m.hw.parts[j].end, {}, {}});
        r.sectors.assign(n, SectorAction::locked_sector());
        return r;
    };
    auto working = [&](const Machine& src, int c, std::vector<RuleRef>& refs) {
        for (const auto& r : src.rules) {
            Rule w = r;
            w.name = copy_name(r.name, c);
            for (auto& a : w.parts) {
                a.from = copy_letter(a.from, c);
                a.to = copy_letter(a.to, c);
            }
            m.rules.push_back(std::move(w));
            refs.push_back(static_cast<RuleRef>(m.rules.size()));
        }
    };
    m.rules.push_back(start_rule(1));
    mm.start1 = static_cast<RuleRef>(m.rules.size());
    m.rules.push_back(start_rule(2));
    mm.start2 = static_cast<RuleRef>(m.rules.size());
    working(m61, 1, mm.working1);
    working(m62, 2, mm.working2);
    m.rules.push_back(accept_rule(1));
    mm.accept1 = static_cast<RuleRef>(m.rules.size());
    m.rules.push_back(accept_rule(2));
    mm.accept2 = static_cast<RuleRef>(m.rules.size());
    m.freeze();
    return mm;
}

AdmissibleWord MainMachine::I(const Word& w) const {
    const auto& s = *scheme;
    for (Letter l : w)
        if (!s.index_A(symbol_of(l))) throw std::invalid_argument("I(w) needs an 𝒜-word");
    std::vector<Word> tapes(machine.hw.sectors.size() - 1);
    const int per = static_cast<int>(parts_per_coordinate);
    for (int k : input_sectors) {
        const int coord = k / per + 1;
        const bool mirrored = k % per != special_sector;
        std::vector<Letter> out;
        for (Letter l : w) out.push_back(make_letter(input_letter(symbol_of(l), mirrored, coord), sign_of(l)));
        Word c = Word::from_reduced(std::move(out));
        tapes[k] = mirrored ? c.inverse() : c;
    }
    return standard_configuration(machine.hw, machine.start_letters(), tapes);
}

AdmissibleWord MainMachine::J(const Word& w) const {
    auto W = I(w);
    W.tapes[special_sector] = Word{};
    return W;
}

AdmissibleWord MainMachine::W_ac() const {
    return standard_configuration(machine.hw, machine.end_letters(), {});
}

int MainMachine::rule_class(RuleRef r) const {
    const RuleRef a = r > 0 ? r : -r;
    if (a == start1 || a == accept1) return 1;
    if (a == start2 || a == accept2) return 2;
    for (auto x : working1)
        if (x == a) return 1;
    for (auto x : working2)
        if (x == a) return 2;
    throw std::invalid_argument("rule reference is not a main-machine rule");
}

std::size_t MainMachine::ell(const History& h) const {
    std::size_t runs = 0;
    int prev = 0;
    for (RuleRef r : h) {
        const int c = rule_class(r);
        if (c != prev) ++runs;
        prev = c;
    }
    return runs;
}

History MainMachine::lift(const History& h, int copy) const {
    History out;
    out.reserve(h.size());
    for (RuleRef r : h) {
        const RuleRef a = r > 0 ? r : -r;
        const RuleRef lifted = machine.ref(copy_name(m3.rule_name(a), copy));
        out.push_back(r > 0 ? lifted : -lifted);
    }
    return out;
}

AdmissibleWord MainMachine::component(const AdmissibleWord& W, int i) const {
    const std::size_t per = parts_per_coordinate;
    if (i < 1 || static_cast<std::size_t>(i) > L() || W.states.size() != machine.hw.parts.size())
        throw std::invalid_argument("component: bad coordinate or configuration");
    AdmissibleWord c;
    const std::size_t b = (i - 1) * per;
    c.states.assign(W.states.begin() + b, W.states.begin() + b + per);
    c.tapes.assign(W.tapes.begin() + b, W.tapes.begin() + b + per - 1);
    return c;
}

std::size_t MainMachine::coordinate_a_length(const AdmissibleWord& W, int i) const {
    const auto c = component(W, i);
    std::size_t n = 0;
    for (const auto& t : c.tapes) n += t.size();
    return n;
}

std::size_t MainMachine::coordinate_length(const AdmissibleWord& W, int i) const {
    return component(W, i).length();
}

std::optional<std::pair<Word, int>> MainMachine::decode_start(const AdmissibleWord& W) const {
    if (W.states.size() != machine.hw.parts.size()) return std::nullopt;
    const std::size_t per = parts_per_coordinate;
    // The mirrored input sector of coordinate 1 holds the inverse copy of w.
    int mirrored_sector = -1;
    for (int k : input_sectors)
        if (k < static_cast<int>(per) && k != special_sector) mirrored_sector = k;
    if (mirrored_sector < 0) return std::nullopt;
    const auto& s = *scheme;
    std::unordered_map<SymbolId, std::size_t> back;
    for (std::size_t i = 0; i < s.size(); ++i) back[input_letter(s.A(i), true, 1)] = i;
    std::vector<Letter> out;
    for (Letter l : W.tapes[mirrored_sector].inverse()) {
        auto it = back.find(symbol_of(l));
        if (it == back.end()) return std::nullopt;
        out.push_back(make_letter(s.A(it->second), sign_of(l)));
    }
    const Word w = Word::from_reduced(std::move(out));
    if (W == I(w)) return std::pair{w, 1};
    if (W == J(w)) return std::pair{w, 2};
    return std::nullopt;
}

std::optional<AcceptingRun> accepting_run(const MainMachine& mm, const AdmissibleWord& W) {
    const auto Wac = mm.W_ac();
    if (W == Wac) return AcceptingRun{{}, 0, W};
    auto d = mm.decode_start(W);
    if (!d) return std::nullopt;
    const auto& [w, copy] = *d;
    if (!mm.recognizer->member(w)) return std::nullopt;
    auto sh = shift_history(mm.m1, mm.scheme->phi1(w));
    auto rec = mm.recognizer->accept_run(w);
    if (!sh || !rec) throw std::logic_error("accepting run: recognizer or shift contract violated");
    History m3h = sh->history;
    m3h.push_back(mm.m3.ref("σ"));
    for (RuleRef r : *rec) {
        const RuleRef a = r > 0 ? r : -r;
        const RuleRef m3r = mm.m3.ref(mm.recognizer->machine().rule_name(a));
        m3h.push_back(r > 0 ? m3r : -m3r);
    }
    History h;
    h.push_back(copy == 1 ? mm.start1 : mm.start2);
    auto lifted = mm.lift(m3h, copy);
    h.insert(h.end(), lifted.begin(), lifted.end());
    h.push_back(copy == 1 ? mm.accept1 : mm.accept2);
    auto fin = run_final(mm.machine, W, h);
    if (fin != Wac) throw std::logic_error("accepting run: replay does not reach the accept configuration");
    return AcceptingRun{h, mm.ell(h), fin};
}

std::uint64_t main_time_bound(const MainMachine& mm, std::uint64_t n) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t c0 = mm.params.c0;
    auto mul = [&](std::uint64_t a, std::uint64_t b) { return (a != 0 && b > cap / a) ? cap : a * b; };
    auto add = [&](std::uint64_t a, std::uint64_t b) { return a > cap - b ? cap : a + b; };
    const std::uint64_t tm = mm.recognizer->time_bound_at(mul(c0, n));
    std::uint64_t p = 1;
    for (std::uint64_t i = 0; i < n && p != cap; ++i) p = mul(p, c0);
    std::uint64_t t = mul(c0, mul(tm, mul(tm, tm)));
    t = add(t, mul(n, p));
    t = add(t, mul(c0, n));
    return add(t, 2 * c0);
}

}  // namespace smforge
