#include "smforge/machines.hpp"

namespace smforge {

M1 build_M1(const std::vector<std::string>& alphabet) {
    return build_M1(std::make_shared<const NoiseScheme>(alphabet));
}

M1 build_M1(std::shared_ptr<const NoiseScheme> scheme) {
    const auto& s = *scheme;
    M1 out;
    out.scheme = scheme;
    Machine& m = out.machine;
    m.name = "M1";
    const SymbolId q0 = intern("q0"), q1 = intern("q1"), q2 = intern("q2");
    m.hw.parts = {Part{"Q0", {q0}, q0, q0}, Part{"Q1", {q1}, q1, q1}, Part{"Q2", {q2}, q2, q2}};
    Sector input;
    input.input = true;
    for (auto a : s.A()) input.letters.push_back({a, TapeClass::A});
    for (auto a : s.A1()) input.letters.push_back({a, TapeClass::A});
    for (auto b : s.B()) input.letters.push_back({b, TapeClass::b});
    Sector right;
    for (auto a : s.A2()) right.letters.push_back({a, TapeClass::A});
    m.hw.sectors = {input, right, Sector{}};

    std::vector<Word> X, A2;
    for (auto a : s.A1()) X.push_back(Word{make_letter(a)});
    for (auto b : s.B()) X.push_back(Word{make_letter(b)});
    for (auto a : s.A2()) A2.push_back(Word{make_letter(a)});
    const SectorAction right_action = SectorAction::identity(A2);

    for (std::size_t y = 0; y < s.y_count(); ++y) {
        Rule r;
        r.name = "θ_{" + s.y_name(y) + "}";
        PartAction mid{q1, q1, Word{-s.y_tape(y)}, Word{}};
        if (!s.y_is_b(y)) mid.v = Word{make_letter(s.A2(y))};
        r.parts = {PartAction{q0, q0, {}, {}}, mid, PartAction{q2, q2, {}, {}}};
        std::vector<Word> Z;
        for (std::size_t a = 0; a < s.size(); ++a) Z.push_back(s.noise(y, a) * Word{make_letter(s.A1(a))});
        for (auto b : s.B()) Z.push_back(Word{make_letter(b)});
        r.sectors = {SectorAction::make(X, Z), right_action, SectorAction::locked_sector()};
        m.rules.push_back(std::move(r));
        out.theta.push_back(static_cast<RuleRef>(m.rules.size()));
    }
    m.freeze();
    return out;
}

std::optional<std::pair<std::size_t, int>> M1::decode_rule(RuleRef r) const {
    for (std::size_t y = 0; y < theta.size(); ++y) {
        if (theta[y] == r) return std::pair{y, 1};
        if (theta[y] == -r) return std::pair{y, -1};
    }
    return std::nullopt;
}

Word epsilon_projection(const M1& m, const AdmissibleWord& W) {
    const auto& s = *m.scheme;
    std::vector<Letter> acc;
    for (const auto& t : W.tapes) {
        for (Letter l : t) {
            const SymbolId id = symbol_of(l);
            if (auto i = s.index_A2(id)) acc.push_back(make_letter(s.A(*i), sign_of(l)));
            else if (auto j = s.index_A1(id)) acc.push_back(make_letter(s.A(*j), sign_of(l)));
            else if (s.index_A(id)) acc.push_back(l);
            else if (!s.index_B(id)) throw std::invalid_argument("letter " + to_string(l) + " is not an M1 tape letter");
        }
    }
    return Word::reduce(acc);
}

AdmissibleWord m1_start(const M1& m, const Word& w) {
    const auto& p = m.machine.hw.parts;
    return standard_configuration(m.machine.hw, {p[0].start, p[1].start, p[2].start},
                                  {m.scheme->phi1(w), Word{}});
}

}  // namespace smforge
