#include <sstream>
#include <stdexcept>

#include "smforge/groups.hpp"

namespace smforge {

namespace {

constexpr std::pair<RelatorClass, const char*> kTags[] = {
    {RelatorClass::theta_q, "theta-q"}, {RelatorClass::theta_A, "theta-A"}, {RelatorClass::theta_b, "theta-b"},
    {RelatorClass::theta_a, "theta-a"}, {RelatorClass::hub, "hub"},         {RelatorClass::disk, "disk"},
    {RelatorClass::a_relation, "a-rel"},
};

}  // namespace

RelatorClass tape_relator_class(const Hardware& hw, const Word& x) {
    if (x.size() != 1) return RelatorClass::theta_a;
    const auto* info = hw.alphabet().find(x[0]);
    if (!info) return RelatorClass::theta_a;
    switch (info->tape_class) {
        case TapeClass::A: return RelatorClass::theta_A;
        case TapeClass::b: return RelatorClass::theta_b;
        default: return RelatorClass::theta_a;
    }
}

std::string class_tag(RelatorClass c) {
    for (auto& [k, t] : kTags)
        if (k == c) return t;
    return "?";
}

std::optional<RelatorClass> parse_class_tag(std::string_view tag) {
    for (auto& [k, t] : kTags)
        if (tag == t) return k;
    return std::nullopt;
}

std::size_t Presentation::count(RelatorClass c) const {
    std::size_t n = 0;
    for (const auto& r : relators) n += r.cls == c;
    return n;
}

std::size_t theta_positions(const Machine& m) { return m.hw.size() + (m.hw.cyclic ? 0 : 1); }

SymbolId theta_letter(const Machine& m, RuleRef positive_rule, std::size_t position) {
    if (positive_rule <= 0) throw std::invalid_argument("theta letters belong to positive rules");
    return intern(m.rule_name(positive_rule) + "." + std::to_string(position % theta_positions(m)));
}

Presentation emit_presentation(const Machine& m, Level level, const std::optional<AdmissibleWord>& hub) {
    if (!m.frozen()) throw std::invalid_argument("machine must be frozen");
    Presentation p;
    p.machine = m.name;
    const auto& hw = m.hw;
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
        const RuleRef ref = static_cast<RuleRef>(i + 1);
        const Rule& r = m.rules[i];
        auto th = [&](std::size_t pos) { return make_letter(theta_letter(m, ref, pos)); };
        for (std::size_t k = 0; k < hw.size(); ++k) {
            const auto& a = r.parts[k];
            const Letter from = hw.base_letter(a.from);
            const Letter to = hw.base_letter(a.to);
            const Word piece = a.u * Word{to} * a.v;
            std::vector<Letter> raw{from, th(k + 1)};
            for (Letter l : piece.inverse()) raw.push_back(l);
            raw.push_back(-th(k));
            p.relators.push_back({Word::reduce(raw), RelatorClass::theta_q, hw.parts[k].coordinate, ref,
                                  static_cast<int>(k)});
        }
        for (std::size_t k = 0; k < hw.sectors.size(); ++k) {
            const auto& sa = r.sectors[k];
            if (sa.locked()) continue;
            const Letter t = th(k + 1);
            for (std::size_t x = 0; x < sa.X().size(); ++x) {
                const Word& xw = sa.X()[x];
                std::vector<Letter> raw(xw.begin(), xw.end());
                raw.push_back(t);
                for (Letter l : sa.image_of(x).inverse()) raw.push_back(l);
                raw.push_back(-t);
                p.relators.push_back({Word::reduce(raw), tape_relator_class(hw, xw), 0, ref, static_cast<int>(k)});
            }
        }
    }
    if (level == Level::G) {
        const auto W = hub ? *hub : standard_configuration(hw, m.end_letters(), {});
        p.relators.push_back({W.to_word(), RelatorClass::hub, 0, 0, -1});
    }
    return p;
}

std::string format_presentation(const Presentation& p) {
    std::ostringstream os;
    for (const auto& r : p.relators) os << class_tag(r.cls) << ": " << to_string(r.word) << "\n";
    return os.str();
}

Presentation parse_presentation(std::string_view text) {
    Presentation p;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing class tag");
        auto cls = parse_class_tag(line.substr(0, colon));
        if (!cls) throw ParseError("line " + std::to_string(lineno) + ": unknown class tag");
        Relator r;
        r.cls = *cls;
        r.word = parse_word(line.substr(colon + 1));
        p.relators.push_back(std::move(r));
    }
    return p;
}

std::optional<Relator> disk_relator(const MainMachine& mm, const AdmissibleWord& W) {
    if (W == mm.W_ac()) return Relator{W.to_word(), RelatorClass::hub, 0, 0, -1};
    auto run = accepting_run(mm, W);
    if (!run || run->ell > 1) return std::nullopt;
    return Relator{W.to_word(), RelatorClass::disk, 0, 0, -1};
}

}  // namespace smforge
