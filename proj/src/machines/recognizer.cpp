#include <limits>
#include <map>
#include <queue>
#include <set>

#include "smforge/machines.hpp"

namespace smforge {

std::uint64_t Recognizer::time_bound_at(std::uint64_t n) const {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t acc = 0;
    const auto c = time_bound();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (n != 0 && acc > cap / n) return cap;
        acc *= n;
        if (acc > cap - *it) return cap;
        acc += *it;
    }
    return acc;
}

AdmissibleWord Recognizer::start(const NoiseScheme& s, const Word& w) const {
    const auto& hw = machine().hw;
    return standard_configuration(hw, machine().start_letters(), {Word{}, s.phi2(w)});
}

AdmissibleWord Recognizer::accept_configuration() const {
    return standard_configuration(machine().hw, machine().end_letters(), {Word{}, Word{}});
}

namespace {

bool positive_A_word(const NoiseScheme& s, const Word& w) {
    for (Letter l : w)
        if (l < 0 || !s.index_A(symbol_of(l))) return false;
    return true;
}

Machine toy_machine(const NoiseScheme& s, bool with_fin, std::vector<RuleRef>& tau, std::vector<RuleRef>& tau2,
                    RuleRef& fin) {
    Machine m;
    m.name = with_fin ? "odd" : "reject";
    const SymbolId p0 = intern("p0"), ps = intern("p1.s"), po = intern("p1.o"), pe = intern("p1.e"),
                   p2 = intern("p2");
    m.hw.parts = {Part{"P0", {p0}, p0, p0}, Part{"P1", {ps, po, pe}, ps, pe}, Part{"P2", {p2}, p2, p2}};
    Sector input;
    input.input = true;
    std::vector<Word> dom;
    for (auto a : s.A2()) {
        input.letters.push_back({a, TapeClass::A});
        dom.push_back(Word{make_letter(a)});
    }
    m.hw.sectors = {Sector{}, input, Sector{}};
    const auto id = SectorAction::identity(dom);
    const auto lock = SectorAction::locked_sector();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Word pop{-make_letter(s.A2(i))};
        const std::string n = s.y_name(i);
        m.rules.push_back(Rule{"τ_{" + n + "}", {{p0, p0, {}, {}}, {ps, po, {}, pop}, {p2, p2, {}, {}}}, {lock, id, lock}});
        tau.push_back(static_cast<RuleRef>(m.rules.size()));
        m.rules.push_back(Rule{"τ'_{" + n + "}", {{p0, p0, {}, {}}, {po, ps, {}, pop}, {p2, p2, {}, {}}}, {lock, id, lock}});
        tau2.push_back(static_cast<RuleRef>(m.rules.size()));
    }
    if (with_fin) {
        m.rules.push_back(Rule{"fin", {{p0, p0, {}, {}}, {po, pe, {}, {}}, {p2, p2, {}, {}}}, {lock, lock, lock}});
        fin = static_cast<RuleRef>(m.rules.size());
    }
    m.freeze();
    return m;
}

class OddRecognizer : public Recognizer {
public:
    explicit OddRecognizer(std::shared_ptr<const NoiseScheme> s, bool accepting) : s_(std::move(s)), accepting_(accepting) {
        m_ = toy_machine(*s_, accepting_, tau_, tau2_, fin_);
    }
    const Machine& machine() const override { return m_; }
    bool member(const Word& w) const override {
        return accepting_ && positive_A_word(*s_, w) && w.size() % 2 == 1;
    }
    std::optional<History> accept_run(const Word& w) const override {
        if (!member(w)) return std::nullopt;
        History h;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::size_t a = *s_->index_A(symbol_of(w[i]));
            h.push_back(i % 2 == 0 ? tau_[a] : tau2_[a]);
        }
        h.push_back(fin_);
        return h;
    }
    std::vector<std::uint64_t> time_bound() const override { return {1, 1}; }
    std::string kind() const override { return accepting_ ? "odd" : "reject"; }

private:
    std::shared_ptr<const NoiseScheme> s_;
    bool accepting_;
    Machine m_;
    std::vector<RuleRef> tau_, tau2_;
    RuleRef fin_ = 0;
};

class FileRecognizer : public Recognizer {
public:
    FileRecognizer(std::shared_ptr<const NoiseScheme> s, Machine m, std::function<bool(const Word&)> member,
                   std::size_t limit)
        : s_(std::move(s)), m_(std::move(m)), member_(std::move(member)), limit_(limit) {
        m_.freeze();
    }
    const Machine& machine() const override { return m_; }
    bool member(const Word& w) const override { return positive_A_word(*s_, w) && member_(w); }
    std::optional<History> accept_run(const Word& w) const override {
        if (!member(w)) return std::nullopt;
        const auto start = this->start(*s_, w);
        const auto goal = accept_configuration();
        std::map<Word, std::pair<Word, RuleRef>> parent;
        std::queue<AdmissibleWord> q;
        parent.emplace(start.to_word(), std::pair{Word{}, 0});
        q.push(start);
        const auto nrules = static_cast<RuleRef>(m_.rules.size());
        while (!q.empty() && parent.size() < limit_) {
            auto cur = q.front();
            q.pop();
            const Word key = cur.to_word();
            if (cur == goal) {
                History h;
                Word k = key;
                while (true) {
                    const auto& [prev, r] = parent.at(k);
                    if (r == 0) break;
                    h.push_back(r);
                    k = prev;
                }
                return History(h.rbegin(), h.rend());
            }
            for (RuleRef r = -nrules; r <= nrules; ++r) {
                if (r == 0) continue;
                auto next = try_apply(m_, cur, r);
                if (!next) continue;
                if (parent.emplace(next->to_word(), std::pair{key, r}).second) q.push(std::move(*next));
            }
        }
        return std::nullopt;
    }
    std::vector<std::uint64_t> time_bound() const override { return {limit_}; }
    bool thread_safe() const override { return false; }
    std::string kind() const override { return "file"; }

private:
    std::shared_ptr<const NoiseScheme> s_;
    Machine m_;
    std::function<bool(const Word&)> member_;
    std::size_t limit_;
};

}  // namespace

std::shared_ptr<const Recognizer> make_odd_recognizer(std::shared_ptr<const NoiseScheme> s) {
    return std::make_shared<OddRecognizer>(std::move(s), true);
}

std::shared_ptr<const Recognizer> make_reject_recognizer(std::shared_ptr<const NoiseScheme> s) {
    return std::make_shared<OddRecognizer>(std::move(s), false);
}

std::shared_ptr<const Recognizer> make_file_recognizer(std::shared_ptr<const NoiseScheme> s, Machine m,
                                                       std::function<bool(const Word&)> member,
                                                       std::size_t node_limit) {
    return std::make_shared<FileRecognizer>(std::move(s), std::move(m), std::move(member), node_limit);
}

std::vector<std::string> check_recognizer(const Recognizer& r, const NoiseScheme& s) {
    std::vector<std::string> bad;
    const auto& m = r.machine();
    if (m.hw.parts.size() != 3) bad.push_back("recognizer must have exactly three parts");
    if (m.hw.cyclic) bad.push_back("recognizer must not be cyclic");
    if (!bad.empty()) return bad;
    if (!m.hw.sectors[0].letters.empty()) bad.push_back("the P0P1 sector must have an empty alphabet");
    std::set<SymbolId> want(s.A2().begin(), s.A2().end()), have;
    for (const auto& t : m.hw.sectors[1].letters) have.insert(t.id);
    if (want != have) bad.push_back("the P1P2 sector alphabet must be 𝒜₂");
    if (!m.hw.sectors[1].input) bad.push_back("the P1P2 sector must be the input sector");
    for (const auto& rule : m.rules)
        if (!rule.sectors[0].locked()) bad.push_back("rule " + rule.name + " does not lock the P0P1 sector");
    return bad;
}

}  // namespace smforge
