#include "smforge/smachine.hpp"

namespace smforge {
namespace {

const PartAction& action_for(const Machine& m, const Rule& r, Letter state, std::size_t pos) {
    auto p = m.hw.part_of(state);
    if (!p) throw ApplyError(ApplyFailure::malformed, pos, "letter " + to_string(state) + " is not a state letter");
    const auto& a = r.parts[*p];
    if (a.from != symbol_of(state))
        throw ApplyError(ApplyFailure::state_mismatch, pos,
                         "rule " + r.name + " does not apply to state letter " + to_string(state));
    return a;
}

struct Prepared {
    std::vector<const PartAction*> acts;
    std::vector<int> sectors;
};

Prepared check(const Machine& m, const AdmissibleWord& w, const Rule& r) {
    if (w.states.empty() || w.tapes.size() + 1 != w.states.size())
        throw ApplyError(ApplyFailure::malformed, 0, "word is not admissible");
    Prepared p;
    p.acts.reserve(w.states.size());
    for (std::size_t j = 0; j < w.states.size(); ++j) p.acts.push_back(&action_for(m, r, w.states[j], j));
    p.sectors.reserve(w.tapes.size());
    for (std::size_t j = 0; j < w.tapes.size(); ++j) {
        auto s = m.hw.sector_between(w.states[j], w.states[j + 1]);
        if (!s) throw ApplyError(ApplyFailure::malformed, j, "state letters do not bound a sector");
        p.sectors.push_back(*s);
    }
    return p;
}

}  // namespace

bool is_admissible(const Machine& m, const AdmissibleWord& w, RuleRef ref) {
    return try_apply(m, w, ref).has_value();
}

AdmissibleWord apply(const Machine& m, const AdmissibleWord& w, RuleRef ref) {
    const Rule& r = m.rule(ref);
    auto prep = check(m, w, r);
    AdmissibleWord out;
    out.states.reserve(w.states.size());
    for (std::size_t j = 0; j < w.states.size(); ++j)
        out.states.push_back(make_letter(prep.acts[j]->to, sign_of(w.states[j])));
    out.tapes.reserve(w.tapes.size());
    for (std::size_t j = 0; j < w.tapes.size(); ++j) {
        const auto& sa = r.sectors[prep.sectors[j]];
        auto img = sa.try_image(w.tapes[j]);
        if (!img)
            throw ApplyError(ApplyFailure::sector_nonmember, j,
                             "tape " + std::to_string(j + 1) + " is outside the domain of " + r.name);
        const auto* la = prep.acts[j];
        const auto* ra = prep.acts[j + 1];
        const bool lpos = m.hw.oriented_sign(w.states[j]) > 0;
        const bool rpos = m.hw.oriented_sign(w.states[j + 1]) > 0;
        std::vector<Letter> acc;
        if (lpos) acc = la->v.letters();
        else acc = la->u.inverse().letters();
        append_reduced(acc, img->letters());
        if (rpos) append_reduced(acc, ra->u.letters());
        else append_reduced(acc, ra->v.inverse().letters());
        if (acc.empty() && out.states[j] == -out.states[j + 1])
            throw ApplyError(ApplyFailure::malformed, j, "application cancels a pair of state letters");
        out.tapes.push_back(Word::from_reduced(std::move(acc)));
    }
    return out;
}

std::optional<AdmissibleWord> try_apply(const Machine& m, const AdmissibleWord& w, RuleRef r) {
    try {
        return apply(m, w, r);
    } catch (const ApplyError&) {
        return std::nullopt;
    }
}

std::size_t theta_length(const Machine& m, const AdmissibleWord& w, RuleRef ref) {
    const Rule& r = m.rule(ref);
    auto prep = check(m, w, r);
    std::size_t n = w.states.size();
    for (std::size_t j = 0; j < w.tapes.size(); ++j) {
        auto t = r.sectors[prep.sectors[j]].express(w.tapes[j]);
        if (!t)
            throw ApplyError(ApplyFailure::sector_nonmember, j,
                             "tape " + std::to_string(j + 1) + " is outside the domain of " + r.name);
        n += t->size();
    }
    return n;
}

Word semi_apply(const Machine& m, const Word& w, RuleRef ref, int sector) {
    const Rule& r = m.rule(ref);
    if (sector < 0 || static_cast<std::size_t>(sector) >= r.sectors.size())
        throw ApplyError(ApplyFailure::malformed, 0, "sector index out of range");
    auto img = r.sectors[sector].try_image(w);
    if (!img) throw ApplyError(ApplyFailure::sector_nonmember, 0, "word is outside the domain of " + r.name);
    return *img;
}

std::size_t semi_theta_length(const Machine& m, const Word& w, RuleRef ref, int sector) {
    const Rule& r = m.rule(ref);
    if (sector < 0 || static_cast<std::size_t>(sector) >= r.sectors.size())
        throw ApplyError(ApplyFailure::malformed, 0, "sector index out of range");
    auto t = r.sectors[sector].express(w);
    if (!t) throw ApplyError(ApplyFailure::sector_nonmember, 0, "word is outside the domain of " + r.name);
    return t->size();
}

Computation run(const Machine& m, const AdmissibleWord& start, const History& h) {
    Computation c;
    c.history = h;
    c.words.reserve(h.size() + 1);
    c.words.push_back(start);
    for (std::size_t i = 0; i < h.size(); ++i) {
        try {
            c.words.push_back(apply(m, c.words.back(), h[i]));
        } catch (const ApplyError& e) {
            throw StepError(i, e);
        }
    }
    return c;
}

AdmissibleWord run_final(const Machine& m, const AdmissibleWord& start, const History& h) {
    AdmissibleWord w = start;
    for (std::size_t i = 0; i < h.size(); ++i) {
        try {
            w = apply(m, w, h[i]);
        } catch (const ApplyError& e) {
            throw StepError(i, e);
        }
    }
    return w;
}

SemiComputation semi_run(const Machine& m, const Word& start, const History& h, int sector) {
    SemiComputation c;
    c.history = h;
    c.sector = sector;
    c.words.push_back(start);
    for (std::size_t i = 0; i < h.size(); ++i) {
        try {
            c.words.push_back(semi_apply(m, c.words.back(), h[i], sector));
        } catch (const ApplyError& e) {
            throw StepError(i, e);
        }
    }
    return c;
}

}  // namespace smforge
