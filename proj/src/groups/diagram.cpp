#include <algorithm>
#include <map>
#include <stdexcept>

#include "smforge/groups.hpp"

namespace smforge {

Word Cell::boundary() const {
    std::vector<Letter> raw(bottom.begin(), bottom.end());
    raw.push_back(right);
    for (Letter l : top.inverse()) raw.push_back(l);
    raw.push_back(-left);
    return Word::reduce(raw);
}

std::string kind_name(DiagramKind k) {
    switch (k) {
        case DiagramKind::trapezium: return "trapezium";
        case DiagramKind::semi_trapezium: return "semi-trapezium";
        case DiagramKind::compressed: return "compressed";
        case DiagramKind::disk: return "disk";
    }
    return "?";
}

std::size_t GridDiagram::cell_count() const {
    std::size_t n = 0;
    for (const auto& b : bands) n += b.cells.size();
    return n;
}

namespace {

Letter theta(const Machine& m, RuleRef r, std::size_t pos) {
    const Letter t = make_letter(theta_letter(m, r > 0 ? r : -r, pos));
    return r > 0 ? t : -t;
}

void tape_cells(const Machine& m, RuleRef r, int sector, const Word& w, Letter th, std::vector<Cell>& out) {
    const auto& sa = m.rule(r).sectors[sector];
    auto terms = sa.express(w);
    if (!terms) throw std::invalid_argument("tape word outside the domain of " + m.rule_name(r));
    for (const auto& t : *terms) {
        Cell c;
        c.cls = tape_relator_class(m.hw, sa.X()[t.index]);
        c.bottom = t.sign > 0 ? sa.X()[t.index] : sa.X()[t.index].inverse();
        c.top = t.sign > 0 ? sa.image_of(t.index) : sa.image_of(t.index).inverse();
        c.left = c.right = th;
        out.push_back(std::move(c));
    }
}

// Band of a positive rule applied to W; returns the band and W·θ.
std::pair<Band, AdmissibleWord> positive_band(const Machine& m, const AdmissibleWord& W, RuleRef r) {
    const auto& hw = m.hw;
    const Rule& rule = m.rule(r);
    AdmissibleWord next = apply(m, W, r);
    Band b;
    b.rule = r;
    b.rule_name = m.rule_name(r);
    for (std::size_t j = 0; j < W.states.size(); ++j) {
        const Letter S = W.states[j];
        const int p = *hw.part_of(S);
        const auto& a = rule.parts[p];
        const int sigma = hw.oriented_sign(S);
        const Letter O = sigma > 0 ? S : -S;
        const Word piece = a.u * Word{make_letter(a.to, sign_of(O))} * a.v;
        Cell c;
        c.cls = RelatorClass::theta_q;
        c.coordinate = hw.parts[p].coordinate;
        c.t_cell = hw.parts[p].t_part;
        c.bottom = Word{S};
        if (sigma > 0) {
            c.top = piece;
            c.left = theta(m, r, p);
            c.right = theta(m, r, p + 1);
        } else {
            c.top = piece.inverse();
            c.left = theta(m, r, p + 1);
            c.right = theta(m, r, p);
        }
        b.cells.push_back(std::move(c));
        if (j < W.tapes.size()) {
            const int k = *hw.sector_between(W.states[j], W.states[j + 1]);
            tape_cells(m, r, k, W.tapes[j], theta(m, r, k + 1), b.cells);
        }
    }
    const auto& first = rule.parts[*hw.part_of(W.states.front())];
    const auto& last = rule.parts[*hw.part_of(W.states.back())];
    b.top_left = hw.oriented_sign(W.states.front()) > 0 ? first.u.inverse() : first.v;
    b.top_right = hw.oriented_sign(W.states.back()) > 0 ? last.v.inverse() : last.u;
    b.left = b.cells.front().left;
    b.right = b.cells.back().right;
    b.bottom = W.to_word();
    b.top = next.to_word();
    return {std::move(b), std::move(next)};
}

Band flipped(Band b, RuleRef r, const std::string& name) {
    for (auto& c : b.cells) {
        std::swap(c.bottom, c.top);
        c.left = -c.left;
        c.right = -c.right;
    }
    std::swap(b.bottom_left, b.top_left);
    std::swap(b.bottom_right, b.top_right);
    std::swap(b.bottom, b.top);
    b.left = -b.left;
    b.right = -b.right;
    b.rule = r;
    b.rule_name = name;
    return b;
}

// Sector band from `bottom` to `top`. Cells always come from the positive
// rule, so a negative step reads the positive band of its result upside down.
Band sector_band(const Machine& m, RuleRef r, int sector, const Word& bottom, const Word& top) {
    Band b;
    const RuleRef pos = r > 0 ? r : -r;
    b.left = b.right = theta(m, pos, sector + 1);
    tape_cells(m, pos, sector, r > 0 ? bottom : top, b.left, b.cells);
    b.bottom = r > 0 ? bottom : top;
    b.top = r > 0 ? top : bottom;
    if (r < 0) return flipped(std::move(b), r, m.rule_name(r));
    b.rule = r;
    b.rule_name = m.rule_name(r);
    return b;
}

void finish(GridDiagram& d) {
    std::size_t id = 0;
    std::vector<Letter> left, right;
    for (auto& b : d.bands) {
        for (auto& c : b.cells) c.id = id++;
        append_reduced(left, b.bottom_left.letters());
        append_reduced(left, std::vector<Letter>{b.left});
        append_reduced(left, b.top_left.inverse().letters());
        append_reduced(right, b.bottom_right.inverse().letters());
        append_reduced(right, std::vector<Letter>{b.right});
        append_reduced(right, b.top_right.letters());
    }
    d.left = Word::from_reduced(std::move(left));
    d.right = Word::from_reduced(std::move(right));
    if (d.glued) d.contour = d.bottom;
    else d.contour = d.bottom * d.right * d.top.inverse() * d.left.inverse();
}

void require_reduced(const History& h) {
    if (reduce_history(h) != h) throw std::invalid_argument("history is not reduced");
}

}  // namespace

GridDiagram build_trapezium(const Machine& m, const AdmissibleWord& start, const History& h) {
    require_reduced(h);
    GridDiagram d;
    d.kind = DiagramKind::trapezium;
    d.machine = m.name;
    d.bottom = start.to_word();
    AdmissibleWord W = start;
    for (RuleRef r : h) {
        if (r > 0) {
            auto [band, next] = positive_band(m, W, r);
            d.bands.push_back(std::move(band));
            W = std::move(next);
        } else {
            AdmissibleWord next = apply(m, W, r);
            auto [band, back] = positive_band(m, next, -r);
            if (back != W) throw std::logic_error("inverse rule does not undo its rule");
            d.bands.push_back(flipped(std::move(band), r, m.rule_name(r)));
            W = std::move(next);
        }
    }
    d.top = W.to_word();
    finish(d);
    return d;
}

GridDiagram build_trapezium(const Machine& m, const Computation& c) {
    GridDiagram d = build_trapezium(m, c.start(), c.history);
    if (d.top != c.end().to_word()) throw std::invalid_argument("computation does not end where its history leads");
    return d;
}

GridDiagram build_semitrapezium(const Machine& m, const SemiComputation& s) {
    require_reduced(s.history);
    if (s.words.size() != s.history.size() + 1) throw std::invalid_argument("semi-computation has the wrong shape");
    GridDiagram d;
    d.kind = DiagramKind::semi_trapezium;
    d.machine = m.name;
    d.bottom = s.words.front();
    for (std::size_t j = 0; j < s.history.size(); ++j) {
        d.bands.push_back(sector_band(m, s.history[j], s.sector, s.words[j], s.words[j + 1]));
    }
    d.top = s.words.back();
    finish(d);
    return d;
}

GridDiagram build_compressed(const SpecialSector& ss, const Word& w, const History& h) {
    require_reduced(h);
    const Machine& m = ss.main().machine;
    const auto c = ss.compressed_run(w, h);
    GridDiagram d;
    d.kind = DiagramKind::compressed;
    d.machine = m.name;
    d.bottom = c.words.front();
    for (std::size_t j = 0; j < h.size(); ++j) {
        const RuleRef r = h[j];
        const Word full = semi_apply(m, c.words[j], r, ss.sector());
        Band b = sector_band(m, r, ss.sector(), c.words[j], full);
        const Word& kept = c.words[j + 1];
        std::size_t at = 0;
        while (at + kept.size() <= full.size() && full.subword(at, kept.size()) != kept) ++at;
        if (at + kept.size() > full.size()) throw std::logic_error("compressed word is not a subword of the image");
        b.top_left = full.subword(0, at).inverse();
        b.top_right = full.subword(at + kept.size(), full.size() - at - kept.size()).inverse();
        b.bottom = c.words[j];
        b.top = kept;
        d.bands.push_back(std::move(b));
    }
    d.top = c.words.back();
    finish(d);
    return d;
}

std::optional<GridDiagram> build_disk_diagram(const MainMachine& mm, const AdmissibleWord& W) {
    const auto Wac = mm.W_ac();
    History h;
    if (W != Wac) {
        const auto run = accepting_run(mm, W);
        if (!run || run->ell > 1) return std::nullopt;
        h = run->history;
    }
    GridDiagram d = build_trapezium(mm.machine, W, h);
    d.kind = DiagramKind::disk;
    d.glued = true;
    d.hub = Wac.to_word();
    d.hub_measure = mm.coordinate_length(Wac, 2);
    finish(d);
    return d;
}

namespace {

Word canonical(const Word& w) {
    const Word core = cyclic_reduce(w).core;
    if (core.empty()) return core;
    Word best = core;
    for (const auto& p : cyclic_permutations(core)) best = std::min(best, p);
    for (const auto& p : cyclic_permutations(core.inverse())) best = std::min(best, p);
    return best;
}

}  // namespace

VerifyReport verify_diagram(const GridDiagram& d, const Presentation& p) {
    VerifyReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };
    std::map<Word, RelatorClass> relators;
    for (const auto& r : p.relators) relators.emplace(canonical(r.word), r.cls);

    for (std::size_t j = 0; j < d.bands.size(); ++j) {
        const auto& b = d.bands[j];
        const std::string where = "band " + std::to_string(j);
        std::vector<Letter> bottom(b.bottom_left.begin(), b.bottom_left.end());
        std::vector<Letter> top(b.top_left.begin(), b.top_left.end());
        for (std::size_t k = 0; k < b.cells.size(); ++k) {
            const auto& c = b.cells[k];
            const std::string id = "cell " + std::to_string(c.id) + " (" + where + ")";
            auto it = relators.find(canonical(c.boundary()));
            if (it == relators.end()) fail(id + ": boundary " + to_string(c.boundary()) + " is not a relator");
            else if (it->second != c.cls) fail(id + ": class " + class_tag(c.cls) + " does not match its relator");
            if (k + 1 < b.cells.size() && c.right != b.cells[k + 1].left)
                fail(id + ": right edge differs from the next cell's left edge");
            append_reduced(bottom, c.bottom.letters());
            append_reduced(top, c.top.letters());
        }
        if (b.cells.empty()) {
            if (b.left != b.right) fail(where + ": empty band with different side edges");
        } else {
            if (b.cells.front().left != b.left) fail(where + ": left edge mismatch");
            if (b.cells.back().right != b.right) fail(where + ": right edge mismatch");
        }
        append_reduced(bottom, b.bottom_right.letters());
        append_reduced(top, b.top_right.letters());
        if (Word::from_reduced(bottom) != b.bottom) fail(where + ": bottom label does not match its cells");
        if (Word::from_reduced(top) != b.top) fail(where + ": top label does not match its cells");
        if (j + 1 < d.bands.size() && b.top != d.bands[j + 1].bottom)
            fail(where + ": top differs from the bottom of the next band");
    }
    if (d.bands.empty()) {
        if (d.bottom != d.top) fail("empty diagram with different top and bottom");
    } else {
        if (d.bands.front().bottom != d.bottom) fail("diagram bottom differs from the first band");
        if (d.bands.back().top != d.top) fail("diagram top differs from the last band");
    }

    std::vector<Letter> left, right;
    for (const auto& b : d.bands) {
        append_reduced(left, b.bottom_left.letters());
        append_reduced(left, std::vector<Letter>{b.left});
        append_reduced(left, b.top_left.inverse().letters());
        append_reduced(right, b.bottom_right.inverse().letters());
        append_reduced(right, std::vector<Letter>{b.right});
        append_reduced(right, b.top_right.letters());
    }
    if (Word::from_reduced(left) != d.left) fail("left side label mismatch");
    if (Word::from_reduced(right) != d.right) fail("right side label mismatch");

    if (d.glued) {
        if (d.left != d.right) fail("glued sides carry different labels");
        if (!d.hub) fail("glued diagram without a hub");
        if (d.contour != d.bottom) fail("contour of a disk diagram must be its bottom");
    } else if (d.contour != d.bottom * d.right * d.top.inverse() * d.left.inverse()) {
        fail("contour label mismatch");
    }
    if (d.hub) {
        if (*d.hub != d.top) fail("hub label differs from the top");
        auto it = relators.find(canonical(*d.hub));
        if (it == relators.end() || it->second != RelatorClass::hub) fail("hub label is not the hub relator");
    }
    return rep;
}

Signature diagram_signature(const GridDiagram& d) {
    Signature s;
    s.disks = d.hub ? 1 : 0;
    for (const auto& b : d.bands) {
        for (const auto& c : b.cells) {
            if (c.cls == RelatorClass::theta_q && c.t_cell && c.coordinate >= 2) ++s.t_cells;
            else if (c.cls == RelatorClass::a_relation) ++s.a_cells;
            else if (c.cls == RelatorClass::theta_A) ++s.A_cells;
            else if (c.cls == RelatorClass::disk || c.cls == RelatorClass::hub) ++s.disks;
        }
    }
    return s;
}

}  // namespace smforge
