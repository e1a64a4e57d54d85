// Stallings folding with generator bookkeeping: every edge carries a word
// over basis indices so that reading a word along the folded graph yields
// its expression in the original generators.
#include "smforge/words.hpp"

#include <deque>
#include <unordered_set>

namespace smforge {
namespace {

Letter index_letter(std::size_t i, int sign) { return make_letter(static_cast<SymbolId>(i), sign); }

struct Folder {
    struct RawEdge {
        int from, to;
        Letter label;
        Word gen;
    };
    struct Stored {
        int from, to;
        Letter label;
        Word gen;
        bool alive = true;
    };

    std::vector<int> parent;
    std::vector<Word> offset;
    std::vector<std::unordered_map<Letter, int>> out;
    std::vector<Stored> edges;
    std::deque<RawEdge> pending;

    int add_vertex() {
        parent.push_back(static_cast<int>(parent.size()));
        offset.emplace_back();
        out.emplace_back();
        return parent.back();
    }

    std::pair<int, Word> find(int v) {
        if (parent[v] == v) return {v, Word()};
        auto [r, c] = find(parent[v]);
        Word composed = c * offset[v];
        parent[v] = r;
        offset[v] = composed;
        return {r, composed};
    }

    void detach(int id) {
        auto& e = edges[id];
        e.alive = false;
        out[e.from].erase(e.label);
        out[e.to].erase(-e.label);
    }

    // Identify v2 with v1; labels measured from v2 gain the prefix c.
    void merge(int v1, int v2, Word c) {
        if (v2 == 0) {
            std::swap(v1, v2);
            c = c.inverse();
        }
        parent[v2] = v1;
        offset[v2] = std::move(c);
        std::unordered_set<int> incident;
        for (auto& [l, id] : out[v2]) incident.insert(id);
        for (int id : incident) {
            pending.push_back({edges[id].from, edges[id].to, edges[id].label, edges[id].gen});
            detach(id);
        }
    }

    void settle(RawEdge raw) {
        auto [rf, cf] = find(raw.from);
        auto [rt, ct] = find(raw.to);
        Word gen = cf * raw.gen * ct.inverse();
        const Letter a = raw.label;
        if (auto it = out[rf].find(a); it != out[rf].end()) {
            const auto& e1 = edges[it->second];
            if (e1.to == rt) return;
            merge(e1.to, rt, e1.gen.inverse() * gen);
            pending.push_back({rf, rt, a, gen});
            return;
        }
        if (auto it = out[rt].find(-a); it != out[rt].end()) {
            const auto& e1 = edges[it->second];
            if (e1.from == rf) return;
            merge(e1.from, rf, e1.gen * gen.inverse());
            pending.push_back({rf, rt, a, gen});
            return;
        }
        const int id = static_cast<int>(edges.size());
        edges.push_back({rf, rt, a, std::move(gen)});
        out[rf][a] = id;
        out[rt][-a] = id;
    }

    void run() {
        while (!pending.empty()) {
            RawEdge e = std::move(pending.front());
            pending.pop_front();
            settle(std::move(e));
        }
    }
};

}  // namespace

SubgroupBasis::SubgroupBasis(std::vector<Word> basis) : basis_(std::move(basis)) {
    for (const auto& w : basis_)
        if (w.empty()) throw std::invalid_argument("basis contains the empty word");

    direct_ = true;
    std::unordered_set<SymbolId> seen;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].size() != 1 || !seen.insert(symbol_of(basis_[i][0])).second) {
            direct_ = false;
            break;
        }
    }
    if (direct_) {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            direct_index_[basis_[i][0]] = i + 1;
        }
        return;
    }

    Folder f;
    f.add_vertex();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& w = basis_[i];
        int prev = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            const int next = (j + 1 == w.size()) ? 0 : f.add_vertex();
            Word gen = (j + 1 == w.size()) ? Word::from_reduced({index_letter(i, 1)}) : Word();
            if (w[j] > 0) f.pending.push_back({prev, next, w[j], std::move(gen)});
            else f.pending.push_back({next, prev, -w[j], gen.inverse()});
            prev = next;
        }
    }
    f.run();

    std::unordered_map<int, int> renumber;
    auto id_of = [&](int v) {
        auto [it, ins] = renumber.emplace(v, static_cast<int>(renumber.size()));
        return it->second;
    };
    id_of(0);
    for (const auto& e : f.edges) {
        if (!e.alive) continue;
        edges_.push_back({id_of(e.from), id_of(e.to), e.label, e.gen});
    }
    vertices_ = renumber.size();
    out_.assign(vertices_, {});
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        out_[edges_[k].from][edges_[k].label] = static_cast<int>(k);
        out_[edges_[k].to][-edges_[k].label] = static_cast<int>(k);
    }
}

std::size_t SubgroupBasis::rank() const {
    if (direct_) return basis_.size();
    return edges_.size() + 1 - vertices_;
}

std::optional<Word> SubgroupBasis::readback(std::span<const Letter> w) const {
    if (out_.empty()) return w.empty() ? std::optional<Word>(Word()) : std::nullopt;
    int cur = 0;
    std::vector<Letter> acc;
    for (Letter l : w) {
        auto it = out_[cur].find(l);
        if (it == out_[cur].end()) return std::nullopt;
        const auto& e = edges_[it->second];
        if (l > 0) {
            append_reduced(acc, e.gen.letters());
            cur = e.to;
        } else {
            append_reduced(acc, e.gen.inverse().letters());
            cur = e.from;
        }
    }
    if (cur != 0) return std::nullopt;
    return Word::from_reduced(std::move(acc));
}

std::optional<std::vector<Term>> SubgroupBasis::express(const Word& w) const {
    std::vector<Term> terms;
    if (direct_) {
        terms.reserve(w.size());
        for (Letter l : w) {
            if (auto it = direct_index_.find(l); it != direct_index_.end()) terms.push_back({it->second - 1, 1});
            else if (auto jt = direct_index_.find(-l); jt != direct_index_.end()) terms.push_back({jt->second - 1, -1});
            else return std::nullopt;
        }
        return terms;
    }
    auto r = readback(w.letters());
    if (!r) return std::nullopt;
    for (Letter l : *r) terms.push_back({symbol_of(l), sign_of(l)});
    return terms;
}

std::vector<std::size_t> SubgroupBasis::base_prefixes(const Word& w) const {
    std::vector<std::size_t> res{0};
    if (direct_) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!direct_index_.count(w[i]) && !direct_index_.count(-w[i])) break;
            res.push_back(i + 1);
        }
        return res;
    }
    if (out_.empty()) return res;
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto it = out_[cur].find(w[i]);
        if (it == out_[cur].end()) break;
        const auto& e = edges_[it->second];
        cur = w[i] > 0 ? e.to : e.from;
        if (cur == 0) res.push_back(i + 1);
    }
    return res;
}

Word evaluate_terms(std::span<const Term> terms, const std::vector<Word>& basis) {
    Word r;
    for (const auto& t : terms) r *= t.sign > 0 ? basis.at(t.index) : basis.at(t.index).inverse();
    return r;
}

Word BasisExpression::evaluate() const { return evaluate_terms(terms, basis); }

std::optional<BasisExpression> express_in_basis(const Word& w, const std::vector<Word>& basis) {
    SubgroupBasis sb(basis);
    auto t = sb.express(w);
    if (!t) return std::nullopt;
    return BasisExpression{std::move(*t), basis};
}

bool validate_basis(const std::vector<Word>& words) {
    for (const auto& w : words)
        if (w.empty()) return false;
    return SubgroupBasis(words).is_free_basis();
}

}  // namespace smforge
