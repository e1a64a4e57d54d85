#include "smforge/embedding.hpp"

#include <array>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace smforge {

struct RelatorOracle::Memo {
    std::mutex mu;
    std::unordered_map<Word, bool, WordHash> table;
    std::unordered_set<SymbolId> allowed;
    std::size_t misses = 0;
};

RelatorOracle::RelatorOracle(std::vector<SymbolId> generators, std::function<bool(const Word&)> trivial,
                             std::string description)
    : gens_(std::move(generators)), fn_(std::move(trivial)), description_(std::move(description)),
      memo_(std::make_shared<Memo>()) {
    memo_->allowed.insert(gens_.begin(), gens_.end());
}

bool RelatorOracle::trivial(const Word& w) const {
    {
        std::lock_guard lock(memo_->mu);
        if (auto it = memo_->table.find(w); it != memo_->table.end()) return it->second;
        for (Letter l : w)
            if (!memo_->allowed.count(symbol_of(l)))
                throw std::invalid_argument("oracle query uses a letter outside the generators: " + to_string(l));
    }
    const bool r = fn_(w);
    std::lock_guard lock(memo_->mu);
    memo_->table.emplace(w, r);
    ++memo_->misses;
    return r;
}

std::size_t RelatorOracle::evaluations() const {
    std::lock_guard lock(memo_->mu);
    return memo_->misses;
}

RelatorOracle exponent_sum_oracle(std::vector<SymbolId> generators, int modulus) {
    auto fn = [modulus](const Word& w) {
        std::unordered_map<SymbolId, long long> sums;
        for (Letter l : w) sums[symbol_of(l)] += sign_of(l);
        for (auto& [s, e] : sums) {
            if (modulus == 0 ? e != 0 : e % modulus != 0) return false;
        }
        return true;
    };
    std::string desc = modulus == 0 ? "Z" : "Z" + std::to_string(modulus);
    return RelatorOracle(std::move(generators), fn, desc);
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string r = "'";
    for (char c : s) {
        if (c == '\'') r += "'\\''";
        else r += c;
    }
    return r + "'";
}

}  // namespace

RelatorOracle command_oracle(std::vector<SymbolId> generators, std::string command) {
    auto fn = [command](const Word& w) {
        const std::string line = command + " " + shell_quote(to_string(w));
        FILE* p = popen(line.c_str(), "r");
        if (!p) throw std::runtime_error("cannot start oracle command: " + command);
        std::string out;
        std::array<char, 256> buf{};
        while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
        const int status = pclose(p);
        const auto pos = out.find_first_not_of(" \t\r\n");
        if (status != 0 || pos == std::string::npos || (out[pos] != '0' && out[pos] != '1'))
            throw std::runtime_error("oracle command gave no 0/1 answer for " + to_string(w));
        return out[pos] == '1';
    };
    return RelatorOracle(std::move(generators), fn, "command: " + command);
}

RelatorOracle make_oracle(const std::vector<std::string>& generator_names, const std::string& binding) {
    if (generator_names.empty()) throw std::invalid_argument("oracle needs at least one generator");
    std::vector<SymbolId> gens;
    std::unordered_set<SymbolId> seen;
    for (const auto& n : generator_names) {
        if (n.empty() || n.find_first_of(" \t^") != std::string::npos)
            throw std::invalid_argument("bad generator name '" + n + "'");
        const SymbolId s = intern(n);
        if (!seen.insert(s).second) throw std::invalid_argument("duplicate generator " + n);
        gens.push_back(s);
    }
    if (binding == "Z") return exponent_sum_oracle(gens, 0);
    if (binding == "Z2") return exponent_sum_oracle(gens, 2);
    if (binding.empty()) throw std::invalid_argument("empty oracle binding");
    return command_oracle(gens, binding);
}

StandardTrick::StandardTrick(RelatorOracle oracle) : oracle_(std::move(oracle)) {
    for (SymbolId x : X()) Y_.push_back(x);
    for (SymbolId x : X()) Y_.push_back(intern(symbol_name(x) + "bar"));
    for (std::size_t i = 0; i < Y_.size(); ++i) {
        if (!iY_.emplace(Y_[i], i).second)
            throw std::invalid_argument("barred generator collides with a generator: " + symbol_name(Y_[i]));
    }
}

SymbolId StandardTrick::bar(SymbolId x) const {
    auto i = index_Y(x);
    if (!i || *i >= X().size()) throw std::invalid_argument("not a generator: " + symbol_name(x));
    return Y_[*i + X().size()];
}

std::optional<std::size_t> StandardTrick::index_Y(SymbolId s) const {
    auto it = iY_.find(s);
    if (it == iY_.end()) return std::nullopt;
    return it->second;
}

Word StandardTrick::xi(std::span<const Letter> y_word) const {
    std::vector<Letter> raw;
    raw.reserve(y_word.size());
    const std::size_t n = X().size();
    for (Letter l : y_word) {
        auto i = index_Y(symbol_of(l));
        if (!i) throw std::invalid_argument("not a Y letter: " + to_string(l));
        if (*i < n) raw.push_back(l);
        else raw.push_back(make_letter(X()[*i - n], -sign_of(l)));
    }
    return Word::reduce(raw);
}

bool StandardTrick::in_S(const Word& w) const {
    if (w.empty()) return false;
    for (Letter l : w)
        if (l < 0 || !index_Y(symbol_of(l))) return false;
    return oracle_.trivial(xi(w.letters()));
}

}  // namespace smforge
