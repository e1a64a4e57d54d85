#include "smforge/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace smforge {

void append_reduced(std::vector<Letter>& acc, std::span<const Letter> rhs) {
    for (Letter l : rhs) {
        if (!acc.empty() && acc.back() == -l) acc.pop_back();
        else acc.push_back(l);
    }
}

Word free_reduce(std::span<const Letter> raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    append_reduced(out, raw);
    return Word::from_reduced(std::move(out));
}

Word::Word(std::initializer_list<Letter> raw) : letters_(free_reduce(std::span(raw.begin(), raw.size())).letters_) {}

Word Word::reduce(std::span<const Letter> raw) { return free_reduce(raw); }

Word Word::from_reduced(std::vector<Letter> letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
}

Word Word::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l = -l;
    return from_reduced(std::move(out));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    pos = std::min(pos, letters_.size());
    len = std::min(len, letters_.size() - pos);
    return from_reduced(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
}

Word Word::operator*(const Word& rhs) const {
    Word r = *this;
    r *= rhs;
    return r;
}

Word& Word::operator*=(const Word& rhs) {
    append_reduced(letters_, rhs.letters_);
    return *this;
}

Word Word::power(long long n) const {
    const Word base = n >= 0 ? *this : inverse();
    Word r;
    for (long long i = 0; i < (n >= 0 ? n : -n); ++i) r *= base;
    return r;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
        h *= 1099511628211ull;
    }
    return h;
}

CyclicReduction cyclic_reduce(const Word& w) {
    const auto& ls = w.letters();
    std::size_t i = 0, j = ls.size();
    while (j - i >= 2 && ls[i] == -ls[j - 1]) {
        ++i;
        --j;
    }
    return {w.subword(i, j - i), w.subword(0, i)};
}

bool is_cyclically_reduced(const Word& w) { return w.size() < 2 || w.front() != -w.back(); }

std::vector<Word> cyclic_permutations(const Word& w) {
    std::vector<Word> out;
    const auto& ls = w.letters();
    if (ls.empty()) return {Word()};
    for (std::size_t s = 0; s < ls.size(); ++s) {
        std::vector<Letter> v;
        v.reserve(ls.size());
        v.insert(v.end(), ls.begin() + s, ls.end());
        v.insert(v.end(), ls.begin(), ls.begin() + s);
        out.push_back(Word::from_reduced(std::move(v)));
    }
    return out;
}

std::string to_string(Letter l) {
    std::string s = symbol_name(symbol_of(l));
    if (l < 0) s += "^-1";
    return s;
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += to_string(w[i]);
    }
    return s;
}

Word parse_word(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) tokens.push_back(text.substr(i, j - i));
        i = j;
    }
    if (tokens.empty()) throw ParseError("empty word text (use 1 for the identity)");
    if (tokens.size() == 1 && tokens[0] == "1") return {};
    std::vector<Letter> raw;
    for (auto tok : tokens) {
        long long exp = 1;
        auto caret = tok.rfind('^');
        std::string_view name = tok;
        if (caret != std::string_view::npos) {
            auto num = tok.substr(caret + 1);
            long long e = 0;
            auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), e);
            if (ec != std::errc() || p != num.data() + num.size() || e == 0)
                throw ParseError("bad exponent in token '" + std::string(tok) + "'");
            exp = e;
            name = tok.substr(0, caret);
        }
        if (name.empty() || name == "1") throw ParseError("bad symbol in token '" + std::string(tok) + "'");
        const Letter l = letter(name, exp > 0 ? 1 : -1);
        for (long long k = 0; k < (exp > 0 ? exp : -exp); ++k) raw.push_back(l);
    }
    return free_reduce(raw);
}

}  // namespace smforge
