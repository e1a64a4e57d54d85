#include <map>
#include <sstream>

#include "smforge/smachine.hpp"

namespace smforge {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (true) {
        auto j = s.find(sep, i);
        out.push_back(trim(s.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i)));
        if (j == std::string_view::npos) break;
        i = j + 1;
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    for (auto t : split(s, ' '))
        if (!t.empty()) out.push_back(t);
    return out;
}

std::string words_list(const std::vector<Word>& ws) {
    std::string s = "{";
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (i) s += "; ";
        s += to_string(ws[i]);
    }
    return s + "}";
}

const char* class_suffix(TapeClass c) {
    switch (c) {
        case TapeClass::A: return ":A";
        case TapeClass::b: return ":b";
        case TapeClass::ordinary: return ":o";
        default: return "";
    }
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
    throw ParseError("machine file line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_index(std::string_view s, std::size_t line) {
    s = trim(s);
    if (s.empty()) bad(line, "missing index");
    std::size_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') bad(line, "bad index '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

// Extracts the text between `open` and its matching `close` starting at pos.
std::string_view bracketed(std::string_view s, std::size_t& pos, char open, char close, std::size_t line) {
    pos = s.find(open, pos);
    if (pos == std::string_view::npos) bad(line, std::string("expected '") + open + "'");
    auto end = s.find(close, pos + 1);
    if (end == std::string_view::npos) bad(line, std::string("expected '") + close + "'");
    auto inner = s.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    return inner;
}

std::vector<Word> parse_list(std::string_view inner) {
    std::vector<Word> ws;
    if (trim(inner).empty()) return ws;
    for (auto part : split(inner, ';')) ws.push_back(parse_word(part));
    return ws;
}

}  // namespace

std::string serialize_machine(const Machine& m) {
    std::ostringstream os;
    os << "MACHINE " << m.name << '\n';
    os << "CYCLIC " << (m.hw.cyclic ? "yes" : "no") << '\n';
    for (std::size_t i = 0; i < m.hw.parts.size(); ++i) {
        const auto& p = m.hw.parts[i];
        os << "PART " << i << ':';
        for (auto s : p.letters) os << ' ' << symbol_name(s);
        os << " [name=" << p.name << ",start=" << symbol_name(p.start) << ",end=" << symbol_name(p.end);
        if (p.inverted) os << ",inverted";
        if (p.coordinate) os << ",coord=" << p.coordinate;
        if (p.t_part) os << ",t";
        os << "]\n";
    }
    for (std::size_t k = 0; k < m.hw.sectors.size(); ++k) {
        const auto& s = m.hw.sectors[k];
        os << "TAPE " << k + 1 << ':';
        for (const auto& t : s.letters) os << ' ' << symbol_name(t.id) << class_suffix(t.cls);
        if (s.input) os << " [input]";
        os << '\n';
    }
    for (const auto& r : m.rules) {
        for (std::size_t i = 0; i < r.parts.size(); ++i) {
            const auto& a = r.parts[i];
            os << "RULE " << r.name << ": " << i << ": " << symbol_name(a.from) << " -> [" << to_string(a.u) << "] "
               << symbol_name(a.to) << " [" << to_string(a.v) << "]";
            const auto& sa = r.sectors[i];
            if (!sa.locked()) {
                os << " | X=" << words_list(sa.X()) << " Z=" << words_list(sa.Z()) << " f=[";
                for (std::size_t k = 0; k < sa.perm().size(); ++k) os << (k ? " " : "") << sa.perm()[k];
                os << ']';
            }
            os << '\n';
        }
        for (std::size_t k = 0; k < r.sectors.size(); ++k)
            if (r.sectors[k].locked()) os << "LOCK " << r.name << ' ' << k + 1 << '\n';
    }
    os << "END\n";
    return os.str();
}

Machine parse_machine(std::string_view text) {
    Machine m;
    bool ended = false;
    std::map<std::string, std::size_t> rule_index;
    std::vector<std::vector<bool>> part_seen, sector_seen;
    std::size_t lineno = 0;
    auto rule_for = [&](const std::string& name, std::size_t line) -> std::size_t {
        if (m.hw.parts.empty()) bad(line, "RULE before PART lines");
        auto it = rule_index.find(name);
        if (it != rule_index.end()) return it->second;
        const std::size_t n = m.hw.parts.size();
        Rule r;
        r.name = name;
        r.parts.resize(n);
        r.sectors.resize(n);
        m.rules.push_back(std::move(r));
        part_seen.emplace_back(n, false);
        sector_seen.emplace_back(n, false);
        rule_index[name] = m.rules.size() - 1;
        return m.rules.size() - 1;
    };
    for (auto raw : split(text, '\n')) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (ended) bad(lineno, "content after END");
        auto sp = line.find(' ');
        auto kw = line.substr(0, sp);
        auto rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp + 1));
        if (kw == "MACHINE") {
            m.name = std::string(rest);
        } else if (kw == "CYCLIC") {
            if (rest != "yes" && rest != "no") bad(lineno, "CYCLIC must be yes or no");
            m.hw.cyclic = rest == "yes";
        } else if (kw == "PART") {
            auto colon = rest.find(':');
            if (colon == std::string_view::npos) bad(lineno, "PART needs 'i:'");
            if (parse_index(rest.substr(0, colon), lineno) != m.hw.parts.size()) bad(lineno, "PART indices must be consecutive from 0");
            auto body = rest.substr(colon + 1);
            auto lb = body.find('[');
            if (lb == std::string_view::npos) bad(lineno, "PART needs [start=..,end=..]");
            Part p;
            for (auto t : tokens(body.substr(0, lb))) p.letters.push_back(intern(t));
            std::size_t pos = lb;
            auto attrs = bracketed(body, pos, '[', ']', lineno);
            bool has_start = false, has_end = false;
            for (auto a : split(attrs, ',')) {
                auto eq = a.find('=');
                auto key = a.substr(0, eq);
                auto val = eq == std::string_view::npos ? std::string_view{} : trim(a.substr(eq + 1));
                if (key == "name") p.name = std::string(val);
                else if (key == "start") p.start = intern(val), has_start = true;
                else if (key == "end") p.end = intern(val), has_end = true;
                else if (key == "inverted") p.inverted = true;
                else if (key == "coord") p.coordinate = static_cast<int>(parse_index(val, lineno));
                else if (key == "t") p.t_part = true;
                else bad(lineno, "unknown PART attribute '" + std::string(key) + "'");
            }
            if (!has_start || !has_end) bad(lineno, "PART needs start and end letters");
            if (p.name.empty()) p.name = "Q" + std::to_string(m.hw.parts.size());
            m.hw.parts.push_back(std::move(p));
        } else if (kw == "TAPE") {
            auto colon = rest.find(':');
            if (colon == std::string_view::npos) bad(lineno, "TAPE needs 'i:'");
            if (parse_index(rest.substr(0, colon), lineno) != m.hw.sectors.size() + 1)
                bad(lineno, "TAPE indices must be consecutive from 1");
            Sector s;
            for (auto t : tokens(rest.substr(colon + 1))) {
                if (t == "[input]") {
                    s.input = true;
                    continue;
                }
                TapeLetter tl{0, TapeClass::none};
                auto c = t.rfind(':');
                if (c != std::string_view::npos) {
                    auto cls = t.substr(c + 1);
                    if (cls == "A") tl.cls = TapeClass::A;
                    else if (cls == "b") tl.cls = TapeClass::b;
                    else if (cls == "o") tl.cls = TapeClass::ordinary;
                    else bad(lineno, "unknown tape class '" + std::string(cls) + "'");
                    t = t.substr(0, c);
                }
                tl.id = intern(t);
                s.letters.push_back(tl);
            }
            m.hw.sectors.push_back(std::move(s));
        } else if (kw == "RULE") {
            auto c1 = rest.find(": ");
            if (c1 == std::string_view::npos) bad(lineno, "RULE needs 'name: i:'");
            std::string name(trim(rest.substr(0, c1)));
            auto after = rest.substr(c1 + 2);
            auto c2 = after.find(':');
            if (c2 == std::string_view::npos) bad(lineno, "RULE needs 'name: i:'");
            const auto i = parse_index(after.substr(0, c2), lineno);
            const auto k = rule_for(name, lineno);
            if (i >= m.hw.parts.size()) bad(lineno, "RULE part index out of range");
            if (part_seen[k][i]) bad(lineno, "duplicate RULE line");
            part_seen[k][i] = true;
            auto body = after.substr(c2 + 1);
            auto bar = body.find('|');
            auto act = trim(body.substr(0, bar));
            auto arrow = act.find("->");
            if (arrow == std::string_view::npos) bad(lineno, "RULE needs '->'");
            PartAction pa;
            pa.from = intern(trim(act.substr(0, arrow)));
            auto rhs = act.substr(arrow + 2);
            std::size_t pos = 0;
            pa.u = parse_word(bracketed(rhs, pos, '[', ']', lineno));
            auto lb = rhs.find('[', pos);
            if (lb == std::string_view::npos) bad(lineno, "RULE needs '[v]'");
            pa.to = intern(trim(rhs.substr(pos, lb - pos)));
            pos = lb;
            pa.v = parse_word(bracketed(rhs, pos, '[', ']', lineno));
            m.rules[k].parts[i] = pa;
            if (bar != std::string_view::npos) {
                auto data = body.substr(bar + 1);
                std::size_t dp = data.find("X=");
                if (dp == std::string_view::npos) bad(lineno, "sector data needs X=");
                auto X = parse_list(bracketed(data, dp, '{', '}', lineno));
                dp = data.find("Z=", dp);
                if (dp == std::string_view::npos) bad(lineno, "sector data needs Z=");
                auto Z = parse_list(bracketed(data, dp, '{', '}', lineno));
                dp = data.find("f=", dp);
                if (dp == std::string_view::npos) bad(lineno, "sector data needs f=");
                std::vector<std::size_t> perm;
                for (auto t : tokens(bracketed(data, dp, '[', ']', lineno))) perm.push_back(parse_index(t, lineno));
                if (sector_seen[k][i]) bad(lineno, "sector given twice");
                sector_seen[k][i] = true;
                try {
                    m.rules[k].sectors[i] = SectorAction::make(std::move(X), std::move(Z), std::move(perm));
                } catch (const MachineError& e) {
                    bad(lineno, e.what());
                }
            }
        } else if (kw == "LOCK") {
            auto t = tokens(rest);
            if (t.size() != 2) bad(lineno, "LOCK needs a rule name and a tape index");
            const auto k = rule_for(std::string(t[0]), lineno);
            const auto j = parse_index(t[1], lineno);
            if (j < 1 || j > m.hw.parts.size()) bad(lineno, "LOCK tape index out of range");
            if (sector_seen[k][j - 1]) bad(lineno, "sector given twice");
            sector_seen[k][j - 1] = true;
            m.rules[k].sectors[j - 1] = SectorAction::locked_sector();
        } else if (kw == "END") {
            ended = true;
        } else {
            bad(lineno, "unknown keyword '" + std::string(kw) + "'");
        }
    }
    if (!ended) throw ParseError("machine file has no END line");
    if (m.hw.sectors.size() != m.hw.parts.size())
        throw ParseError("machine file needs one TAPE line per PART line");
    for (std::size_t k = 0; k < m.rules.size(); ++k) {
        for (std::size_t i = 0; i < m.hw.parts.size(); ++i) {
            if (!part_seen[k][i]) throw ParseError("rule " + m.rules[k].name + " lacks part " + std::to_string(i));
            if (!sector_seen[k][i])
                throw ParseError("rule " + m.rules[k].name + " lacks data for tape " + std::to_string(i + 1));
        }
    }
    m.freeze();
    return m;
}

}  // namespace smforge
