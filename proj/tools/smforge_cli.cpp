#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "session.hpp"

using namespace smforge;
using namespace smforge::cli;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

struct Options {
    std::string config;
    std::string profile;
    std::string machine_file;
    std::string kind = "m1";
    std::string word;
    std::string history;
    std::string format = "text";
    std::string oracle;
    std::string alphabet;
    std::string recognizer;
    std::string generators;
    std::string output;
    std::size_t C = 0;

    std::string level = "M";
    std::string start = "I";
    std::string configuration;
    std::string diagram = "trapezium";
    std::string verify_file;
    std::string function = "dehn";
    std::uint64_t n = 1;
    int sector = -1;
    bool show_history = false;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

Session make_session(const Options& o) {
    SessionConfig cfg;
    if (!o.config.empty()) cfg = load_config(o.config, cfg);
    if (o.profile == "paper") cfg.params = Params::paper();
    else if (!o.profile.empty() && o.profile != "desk") throw std::invalid_argument("unknown profile " + o.profile);
    if (!o.alphabet.empty()) cfg.alphabet = split_list(o.alphabet);
    if (!o.recognizer.empty()) cfg.recognizer = o.recognizer;
    if (!o.generators.empty()) cfg.generators = split_list(o.generators);
    if (!o.oracle.empty()) cfg.oracle = o.oracle;
    if (o.C) cfg.C = o.C;
    if (!o.output.empty()) cfg.output = o.output;
    if (cfg.params.profile == Profile::desk) cfg.params.validate();
    return Session(std::move(cfg));
}

const Machine& pick_machine(Session& s, const Options& o) {
    if (!o.machine_file.empty()) return s.machine_file(o.machine_file);
    return s.machine(o.kind);
}

void dump(std::ostream& os, const ordered_json& j) { os << j.dump(1) << "\n"; }

bool structured(const Options& o) { return o.format == "structured"; }

// ------------------------------------------------------------- commands ---

int cmd_build(Session& s, const Options& o, std::ostream& os) {
    const Machine& m = pick_machine(s, o);
    const auto report = validate_noisy(m);
    if (structured(o)) {
        ordered_json j;
        j["name"] = m.name;
        j["cyclic"] = m.hw.cyclic;
        j["parts"] = m.hw.parts.size();
        j["rules"] = m.rules.size();
        j["noisy"] = report.valid;
        j["violations"] = report.violations;
        j["text"] = serialize_machine(m);
        dump(os, j);
    } else {
        os << serialize_machine(m);
        os << "# parts " << m.hw.parts.size() << ", rules " << m.rules.size() << ", noisy "
           << (report.valid ? "yes" : "no") << "\n";
        for (const auto& v : report.violations) os << "# violation: " << v << "\n";
    }
    return kOk;
}

int cmd_run(Session& s, const Options& o, std::ostream& os) {
    const Machine& m = pick_machine(s, o);
    if (o.word.empty()) throw std::invalid_argument("run needs --word");
    const auto W = parse_admissible(m.hw, o.word);
    const History h = parse_history(m, o.history);
    Computation c;
    try {
        c = run(m, W, h);
    } catch (const StepError& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kRejected;
    }
    if (structured(o)) {
        ordered_json j;
        j["history"] = history_to_string(m, h);
        j["time"] = c.time();
        ordered_json words = ordered_json::array();
        for (const auto& w : c.words) words.push_back(to_string(w));
        j["words"] = std::move(words);
        dump(os, j);
    } else {
        for (std::size_t i = 0; i < c.words.size(); ++i) {
            if (i) os << "  " << m.rule_name(h[i - 1]) << "\n";
            os << to_string(c.words[i]) << "\n";
        }
        os << "t = " << c.time() << "\n";
    }
    return kOk;
}

Word input_word(const NoiseScheme& sc, const std::string& text) {
    std::vector<Letter> out;
    for (Letter l : parse_word(text)) {
        if (auto i = sc.index_A(symbol_of(l))) out.push_back(make_letter(sc.A1(*i), sign_of(l)));
        else out.push_back(l);
    }
    return Word::reduce(out);
}

int cmd_shift(Session& s, const Options& o, std::ostream& os) {
    const auto& m1 = s.m1();
    const Word w = input_word(*m1.scheme, o.word);
    for (Letter l : w) {
        const SymbolId id = symbol_of(l);
        if (!m1.scheme->index_A1(id) && !m1.scheme->index_B(id))
            throw std::invalid_argument("shift input must be over the input-sector letters: " + to_string(l));
    }
    auto r = shift_history(m1, w);
    if (!r) {
        if (structured(o)) dump(os, ordered_json{{"word", to_string(w)}, {"shiftable", false}});
        else os << "not shiftable\n";
        return kRejected;
    }
    const auto bound = shift_time_bound(*m1.scheme, w.size());
    if (structured(o)) {
        ordered_json j;
        j["word"] = to_string(w);
        j["shiftable"] = true;
        j["history"] = history_to_string(m1.machine, r->history);
        j["time"] = r->time();
        j["bound"] = bound;
        dump(os, j);
    } else {
        os << "history: " << history_to_string(m1.machine, r->history) << "\n";
        os << "t = " << r->time() << "\n";
    }
    return kOk;
}

int cmd_decode(Session& s, const Options& o, std::ostream& os) {
    const auto sc = s.scheme();
    const Word u = parse_word(o.word);
    auto terms = decode_noise(*sc, u);
    if (!terms) {
        if (structured(o)) dump(os, ordered_json{{"word", to_string(u)}, {"decodable", false}});
        else os << "not a noise product\n";
        return kRejected;
    }
    auto term_text = [&](const NoiseTerm& t) {
        return "v(" + sc->y_name(t.y) + "," + symbol_name(sc->A(t.a)) + ")" + (t.sign < 0 ? "^-1" : "");
    };
    if (structured(o)) {
        ordered_json j;
        j["word"] = to_string(u);
        j["decodable"] = true;
        ordered_json arr = ordered_json::array();
        for (const auto& t : *terms)
            arr.push_back({{"y", sc->y_name(t.y)}, {"a", symbol_name(sc->A(t.a))}, {"sign", t.sign}});
        j["terms"] = std::move(arr);
        dump(os, j);
    } else {
        for (const auto& t : *terms) os << term_text(t) << "\n";
        os << "terms = " << terms->size() << "\n";
    }
    return kOk;
}

AdmissibleWord main_configuration(Session& s, const Options& o) {
    const auto& mm = s.main();
    if (!o.configuration.empty()) return parse_admissible(mm.machine.hw, o.configuration);
    const Word w = parse_word(o.word);
    if (o.start == "I") return mm.I(w);
    if (o.start == "J") return mm.J(w);
    throw std::invalid_argument("--start must be I or J");
}

int cmd_accept(Session& s, const Options& o, std::ostream& os) {
    const auto& mm = s.main();
    const auto W = main_configuration(s, o);
    auto r = accepting_run(mm, W);
    if (structured(o)) {
        ordered_json j;
        j["configuration"] = to_string(W);
        j["accepted"] = r.has_value();
        if (r) {
            j["time"] = r->time();
            j["ell"] = r->ell;
            j["bound"] = main_time_bound(mm, mm.coordinate_a_length(W, 2));
            if (o.show_history) j["history"] = history_to_string(mm.machine, r->history);
        }
        dump(os, j);
    } else if (r) {
        os << "accepted\nt = " << r->time() << "\nell = " << r->ell << "\n";
        if (o.show_history) os << "history: " << history_to_string(mm.machine, r->history) << "\n";
    } else {
        os << "not accepted\n";
    }
    return r ? kOk : kRejected;
}

int cmd_present(Session& s, const Options& o, std::ostream& os) {
    const Machine& m = pick_machine(s, o);
    Level level;
    if (o.level == "M") level = Level::M;
    else if (o.level == "G") level = Level::G;
    else throw std::invalid_argument("--level must be M or G");
    const auto p = emit_presentation(m, level);
    const RelatorClass classes[] = {RelatorClass::theta_q, RelatorClass::theta_A, RelatorClass::theta_b,
                                    RelatorClass::theta_a, RelatorClass::hub};
    if (structured(o)) {
        ordered_json j;
        j["machine"] = p.machine;
        j["level"] = o.level;
        ordered_json rel = ordered_json::array();
        for (const auto& r : p.relators) rel.push_back({{"class", class_tag(r.cls)}, {"word", to_string(r.word)}});
        j["relators"] = std::move(rel);
        ordered_json counts;
        for (auto c : classes) counts[class_tag(c)] = p.count(c);
        counts["total"] = p.relators.size();
        j["counts"] = std::move(counts);
        dump(os, j);
    } else {
        os << format_presentation(p);
        for (auto c : classes) os << "# " << class_tag(c) << " " << p.count(c) << "\n";
        os << "# total " << p.relators.size() << "\n";
    }
    return kOk;
}

int cmd_embed(Session& s, const Options& o, std::ostream& os) {
    const auto& p = s.pipeline();
    const auto images = p.generator_images();
    std::optional<bool> verdict;
    if (!o.word.empty()) verdict = p.lambda(parse_word(o.word));
    if (structured(o)) {
        ordered_json j;
        j["C"] = p.expanded().C();
        j["oracle"] = p.trick().oracle().description();
        ordered_json table = ordered_json::object();
        for (const auto& [x, w] : images) table[symbol_name(x)] = to_string(w);
        j["images"] = std::move(table);
        if (verdict) j["lambda"] = *verdict;
        dump(os, j);
    } else {
        for (const auto& [x, w] : images) os << symbol_name(x) << " -> " << to_string(w) << "\n";
        if (verdict) os << "lambda: " << (*verdict ? "yes" : "no") << "\n";
    }
    return verdict.value_or(true) ? kOk : kRejected;
}

int cmd_dehn(Session& s, const Options& o, std::ostream& os) {
    const auto wf = s.weights();
    const BigInt n = o.n;
    Huge v;
    if (o.function == "dehn") v = wf.dehn(n);
    else if (o.function == "chi") v = wf.chi(Huge(n));
    else if (o.function == "h") v = wf.h(n);
    else if (o.function == "f") v = wf.f(n);
    else if (o.function == "g") v = wf.g(n);
    else throw std::invalid_argument("unknown function " + o.function);
    if (structured(o)) dump(os, ordered_json{{"function", o.function}, {"n", o.n}, {"value", v.to_string()}});
    else os << v.to_string() << "\n";
    return kOk;
}

int emit_diagram(const GridDiagram& d, const Presentation& p, const Options& o, std::ostream& os) {
    const auto rep = verify_diagram(d, p);
    if (o.format == "structured") os << diagram_to_json(d);
    else if (o.format == "dot") os << diagram_to_dot(d);
    else os << diagram_to_text(d) << "verified: " << (rep.ok ? "yes" : "no") << "\n";
    for (const auto& pr : rep.problems) std::cerr << "problem: " << pr << "\n";
    return rep.ok ? kOk : kRejected;
}

int cmd_diagram(Session& s, const Options& o, std::ostream& os) {
    if (!o.verify_file.empty()) {
        const Machine& m = pick_machine(s, o);
        const auto d = diagram_from_json(read_file(o.verify_file));
        const auto p = emit_presentation(m, d.hub ? Level::G : Level::M);
        const auto rep = verify_diagram(d, p);
        os << "verified: " << (rep.ok ? "yes" : "no") << "\n";
        for (const auto& pr : rep.problems) os << "problem: " << pr << "\n";
        return rep.ok ? kOk : kRejected;
    }
    if (o.diagram == "disk") {
        const auto& mm = s.main();
        const auto W = main_configuration(s, o);
        auto d = build_disk_diagram(mm, W);
        if (!d) {
            std::cerr << "configuration has no disk relator\n";
            return kRejected;
        }
        return emit_diagram(*d, emit_presentation(mm.machine, Level::G, mm.W_ac()), o, os);
    }
    if (o.diagram == "compressed") {
        const auto& mm = s.main();
        SpecialSector ss(mm);
        const auto d = build_compressed(ss, parse_word(o.word), parse_history(mm.machine, o.history));
        return emit_diagram(d, emit_presentation(mm.machine, Level::M), o, os);
    }
    const Machine& m = pick_machine(s, o);
    const History h = parse_history(m, o.history);
    if (o.diagram == "trapezium") {
        const auto W = parse_admissible(m.hw, o.word);
        GridDiagram d;
        try {
            d = build_trapezium(m, W, h);
        } catch (const ApplyError& e) {
            std::cerr << "rejected: " << e.what() << "\n";
            return kRejected;
        }
        return emit_diagram(d, emit_presentation(m, Level::M), o, os);
    }
    if (o.diagram == "semi") {
        int sector = o.sector;
        if (sector < 0) {
            const auto in = m.hw.input_sectors();
            if (in.empty()) throw std::invalid_argument("--sector is required for machines without an input sector");
            sector = in.front();
        }
        SemiComputation sc;
        try {
            sc = semi_run(m, parse_word(o.word), h, sector);
        } catch (const StepError& e) {
            std::cerr << "rejected: " << e.what() << "\n";
            return kRejected;
        }
        return emit_diagram(build_semitrapezium(m, sc), emit_presentation(m, Level::M), o, os);
    }
    throw std::invalid_argument("unknown diagram type " + o.diagram);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smforge: noisy S-machines, their presentations and diagrams"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config, "JSON session configuration");
    app.add_option("--profile", o.profile, "desk or paper");
    app.add_option("--machine", o.machine_file, "machine text file");
    app.add_option("--kind", o.kind, "built-in machine: m1, recognizer, m3, main, embedding");
    app.add_option("--word", o.word, "word or configuration");
    app.add_option("--history", o.history, "rule names separated by spaces");
    app.add_option("--format", o.format, "text, structured or dot")->check(CLI::IsMember({"text", "structured", "dot"}));
    app.add_option("--oracle", o.oracle, "Z, Z2, or a command printing 1/0");
    app.add_option("--alphabet", o.alphabet, "comma-separated tape alphabet");
    app.add_option("--recognizer", o.recognizer, "odd, reject or file");
    app.add_option("--generators", o.generators, "comma-separated generators of R");
    app.add_option("--C", o.C, "block length of the expansion");
    app.add_option("--output", o.output, "write to this file instead of stdout");

    auto* build = app.add_subcommand("build-machine", "print and validate a machine");
    auto* runc = app.add_subcommand("run", "apply a history to a configuration");
    auto* shiftc = app.add_subcommand("shift", "synthesize the shift computation of an input word");
    auto* decode = app.add_subcommand("decode", "split a b-word into noise words");
    auto* accept = app.add_subcommand("accept", "accepting run of a main-machine configuration");
    accept->add_option("--start", o.start, "I or J");
    accept->add_option("--configuration", o.configuration, "explicit configuration");
    accept->add_flag("--show-history", o.show_history);
    auto* present = app.add_subcommand("emit-presentation", "relators of a machine");
    present->add_option("--level", o.level, "M or G");
    auto* embed = app.add_subcommand("embed", "generator images of the embedding");
    auto* dehn = app.add_subcommand("dehn-bound", "evaluate the Dehn bound or a weight function");
    dehn->add_option("--n", o.n);
    dehn->add_option("--function", o.function, "dehn, chi, h, f or g");
    auto* diag = app.add_subcommand("diagram", "build and verify a diagram");
    diag->add_option("--type", o.diagram, "trapezium, semi, compressed or disk");
    diag->add_option("--sector", o.sector);
    diag->add_option("--start", o.start, "I or J");
    diag->add_option("--configuration", o.configuration);
    diag->add_option("--verify", o.verify_file, "verify a structured diagram file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        Session s = make_session(o);
        Output out(s.config().output);
        std::ostream& os = out.os();
        if (*build) return cmd_build(s, o, os);
        if (*runc) return cmd_run(s, o, os);
        if (*shiftc) return cmd_shift(s, o, os);
        if (*decode) return cmd_decode(s, o, os);
        if (*accept) return cmd_accept(s, o, os);
        if (*present) return cmd_present(s, o, os);
        if (*embed) return cmd_embed(s, o, os);
        if (*dehn) return cmd_dehn(s, o, os);
        if (*diag) return cmd_diagram(s, o, os);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
