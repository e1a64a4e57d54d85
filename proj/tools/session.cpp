#include "session.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace smforge::cli {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

SessionConfig load_config(const std::string& path, SessionConfig cfg) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }
    try {
        if (j.contains("profile")) {
            const auto p = j["profile"].get<std::string>();
            if (p == "paper") cfg.params = Params::paper();
            else if (p != "desk") throw ParseError("config: unknown profile " + p);
        }
        if (j.contains("params")) {
            const auto& q = j["params"];
            auto get = [&](const char* k, std::uint64_t& v) {
                if (q.contains(k)) v = q[k].get<std::uint64_t>();
            };
            get("N", cfg.params.N);
            get("C", cfg.params.C);
            get("c0", cfg.params.c0);
            get("L", cfg.params.L);
            get("c1", cfg.params.c1);
            get("delta_inv", cfg.params.delta_inv);
            get("K", cfg.params.K);
        }
        if (j.contains("alphabet")) cfg.alphabet = j["alphabet"].get<std::vector<std::string>>();
        if (j.contains("recognizer")) {
            const auto& r = j["recognizer"];
            if (r.is_string()) {
                cfg.recognizer = r.get<std::string>();
            } else {
                cfg.recognizer = r.value("kind", cfg.recognizer);
                cfg.recognizer_machine = r.value("machine", cfg.recognizer_machine);
                cfg.recognizer_member = r.value("member", cfg.recognizer_member);
            }
        }
        if (j.contains("embedding")) {
            const auto& e = j["embedding"];
            if (e.contains("generators")) cfg.generators = e["generators"].get<std::vector<std::string>>();
            cfg.C = e.value("C", cfg.C);
            cfg.oracle = e.value("oracle", cfg.oracle);
        }
        cfg.output = j.value("output", cfg.output);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }
    return cfg;
}

std::shared_ptr<const NoiseScheme> Session::scheme() {
    if (!scheme_) scheme_ = std::make_shared<const NoiseScheme>(cfg_.alphabet);
    return scheme_;
}

const M1& Session::m1() {
    if (!m1_) m1_ = build_M1(scheme());
    return *m1_;
}

namespace {

std::function<bool(const Word&)> member_from(const std::string& spec) {
    std::ifstream probe(spec);
    if (probe) {
        auto words = std::make_shared<std::set<Word>>();
        std::istringstream in(read_file(spec));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            words->insert(parse_word(line));
        }
        return [words](const Word& w) { return words->count(w) > 0; };
    }
    return [spec](const Word& w) {
        std::vector<SymbolId> gens;
        for (Letter l : w) gens.push_back(symbol_of(l));
        return command_oracle(gens, spec).trivial(w);
    };
}

}  // namespace

std::shared_ptr<const Recognizer> Session::recognizer() {
    if (rec_) return rec_;
    if (cfg_.recognizer == "odd") {
        rec_ = make_odd_recognizer(scheme());
    } else if (cfg_.recognizer == "reject") {
        rec_ = make_reject_recognizer(scheme());
    } else if (cfg_.recognizer == "file") {
        if (cfg_.recognizer_machine.empty() || cfg_.recognizer_member.empty())
            throw std::invalid_argument("file recognizer needs a machine file and a membership table or command");
        Machine m = parse_machine(read_file(cfg_.recognizer_machine));
        auto r = make_file_recognizer(scheme(), std::move(m), member_from(cfg_.recognizer_member));
        auto bad = check_recognizer(*r, *scheme());
        if (!bad.empty()) throw std::invalid_argument("recognizer contract: " + bad.front());
        rec_ = r;
    } else {
        throw std::invalid_argument("unknown recognizer " + cfg_.recognizer);
    }
    return rec_;
}

const Machine& Session::m3() {
    if (!m3_) m3_ = build_M3(m1(), *recognizer());
    return *m3_;
}

const MainMachine& Session::main() {
    if (!main_) {
        cfg_.params.require_numeric();
        cfg_.params.validate();
        main_ = std::make_unique<MainMachine>(build_main(scheme(), recognizer(), cfg_.params));
    }
    return *main_;
}

const EmbeddingPipeline& Session::pipeline() {
    if (!pipeline_) {
        std::size_t C = cfg_.C;
        if (C == 0) {
            cfg_.params.require_numeric();
            C = cfg_.params.C;
        }
        pipeline_ = std::make_unique<EmbeddingPipeline>(make_oracle(cfg_.generators, cfg_.oracle), C);
    }
    return *pipeline_;
}

const MainMachine& Session::embedding_main() {
    if (!emb_main_) {
        cfg_.params.require_numeric();
        emb_main_ = std::make_unique<MainMachine>(build_embedding_machine(pipeline(), cfg_.params));
    }
    return *emb_main_;
}

WeightFunctions Session::weights() { return WeightFunctions(cfg_.params, recognizer()->time_bound()); }

const Machine& Session::machine(const std::string& kind) {
    if (kind == "m1") return m1().machine;
    if (kind == "recognizer") return recognizer()->machine();
    if (kind == "m3") return m3();
    if (kind == "main") return main().machine;
    if (kind == "embedding") return embedding_main().machine;
    throw std::invalid_argument("unknown machine kind " + kind);
}

const Machine& Session::machine_file(const std::string& path) {
    files_.push_back(std::make_unique<Machine>(parse_machine(read_file(path))));
    return *files_.back();
}

}  // namespace smforge::cli
