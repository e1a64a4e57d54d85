#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smforge/groups.hpp"

namespace smforge::cli {

struct SessionConfig {
    Params params = Params::desk();
    std::vector<std::string> alphabet{"a"};
    std::string recognizer = "odd";  // odd, reject or file
    std::string recognizer_machine;  // machine file for the file recognizer
    std::string recognizer_member;   // word table file, or a command printing 1/0
    std::vector<std::string> generators{"x"};
    std::size_t C = 0;  // 0 means the chain value
    std::string oracle = "Z";
    std::string output;
};

// JSON document; absent keys keep their defaults.
SessionConfig load_config(const std::string& path, SessionConfig base = {});
std::vector<std::string> split_list(const std::string& s);

// Lazily built machines shared by the subcommands.
class Session {
public:
    explicit Session(SessionConfig cfg) : cfg_(std::move(cfg)) {}

    const SessionConfig& config() const { return cfg_; }
    std::shared_ptr<const NoiseScheme> scheme();
    const M1& m1();
    std::shared_ptr<const Recognizer> recognizer();
    const Machine& m3();
    const MainMachine& main();
    const EmbeddingPipeline& pipeline();
    const MainMachine& embedding_main();
    WeightFunctions weights();

    // m1, recognizer, m3, main or embedding.
    const Machine& machine(const std::string& kind);
    // Machine from a text file; kept alive by the session.
    const Machine& machine_file(const std::string& path);

private:
    SessionConfig cfg_;
    std::shared_ptr<const NoiseScheme> scheme_;
    std::optional<M1> m1_;
    std::shared_ptr<const Recognizer> rec_;
    std::optional<Machine> m3_;
    std::unique_ptr<MainMachine> main_;
    std::unique_ptr<EmbeddingPipeline> pipeline_;
    std::unique_ptr<MainMachine> emb_main_;
    std::vector<std::unique_ptr<Machine>> files_;
};

std::string read_file(const std::string& path);

}  // namespace smforge::cli
