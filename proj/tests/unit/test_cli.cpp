#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result cli(const std::string& args) {
    const std::string cmd = std::string(SMFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    Result r;
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_comments(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out += line + "\n";
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("smforge_cli_" + std::to_string(::getpid()) + "_" + name);
}

const char* kM1 = "--kind m1 --alphabet a";

}  // namespace

TEST(Cli, ShiftPrintsHistoryAndTime) {
    const auto r = cli(std::string(kM1) + " shift --word 'b2 b1'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("θ_{b1} θ_{b2}"), std::string::npos);
    EXPECT_NE(r.out.find("t = 2"), std::string::npos);
}

TEST(Cli, StructuredShift) {
    const auto r = cli(std::string(kM1) + " --format structured shift --word 'b2 a_1'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"shiftable\": true"), std::string::npos);
    EXPECT_NE(r.out.find("\"time\": 14"), std::string::npos);
}

TEST(Cli, ForeignLettersAreInputErrors) {
    EXPECT_EQ(cli(std::string(kM1) + " shift --word 'zz'").code, 2);
    EXPECT_EQ(cli("--kind bogus build-machine").code, 2);
    EXPECT_EQ(cli(std::string(kM1) + " run --word 'q0 a_1 q1 q2' --history 'no-rule'").code, 2);
    EXPECT_EQ(cli("--profile paper dehn-bound --n 1").code, 2);
}

TEST(Cli, DecodeNoise) {
    const auto ok = cli(std::string(kM1) + " decode --word 'b1 b2 b1 b2 b1 b2 b1 b2 b1 b2 b1 b2'");
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("terms = 1"), std::string::npos);
    EXPECT_EQ(cli(std::string(kM1) + " decode --word 'b1'").code, 1);
}

TEST(Cli, RunAppliesRules) {
    const auto r = cli(std::string(kM1) + " run --word 'q0 a_1 q1 q2' --history 'θ_{a}'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("q0 b1 b2 b1 b2 b1 b2 b1 b2 b1 b2 b1 b2 q1 a_2 q2"), std::string::npos);
}

TEST(Cli, AcceptFollowsMembership) {
    const auto yes = cli("--kind main --alphabet a accept --word 'a a a'");
    EXPECT_EQ(yes.code, 0);
    EXPECT_NE(yes.out.find("accepted"), std::string::npos);
    EXPECT_NE(yes.out.find("ell = 1"), std::string::npos);
    EXPECT_EQ(cli("--kind main --alphabet a accept --word 'a a'").code, 1);
    EXPECT_EQ(cli("--kind main --alphabet a accept --start J --word 'a'").code, 0);
}

TEST(Cli, PresentationMatchesGoldenFiles) {
    const auto m1 = cli(std::string(kM1) + " emit-presentation");
    EXPECT_EQ(m1.code, 0);
    EXPECT_EQ(strip_comments(m1.out), read_file(std::string(SMFORGE_GOLDEN_DIR) + "/m1_alphabet1.txt"));
    const auto m2 = cli("--kind m1 --alphabet a,c emit-presentation");
    EXPECT_EQ(strip_comments(m2.out), read_file(std::string(SMFORGE_GOLDEN_DIR) + "/m1_alphabet2.txt"));
    EXPECT_NE(m1.out.find("# total 21"), std::string::npos);
}

TEST(Cli, DehnBound) {
    const auto r = cli("dehn-bound --n 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "80575546235195361077785495579474368*5^(1278976924368180334568023739356736) + "
              "126453992*5^(18064856) + 3654\n");
    EXPECT_EQ(cli("dehn-bound --n 0").out, "0\n");
    EXPECT_EQ(cli("dehn-bound --n 1 --function nope").code, 2);
}

TEST(Cli, EmbedListsImages) {
    const auto r = cli("--oracle Z --generators x,y --C 3 embed");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("x -> x.1 x.2 x.3"), std::string::npos);
    EXPECT_NE(r.out.find("y -> y.1 y.2 y.3"), std::string::npos);
}

TEST(Cli, SemiDiagramVerifies) {
    const auto r = cli(std::string(kM1) +
                       " diagram --type semi --word 'a_1 b1' --history 'θ_{a} θ_{b1}^-1 θ_{a}^-1 θ_{b2}' --sector 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verified: yes"), std::string::npos);
}

TEST(Cli, DiskDiagramFileRoundTrip) {
    const auto file = scratch("disk.json");
    const auto made =
        cli("--kind main --alphabet a --format structured --output " + file.string() + " diagram --type disk --word a");
    EXPECT_EQ(made.code, 0);
    const auto ok = cli("--kind main --alphabet a diagram --type disk --verify " + file.string());
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("verified: yes"), std::string::npos);

    // Changing one letter of the stored bottom breaks the boundary check.
    std::string json = read_file(file.string());
    const auto pos = json.find("Q0(1).s a Q1(1).s");
    ASSERT_NE(pos, std::string::npos);
    json.replace(pos, 17, "Q0(1).s a a Q1(1).s");
    std::ofstream(file) << json;
    EXPECT_EQ(cli("--kind main --alphabet a diagram --type disk --verify " + file.string()).code, 1);
    std::filesystem::remove(file);
    EXPECT_EQ(cli("--kind main --alphabet a diagram --type disk --word 'a a'").code, 1);
}

TEST(Cli, MachineFileInput) {
    const auto r = cli(std::string("--machine ") + SMFORGE_DATA_DIR + "/tiny.machine run --word 'p0 x y x p1' --history go");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("p0 x y y x y x^-1 r1"), std::string::npos);
    EXPECT_EQ(cli(std::string("--machine ") + SMFORGE_DATA_DIR + "/tiny.machine run --word 'p0 x r1' --history go").code, 1);
    EXPECT_EQ(cli("--machine /nonexistent/file build-machine").code, 2);
}
