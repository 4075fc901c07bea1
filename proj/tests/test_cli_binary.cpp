// Drives the built fqst executable end to end.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

const std::filesystem::path kDir = std::filesystem::temp_directory_path() / "fqst_cli_binary";

int run(const std::string& args, const std::string& out_file = "out.json") {
  const std::string cmd = std::string(FQST_BINARY) + " " + args + " > " + (kDir / out_file).string() +
                          " 2> " + (kDir / "err.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& name, const std::string& text) {
  std::filesystem::create_directories(kDir);
  std::ofstream(kDir / name) << text;
}

std::string at(const std::string& name) { return (kDir / name).string(); }

}  // namespace

TEST_CASE("fqst end to end") {
  write("worked.json", R"({"sources": [[0, 0], [2, 4], [11, 5]], "sink": [11, 1],
    "topology": {"steiner_count": 2, "parent": ["s1", "s1", "s0", "sink", "s0"]}})");
  CHECK(run("solve-topology " + at("worked.json"), "solved.json") == 0);
  CHECK(slurp(kDir / "solved.json").find("\"cost\": 102.0") != std::string::npos);
  CHECK(run("check " + at("solved.json")) == 0);
  CHECK(run("render " + at("solved.json") + " -o " + at("tree.svg")) == 0);
  CHECK(slurp(kDir / "tree.svg").find("<svg") != std::string::npos);
  CHECK(run("--seed 7 bounds " + at("worked.json")) == 0);
  CHECK(slurp(kDir / "out.json").find("\"seed\": 7") != std::string::npos);
  CHECK(run("--threads 1 exact " + at("worked.json"), "exact.json") == 0);
  CHECK(run("check " + at("exact.json")) == 0);
  CHECK(run("--guard-n 2 exact " + at("worked.json")) == 3);
  CHECK(run("check " + at("missing.json")) == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("render " + at("solved.json")) == 2);
  std::filesystem::remove_all(kDir);
}
