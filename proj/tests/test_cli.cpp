#include "hms/io.hpp"
#include "hms/problems.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

using namespace hms;
namespace fs = std::filesystem;

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::temp_directory_path() /
          ("hms_cli_test_" + std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(dir);
    BalancedBinPackingInstance bbp{{Int(1), Int(1), Int(2), Int(2)}, 2, Int(3)};
    write_text_file(path("bbp0.json"), dump_pretty(to_json(bbp)));
  }

  ~CliFixture() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    std::string cmd = std::string(HMS_CLI_PATH) + " " + args + " > " + path("stdout.txt") +
                      " 2> " + path("stderr.txt");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out() const { return read_text_file(path("stdout.txt")); }
  std::string err() const { return read_text_file(path("stderr.txt")); }
};

}  // namespace

TEST_CASE("the cli reduces, decides, evaluates and checks end to end") {
  CliFixture cli;

  CHECK(cli.run("reduce --family bbp2qcmax --in " + cli.path("bbp0.json") + " --out " +
                cli.path("q0.json")) == 0);
  CHECK(cli.out().find("targetMakespan 1296") != std::string::npos);
  Json q = read_json_file(cli.path("q0.json"));
  CHECK(q.at("kind") == "schedule");
  Json cert = read_json_file(cli.path("q0.cert.json"));
  CHECK(cert.at("kind") == "certificate");

  CHECK(cli.run("solve --in " + cli.path("q0.json") + " --target 1296 --out " +
                cli.path("a0.json")) == 0);
  CHECK(cli.run("solve --in " + cli.path("q0.json") + " --target 1295") == 3);

  CHECK(cli.run("eval --in " + cli.path("q0.json") + " --assign " + cli.path("a0.json")) == 0);
  CHECK(cli.out().find("\"cmax\": \"1296\"") != std::string::npos);

  CHECK(cli.run("solve --in " + cli.path("q0.json")) == 0);
  CHECK(cli.out().find("\"value\": \"1296\"") != std::string::npos);

  CHECK(cli.run("nfold export --in " + cli.path("q0.json") + " --out " +
                cli.path("q0.nfold")) == 0);
  CHECK(cli.run("nfold check --model " + cli.path("q0.nfold") + " --assign " +
                cli.path("a0.json")) == 0);
  CHECK(cli.out().rfind("ok", 0) == 0);

  Assignment zero = Assignment::zero(4, 6);
  write_text_file(cli.path("zero.json"), dump_pretty(to_json(zero)));
  CHECK(cli.run("nfold check --model " + cli.path("q0.nfold") + " --assign " +
                cli.path("zero.json")) == 3);
  CHECK(!cli.out().empty());
}

TEST_CASE("the cli chains the cutting stock reduction") {
  CliFixture cli;
  REQUIRE(cli.run("reduce --family bbp2qcmax --in " + cli.path("bbp0.json") + " --out " +
                  cli.path("q0.json")) == 0);
  CHECK(cli.run("reduce --family q2cs --in " + cli.path("q0.json") + " --out " +
                cli.path("cs0.json")) == 0);
  CHECK(cli.out().find("budget 415279") != std::string::npos);
  CHECK(cli.run("solve --in " + cli.path("cs0.json") + " --out " + cli.path("sol.json")) == 0);
  CHECK(cli.out().find("\"withinBudget\": true") != std::string::npos);
  Json sol = read_json_file(cli.path("sol.json"));
  CHECK(sol.at("kind") == "cuttingstocksolution");
}

TEST_CASE("the cli maps failures to distinct exit codes") {
  CliFixture cli;

  CHECK(cli.run("") == 2);  // a subcommand is required
  CHECK(cli.run("reduce --family nonsense --in " + cli.path("bbp0.json") + " --out " +
                cli.path("x.json")) == 2);
  CHECK(cli.err().find("unknown family") != std::string::npos);

  CHECK(cli.run("reduce --family bbp2qcmax --in " + cli.path("missing.json") + " --out " +
                cli.path("x.json")) == 1);

  write_text_file(cli.path("broken.json"), "{ not json");
  CHECK(cli.run("solve --in " + cli.path("broken.json")) == 2);

  // A wrong-kind document is a validation failure, not io.
  CHECK(cli.run("reduce --family bbp2qcmax --in " + cli.path("bbp0.json") + " --out " +
                cli.path("q0.json")) == 0);
  CHECK(cli.run("reduce --family bbp2qcmax --in " + cli.path("q0.json") + " --out " +
                cli.path("x.json")) == 2);

  CHECK(cli.run("solve --in " + cli.path("q0.json") + " --algo brute --max-states 1") == 4);

  // Non-tight sources are refused by the reductions.
  BalancedBinPackingInstance loose{{Int(1), Int(1)}, 2, Int(3)};
  write_text_file(cli.path("loose.json"), dump_pretty(to_json(loose)));
  CHECK(cli.run("reduce --family bbp2qcmax --in " + cli.path("loose.json") + " --out " +
                cli.path("x.json")) == 2);
}

TEST_CASE("the cli verify subcommand writes reports and reflects the verdict") {
  CliFixture cli;
  CHECK(cli.run("verify roundtrip --family bbp2qcmax --exhaustive --min-items 2 "
                "--max-items 2 --max-size 3 --csv " +
                cli.path("r.csv") + " --json " + cli.path("r.json")) == 0);
  std::string csv = read_text_file(cli.path("r.csv"));
  CHECK(csv.rfind("digest,", 0) == 0);
  Json summary = read_json_file(cli.path("r.json"));
  CHECK(summary.at("pass") == true);
  CHECK(cli.out().find("\"pass\": true") != std::string::npos);

  CHECK(cli.run("verify target --family bbp2rswc --trials 2 --seed 3") == 0);
  CHECK(cli.run("verify oracle --max-machines 1 --max-types 1 --max-jobs 2 --samples 1") == 0);
}
