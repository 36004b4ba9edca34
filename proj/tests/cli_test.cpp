#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifdef __unix__
#include <sys/wait.h>
#endif

#ifndef SIGLINK_CLI_PATH
#error "SIGLINK_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "siglink-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  fs::path out = work_dir() / ("out" + std::to_string(counter) + ".txt");
  fs::path err = work_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = env_prefix + SIGLINK_CLI_PATH + " " + args + " > " + out.string() +
                    " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  RunResult result;
#ifdef __unix__
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
  result.exit_code = rc;
#endif
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

// A small synthetic corpus shared by the corpus-consuming tests.
std::string corpus_dir() {
  static std::string dir = [] {
    fs::path d = work_dir() / "corpus";
    RunResult r = run_cli("synth --docs 8 --links-per-doc 25 --seed 3 "
                          "--signal-fraction 0.5 --noise 0.1 --out " +
                          d.string());
    REQUIRE(r.exit_code == 0);
    return d.string();
  }();
  return dir;
}

}  // namespace

TEST_CASE("bound prints the signalled-accuracy estimate as text") {
  RunResult r = run_cli(
      "bound --p 0.6146 --pn 0.6032 --s 0.0511709977542509 --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("a = 0.825982") != std::string::npos);
}

TEST_CASE("bound emits parseable JSON") {
  RunResult r = run_cli(
      "bound --p 0.6146 --pn 0.6032 --s 0.0511709977542509 --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j["a"].get<double>() - 0.8259824451410658) <= 1e-9);
  CHECK(j["in_range"] == true);
}

TEST_CASE("bound rejects a zero signalled share") {
  RunResult r = run_cli("bound --p 0.5 --pn 0.5 --s 0");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("synth output validates cleanly") {
  RunResult r = run_cli("validate " + corpus_dir());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("8 document(s), 200 tlink(s), 0 issue(s)") != std::string::npos);
}

TEST_CASE("cross-validation runs are byte-for-byte reproducible") {
  std::string args = "run xv " + corpus_dir() +
                     " --features base+signal --folds 5 --seed 4 --format json";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  nlohmann::json j = nlohmann::json::parse(a.out);
  CHECK(j["mode"] == "xv");
  CHECK(j["feature_set"] == "base+signal");
  CHECK(j["n_eval"] == 200);
  double accuracy = j["accuracy"].get<double>();
  CHECK(accuracy >= 0.0);
  CHECK(accuracy <= 1.0);
}

TEST_CASE("holdout runs report the split sizes") {
  RunResult r = run_cli("run split " + corpus_dir() +
                        " --eval-fraction 0.25 --seed 1 --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "holdout");
  CHECK(j["n_eval"] == 50);
  CHECK(j["n_train"] == 150);
}

TEST_CASE("subset runs tag the report mode") {
  RunResult r = run_cli("run subset " + corpus_dir() +
                        " --which signalled --mode xv --folds 4 --seed 2 "
                        "--features base+signal+hint --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "xv:signalled");
  CHECK(j["hint_scope"] == "per-fold");
}

TEST_CASE("stats signals writes a TSV file") {
  fs::path out = work_dir() / "signals.tsv";
  RunResult r = run_cli("stats signals " + corpus_dir() + " --format tsv --out " +
                        out.string());
  CHECK(r.exit_code == 0);
  std::string tsv = slurp(out);
  CHECK(tsv.rfind("phrase\tcorpus_freq\tsignal_freq\tlikelihood_pct\n", 0) == 0);
  CHECK(tsv.find("before") != std::string::npos);
}

TEST_CASE("stats links reports one row per path plus combined") {
  RunResult r = run_cli("stats links " + corpus_dir() + " --format tsv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("corpus\ttotal_tlinks\twith_signal\twith_signal_pct\t"
                    "event_event_total\tevent_event_with_signal\n",
                    0) == 0);
  CHECK(r.out.find("combined\t200\t") != std::string::npos);
}

TEST_CASE("unknown subcommands fail") {
  RunResult r = run_cli("bogus");
  CHECK(r.exit_code == 1);
}

TEST_CASE("out-of-range flags fail at parse time") {
  RunResult r = run_cli("run xv " + corpus_dir() + " --folds 1");
  CHECK(r.exit_code == 1);
}

TEST_CASE("a missing corpus path is an error") {
  RunResult r = run_cli("validate /no/such/siglink/path");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("corpus commands require a path or SIGLINK_CORPUS_ROOT") {
  RunResult r = run_cli("run xv", "env -u SIGLINK_CORPUS_ROOT ");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}
