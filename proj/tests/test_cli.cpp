#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "jlp/config.hpp"
#include "jlp/ldpc.hpp"
#include "jlp/util.hpp"

using namespace jlp;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(JLPDEC_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("jlp_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("key value parsing") {
  const auto kv = parse_key_values("# comment\nchannel = dic\n\n  k1=50  # inline\nk1 = 60\n");
  CHECK(kv.at("channel") == "dic");
  CHECK(kv.at("k1") == "60");
  try {
    parse_key_values("a = 1\nnot a pair\n= 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.problems().size() == 2);
    CHECK(e.problems()[0].find("line 2") != std::string::npos);
    CHECK(e.problems()[1].find("line 3") != std::string::npos);
  }
}

TEST_CASE("run config defaults") {
  const auto rc = build_run_config({});
  CHECK(rc.experiment.channel == "pdic");
  CHECK(rc.experiment.n == 155);
  CHECK(rc.experiment.params.k1 == 1000.0);
  CHECK(rc.experiment.params.k2 == 100.0);
  CHECK(rc.experiment.params.inner_rounds == 2);
  CHECK(rc.experiment.params.outer_max == 100);
  CHECK(rc.experiment.decoder == DecoderKind::ijlp);
}

TEST_CASE("run config values") {
  const auto rc = build_run_config({{"channel", "pr2"},
                                    {"code", "spc"},
                                    {"n", "3"},
                                    {"decoder", "exact-lp"},
                                    {"snr_db", "1, 2.5,4"},
                                    {"schedule", "cyclic"},
                                    {"start_state", "2"},
                                    {"trace", "true"}});
  CHECK(rc.experiment.channel == "pr2");
  CHECK(rc.experiment.code_source == "spc");
  CHECK(rc.experiment.decoder == DecoderKind::exact_lp);
  CHECK(rc.experiment.snr_db == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(rc.experiment.params.schedule == Schedule::cyclic);
  CHECK(rc.experiment.start_state == 2);
  CHECK(rc.trace);
  const auto echo = describe(rc);
  CHECK(echo.at("decoder") == "exact-lp");
  CHECK(build_run_config(echo).experiment.snr_db == rc.experiment.snr_db);
}

TEST_CASE("run config lists every problem") {
  try {
    build_run_config({{"channel", "fiber"}, {"k1", "-3"}, {"n", "abc"}, {"colour", "red"}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string all = e.what();
    CHECK(e.problems().size() == 4);
    for (const char* key : {"channel", "k1", "n", "colour"}) {
      CHECK(all.find(key) != std::string::npos);
    }
  }
}

TEST_CASE("number lists") {
  CHECK(parse_number_list("1,2 ,3.5") == std::vector<double>{1.0, 2.0, 3.5});
  CHECK_THROWS(parse_number_list("1,x"));
}

TEST_CASE("channels subcommand") {
  const auto r = run("channels");
  CHECK(r.code == 0);
  for (const char* name : {"dic", "pdic", "pr2"}) CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("codegen writes a loadable alist") {
  const auto path = scratch_dir() / "code.alist";
  const auto r = run("codegen -n 60 --dv 3 --dc 6 --seed 4 -o " + path.string());
  REQUIRE(r.code == 0);
  const auto code = load_alist(path);
  CHECK(code == random_regular(60, 3, 6, 4));
  CHECK(fs::exists(path.string() + ".manifest.json"));
  const auto manifest = nlohmann::json::parse(read_file(path.string() + ".manifest.json"));
  CHECK(manifest["command"] == "codegen");
  CHECK(manifest.contains("started"));
  CHECK(manifest.contains("finished"));
}

TEST_CASE("decode noiseless vector") {
  const auto y = scratch_dir() / "y.txt";
  write_text(y, "1 0 -1\n");
  for (const char* dec : {"ijlp", "te", "te-ref"}) {
    const auto r = run("decode " + y.string() + " --channel dic --set code=spc --set n=3 --decoder " + dec);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["bits"] == "110");
    CHECK(j["status"] == "parity_ok");
    CHECK(j["iterations"] == 1);
  }
  const auto r = run("decode " + y.string() + " --channel dic --set code=spc --set n=3 --decoder exact-lp");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["vertex_kind"] == "integral");
  CHECK(j["bits"] == "110");
  CHECK(j["objective"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("decode rejects malformed input") {
  const auto bad = scratch_dir() / "bad.txt";
  write_text(bad, "1 zero -1\n");
  CHECK(run("decode " + bad.string() + " --channel dic --set code=spc --set n=3").code == 1);
  const auto short_file = scratch_dir() / "short.txt";
  write_text(short_file, "1 0\n");
  CHECK(run("decode " + short_file.string() + " --channel dic --set code=spc --set n=3").code == 1);
  CHECK(run("decode /nonexistent/file --set code=spc --set n=3").code == 1);
}

TEST_CASE("bad configuration exits 1") {
  const auto cfg = scratch_dir() / "bad.cfg";
  write_text(cfg, "channel = fiber\nk2 = 0\n");
  CHECK(run("sweep -c " + cfg.string() + " --snr 1").code == 1);
  CHECK(run("sweep --set nope=1 --snr 1").code == 1);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("sweep writes csv and manifest") {
  const auto out = scratch_dir() / "wer.csv";
  const auto r = run("sweep --channel dic --set code=spc --set n=3 --set codeword=110 --decoder exact-lp "
                     "--snr 2,4 --set max_trials=200 --seed 9 -o " + out.string());
  REQUIRE(r.code == 0);
  const auto csv = read_file(out);
  CHECK(csv.rfind("snr_db,sigma,trials,errors,wer,ci_lo,ci_hi,mean_iters\n", 0) == 0);
  const auto manifest = nlohmann::json::parse(read_file(out.string() + ".manifest.json"));
  CHECK(manifest["seed"] == 9);
  CHECK(manifest["config"]["decoder"] == "exact-lp");
  const auto again = scratch_dir() / "wer2.csv";
  run("sweep --channel dic --set code=spc --set n=3 --set codeword=110 --decoder exact-lp "
      "--snr 2,4 --set max_trials=200 --seed 9 --workers 2 -o " + again.string());
  CHECK(read_file(again) == csv);
}

TEST_CASE("harvest then predict") {
  const auto spec = scratch_dir() / "spec.txt";
  const auto r = run("harvest --channel dic --set code=spc --set n=3 --set codeword=110 "
                     "--set harvest_snr_db=0 --set stationary_window=100 --set harvest_max_trials=3000 -o " +
                     spec.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(spec));
  const auto p = run("predict -s " + spec.string() + " --channel dic --set code=spc --set n=3 --snr 4,8");
  REQUIRE(p.code == 0);
  CHECK(p.out.rfind("snr_db,sigma,predicted_wer\n", 0) == 0);
}

TEST_CASE("gap subcommand") {
  const auto r = run("gap --set k1=1000 --set k2=100");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("delta        = 0.00258477") != std::string::npos);
}
