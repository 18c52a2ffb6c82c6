#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "cli_commands.hpp"
#include "support.hpp"
#include "wisard/model_io.hpp"

using namespace wisard;
using namespace wisard::cli;
using wisard::testing::read_file;
using wisard::testing::scratch_dir;
using wisard::testing::write_file;

namespace {

int run_binary(const std::string& args, const std::filesystem::path& out_file = {}) {
  std::string cmd = std::string(WISARD_CLI_PATH) + " " + args;
  cmd += out_file.empty() ? " >/dev/null" : " >" + out_file.string();
  cmd += " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, const std::string& name,
                                    const Dataset& ds) {
  const auto path = dir / name;
  write_file(path, format_feature_csv(ds));
  return path;
}

}  // namespace

TEST_CASE("parse_range") {
  CHECK(parse_range("9:14").min == 9);
  CHECK(parse_range("9:14").max == 14);
  CHECK(parse_range("3").max == 3);
  CHECK_THROWS_AS(parse_range("a:3"), ConfigError);
  CHECK_THROWS_AS(parse_range("1:2:3"), ConfigError);
}

TEST_CASE("train and predict in process") {
  const auto dir = scratch_dir("cli_inproc");
  const Dataset ds = wisard::testing::make_separable_dataset(6, 3, 40);
  RunConfig cfg;
  cfg.features = write_dataset(dir, "fv.csv", ds);
  cfg.model = dir / "model.wsd";
  cfg.wisard.n = 6;
  std::ostringstream out, err;
  REQUIRE(cmd_train(cfg, out, err) == 0);
  CHECK(out.str().find("class 0: 3") != std::string::npos);
  CHECK(out.str().find("class 1: 6") != std::string::npos);
  CHECK_NOTHROW(load_model_file(cfg.model));

  std::ostringstream pred;
  REQUIRE(cmd_predict(cfg, pred, err) == 0);
  std::istringstream lines(pred.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "id,predicted_label,fired,k_total");
  for (const auto& s : ds.samples()) {
    std::getline(lines, line);
    CHECK(line == s.id + "," + std::to_string(*s.label) + ",7,7");
  }
}

TEST_CASE("predict edge cases") {
  const auto dir = scratch_dir("cli_predict");
  const Dataset ds = wisard::testing::make_separable_dataset(6, 3, 40);
  RunConfig cfg;
  cfg.features = write_dataset(dir, "fv.csv", ds);
  cfg.model = dir / "model.wsd";
  std::ostringstream out, err;
  REQUIRE(cmd_train(cfg, out, err) == 0);

  SUBCASE("dimension mismatch names both sizes") {
    cfg.features = write_dataset(dir, "small.csv", wisard::testing::make_separable_dataset(3, 1, 39));
    std::ostringstream o, e;
    CHECK(cmd_predict(cfg, o, e) != 0);
    CHECK(e.str().find("D=40") != std::string::npos);
    CHECK(e.str().find("D=39") != std::string::npos);
    CHECK(o.str().empty());
  }
  SUBCASE("header-only file") {
    std::string header = "id,label";
    for (int j = 0; j < 40; ++j) header += ",f" + std::to_string(j);
    cfg.features = dir / "empty.csv";
    write_file(cfg.features, header + "\n");
    std::ostringstream o, e;
    CHECK(cmd_predict(cfg, o, e) == 0);
    CHECK(o.str() == "id,predicted_label,fired,k_total\n");
  }
  SUBCASE("unlabeled rows are accepted") {
    std::string text = read_file(dir / "fv.csv");
    text.replace(text.find(",1,"), 3, ",,");
    cfg.features = dir / "unlabeled.csv";
    write_file(cfg.features, text);
    std::ostringstream o, e;
    CHECK(cmd_predict(cfg, o, e) == 0);
  }
}

TEST_CASE("command-line binary") {
  const auto dir = scratch_dir("cli_binary");
  const auto fv = write_dataset(dir, "fv.csv", wisard::testing::make_separable_dataset(24, 6, 300));
  const std::string features = " --features " + fv.string();

  SUBCASE("train writes a loadable model") {
    CHECK(run_binary("train" + features + " --n 12 --seed 7 --out " + (dir / "model.wsd").string()) == 0);
    const WisardModel m = load_model_file(dir / "model.wsd");
    CHECK(m.config().n == 12);
    CHECK(m.config().seed == 7);
    CHECK(run_binary("predict --model " + (dir / "model.wsd").string() + features,
                     dir / "pred.csv") == 0);
    const std::string pred = read_file(dir / "pred.csv");
    CHECK(std::count(pred.begin(), pred.end(), '\n') == 31);
  }
  SUBCASE("missing feature file leaves no output") {
    CHECK(run_binary("train --features " + (dir / "nope.csv").string() + " --out " +
                     (dir / "m2.wsd").string()) != 0);
    CHECK_FALSE(std::filesystem::exists(dir / "m2.wsd"));
    CHECK_FALSE(std::filesystem::exists(dir / "m2.wsd.tmp"));
  }
  SUBCASE("n = 0 is a usage error before reading data") {
    CHECK(run_binary("train --features " + (dir / "nope.csv").string() + " --n 0 --out " +
                     (dir / "m3.wsd").string()) != 0);
    CHECK_FALSE(std::filesystem::exists(dir / "m3.wsd"));
  }
  SUBCASE("bad flag values") {
    CHECK(run_binary("crossval" + features + " --out " + (dir / "o").string() + " --sweep 5:2") != 0);
    CHECK(run_binary("crossval" + features + " --out " + (dir / "o").string() + " --mapping spiral") != 0);
    CHECK(run_binary("crossval" + features + " --out " + (dir / "o").string() + " --threshold-fraction 2") != 0);
    CHECK(run_binary("") != 0);
  }
  SUBCASE("crossval writes every report") {
    const auto out = dir / "report";
    CHECK(run_binary("crossval" + features + " --n 10 --seed 3 --baseline perceptron --out " +
                     out.string()) == 0);
    const std::string sweep = read_file(out / "sweep.csv");
    CHECK(sweep == "n,accuracy,tp,fp,tn,fn\n10,1.0000,18,0,6,0\n");
    CHECK(read_file(out / "comparison.csv") ==
          "system,accuracy\nwisard_tl,1.0000\nperceptron_baseline,1.0000\n");
    CHECK(std::filesystem::exists(out / "run_manifest.txt"));
    CHECK(std::filesystem::exists(out / "folds.csv"));
    CHECK(load_plan(read_file(out / "fold_plan.txt")).folds.size() == 6);
  }
  SUBCASE("sweep alias defaults to 9:14") {
    const auto out = dir / "sweep";
    CHECK(run_binary("sweep" + features + " --out " + out.string()) == 0);
    const std::string sweep = read_file(out / "sweep.csv");
    CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 7);
    CHECK(read_file(out / "run_manifest.txt").find("n_range 9:14") != std::string::npos);
  }
  SUBCASE("raw features add the no-TL row") {
    const auto raw = write_dataset(dir, "raw.csv", wisard::testing::make_separable_dataset(24, 6, 64, 3.0, 99));
    const auto out = dir / "notl";
    CHECK(run_binary("crossval" + features + " --raw-features " + raw.string() + " --sweep 4:5 --out " +
                     out.string()) == 0);
    const std::string cmp = read_file(out / "comparison.csv");
    CHECK(cmp.find("wisard_tl,1.0000\nwisard_no_tl,") != std::string::npos);
  }
}
