#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <sys/wait.h>

#include "stub_server.hpp"
#include "test_helpers.hpp"

#ifdef VSD_CLI_PATH

using vsd::testing::fixture;
using vsd::testing::read_file;
using vsd::testing::TempDir;
using vsd::testing::write_file;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run vsd_cli(const std::string& args) {
  const std::string cmd = std::string(VSD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// One trained BOW model shared by the classify/monitor tests.
const std::filesystem::path& bow_model() {
  static TempDir dir;
  static const auto path = [] {
    const auto p = dir / "bow.json";
    const auto r = vsd_cli("train --corpus " + q(fixture("corpus.tsv")) + " --out " + q(p) +
                           " --date 2026-01-01");
    EXPECT_EQ(r.status, 0);
    return p;
  }();
  return path;
}

}  // namespace

TEST(Cli, TrainPrintsReportAndWritesModel) {
  TempDir dir;
  const auto r = vsd_cli("--seed 5 train --corpus " + q(fixture("corpus.tsv")) + " --out " +
                         q(dir / "m.json") + " --report " + q(dir / "r.json") +
                         " --date 2026-01-01");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("accuracy"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "m.json"));
  const auto report = nlohmann::json::parse(read_file(dir / "r.json"));
  EXPECT_EQ(report["config_echo"]["seed"], "5");
}

TEST(Cli, EmbeddingTrainIsReproducible) {
  TempDir dir;
  const std::string common = "--seed 9 train --corpus " + q(fixture("corpus.tsv")) +
                             " --featurizer embedding --embeddings " +
                             q(fixture("toy_embeddings.txt")) + " --date 2026-01-01";
  ASSERT_EQ(vsd_cli(common + " --out " + q(dir / "a.json") + " --report " + q(dir / "ra.json")).status, 0);
  ASSERT_EQ(vsd_cli(common + " --out " + q(dir / "b.json") + " --report " + q(dir / "rb.json")).status, 0);
  EXPECT_EQ(read_file(dir / "a.json"), read_file(dir / "b.json"));
  EXPECT_EQ(read_file(dir / "ra.json"), read_file(dir / "rb.json"));
}

TEST(Cli, ConfigFileBelowFlags) {
  TempDir dir;
  write_file(dir / "vsd.toml", "seed = 4\n[train]\ncost = 3\ndate = \"2026-05-05\"\n");
  const std::string base = "--config " + q(dir / "vsd.toml") + " train --corpus " +
                           q(fixture("corpus.tsv")) + " --json --out " + q(dir / "m.json");
  auto j = nlohmann::json::parse(vsd_cli(base).out);
  EXPECT_EQ(j["config_echo"]["C"], "3");
  EXPECT_EQ(j["config_echo"]["seed"], "4");
  j = nlohmann::json::parse(vsd_cli(base + " -C 7 --seed 8").out);
  EXPECT_EQ(j["config_echo"]["C"], "7");
  EXPECT_EQ(j["config_echo"]["seed"], "8");
}

TEST(Cli, ClassifyArgumentsAndBatchFile) {
  TempDir dir;
  auto r = vsd_cli("classify --model " + q(bow_model()) + " 'passa o celular agora' 'de para'");
  ASSERT_EQ(r.status, 0);
  auto out = lines(r.out);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].rfind("violent\t", 0), 0u);
  EXPECT_NE(out[0].find("\tpassa o celular agora"), std::string::npos);
  EXPECT_NE(out[1].find("\tlow-signal"), std::string::npos);

  write_file(dir / "batch.txt", "bom dia vamos almoçar hoje\nvou te matar\n\nque horas abre o banco\n");
  r = vsd_cli("classify --model " + q(bow_model()) + " --file " + q(dir / "batch.txt"));
  ASSERT_EQ(r.status, 0);
  out = lines(r.out);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].rfind("benign\t", 0), 0u);
  EXPECT_EQ(out[1].rfind("violent\t", 0), 0u);
  EXPECT_EQ(out[3].substr(out[3].rfind('\t') + 1), "que horas abre o banco");
}

TEST(Cli, EvaluateMatchesTrainingCorpus) {
  const auto r = vsd_cli("evaluate --json --model " + q(bow_model()) + " --corpus " +
                         q(fixture("corpus.tsv")));
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["matrix"]["tp"].get<int>() + j["matrix"]["fn"].get<int>(), 400);
}

TEST(Cli, MonitorPostsToWebhook) {
  vsd::testing::StubServer server;
  TempDir dir;
  write_file(dir / "in.txt", "bom dia vamos almoçar hoje\npassa o celular\n");
  const auto r = vsd_cli("monitor --model " + q(bow_model()) + " --webhook " + server.url() +
                         " --debounce 0 --input " + q(dir / "in.txt"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out).size(), 3u);
  const auto reqs = server.requests();
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(nlohmann::json::parse(reqs[0].body)["text"], "passa o celular");
}

TEST(Cli, MonitorRequiresSink) {
  EXPECT_EQ(vsd_cli("monitor --model " + q(bow_model()) + " < /dev/null").status, 2);
}

TEST(Cli, AugmentEnumerateAndSample) {
  TempDir dir;
  write_file(dir / "g.gram", "public <r> = me (entrega|passa) [tudo];\n");
  auto r = vsd_cli("augment --grammar " + q(dir / "g.gram") + " --rule r --label violent");
  ASSERT_EQ(r.status, 0);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 4u);
  for (const auto& l : out) EXPECT_EQ(l.rfind("violent\t", 0), 0u);

  const std::string sample = "--seed 3 augment --grammar " + q(fixture("benign.gram")) +
                             " --rule chat --label benign --mode sample -n 30 -o ";
  ASSERT_EQ(vsd_cli(sample + q(dir / "a.tsv")).status, 0);
  ASSERT_EQ(vsd_cli(sample + q(dir / "b.tsv")).status, 0);
  EXPECT_EQ(read_file(dir / "a.tsv"), read_file(dir / "b.tsv"));
  EXPECT_EQ(lines(read_file(dir / "a.tsv")).size(), 30u);
}

TEST(Cli, GridSearchPrintsTableAndBest) {
  const auto r = vsd_cli("grid-search --corpus " + q(fixture("corpus.tsv")) +
                         " --costs 10 --gammas 0.1 --folds 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("best\tC=10\tgamma=0.1"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(vsd_cli("").status, 1);
  EXPECT_EQ(vsd_cli("train --corpus x").status, 1);
  EXPECT_EQ(vsd_cli("--help").status, 0);
  EXPECT_EQ(vsd_cli("classify --model /nonexistent/m.json hi").status, 3);
  write_file(dir / "bad.tsv", "danger\thello\n");
  EXPECT_EQ(vsd_cli("train --corpus " + q(dir / "bad.tsv") + " --out " + q(dir / "m.json")).status, 2);
  write_file(dir / "m.json", "{\"format\":");
  EXPECT_EQ(vsd_cli("classify --model " + q(dir / "m.json") + " hi").status, 2);
  write_file(dir / "cyc.gram", "<a> = <b>; <b> = <a>;");
  EXPECT_EQ(vsd_cli("augment --grammar " + q(dir / "cyc.gram") + " --rule a --label violent").status, 2);
}

#endif
