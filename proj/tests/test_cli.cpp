#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "bnt/io.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

// BNT_CLI_PATH is injected by the build so the suite exercises the real
// binary end to end.
CliRun run_cli(const std::string& args, const fs::path& dir) {
  static int counter = 0;
  fs::path log = dir / ("cli-" + std::to_string(counter++) + ".log");
  std::string cmd = "cd " + dir.string() + " && " + BNT_CLI_PATH + " " + args + " > " +
                    log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::error_code ec;
  if (fs::exists(log, ec)) run.out = bnt::slurp(log.string());
  return run;
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("bnt-cli-" + std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  TempDir tmp;
  CHECK(run_cli("", tmp.dir).exit_code == 2);
  CHECK(run_cli("frobnicate", tmp.dir).exit_code == 2);
  CHECK(run_cli("generate nosuchkind --n 4", tmp.dir).exit_code == 2);
  CHECK(run_cli("verify nosuchtheorem", tmp.dir).exit_code == 2);
  CHECK(run_cli("identifiability --graph missing.edges", tmp.dir).exit_code == 2);
  CHECK(run_cli("generate los --n 3 --d 2 --omega 3", tmp.dir).exit_code == 2);
}

TEST_CASE("generation is deterministic and writes a manifest") {
  TempDir tmp;
  CHECK(run_cli("generate gnp --n 18 --p 0.4 --seed 5 --out a.edges", tmp.dir).exit_code == 0);
  CHECK(run_cli("generate gnp --n 18 --p 0.4 --seed 5 --out b.edges", tmp.dir).exit_code == 0);
  std::string a = bnt::slurp((tmp.dir / "a.edges").string());
  std::string b = bnt::slurp((tmp.dir / "b.edges").string());
  CHECK(a == b);
  CHECK(run_cli("generate gnp --n 18 --p 0.4 --seed 6 --out c.edges", tmp.dir).exit_code == 0);
  CHECK(a != bnt::slurp((tmp.dir / "c.edges").string()));

  auto manifest =
      nlohmann::json::parse(bnt::slurp((tmp.dir / "a.edges.manifest.json").string()));
  CHECK(manifest.at("command") == "generate gnp");
  CHECK(manifest.at("seed") == 5);
  CHECK(manifest.at("tool_version") == "bnt 1.0.0");
  CHECK(manifest.at("outputs").contains("a.edges"));
  CHECK(manifest.at("parameters").at("n") == "18");

  // The two identical runs digest identically.
  auto manifest_b =
      nlohmann::json::parse(bnt::slurp((tmp.dir / "b.edges.manifest.json").string()));
  CHECK(manifest.at("outputs").at("a.edges") == manifest_b.at("outputs").at("b.edges"));
}

TEST_CASE("grid generation emits an embedding sidecar") {
  TempDir tmp;
  CHECK(run_cli("generate aug-hypergrid --n 4 --d 2 --omega 3 --out g.edges", tmp.dir)
            .exit_code == 0);
  CHECK(fs::exists(tmp.dir / "g.edges"));
  CHECK(fs::exists(tmp.dir / "g.edges.embedding.csv"));
  auto emb = bnt::read_embedding((tmp.dir / "g.edges.embedding.csv").string());
  CHECK(emb.vertex_count() == 16);

  CHECK(run_cli("generate regular --n 10 --r 3 --seed 2 --out r.edges", tmp.dir)
            .exit_code == 0);
  auto g = bnt::read_edge_list((tmp.dir / "r.edges").string());
  for (int v = 0; v < 10; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("identifiability command reports mu with its certificates") {
  TempDir tmp;
  bnt::write_text((tmp.dir / "path.edges").string(), "# vertices: 4\n0 1\n1 2\n2 3\n");
  bnt::write_text((tmp.dir / "pl.txt").string(), "S: 0\nT: 3\n");
  CliRun run = run_cli(
      "identifiability --graph path.edges --placement pl.txt --kmax 4 --out rep.json",
      tmp.dir);
  CHECK(run.exit_code == 0);
  auto rep = nlohmann::json::parse(bnt::slurp((tmp.dir / "rep.json").string()));
  CHECK(rep.at("mu") == 0);
  CHECK(rep.at("exact") == true);
  CHECK(rep.at("bounds").at("kappa") == 1);
  CHECK(rep.at("bounds").at("kappa_st") == 1);
  CHECK(rep.at("failing_pair").at("u").size() == 1);
  CHECK(rep.at("min_st_separator").size() == 1);
  CHECK(rep.at("placement").at("s")[0] == 0);

  // Adjacent monitors: the separator bound disappears but the run succeeds.
  bnt::write_text((tmp.dir / "pl2.txt").string(), "S: 0\nT: 1\n");
  CliRun run2 = run_cli(
      "identifiability --graph path.edges --placement pl2.txt --kmax 4 --out rep2.json",
      tmp.dir);
  CHECK(run2.exit_code == 0);
  auto rep2 = nlohmann::json::parse(bnt::slurp((tmp.dir / "rep2.json").string()));
  CHECK(rep2.at("bounds").at("kappa_st").is_null());
  CHECK(rep2.at("min_st_separator").is_null());

  CliRun strat = run_cli("identifiability --graph path.edges --strategy separator",
                         tmp.dir);
  CHECK(strat.exit_code == 0);
}

TEST_CASE("verification suites write results and respect config files") {
  TempDir tmp;
  CliRun los2 = run_cli("verify los2 --out v", tmp.dir);
  CHECK(los2.exit_code == 0);
  auto summary = nlohmann::json::parse(bnt::slurp((tmp.dir / "v.summary.json").string()));
  CHECK(summary.at("violations") == 0);
  CHECK(bnt::slurp((tmp.dir / "v.csv").string()).rfind("check,value,pass", 0) == 0);
  CHECK(fs::exists(tmp.dir / "v.manifest.json"));

  bnt::write_text((tmp.dir / "exp.conf").string(), "trials=80\nseed=4\n");
  CliRun gnp = run_cli("verify gnp-bound --config exp.conf --out g", tmp.dir);
  CHECK(gnp.exit_code == 0);
  auto gsum = nlohmann::json::parse(bnt::slurp((tmp.dir / "g.summary.json").string()));
  CHECK(gsum.at("trials") == 80);
  CHECK(gsum.at("bound") == 1.0);

  // Flags take precedence over the config file.
  CliRun gnp2 = run_cli("verify gnp-bound --config exp.conf --trials 40 --out h", tmp.dir);
  CHECK(gnp2.exit_code == 0);
  auto hsum = nlohmann::json::parse(bnt::slurp((tmp.dir / "h.summary.json").string()));
  CHECK(hsum.at("trials") == 40);

  CliRun pf = run_cli("verify pathfinder --trials 60 --seed 2 --out p", tmp.dir);
  CHECK(pf.exit_code == 0);
  auto psum = nlohmann::json::parse(bnt::slurp((tmp.dir / "p.summary.json").string()));
  CHECK(psum.at("trials") == 60);
  CHECK(psum.at("predicted") > 0.3);
  std::string csv = bnt::slurp((tmp.dir / "p.csv").string());
  CHECK(csv.rfind("seed,trial,success,reason", 0) == 0);
}
