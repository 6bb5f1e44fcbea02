#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("procalab_cli_" + std::to_string(::getpid()) + "_" +
                                       std::to_string(Catch::rngSeed()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  int run(const std::string& args) const {
    const std::string cmd = "cd '" + dir.string() + "' && '" PROCALAB_CLI_PATH "' " + args + " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::size_t count_lines(const std::string& name) const {
    const std::string text = read(name);
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
  }
};

}  // namespace

TEST_CASE("algebra subcommand", "[cli]") {
  Workspace w;
  CHECK(w.run("algebra --trials 100 --out algebra.json") == 0);
  const std::string report = w.read("algebra.json");
  CHECK(report.find("\"passed\": true") != std::string::npos);
  CHECK(report.find("exact pass") != std::string::npos);
  CHECK(w.run("algebra --trials 0") == 2);
  CHECK(w.run("algebra --tamper-sz") == 1);
  CHECK(w.run("algebra --no-such-flag") == 2);
}

TEST_CASE("dispersion subcommand", "[cli]") {
  Workspace w;
  CHECK(w.run("dispersion --modes '' --out empty.csv") == 0);
  CHECK(w.count_lines("empty.csv") == 2);  // banner and header
  CHECK(w.run("dispersion --mu 1 --modes '1 0 0; 2 0 0' --out d.csv") == 0);
  CHECK(w.count_lines("d.csv") == 4);
  CHECK(w.read("d.csv.summary.json").find("\"passed\": true") != std::string::npos);
  CHECK(w.run("dispersion --modes '1.5 0 0' --out skip.csv") == 0);
  CHECK(w.read("stderr.txt").find("not commensurate") != std::string::npos);
  CHECK(w.run("dispersion --mu -1") == 2);
}

TEST_CASE("evolve subcommand", "[cli]") {
  Workspace w;
  CHECK(w.run("evolve --mu 0 --init longitudinal") == 2);
  CHECK(w.run("evolve --steps 0 --diagnostics zero.csv") == 0);
  CHECK(w.count_lines("zero.csv") == 3);
  CHECK(w.run("evolve --mu 1 --steps 20 --output-every 10 --diagnostics d.csv --snapshot-dir snaps") == 0);
  CHECK(w.count_lines("d.csv") == 5);
  CHECK(fs::exists(w.dir / "snaps" / "snapshot_00000020.bin"));
  CHECK(fs::exists(w.dir / "d.csv.config.json"));
  CHECK(w.run("evolve --dt 10 --steps 1") == 2);
}

TEST_CASE("evolve reports divergence", "[cli]") {
  Workspace w;
  std::ofstream(w.dir / "cfl_off.cfg") << "cfl_check = false\n";
  CHECK(w.run("evolve --config cfl_off.cfg --dt 2 --steps 100000 --output-every 1000 --diagnostics blow.csv") == 1);
}

TEST_CASE("london subcommand", "[cli]") {
  Workspace w;
  CHECK(w.run("london --mu 2 --out l.csv") == 0);
  CHECK(w.count_lines("l.csv") == 258);
  CHECK(w.run("london --mu 1 --points 8") == 2);
  CHECK(w.run("london --mu 0") == 2);
  CHECK(w.run("london --mu -3") == 2);
}

TEST_CASE("convergence subcommand", "[cli]") {
  Workspace w;
  CHECK(w.run("convergence --out c.csv") == 0);
  CHECK(w.run("convergence --divisions '200 400'") == 2);
  CHECK(w.run("convergence --dts '1.0 0.02 0.01 0.005' --out u.csv") == 0);
  CHECK(w.read("u.csv").find("nan,unstable") != std::string::npos);
}

TEST_CASE("config files and flags combine, flags winning", "[cli]") {
  Workspace w;
  std::ofstream(w.dir / "l.cfg") << "# screening run\nmu = 4\npoints = 300\nout = from_file.csv\n";
  CHECK(w.run("london --config l.cfg --points 129") == 0);
  CHECK(w.count_lines("from_file.csv") == 131);
  CHECK(w.read("from_file.csv.json").find("\"mu\": \"4\"") != std::string::npos);
  CHECK(w.run("london --config missing.cfg") == 2);
}

TEST_CASE("outputs honour the output directory variable", "[cli]") {
  Workspace w;
  const std::string cmd = "cd '" + w.dir.string() + "' && PROCALAB_OUTPUT_DIR=sub '" PROCALAB_CLI_PATH
                          "' london --mu 2 --out rel.csv > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(w.dir / "sub" / "rel.csv"));
  CHECK_FALSE(fs::exists(w.dir / "rel.csv"));
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
  Workspace w;
  auto twice = [&](const std::string& args, const std::vector<std::string>& files) {
    REQUIRE(w.run(args) == 0);
    std::vector<std::string> first;
    for (const auto& f : files) first.push_back(w.read(f));
    REQUIRE(w.run(args) == 0);
    for (std::size_t i = 0; i < files.size(); ++i) {
      INFO(files[i]);
      CHECK_FALSE(first[i].empty());
      CHECK(w.read(files[i]) == first[i]);
    }
  };
  twice("dispersion --mu 0.5 --modes '1 0 0; 3 0 0' --out a.csv", {"a.csv", "a.csv.summary.json"});
  twice("evolve --mu 1 --steps 30 --diagnostics d.csv --snapshot-dir s",
        {"d.csv", "d.csv.config.json", "s/snapshot_00000030.bin"});
  twice("convergence --out c.csv", {"c.csv", "c.csv.json"});
  twice("london --mu 3 --out l.csv", {"l.csv", "l.csv.json"});
  twice("algebra --seed 9 --out x.json", {"x.json"});
}
