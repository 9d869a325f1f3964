// Exit-code and output contract of the command line tool.
// Usage: cli_tests <path-to-disp-binary>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "cli_runner.hpp"

namespace {

int failures = 0;

#define REQUIRE(cond, msg)                                                          \
  do {                                                                              \
    if (!(cond)) {                                                                  \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg << "\n";  \
      ++failures;                                                                   \
    }                                                                               \
  } while (0)

std::string write_file(const std::filesystem::path& dir, const std::string& name,
                       const std::string& content) {
  auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <disp-binary>\n";
    return 2;
  }
  const std::string bin = cli::quoted(argv[1]);
  auto dir = std::filesystem::temp_directory_path() / "disp_cli_tests";
  std::filesystem::create_directories(dir);

  // --- usage errors -> 2
  REQUIRE(cli::run(bin + " nonsense 2>/dev/null").exit_code == 2, "unknown subcommand");
  REQUIRE(cli::run(bin + " disp --no-such-flag 2>/dev/null").exit_code == 2, "unknown flag");
  REQUIRE(cli::run(bin + " regions --dim 10 --eps-min 1e-4 --eps-max 1e-2 --steps 1 "
                         "--format csv 2>/dev/null")
                  .exit_code == 2,
          "steps=1 is a usage error");

  // --- gen + disp happy path
  const std::string single = write_file(dir, "single.txt", "dim=2\n0.5,0.5\n");
  {
    auto r = cli::run(bin + " disp --input " + cli::quoted(single));
    REQUIRE(r.exit_code == 0, "disp exit 0");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["dispersion"].get<double>() == 0.5, "dispersion of the centre point is 1/2");
    REQUIRE(j["box"]["lower"].size() == 2, "witness has d sides");
  }
  {
    const std::string empty = write_file(dir, "empty.txt", "dim=2\n");
    auto r = cli::run(bin + " disp --input " + cli::quoted(empty));
    REQUIRE(r.exit_code == 0, "disp on empty set");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["dispersion"].get<double>() == 1.0, "empty set has dispersion 1");
  }
  {
    auto out = (dir / "gen.txt").string();
    auto r = cli::run(bin + " gen --kind uniform-random --n 12 --dim 3 --seed 9 --out " +
                      cli::quoted(out));
    REQUIRE(r.exit_code == 0, "gen exit 0");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["points"] == 12, "gen reports point count");
    auto d = cli::run(bin + " disp --input " + cli::quoted(out));
    REQUIRE(d.exit_code == 0, "disp on generated file");
  }

  // --- parse errors -> 3
  const std::string bad = write_file(dir, "bad.txt", "0.5,x\n");
  REQUIRE(cli::run(bin + " disp --input " + cli::quoted(bad) + " 2>/dev/null").exit_code == 3,
          "malformed coordinate is a parse error");
  REQUIRE(cli::run(bin + " disp --input " + cli::quoted((dir / "missing.txt").string()) +
                   " 2>/dev/null")
                  .exit_code == 3,
          "missing file is a parse error");

  // --- validity errors -> 4
  REQUIRE(cli::run(bin + " reduce --input " + cli::quoted(single) +
                   " --eps 0.2 --k 1 2>/dev/null")
                  .exit_code == 4,
          "reduce eps=0.2 violates the epsilon window");
  const std::string outside = write_file(dir, "outside.txt", "dim=2\n0.5,1.5\n");
  REQUIRE(cli::run(bin + " disp --input " + cli::quoted(outside) + " 2>/dev/null").exit_code == 4,
          "coordinate outside the cube is a validity error");

  // --- budget errors -> 5
  {
    const std::string many = write_file(
        dir, "many.txt",
        [] {
          std::string s = "dim=2\n";
          for (int i = 1; i <= 30; ++i)
            s += std::to_string(i / 100.0) + "," + std::to_string(((i * 7) % 30) / 30.0) + "\n";
          return s;
        }());
    REQUIRE(cli::run(bin + " disp --input " + cli::quoted(many) + " --budget 4 2>/dev/null")
                    .exit_code == 5,
            "tiny node budget exhausts");
  }
  {
    auto r = cli::run(bin + " cff search --k 2 --r 2 --d 4 --budget 40 2>/dev/null");
    REQUIRE(r.exit_code == 5, "cff search budget exhaustion");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("C_lower"), "bracket printed on exhaustion");
  }

  // --- cff verify / search
  const std::string singles = write_file(dir, "singles.txt", "ground=3\n1\n2\n3\n");
  {
    auto r = cli::run(bin + " cff verify --family " + cli::quoted(singles) + " --k 1 --r 1");
    REQUIRE(r.exit_code == 0, "verify exit 0");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["verdict"] == "cover-free", "singletons are (1,1)-cover-free");
  }
  REQUIRE(cli::run(bin + " cff verify --family " + cli::quoted(singles) +
                   " --k 2 --r 2 2>/dev/null")
                  .exit_code == 4,
          "k + r > |F| is a validity error");
  {
    auto r = cli::run(bin + " cff search --k 1 --r 1 --d 3");
    REQUIRE(r.exit_code == 0, "search exit 0");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["C"] == 3, "C(1,1,3) = 3");
  }

  // --- reduce
  {
    std::string pts = "dim=26\n";
    // one point in the middle keeps the report well-formed (verdict: unhit)
    for (int i = 0; i < 26; ++i) pts += (i ? ",0.5" : "0.5");
    pts += "\n";
    const std::string file26 = write_file(dir, "d26.txt", pts);
    auto r = cli::run(bin + " reduce --input " + cli::quoted(file26) + " --eps 0.01 --k 1");
    REQUIRE(r.exit_code == 0, "reduce exit 0");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["params"]["l"] == 25, "l = 25 for eps=0.01, k=1");
    REQUIRE(j["params"]["u"].get<double>() > 0.0399, "u = 0.04");
    const std::string empty26 = write_file(dir, "empty26.txt", "dim=26\n");
    auto v = cli::run(bin + " reduce --input " + cli::quoted(empty26) + " --eps 0.01 --k 1");
    REQUIRE(v.exit_code == 0, "vacuous reduce exit 0");
    REQUIRE(nlohmann::json::parse(v.out)["verdict"] == "vacuous", "empty set is vacuous");
  }

  // --- bounds
  {
    auto r = cli::run(bin + " bounds --eps 0.1 --dim 100");
    REQUIRE(r.exit_code == 0, "bounds exit 0");
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array(), "bounds prints an array");
    bool saw_elementary = false, saw_upper = false;
    for (const auto& item : j) {
      if (item["name"] == "elementary") saw_elementary = true;
      if (item["name"] == "upper-eps2") saw_upper = true;
    }
    REQUIRE(saw_elementary && saw_upper, "catalog names present");
  }

  // --- regions
  {
    auto r = cli::run(bin +
                      " regions --dim 1000000 --eps-min 1e-12 --eps-max 1e-2 --steps 11 "
                      "--format csv");
    REQUIRE(r.exit_code == 0, "regions exit 0");
    REQUIRE(r.out.rfind("eps,winner,k,value,rigorous\n", 0) == 0, "csv header");
    int rows = 0;
    for (char ch : r.out)
      if (ch == '\n') ++rows;
    REQUIRE(rows == 12, "11 data rows");
    auto svg = cli::run(bin +
                        " regions --dim 1000000 --eps-min 1e-12 --eps-max 1e-2 --steps 11 "
                        "--format svg");
    REQUIRE(svg.exit_code == 0, "svg exit 0");
    REQUIRE(svg.out.rfind("<svg", 0) == 0, "svg document");
    REQUIRE(svg.out.find("</svg>") != std::string::npos, "svg closes");
    REQUIRE(svg.out.find("<polyline") != std::string::npos, "svg has polylines");
  }

  if (failures == 0) std::cout << "cli contract: all checks passed\n";
  return failures == 0 ? 0 : 1;
}
