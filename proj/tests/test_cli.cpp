#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

// Drives the built command-line tool end to end. RCSP_TOOL_PATH is injected
// by the build so the suite always tests the binary it was built with.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_tool(const std::string& args, const std::string& env = "") {
  std::string cmd = env + std::string(RCSP_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const std::string& fixture_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/rcsp_cli_XXXXXX";
    char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string fixture(const std::string& name, const std::string& content) {
  std::string path = fixture_dir() + "/" + name;
  std::ofstream(path) << content;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const std::string kNae =
    "rel NAE 3 over 2\n0 0 1\n0 1 0\n0 1 1\n1 0 0\n1 0 1\n1 1 0\n";
const std::string kImpl = "rel IMPL 2 over 2\n0 0\n0 1\n1 1\n";
const std::string kOr = "rel OR 2 over 2\n0 1\n1 0\n1 1\n";
const std::string kWorked =
    "domain 2\n"
    "rel R00 2 { 0 1 ; 1 0 ; 1 1 }\n"
    "rel R01 2 { 0 0 ; 1 0 ; 1 1 }\n"
    "var x1 x2 x3\n"
    "cst R00 x1 x2\n"
    "cst R01 #0 x2\n"
    "cst R00 x3 x3\n"
    "start 1 0 1\n"
    "target 1 0 1\n";

// key=value tokens of a report line, in order of appearance
std::map<std::string, std::string> kv_tokens(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("classify reports the dichotomy verdict") {
  std::string nae = fixture("nae.txt", kNae);
  RunResult res = run_tool("classify " + nae);
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "safely_tight=false dichotomy=PSPACE-complete"));
  CHECK(contains(res.out, "tight=false"));
  CHECK(contains(res.out, "relation=NAE"));

  std::string impl = fixture("impl_lang.txt", kImpl);
  res = run_tool("classify " + impl);
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "tight=true safely_tight=true dichotomy=P"));
}

TEST_CASE("kv format strips context notes") {
  std::string nae = fixture("nae.txt", kNae);
  RunResult res = run_tool("--format kv classify " + nae);
  CHECK(res.exit_code == 0);
  for (const std::string& l : lines_of(res.out)) {
    CHECK(!l.empty());
    CHECK(l[0] != '#');
  }
  RunResult text = run_tool("--format text classify " + nae);
  CHECK(contains(text.out, "#"));
}

TEST_CASE("every classify witness replays through check-op") {
  std::string nae = fixture("nae.txt", kNae);
  RunResult res = run_tool("classify " + nae + " --witness");
  REQUIRE(res.exit_code == 0);
  int replayed = 0;
  for (const std::string& l : lines_of(res.out)) {
    if (l.rfind("witness ", 0) != 0) continue;
    auto kv = kv_tokens(l);
    std::string args = "check-op " + nae;
    if (kv.count("pattern")) args += " --pattern '" + kv["pattern"] + "'";
    if (kv.count("target")) args += " --target " + kv["target"];
    if (kv.count("op")) args += " --op " + kv["op"] + " --rows '" + kv["rows"] + "'";
    RunResult replay = run_tool(args);
    REQUIRE(replay.exit_code == 0);
    if (kv.count("target")) {
      CHECK(contains(replay.out, "matches_target=true"));
    } else {
      CHECK(contains(replay.out, "image=" + kv["escape"]));
      bool escapes = contains(replay.out, "inside=false") ||
                     contains(replay.out, "same_component=false");
      CHECK(escapes);
    }
    ++replayed;
  }
  CHECK(replayed == 6);
}

TEST_CASE("solve answers yes by greedy descent on the worked instance") {
  std::string inst = fixture("worked.txt", kWorked);
  RunResult res = run_tool("solve " + inst);
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "answer=yes method=greedy"));
  CHECK(contains(res.out, "steps_s=0 steps_t=0"));
}

TEST_CASE("solve walks the implication chain") {
  std::string inst = fixture("chain.txt",
                             "domain 2\nrel IMPL 2 { 0 0 ; 0 1 ; 1 1 }\n"
                             "var p q\ncst IMPL p q\nstart 0 0\ntarget 1 1\n");
  RunResult res = run_tool("solve " + inst + " --method greedy");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "answer=yes method=greedy heuristic=false"));
  RunResult oracle = run_tool("oracle " + inst + " --path");
  CHECK(oracle.exit_code == 0);
  CHECK(contains(oracle.out, "answer=yes method=bfs"));
  CHECK(contains(oracle.out, "path=0,0;0,1;1,1"));
}

TEST_CASE("oracle reports disconnected endpoints") {
  std::string inst = fixture("neq.txt",
                             "domain 2\nrel NEQ 2 { 0 1 ; 1 0 }\n"
                             "var a b\ncst NEQ a b\nstart 0 1\ntarget 1 0\n");
  RunResult res = run_tool("oracle " + inst);
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "answer=no method=bfs"));
}

TEST_CASE("digraph total-rect certifies the circular clique") {
  RunResult gen = run_tool("gen circular-clique --p 6 --q 3 -o " + fixture_dir() +
                           "/c63.txt");
  REQUIRE(gen.exit_code == 0);
  RunResult res = run_tool("digraph total-rect " + fixture_dir() + "/c63.txt");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "totally_rectangular=true preperiod=0 period=2 max_k=3"));
}

TEST_CASE("digraph rect and k-rect expose the triangle failure") {
  RunResult gen = run_tool("gen cycle --n 3 -o " + fixture_dir() + "/k3.txt");
  REQUIRE(gen.exit_code == 0);
  RunResult rect = run_tool("digraph rect " + fixture_dir() + "/k3.txt");
  CHECK(rect.exit_code == 0);
  CHECK(contains(rect.out, "rectangular=false witness="));
  RunResult krect = run_tool("digraph k-rect " + fixture_dir() + "/k3.txt --k 1");
  CHECK(krect.exit_code == 0);
  CHECK(contains(krect.out, "k=1 k_rectangular=false witness=0,1"));
}

TEST_CASE("find-order exhausts the two-chord cycle and accepts the chain") {
  RunResult gen = run_tool("gen circular-clique --p 6 --q 2 -o " + fixture_dir() +
                           "/c62.txt");
  REQUIRE(gen.exit_code == 0);
  RunResult res = run_tool("find-order " + fixture_dir() + "/c62.txt");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "order=none rejected=720"));

  std::string impl = fixture("impl_lang.txt", kImpl);
  res = run_tool("find-order " + impl + " --rejections");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "order=0,1 rejected=0"));
}

TEST_CASE("express reports slack for the implication over disjunction") {
  std::string impl = fixture("impl_rel.txt", kImpl);
  std::string disj = fixture("or_rel.txt", kOr);
  RunResult res = run_tool("express " + impl + " --lang " + disj);
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "expressible=false slack=1,0"));
}

TEST_CASE("express writes a formula that round-trips through solve") {
  RunResult gen = run_tool("gen 2sat -o " + fixture_dir() + "/twosat.txt");
  REQUIRE(gen.exit_code == 0);
  std::string point = fixture("point.txt", "rel PT 1 over 2\n1\n");
  RunResult res = run_tool("express " + point + " --lang " + fixture_dir() +
                           "/twosat.txt -o " + fixture_dir() + "/ptdef.txt");
  CHECK(res.exit_code == 0);
  CHECK(contains(res.out, "expressible=true"));
  CHECK(contains(res.out, "written="));
  std::ifstream in(fixture_dir() + "/ptdef.txt");
  std::stringstream body;
  body << in.rdbuf();
  std::string inst = body.str() + "start 1\ntarget 1\n";
  fixture("ptinst.txt", inst);
  RunResult solved = run_tool("solve " + fixture_dir() + "/ptinst.txt --method bfs");
  CHECK(solved.exit_code == 0);
  CHECK(contains(solved.out, "answer=yes method=bfs"));
}

TEST_CASE("rewrite emits an equivalent instance over the target language") {
  std::string chain = fixture("chain.txt",
                              "domain 2\nrel IMPL 2 { 0 0 ; 0 1 ; 1 1 }\n"
                              "var p q\ncst IMPL p q\nstart 0 0\ntarget 1 1\n");
  RunResult gen = run_tool("gen 2sat -o " + fixture_dir() + "/twosat.txt");
  REQUIRE(gen.exit_code == 0);
  RunResult res = run_tool("rewrite " + chain + " --lang " + fixture_dir() +
                           "/twosat.txt -o " + fixture_dir() + "/chain2.txt");
  CHECK(res.exit_code == 0);
  RunResult before = run_tool("solve " + chain + " --method bfs");
  RunResult after = run_tool("solve " + fixture_dir() + "/chain2.txt --method bfs");
  CHECK(after.exit_code == 0);
  auto head = [](const RunResult& r) { return lines_of(r.out).front(); };
  CHECK(head(after) == head(before));
}

TEST_CASE("reports are byte-identical across runs") {
  std::string nae = fixture("nae.txt", kNae);
  RunResult a = run_tool("classify " + nae + " --witness");
  RunResult b = run_tool("classify " + nae + " --witness");
  CHECK(a.out == b.out);
  RunResult d1 = run_tool("difftest --trials 15 --seed 5");
  RunResult d2 = run_tool("difftest --trials 15 --seed 5");
  CHECK(d1.out == d2.out);
  CHECK(contains(d1.out, "ok=true"));
  CHECK(contains(d1.out, "disagreements=0"));
}

TEST_CASE("difftest takes its default seed from the environment") {
  RunResult env = run_tool("difftest --trials 3", "RCSPKIT_SEED=99 ");
  CHECK(contains(env.out, "seed=99"));
  RunResult flag = run_tool("difftest --trials 3 --seed 4", "RCSPKIT_SEED=99 ");
  CHECK(contains(flag.out, "seed=4"));
}

TEST_CASE("gen output is deterministic and feeds back into the toolkit") {
  std::string args = "gen random-min-closed --domain 3 --arity 2 --seed 11";
  RunResult a = run_tool(args);
  RunResult b = run_tool(args);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "# generator splitmix64 seed=11"));
  fixture("rand.txt", a.out);
  RunResult order = run_tool("find-order " + fixture_dir() + "/rand.txt");
  CHECK(order.exit_code == 0);
  CHECK(contains(order.out, "order="));
}

TEST_CASE("exit codes separate usage, cap and validation failures") {
  RunResult unknown = run_tool("frobnicate");
  CHECK(unknown.exit_code == 1);
  std::string inst = fixture("worked.txt", kWorked);
  RunResult path_greedy = run_tool("solve " + inst + " --method greedy --path");
  CHECK(path_greedy.exit_code == 1);
  RunResult missing = run_tool("classify " + fixture_dir() + "/no_such_file.txt");
  CHECK(missing.exit_code == 3);
  std::string bad = fixture("bad_start.txt",
                            "domain 2\nrel OR 2 { 0 1 ; 1 0 ; 1 1 }\n"
                            "var a b\ncst OR a b\nstart 0 0\ntarget 1 1\n");
  RunResult badstart = run_tool("solve " + bad);
  CHECK(badstart.exit_code == 3);
  std::string nae = fixture("nae.txt", kNae);
  RunResult guard = run_tool("classify " + nae + " --max-arity 2");
  CHECK(guard.exit_code == 2);
  RunResult budget = run_tool("check-op " + nae + " --op partial-maltsev --max-enum 1");
  CHECK(budget.exit_code == 2);
  RunResult ternary = run_tool("gen named NAE --as-digraph");
  CHECK(ternary.exit_code == 3);
}
