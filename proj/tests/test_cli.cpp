#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run coext(const std::string& args) {
  const std::string cmd = std::string(COEXT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(COEXT_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("eval and quotient examples") {
  const std::string s1 = write_file("s1.mem", "nodes 3\nmem 0 2\n");
  Run r = coext("eval -s " + s1 + " -f 'set(x)' -a x=2");
  CHECK(r.code == 0);
  CHECK(r.out == "false\n");
  r = coext("quotient -s " + write_file("two_empties.mem", "nodes 2\n"));
  CHECK(r.code == 0);
  CHECK(r.out == "nodes 1\n");
}

TEST_CASE("check exit codes and replay") {
  CHECK(coext("check --exhaustive 3 --schema lemma1 --depth 1").code == 0);
  Run bad = coext("check --exhaustive 3 --schema lemma1 --raw --no-enforce --format records");
  CHECK(bad.code == 1);
  REQUIRE(!bad.out.empty());
  const std::string rec = write_file("fail.jsonl", bad.out);
  Run again = coext("check --replay " + rec);
  CHECK(again.code == 1);
  CHECK(again.out.find("FAIL") != std::string::npos);
  CHECK(coext("check --exhaustive 2 --schema lemma1 --jobs 3").code == 0);
}

TEST_CASE("usage errors") {
  CHECK(coext("").code == 2);
  CHECK(coext("frobnicate").code == 2);
  CHECK(coext("parse 'set('").code == 2);
  CHECK(coext("check --exhaustive 3").code == 2);
  CHECK(coext("check --exhaustive 3 --schema nosuch").code == 2);
  CHECK(coext("check --exhaustive 9 --schema lemma1").code == 2);
  CHECK(coext("eval -f 'x in y'").code == 2);
  CHECK(coext("gen --hf 2 --atom 0").code == 2);
  CHECK(coext("check --exhaustive 3 --schema lemma1 --raw").code == 2);
}

TEST_CASE("parse, translate and gen") {
  CHECK(coext("parse 'all z. (z in x <-> z in y)'").out == "all z. z in x <-> z in y\n");
  CHECK(coext("translate 'x = y' --to zfa").out == "all _v0. _v0 in x <-> _v0 in y\n");
  CHECK(coext("gen --exhaustive 3 --dedup").out == "104\n");
  CHECK(coext("gen --nodes 3 --density 1 --seed 5").out.find("mem 2 2") != std::string::npos);
  CHECK(coext("gen --hf 2 --dopp 0:1").out.find("nodes 5") == 0);
}

TEST_CASE("family checks") {
  CHECK(coext("check --infinity 1").code == 0);
  CHECK(coext("check --axiom pairing").code == 0);
  CHECK(coext("check --axiom separation --phi 'y in* w'").code == 0);
  CHECK(coext("check --scott").code == 0);
  CHECK(coext("check --axiom pairing --hf 3 --dopp 0:2").code == 1);
}
