#include <catch_amalgamated.hpp>

#include <sstream>

#include <miqpa/io.hpp>

#include "support.hpp"

using namespace miqpa;
using miqpa::testing::Rng;

namespace {

std::string written(const MiqpInstance& inst, std::optional<std::size_t> psi = {}) {
  std::ostringstream os;
  write_instance(os, inst, psi);
  return os.str();
}

}  // namespace

TEST_CASE("instance files parse comments, brackets across lines and unreduced rationals", "[io]") {
  auto f = read_instance_string(R"(# a two-variable instance
n = 2
p = 1   # x1 integral
H = [1 2/4;
     1/2 -3]
h = [0 6/4]
W = [1 1; -1 0]
w = [3 0]
bounds = [-2 2;
          -1 3]
)");
  const MiqpInstance& inst = f.instance;
  CHECK(inst.dim() == 2);
  CHECK(inst.p == 1);
  CHECK(inst.H == RatMat{{1, make_rat(1, 2)}, {make_rat(1, 2), -3}});
  CHECK(inst.h == RatVec{0, make_rat(3, 2)});
  CHECK(inst.P.num_rows() == 2);
  CHECK(inst.lo == RatVec{-2, -1});
  CHECK(inst.hi == RatVec{2, 3});
  CHECK_FALSE(f.psi);
  std::string out = written(inst);
  CHECK(out.find("2/4") == std::string::npos);
  CHECK(out.find("H = [1 1/2; 1/2 -3]") != std::string::npos);
}

TEST_CASE("instance files round-trip exactly", "[io]") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + t % 4;
    MiqpInstance inst;
    inst.H = rng.symmetric(n, -9, 9, 9);
    inst.h = rng.vec(n, -9, 9, 7);
    inst.p = t % (n + 1);
    inst.P = Polyhedron::free_space(n);
    for (int r = 0; r < t % 3; ++r) inst.P.add_row(rng.vec(n, -5, 5, 3), rng.rat(-5, 5, 4));
    if (t % 2) {
      inst.lo = rng.vec(n, -5, -1, 2);
      inst.hi = rng.vec(n, 0, 5, 2);
    }
    auto back = read_instance_string(written(inst, t % 5 == 0 ? std::optional<std::size_t>(3) : std::nullopt));
    CHECK(back.instance.H == inst.H);
    CHECK(back.instance.h == inst.h);
    CHECK(back.instance.p == inst.p);
    CHECK(back.instance.P.W == inst.P.W);
    CHECK(back.instance.P.w == inst.P.w);
    CHECK(back.instance.lo == inst.lo);
    CHECK(back.instance.hi == inst.hi);
    CHECK(back.psi.has_value() == (t % 5 == 0));
  }
}

TEST_CASE("malformed instance files are rejected", "[io]") {
  CHECK_THROWS_AS(read_instance_string("n = 2\nH = [1 2; 3 4]\nh = [0 0]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 2\nH = [1 0; 0 1]\nh = [0]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 2\nH = [1 0 0; 0 1 0]\nh = [0 0]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\nH = [1]\nh = [0]\ncolour = red\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\nH = [1]\nh = [0]\nh = [1]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\nH = [1\nh = [0]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\nH = [1/0]\nh = [0]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\nH = [1]\nh = [0]\nW = [1]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\nH = [1]\nh = [0]\nbounds = [2 1]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("n = 1\np = 2\nH = [1]\nh = [0]\n"), ParseError);
  CHECK_THROWS_AS(read_instance_string("H = [1]\nh = [0]\n"), ParseError);
}

TEST_CASE("psi supplies or tightens the box", "[io]") {
  auto f = read_instance_string("n = 2\nH = [0 0; 0 0]\nh = [1 1]\n");
  CHECK_THROWS_AS(bounded_instance(f), ParseError);
  auto a = bounded_instance(f, 2);
  CHECK(a.lo == RatVec{-4, -4});
  CHECK(a.hi == RatVec{4, 4});
  auto g = read_instance_string("n = 2\nH = [0 0; 0 0]\nh = [1 1]\nbounds = [-10 1; 0 10]\npsi = 3\n");
  auto b = bounded_instance(g);
  CHECK(b.lo == RatVec{-8, 0});
  CHECK(b.hi == RatVec{1, 8});
  auto c = bounded_instance(g, 1);
  CHECK(c.lo == RatVec{-2, 0});
  CHECK(c.hi == RatVec{1, 2});
  auto h = read_instance_string("n = 1\nH = [0]\nh = [1]\nbounds = [5 6]\n");
  CHECK_THROWS_AS(bounded_instance(h, 1), ParseError);
}

TEST_CASE("solution files round-trip", "[io]") {
  SolutionFile s;
  s.feasible = true;
  s.x = RatVec{make_rat(-3, 2), 4};
  s.value = make_rat(7, 3);
  s.provenance = {"spherical form: d = 2", "flat: 3 slices"};
  s.certificate = {"box value -1 <= f = 7/3"};
  std::ostringstream os;
  write_solution(os, s);
  std::istringstream in(os.str());
  SolutionFile b = read_solution(in);
  CHECK(b.feasible);
  CHECK(b.x == s.x);
  CHECK(b.value == s.value);
  CHECK(b.provenance == s.provenance);
  CHECK(b.certificate == s.certificate);

  std::ostringstream none;
  write_solution(none, SolutionFile{});
  std::istringstream in2(none.str());
  CHECK_FALSE(read_solution(in2).feasible);
}
