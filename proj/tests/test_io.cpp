#include "mmp/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace mmp;

TEST_CASE("problem parse: nested rows and flat lists") {
  const auto s = io::parse_problem(R"({"a": 0, "b": 1, "N": 2, "moments": [
      [[[1, 0], [0, 1]], [[0, -1], [2, 0]]],
      [[1, 0], [0, 0], [0, 0], [1, 0]]]})");
  CHECK(s.l() == 1);
  CHECK(s.block_size() == 2);
  CHECK(s[0](0, 1) == Complex(0, 1));
  CHECK(s[0](1, 0) == Complex(0, -1));
  CHECK(s[1](1, 1) == Complex(1, 0));
}

TEST_CASE("problem parse errors carry a location") {
  auto message = [](std::string_view text) {
    try {
      io::parse_problem(text);
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"a": 0, "b": 1, "N": 1, "moments": [[[[1, 0]]]])").find("byte") != std::string::npos);
  CHECK(message(R"({"a": 0, "N": 1, "moments": [[[[1, 0]]]]})").find("\"b\"") != std::string::npos);
  CHECK(message(R"({"a": 0, "b": 1, "N": 1, "moments": [[[[1, 0]]], [[[1]]]]})").find("$.moments[1]") != std::string::npos);
  CHECK(message(R"({"a": 0, "b": 1, "N": 2, "moments": [[[[1, 0], [1, 0]], [[0, 0], [1, 0]]]]})")
            .find("$.moments[0]") != std::string::npos);
  CHECK(message(R"({"a": 1, "b": 0, "N": 1, "moments": [[[[1, 0]]]]})").find("a < b") != std::string::npos);
  CHECK_FALSE(message(R"({"a": 0, "b": 1, "N": 1, "moments": []})").empty());
  CHECK_FALSE(message(R"({"a": 0, "b": 1, "N": 0, "moments": [[[[1, 0]]]]})").empty());
}

TEST_CASE("round trip of doubles through text is lossless") {
  mmp::test::Rng rng(8);
  for (int it = 0; it < 200; ++it) {
    const double v = rng.normal() * std::pow(10.0, rng.integer(-300, 300));
    CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = gen_random_measure(seed, 1 + static_cast<Index>(seed % 3), 3, -2.0, 3.0);
    const auto seq = moments_of(m, 5);
    const auto back = io::parse_problem(io::serialize_problem(seq));
    CHECK(back.a() == seq.a());
    CHECK(back.b() == seq.b());
    for (int k = 0; k <= 5; ++k) CHECK((back[k].mat().array() == seq[k].mat().array()).all());
    const auto mb = io::parse_measure(io::serialize_measure(m));
    REQUIRE(mb.atoms().size() == m.atoms().size());
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
      CHECK(mb.atoms()[i].x == m.atoms()[i].x);
      CHECK((mb.atoms()[i].weight.mat().array() == m.atoms()[i].weight.mat().array()).all());
    }
    CHECK(io::serialize_problem(back) == io::serialize_problem(seq));
  }
}

TEST_CASE("parameter files") {
  const auto k = io::parse_parameter(R"({"matrix": [[[0.5, 0], [0, 0.1]], [[0, -0.1], [0.5, 0]]]})");
  CHECK(k.dim() == 2);
  CHECK(k(0, 1) == Complex(0, 0.1));
  CHECK(io::parse_parameter(io::serialize_parameter(k)).mat() == k.mat());
  CHECK_THROWS_AS(io::parse_parameter(R"({"matrix": []})"), io::ParseError);
}

TEST_CASE("measure file with empty atom list") {
  const auto m = io::parse_measure(R"({"a": 0, "b": 1, "N": 1, "atoms": []})");
  CHECK(m.atoms().empty());
  CHECK(io::parse_measure(io::serialize_measure(m)).atoms().empty());
}
