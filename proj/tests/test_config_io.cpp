#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "procalab/config.hpp"
#include "procalab/io.hpp"
#include "procalab/planewave.hpp"

using namespace procalab;

namespace {
KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in);
}
}  // namespace

TEST_CASE("flat config parsing", "[config]") {
  const auto c = parse("# comment\n mu = 1.5  \n\nn=64 # trailing\nmodes = 1 0 0; 2,0,0\nflag = yes\n");
  CHECK(c.get_double("mu") == 1.5);
  CHECK(c.get_int("n") == 64);
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_double("missing", 7.0) == 7.0);
  const auto groups = c.get_double_groups("modes");
  REQUIRE(groups.size() == 2);
  CHECK(groups[1] == std::vector<double>{2.0, 0.0, 0.0});
}

TEST_CASE("config errors are precondition errors", "[config]") {
  CHECK_THROWS_AS(parse("no equals sign\n"), PreconditionError);
  CHECK_THROWS_AS(parse(" = 3\n"), PreconditionError);
  const auto c = parse("n = 6.5\nmu = abc\nb = maybe\n");
  CHECK_THROWS_AS(c.get_int("n"), PreconditionError);
  CHECK_THROWS_AS(c.get_double("mu"), PreconditionError);
  CHECK_THROWS_AS(c.get_bool("b", true), PreconditionError);
  CHECK_THROWS_AS(c.get_double("absent"), PreconditionError);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/procalab.cfg"), PreconditionError);
}

TEST_CASE("config hash depends only on content", "[config]") {
  const auto a = parse("mu = 1\nn = 64\n");
  const auto b = parse("n   =   64\n# reordered\nmu = 1\n");
  const auto c = parse("mu = 1\nn = 65\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
  auto d = a;
  d.set_default("mu", "2");
  CHECK(d.get_double("mu") == 1.0);
  d.set("mu", "2");
  CHECK(d.get_double("mu") == 2.0);
}

TEST_CASE("doubles round-trip through text", "[io]") {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, -2.5e-300, 1e300}) CHECK(std::stod(format_double(v)) == v);
  std::ostringstream out;
  write_csv_row(out, {1.0, 0.5, -2.0});
  CHECK(out.str() == "1,0.5,-2\n");
}

TEST_CASE("snapshots round-trip bit-exactly", "[io]") {
  const std::vector<std::size_t> extents{8, 10};
  const std::vector<double> spacing{0.5, 0.25};
  const auto g = Grid::make(extents, spacing);
  auto s = sample(make_mode({2.0 * std::numbers::pi / 4.0, 0.0, 0.0}, 1.0, ModeKind::transverse2, {0.3, 0.7}), g, 0.1);
  s.phi[3] = -0.0;
  std::stringstream buf;
  write_snapshot(buf, s, {"0.1.0", "abcdef0123456789", g, 0.1, 1.0});

  SnapshotHeader h;
  const auto back = read_snapshot(buf, &h);
  CHECK(h.grid == g);
  CHECK(h.time == 0.1);
  CHECK(h.mu == 1.0);
  CHECK(h.config_hash == "abcdef0123456789");
  const auto x = s.components();
  const auto y = back.components();
  for (std::size_t c = 0; c < x.size(); ++c)
    for (std::size_t n = 0; n < g.size(); ++n)
      REQUIRE(std::bit_cast<std::uint64_t>((*x[c])[n]) == std::bit_cast<std::uint64_t>((*y[c])[n]));

  SECTION("payload is little-endian float64") {
    std::stringstream again;
    write_snapshot(again, s, {"0.1.0", "h", g, 0.1, 1.0});
    const std::string bytes = again.str();
    const auto body = bytes.find("end_header\n") + 11;
    CHECK(bytes.size() - body == 10 * g.size() * 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[body + i])) << (8 * i);
    CHECK(std::bit_cast<double>(bits) == s.e[0][0]);
  }
  SECTION("truncated and foreign inputs are rejected") {
    std::stringstream foreign("hello\n");
    CHECK_THROWS_AS(read_snapshot(foreign), PreconditionError);
    std::stringstream full;
    write_snapshot(full, s, {"0.1.0", "h", g, 0.1, 1.0});
    std::string cut = full.str();
    cut.resize(cut.size() - 5);
    std::stringstream truncated(cut);
    CHECK_THROWS_AS(read_snapshot(truncated), PreconditionError);
  }
}
