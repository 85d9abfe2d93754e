#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eoc/bits.hpp"
#include "eoc/circuit.hpp"

using namespace eoc;

namespace {

Circuit random_controlled_circuit(Rng& rng, std::uint32_t width,
                                  std::size_t gates) {
  Circuit c(width);
  while (c.gates.size() < gates) {
    const int arity = static_cast<int>(rng.below(3));
    std::vector<std::uint32_t> lines(width);
    for (std::uint32_t i = 0; i < width; ++i) lines[i] = i;
    rng.shuffle(lines);
    std::vector<Control> controls;
    for (int k = 0; k < arity; ++k)
      controls.push_back(Control{lines[1 + k], rng.bit()});
    c.push(ControlledGate(lines[0], std::move(controls)));
  }
  return c;
}

}  // namespace

TEST_CASE("bitvec value and hex round trips") {
  auto v = BitVec::from_value(0b1011, 9);
  CHECK(v.test(0));
  CHECK(v.test(1));
  CHECK(!v.test(2));
  CHECK(v.test(3));
  CHECK(v.to_value() == 0b1011);
  CHECK(BitVec::from_hex(v.to_hex(), 9) == v);
  CHECK(v.to_hex() == "0b00");
}

TEST_CASE("controlled gate application") {
  // Both controls true: flips the target.
  const auto toff = ControlledGate::toffoli({0, false}, {1, false}, 2);
  CHECK(apply_gate(toff, 0b011u, 3) == 0b111u);
  // One control false: no flip.
  CHECK(apply_gate(toff, 0b001u, 3) == 0b001u);
  // Negative polarity fires on 0: full 4-row table of CNOT(c=-0; t=1).
  const auto cn = ControlledGate::cnot({0, true}, 1);
  CHECK(apply_gate(cn, 0b00u, 2) == 0b10u);
  CHECK(apply_gate(cn, 0b01u, 2) == 0b01u);
  CHECK(apply_gate(cn, 0b10u, 2) == 0b00u);
  CHECK(apply_gate(cn, 0b11u, 2) == 0b11u);
}

TEST_CASE("controlled gate invariants") {
  CHECK_THROWS_AS(ControlledGate(1, {{1, false}}), ValidationError);
  CHECK_THROWS_AS(ControlledGate(0, {{1, false}, {1, true}}),
                  ValidationError);
  // Controls are stored sorted, so construction order is irrelevant.
  CHECK(ControlledGate(0, {{2, false}, {1, true}}) ==
        ControlledGate(0, {{1, true}, {2, false}}));
  // Out-of-range application is refused.
  BitVec s(2);
  CHECK_THROWS_AS(apply_gate(ControlledGate::not_gate(5), s),
                  ValidationError);
}

TEST_CASE("every controlled gate is an involution") {
  Rng rng(Seed256::from_u64(7));
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_controlled_circuit(rng, 6, 1);
    const auto& g = std::get<ControlledGate>(c.gates[0]);
    const std::uint64_t s = rng.next() & 0x3F;
    CHECK(apply_gate(g, apply_gate(g, s, 6), 6) == s);
  }
}

TEST_CASE("gate3 application and affine agreement") {
  const Gate3 id({0, 1, 2}, Lut8::identity());
  for (std::uint64_t s = 0; s < 8; ++s)
    CHECK(apply_gate3(id, s, 3) == s);

  // Columns 011, 101, 111 (component order j1 j2 j3): input triple 100 maps
  // to the first column, 011.
  const Affine3 m{{0b110, 0b101, 0b111}, 0};
  const AffineGate3 g({0, 1, 2}, m);
  // Triple 100 = x_{j1}=1 -> local value 1; expect triple 011 -> value 6.
  CHECK(apply_gate3(g.to_gate3(), 0b001u, 3) == 0b110u);

  // lut path agrees with the (M, c) path on all 8 inputs, any shift.
  for (std::uint8_t shift = 0; shift < 8; ++shift) {
    const Affine3 ms{{0b110, 0b101, 0b111}, shift};
    const Lut8 lut = ms.to_lut();
    for (int x = 0; x < 8; ++x)
      CHECK(lut(static_cast<std::uint8_t>(x)) ==
            ms.apply(static_cast<std::uint8_t>(x)));
  }
}

TEST_CASE("affine extraction") {
  const Affine3 m{{0b011, 0b110, 0b111}, 5};
  const auto back = Affine3::from_lut(m.to_lut());
  REQUIRE(back.has_value());
  CHECK(*back == m);

  // A non-affine permutation is rejected.
  Lut8 toff;
  toff.map = {0, 1, 2, 7, 4, 5, 6, 3};  // local Toffoli
  CHECK(!Affine3::from_lut(toff).has_value());

  // Inversion really inverts, shift included.
  const Affine3 inv = m.inverted();
  for (int x = 0; x < 8; ++x)
    CHECK(inv.apply(m.apply(static_cast<std::uint8_t>(x))) == x);
}

TEST_CASE("truth table oracle") {
  Circuit empty(3);
  const auto id_table = truth_table(empty);
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(id_table[x] == x);

  Circuit n1(1);
  n1.push(ControlledGate::not_gate(0));
  CHECK(truth_table(n1) == std::vector<std::uint32_t>{1, 0});

  // g followed by g^-1 is the identity.
  Lut8 lut;
  lut.map = {3, 6, 0, 5, 7, 1, 2, 4};
  Circuit gg(3);
  gg.push(Gate3({0, 1, 2}, lut));
  gg.push(Gate3({0, 1, 2}, lut.inverted()));
  CHECK(truth_table(gg) == id_table);

  Circuit wide(kDefaultOracleWidthLimit + 1);
  CHECK_THROWS_AS(truth_table(wide), ValidationError);
}

TEST_CASE("inversion and composition") {
  Circuit n(1);
  n.push(ControlledGate::not_gate(0));
  CHECK(print_circuit(inverted(n)) == print_circuit(n));

  Rng rng(Seed256::from_u64(11));
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_controlled_circuit(rng, 6, 10);
    const auto round = concatenated(c, inverted(c));
    const auto table = truth_table(round);
    for (std::uint32_t x = 0; x < 64; ++x) CHECK(table[x] == x);
  }
}

TEST_CASE("circuit application is a left-to-right fold") {
  // truth_table(A ++ B) == table(B) composed after table(A).
  Rng rng(Seed256::from_u64(13));
  const auto a = random_controlled_circuit(rng, 5, 6);
  const auto b = random_controlled_circuit(rng, 5, 6);
  const auto ta = truth_table(a);
  const auto tb = truth_table(b);
  const auto tab = truth_table(concatenated(a, b));
  for (std::uint32_t x = 0; x < 32; ++x) CHECK(tab[x] == tb[ta[x]]);
}

TEST_CASE("circuit text format round trip") {
  const std::string text =
      "n 4\n"
      "NOT t=0\n"
      "CNOT c=-1 t=0\n"
      "TOFFOLI c=+0 c=-2 t=3\n"
      "G3 j=0,1,3 lut=30157264\n";
  const Circuit c = parse_circuit_text(text);
  CHECK(print_circuit(c) == text);
  // Parse accepts comments and omitted signs.
  const Circuit c2 = parse_circuit_text(
      "# header\nn 4\nCNOT c=1 t=0 # inline\n");
  CHECK(std::get<ControlledGate>(c2.gates[0]) ==
        ControlledGate::cnot({1, false}, 0));

  CHECK_THROWS_AS(parse_circuit_text("NOT t=0\n"), ValidationError);
  CHECK_THROWS_AS(parse_circuit_text("n 2\nG3 j=0,1,2 lut=01234567\n"),
                  ValidationError);

  // Random circuits survive a print/parse cycle exactly.
  Rng rng(Seed256::from_u64(17));
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = random_controlled_circuit(rng, 7, 12);
    CHECK(print_circuit(parse_circuit_text(print_circuit(r))) ==
          print_circuit(r));
  }
}
