#include "fixtures.hpp"
#include "oracles.hpp"

#include "mina/generator.hpp"
#include "mina/instance_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace mina;

namespace {

std::vector<std::string> whats(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.what);
  return out;
}

}  // namespace

TEST(Parse, SmallestLegalInstance) {
  Instance inst = parse_instance("header 2 1 1 0\nvertex a 1:1\nvertex b 1:1\nedge a b\n");
  EXPECT_EQ(inst.num_vertices(), 2);
  EXPECT_EQ(inst.num_edges(), 1);
  EXPECT_EQ(inst.num_interfaces(), 1);
  EXPECT_EQ(inst.num_groups(), 0);
  EXPECT_EQ(*inst.cost(0, 0), Rational(1));
}

TEST(Parse, EdgeWithoutCommonInterfaceIsRejected) {
  try {
    parse_instance("header 2 1 2 0\nvertex a 1:1\nvertex b 2:1\nedge a b\n");
    FAIL() << "expected InvalidInstance";
  } catch (const InvalidInstance& e) {
    auto w = whats(e.violations());
    EXPECT_NE(std::find(w.begin(), w.end(), "edge lacks common interface"), w.end());
    EXPECT_EQ(e.violations().front().where, "a-b");
  }
}

// The ten-vertex network has 18 distinct edges (9 cycle edges, 6 spokes to
// v10, 3 chords).
TEST(Parse, TenVertexTopology) {
  Instance inst = fixtures::load("net10.inst");
  EXPECT_EQ(inst.num_vertices(), 10);
  EXPECT_EQ(inst.num_edges(), 18);
  EXPECT_EQ(inst.num_interfaces(), 4);
  EXPECT_TRUE(validate(inst).empty());
}

TEST(Parse, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_instance("header 2 1 1 0\nvertex a 1:1\nvertex b 1:x\nedge a b\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_instance("vertex a 1:1\n"), ParseError);
  EXPECT_THROW(parse_instance("header 2 1 1 0\nvertex a 1:1\nvertex b 1:1\nedge a c\n"), ParseError);
  EXPECT_THROW(parse_instance("header 2 1 1 0\nvertex a 1:-1\nvertex b 1:1\nedge a b\n"), ParseError);
  EXPECT_THROW(parse_instance("header 2 1 1 0\nvertex a 1:1\nvertex b 1:1\nedge a b\nbogus\n"), ParseError);
}

TEST(Parse, HeaderMismatchIsAViolation) {
  EXPECT_THROW(parse_instance("header 3 1 1 0\nvertex a 1:1\nvertex b 1:1\nedge a b\n"), InvalidInstance);
}

TEST(Parse, CommentsAndFractions) {
  Instance inst = parse_instance("# hi\nheader 2 1 1 0\n\nvertex a 1:1/3\n# x\nvertex b 1:0.25\nedge a b\n");
  EXPECT_EQ(*inst.cost(0, 0), Rational(1) / 3);
  EXPECT_EQ(*inst.cost(0, 1), Rational(1) / 4);
}

TEST(Parse, LeadingZerosAreDecimal) {
  EXPECT_EQ(parse_rational("0.025"), Rational(1, 40));
  EXPECT_EQ(parse_rational("0.08"), Rational(2, 25));
  EXPECT_EQ(parse_rational("010/08"), Rational(5, 4));
  EXPECT_EQ(parse_rational("000"), Rational(0));
  EXPECT_EQ(format_rational(parse_rational("0.0625")), "0.0625");
}

TEST(Validate, ValidTriangle) { EXPECT_TRUE(validate(fixtures::load("triangle.inst")).empty()); }

TEST(Validate, Disconnected) {
  InstanceBuilder b;
  for (int i = 0; i < 4; ++i) {
    b.add_vertex(std::to_string(i));
    b.add_slot(i, "1", 1);
  }
  b.add_edge(0, 1);
  b.add_edge(2, 3);
  EXPECT_EQ(whats(validate(std::move(b).build())), std::vector<std::string>{"graph not connected"});
}

TEST(Validate, OverlappingGroups) {
  InstanceBuilder b;
  for (int i = 1; i <= 3; ++i) {
    b.add_vertex(std::to_string(i));
    b.add_slot(i - 1, "1", 1);
  }
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_group({0, 1});
  b.add_group({1, 2});
  EXPECT_EQ(whats(validate(std::move(b).build())), std::vector<std::string>{"groups not disjoint"});
}

TEST(Generator, ForcedSingleEdge) {
  GeneratorParams p;
  p.n = 2;
  p.k = 1;
  p.edge_density = 1.0;
  p.cost_lo = 1;
  p.cost_hi = 1;
  p.seed = 7;
  Instance inst = generate_random(p);
  EXPECT_EQ(inst, parse_instance("header 2 1 1 0\nvertex 0 1:1\nvertex 1 1:1\nedge 0 1\n"));
}

TEST(Generator, DeterministicSerialization) {
  GeneratorParams p;
  p.n = 9;
  p.k = 4;
  p.num_groups = 2;
  p.group_size = 3;
  p.seed = 123;
  EXPECT_EQ(serialize_instance(generate_random(p)), serialize_instance(generate_random(p)));
  p.seed = 124;
  GeneratorParams q = p;
  q.seed = 123;
  EXPECT_NE(serialize_instance(generate_random(p)), serialize_instance(generate_random(q)));
}

TEST(Generator, OutputsAreValidAndRoundTrip) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorParams p;
    p.n = 2 + static_cast<int>(seed % 9);
    p.k = 1 + static_cast<int>(seed % 4);
    p.edge_density = (seed % 5) / 4.0;
    p.cost_lo = 0;
    p.cost_hi = Rational(3, 2);
    p.num_groups = p.n >= 4 ? 2 : 0;
    p.group_size = p.n >= 4 ? 2 : 0;
    p.seed = seed;
    Instance inst = generate_random(p);
    EXPECT_TRUE(validate(inst).empty()) << seed;
    auto label = oracle::bfs_components(inst, std::vector<InterfaceMask>(inst.num_vertices(), ~InterfaceMask{0}));
    EXPECT_EQ(*std::max_element(label.begin(), label.end()), 0) << "generated graph must be connected";
    Instance back = parse_instance(serialize_instance(inst));
    EXPECT_EQ(back, inst);
    EXPECT_EQ(serialize_instance(back), serialize_instance(inst));
  }
}

TEST(Generator, ExampleInstanceIsSmallEnoughForExactOracle) {
  GeneratorParams p;
  p.n = 8;
  p.k = 3;
  p.edge_density = 0.5;
  p.num_groups = 1;
  p.group_size = 3;
  p.seed = 42;
  Instance inst = generate_random(p);
  EXPECT_LE(inst.total_slots(), 24);
  EXPECT_EQ(inst.num_groups(), 1);
}

TEST(Generator, RejectsImpossibleParameters) {
  GeneratorParams p;
  p.n = 1;
  EXPECT_THROW(generate_random(p), GenerationError);
  p.n = 3;
  p.num_groups = 2;
  p.group_size = 2;
  EXPECT_THROW(generate_random(p), GenerationError);
}

TEST(AssignmentIo, RoundTripAndErrors) {
  Instance inst = fixtures::load("net10.inst");
  Assignment a = fixtures::load_assignment(inst, "net10_covering.asg");
  EXPECT_EQ(parse_assignment(inst, serialize_assignment(inst, a)), a);
  EXPECT_THROW(parse_assignment(inst, "active v1 3\n"), ParseError);
  EXPECT_THROW(parse_assignment(inst, "active v1 1\nactive v1 2\n"), ParseError);
  EXPECT_THROW(parse_assignment(inst, "active nobody 1\n"), ParseError);
}
