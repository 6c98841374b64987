#include "support.hpp"

namespace tiltkit::test {
namespace {

AlgebraPtr from_text(const std::string& text, const FieldSpec& f = FieldSpec::rationals()) {
  AlgebraSource src = parse_algebra_text(text);
  return build_algebra(src.quiver, src.relations, f);
}

class AlgebraTest : public ::testing::TestWithParam<FieldSpec> {
 protected:
  FieldSpec f = GetParam();
};

TEST_P(AlgebraTest, FixtureDimensions) {
  EXPECT_EQ(load("a2", f)->dim(), 3u);
  EXPECT_EQ(load("kron2", f)->dim(), 4u);
  EXPECT_EQ(load("cycle2", f)->dim(), 5u);
  EXPECT_EQ(load("triple3", f)->dim(), 9u);
}

TEST_P(AlgebraTest, StructureConstantsAreAssociative) {
  for (const auto& name : fixture_names()) {
    AlgebraPtr a = load(name, f);
    EXPECT_TRUE(a->check_structure()) << name;
    EXPECT_TRUE(opposite(*a)->check_structure()) << name;
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      EXPECT_TRUE(corner_algebra(*a, {v}).algebra->check_structure()) << name << " e" << v;
    }
  }
}

TEST_P(AlgebraTest, ProjectiveLoewyStructure) {
  AlgebraPtr c = load("cycle2", f);
  Representation p2 = projective(c, 1);
  EXPECT_EQ(p2.dims, (std::vector<std::size_t>{1, 2}));
  Submodule soc = socle(p2);
  EXPECT_EQ(soc.module.dims, (std::vector<std::size_t>{0, 1}));

  AlgebraPtr t = load("triple3", f);
  EXPECT_EQ(projective(t, 0).dims, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(projective(t, 1).dims, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(projective(t, 2).dims, (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_EQ(socle(projective(t, 0)).module.dims, (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(top(projective(t, 1)).module.dims, (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(radical(projective(t, 1)).module.dims, (std::vector<std::size_t>{1, 1, 1}));
}

TEST_P(AlgebraTest, OppositeProjectivesAreDualInjectives) {
  for (const auto& name : fixture_names()) {
    AlgebraPtr a = load(name, f);
    AlgebraPtr op = opposite(*a);
    EXPECT_EQ(op->dim(), a->dim());
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      EXPECT_EQ(projective(op, v).dims, injective(a, v).dims) << name << " vertex " << v;
    }
  }
}

TEST_P(AlgebraTest, CornerRing) {
  AlgebraPtr t = load("triple3", f);
  CornerAlgebra c = corner_algebra(*t, {1});
  EXPECT_EQ(c.algebra->dim(), 2u);
  EXPECT_EQ(corner_algebra(*t, {0, 1, 2}).algebra->dim(), 9u);
  EXPECT_THROW(corner_algebra(*t, {}), InputError);
}

TEST_P(AlgebraTest, NonHomogeneousRelation) {
  AlgebraPtr a = from_text(
      "vertex 1 2 3 4 5\n"
      "arrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\n"
      "arrow f: 1 -> 5\narrow g: 5 -> 4\n"
      "relation a*b*c - f*g\n",
      f);
  EXPECT_EQ(a->dim(), 13u);
  EXPECT_TRUE(a->check_structure());
}

TEST_P(AlgebraTest, ScaledRelation) {
  AlgebraPtr a = from_text("vertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 1 -> 2\nrelation a*b - 1/2*c*b\n", f);
  EXPECT_EQ(a->dim(), 3u + 3u + 1u);
  EXPECT_TRUE(a->check_structure());
}

INSTANTIATE_TEST_SUITE_P(Fields, AlgebraTest, both_fields(), field_label);

TEST(AlgebraInput, InfiniteDimensionalExceedsBound) {
  EXPECT_THROW(from_text("vertex 1\narrow x: 1 -> 1\n"), BoundExceeded);
}

TEST(AlgebraInput, ErrorsCarryLineNumbers) {
  try {
    parse_algebra_text("vertex 1 2\narrow a 1 -> 2\n", "bad.alg");
    FAIL() << "no error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.alg:2"), std::string::npos);
  }
  EXPECT_THROW(from_text("vertex 1 2\narrow a: 1 -> 3\n"), InputError);
  EXPECT_THROW(from_text("vertex 1 2\narrow a: 1 -> 2\nrelation a\n"), InputError);
  EXPECT_THROW(from_text("vertex 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\nrelation a*b\n"), InputError);
  EXPECT_THROW(parse_field("GF(12)"), InputError);
}

TEST(AlgebraInput, FieldOverride) {
  AlgebraPtr a = load_algebra(fixture("cycle2.alg"), FieldSpec::prime(101));
  EXPECT_FALSE(a->field.is_rational());
  EXPECT_EQ(a->field.characteristic, 101u);
}

}  // namespace
}  // namespace tiltkit::test
