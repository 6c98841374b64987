#include "support.hpp"

namespace tiltkit::test {
namespace {

/// The module with structure maps T_s M_g T_t^{-1}; T is an isomorphism onto m.
Representation twisted(const Representation& m, std::mt19937_64& rng) {
  const FieldSpec& f = m.algebra->field;
  std::vector<Matrix> t;
  std::vector<Matrix> ti;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    while (true) {
      Matrix c = random_matrix(rng, f, m.dims[v], m.dims[v]);
      auto inv = inverse(c);
      if (!inv) continue;
      t.push_back(c);
      ti.push_back(*inv);
      break;
    }
  }
  Representation out = m;
  for (std::size_t g = 0; g < m.gens.size(); ++g) {
    const auto& gen = m.algebra->generators[g];
    out.gens[g] = t[gen.source] * m.gens[g] * ti[gen.target];
  }
  return out;
}

class RepresentationTest : public ::testing::TestWithParam<FieldSpec> {
 protected:
  FieldSpec f = GetParam();
  std::mt19937_64 rng{11};
};

TEST_P(RepresentationTest, StandardModulesAreModules) {
  for (const auto& name : fixture_names()) {
    for (const auto& m : standard_modules(load(name, f))) EXPECT_NO_THROW(m.module.validate()) << name << " " << m.name;
  }
}

TEST_P(RepresentationTest, HomMatchesBruteForce) {
  std::size_t checks = 0;
  for (const auto& name : fixture_names()) {
    auto ms = standard_modules(load(name, f));
    for (const auto& x : ms) {
      for (const auto& y : ms) {
        HomSpace h = hom_space(x.module, y.module);
        EXPECT_EQ(h.dim(), hom_dim_bruteforce(x.module, y.module)) << name << " " << x.name << " " << y.name;
        for (const auto& g : h.basis) EXPECT_TRUE(g.is_natural());
        ++checks;
      }
    }
  }
  EXPECT_GE(checks, 100u);
}

TEST_P(RepresentationTest, KernelImageCokernel) {
  AlgebraPtr a = load("triple3", f);
  auto ms = standard_modules(a);
  for (const auto& x : ms) {
    for (const auto& y : ms) {
      HomSpace h = hom_space(x.module, y.module);
      if (h.dim() == 0) continue;
      std::vector<Scalar> c;
      for (std::size_t i = 0; i < h.dim(); ++i) c.push_back(Scalar::from_int(static_cast<long>(i % 3) + 1, f));
      ModuleMap g = combine(h, x.module, y.module, c);
      Submodule k = kernel(g);
      Image im = image(g);
      Quotient q = cokernel(g);
      for (std::size_t v = 0; v < a->vertex_count(); ++v) {
        EXPECT_EQ(k.module.dims[v] + im.module.dims[v], x.module.dims[v]);
        EXPECT_EQ(im.module.dims[v] + q.module.dims[v], y.module.dims[v]);
      }
      EXPECT_TRUE(compose(g, k.inclusion).is_zero());
      EXPECT_TRUE(compose(q.projection, g).is_zero());
      EXPECT_EQ(compose(im.inclusion, im.corestriction).total(), g.total());
    }
  }
}

TEST_P(RepresentationTest, DirectSumStructureMaps) {
  AlgebraPtr a = load("cycle2", f);
  DirectSum s = direct_sum({projective(a, 0), simple(a, 1), injective(a, 0)});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      ModuleMap pi = compose(s.projections[i], s.inclusions[j]);
      if (i == j) {
        EXPECT_EQ(pi.total(), ModuleMap::identity(pi.source).total());
      } else {
        EXPECT_TRUE(pi.is_zero());
      }
    }
  }
}

TEST_P(RepresentationTest, ModuleTextRoundTrip) {
  for (const auto& name : fixture_names()) {
    AlgebraPtr a = load(name, f);
    for (const auto& m : standard_modules(a)) {
      Representation back = parse_module_text(format_module(m.module), a);
      EXPECT_EQ(back.dims, m.module.dims);
      for (std::size_t g = 0; g < back.gens.size(); ++g) EXPECT_EQ(back.gens[g], m.module.gens[g]);
    }
  }
}

TEST_P(RepresentationTest, FixtureModuleFilesMatchConstructions) {
  AlgebraPtr a = load("cycle2", f);
  EXPECT_TRUE(is_isomorphic(load_module(fixture("cycle2/I1.mod"), a), injective(a, 0)));
  EXPECT_TRUE(is_isomorphic(load_module(fixture("cycle2/P2.mod"), a), projective(a, 1)));
  AlgebraPtr t = load("triple3", f);
  Representation t1 = load_module(fixture("triple3/T1.mod"), t);
  HomSpace h = hom_space(projective(t, 2), projective(t, 1));
  ASSERT_EQ(h.dim(), 1u);
  EXPECT_TRUE(h.basis[0].is_injective());
  EXPECT_TRUE(is_isomorphic(t1, cokernel(h.basis[0]).module));
  EXPECT_EQ(t1.dims, (std::vector<std::size_t>{1, 1, 0}));
}

TEST_P(RepresentationTest, RejectsActionsViolatingRelations) {
  AlgebraPtr a = load("cycle2", f);
  EXPECT_THROW(parse_module_text("dim 1=1 2=1\nmap a = [[1]]\nmap b = [[1]]\n", a), InputError);
  EXPECT_THROW(parse_module_text("dim 1=1 2=1\nmap a = [[1,0]]\n", a), InputError);
  EXPECT_THROW(parse_module_text("dim 1=1 2=1\nmap z = [[1]]\n", a), InputError);
}

TEST_P(RepresentationTest, IsomorphismUpToBaseChange) {
  for (const auto& name : fixture_names()) {
    AlgebraPtr a = load(name, f);
    Representation reg = regular_module(a).rep;
    Representation tw = twisted(reg, rng);
    auto iso = find_isomorphism(tw, reg);
    ASSERT_TRUE(iso) << name;
    EXPECT_TRUE(iso->is_natural());
    for (const auto& m : iso->mats) EXPECT_TRUE(is_invertible(m));
  }
  AlgebraPtr k = load("kron2", f);
  EXPECT_TRUE(is_isomorphic(projective(k, 1), simple(k, 1)));
  EXPECT_FALSE(is_isomorphic(direct_sum_module({simple(k, 0), simple(k, 1)}), injective(k, 1)));
}

TEST_P(RepresentationTest, DecomposeRegularModules) {
  for (const auto& name : fixture_names()) {
    AlgebraPtr a = load(name, f);
    std::vector<std::pair<Representation, std::size_t>> want;
    for (std::size_t v = 0; v < a->vertex_count(); ++v) want.push_back({projective(a, v), 1});
    Decomposition d = decompose(twisted(regular_module(a).rep, rng));
    EXPECT_TRUE(d.certified) << name;
    EXPECT_TRUE(decomposition_matches(d, want)) << name;
  }
}

TEST_P(RepresentationTest, DecomposeWithMultiplicities) {
  AlgebraPtr c = load("cycle2", f);
  Representation i1 = injective(c, 0);
  Decomposition d = decompose(twisted(power(i1, 2), rng));
  EXPECT_TRUE(d.certified);
  EXPECT_TRUE(decomposition_matches(d, {{i1, 2}}));
  EXPECT_TRUE(is_isomorphic(injective(c, 1), projective(c, 1)));

  AlgebraPtr k = load("kron2", f);
  Representation m = direct_sum_module({simple(k, 0), injective(k, 1), simple(k, 0), projective(k, 0)});
  Decomposition dk = decompose(twisted(m, rng));
  EXPECT_TRUE(decomposition_matches(dk, {{simple(k, 0), 2}, {injective(k, 1), 1}, {projective(k, 0), 1}}));
  for (const auto& cls : dk.classes) {
    for (const auto& s : cls.copies) {
      EXPECT_EQ(compose(s.projection, s.inclusion).total(), ModuleMap::identity(s.module).total());
    }
  }
}

TEST_P(RepresentationTest, TraceOfSimpleInProjective) {
  AlgebraPtr c = load("cycle2", f);
  Submodule t = trace_submodule(simple(c, 1), projective(c, 1));
  EXPECT_EQ(t.module.dims, (std::vector<std::size_t>{0, 1}));
}

INSTANTIATE_TEST_SUITE_P(Fields, RepresentationTest, both_fields(), field_label);

}  // namespace
}  // namespace tiltkit::test
