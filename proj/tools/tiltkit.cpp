#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tiltkit/io.hpp"
#include "tiltkit/recollement.hpp"

#ifndef TILTKIT_FIXTURE_DIR
#define TILTKIT_FIXTURE_DIR "fixtures"
#endif

using json = nlohmann::ordered_json;
using namespace tiltkit;

namespace {

constexpr int exit_failed = 1;
constexpr int exit_input = 2;
constexpr int exit_bound = 3;
constexpr int exit_internal = 4;

struct Options {
  std::string field;
  std::size_t max_resolution = default_resolution_bound;
  std::size_t max_steps = default_max_steps;
  std::uint64_t seed = default_seed;
  std::string json_path;
  std::string fixtures = TILTKIT_FIXTURE_DIR;
};

/// Human text and the machine report of one command.
struct Report {
  json doc;
  std::ostringstream text;
  bool ok = true;
};

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

json dims_json(const Representation& m) { return m.dims; }

json module_json(const Representation& m) {
  json maps = json::object();
  for (std::size_t g = 0; g < m.gens.size(); ++g) {
    if (m.gens[g].empty()) continue;
    maps[m.algebra->generators[g].name] = matrix_json(m.gens[g]);
  }
  return {{"dims", dims_json(m)}, {"maps", maps}};
}

json map_json(const ModuleMap& f) {
  json out = json::object();
  for (std::size_t v = 0; v < f.mats.size(); ++v) {
    if (f.mats[v].empty()) continue;
    out[f.source.algebra->vertices[v]] = matrix_json(f.mats[v]);
  }
  return out;
}

json tops_json(const Algebra& a, const ProjectiveModule& p) {
  json out = json::array();
  for (std::size_t v : p.tops) out.push_back(a.vertices[v]);
  return out;
}

json complex_json(const PerfectComplex& x) {
  json terms = json::array();
  if (!x.is_zero()) {
    for (int n = x.lo; n <= x.hi(); ++n) {
      terms.push_back({{"degree", n}, {"tops", tops_json(*x.algebra, x.term(n))}});
    }
  }
  json coh = json::object();
  for (int n : cohomology_support(x)) coh[std::to_string(n)] = dims_json(cohomology(x, n));
  return {{"terms", terms}, {"cohomology", coh}};
}

json decomposition_json(const Decomposition& d) {
  json classes = json::array();
  for (const auto& c : d.classes) classes.push_back({{"module", module_json(c.module)}, {"multiplicity", c.multiplicity}});
  return {{"classes", classes}, {"certified", d.certified}};
}

json certificate_json(const TiltingCertificate& c) {
  json fails = c.failures();
  return {{"passed", c.passed()},
          {"proj_dim", c.proj_dim ? json(*c.proj_dim) : json(nullptr)},
          {"ext1_self", c.ext1_self},
          {"approximation_injective", c.approximation_injective},
          {"cokernel_in_add", c.cokernel_in_add},
          {"t0", module_json(c.sequence.middle)},
          {"t1", module_json(c.sequence.right)},
          {"approximation", map_json(c.sequence.inclusion)},
          {"approximation_minimal", c.approximation.minimal_certified},
          {"failures", fails}};
}

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({{"degree", v.degree}, {"dim", v.dim}});
  return out;
}

std::string dims_text(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

class Session {
 public:
  explicit Session(const Options& o) : opt_(o) {}

  AlgebraPtr algebra(const std::string& path) const {
    std::optional<FieldSpec> f;
    if (!opt_.field.empty()) f = parse_field(opt_.field);
    return load_algebra(path, f);
  }

  Representation module_sum(const AlgebraPtr& a, const std::vector<std::string>& paths) const {
    std::vector<Representation> parts;
    for (const auto& p : paths) parts.push_back(load_module(p, a));
    if (parts.size() == 1) return parts.front();
    return direct_sum_module(parts);
  }

  std::size_t max_len() const { return opt_.max_resolution; }
  std::size_t max_steps() const { return opt_.max_steps; }
  std::uint64_t seed() const { return opt_.seed; }
  std::string fixture(const std::string& name) const { return opt_.fixtures + "/" + name; }

 private:
  const Options& opt_;
};

void info(const Session& s, const std::string& alg, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  json basis = json::array();
  for (const auto& b : a->basis) basis.push_back(b.label);
  json table = json::array();
  r.text << "dim " << a->dim() << "\n";
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    Representation p = projective(a, v);
    Representation i = injective(a, v);
    table.push_back({{"vertex", a->vertices[v]}, {"P", dims_json(p)}, {"I", dims_json(i)}, {"S", dims_json(simple(a, v))}});
    r.text << "vertex " << a->vertices[v] << "  P " << p.dim_vector() << "  I " << i.dim_vector() << "\n";
  }
  r.doc = {{"dim", a->dim()}, {"vertices", a->vertices}, {"basis", basis}, {"modules", table}};
}

void hom(const Session& s, const std::string& alg, const std::string& m, const std::string& n, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  Representation x = load_module(m, a);
  Representation y = load_module(n, a);
  HomSpace h = hom_space(x, y);
  json basis = json::array();
  for (const auto& f : h.basis) basis.push_back(map_json(f));
  r.text << "dim Hom = " << h.dim() << "\n";
  r.doc = {{"dim", h.dim()}, {"basis", basis}};
}

void ext(const Session& s, std::size_t k, const std::string& alg, const std::string& m, const std::string& n, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  Representation x = load_module(m, a);
  Representation y = load_module(n, a);
  ExtSpace e = ext_space(k, x, y, s.max_len());
  json basis = json::array();
  for (std::size_t i = 0; i < e.dim(); ++i) basis.push_back(map_json(e.cocycle_map(e.basis().row(i))));
  r.text << "dim Ext^" << k << " = " << e.dim() << "\n";
  r.doc = {{"degree", k}, {"dim", e.dim()}, {"cocycles", basis}};
}

void resolve_cmd(const Session& s, std::size_t bound, const std::string& alg, const std::string& m, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  Resolution res = min_resolution(load_module(m, a), bound);
  json terms = json::array();
  for (std::size_t k = 0; k < res.terms.size(); ++k) {
    terms.push_back(tops_json(*a, res.terms[k]));
    r.text << "P" << k << " = " << res.terms[k].rep.dim_vector() << "\n";
  }
  json diffs = json::array();
  for (const auto& d : res.differentials) diffs.push_back(map_json(d));
  r.text << "projective dimension " << res.length() << "\n";
  r.doc = {{"proj_dim", res.length()}, {"terms", terms}, {"differentials", diffs}};
}

void gldim(const Session& s, const std::string& alg, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  auto g = global_dimension(a, s.max_len());
  if (!g) throw BoundExceeded("global dimension exceeds " + std::to_string(s.max_len()));
  json pds = json::object();
  for (std::size_t v = 0; v < a->vertex_count(); ++v) pds[a->vertices[v]] = *proj_dim(simple(a, v), s.max_len());
  r.text << "gldim " << *g << "\n";
  r.doc = {{"gldim", *g}, {"simple_proj_dims", pds}};
}

void tilting_check(const Session& s, const std::string& alg, const std::vector<std::string>& ts, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  TiltingCertificate c = tilting_module_check(s.module_sum(a, ts), s.max_len(), s.seed());
  r.ok = c.passed();
  r.text << (c.passed() ? "tilting" : "not tilting") << "\n";
  for (const auto& f : c.failures()) r.text << "  " << f << "\n";
  if (c.approximation_injective) {
    r.text << "T0 " << c.sequence.middle.dim_vector() << "  T1 " << c.sequence.right.dim_vector() << "\n";
  }
  r.doc = {{"certificate", certificate_json(c)}};
}

void bongartz(const Session& s, const std::string& alg, const std::string& m, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  BongartzComplement b = bongartz_complement(load_module(m, a), s.max_len(), s.seed());
  Decomposition d = decompose(b.complement, s.seed());
  r.ok = b.certificate.passed();
  r.text << "complement " << b.complement.dim_vector() << " with multiplicity " << b.extension.multiplicity << "\n";
  r.text << "N + M " << (r.ok ? "is tilting" : "is not tilting") << "\n";
  r.doc = {{"complement", module_json(b.complement)},
           {"multiplicity", b.extension.multiplicity},
           {"decomposition", decomposition_json(d)},
           {"certificate", certificate_json(b.certificate)}};
}

json tilting_object_json(const TiltingObject& t) {
  return {{"complex", complex_json(t.complex)},
          {"new_part", complex_json(t.new_part)},
          {"exceptional", t.exceptional},
          {"unseen_simples", t.unseen_simples},
          {"certified", t.certified()}};
}

void construct(const Session& s, const std::string& alg, const std::string& m1, const std::string& m2, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  PerfectComplex t1 = resolve_to_complex(load_module(m1, a), s.max_len());
  PerfectComplex t2 = resolve_to_complex(load_module(m2, a), s.max_len());
  ExceptionalPair pair = check_A1_A2(t1, t2);
  r.doc = {{"pair_valid", pair.valid()},
           {"t1_exceptional", pair.t1_exceptional},
           {"t2_exceptional", pair.t2_exceptional},
           {"a1_violations", violations_json(pair.a1_violations)},
           {"a2_violations", violations_json(pair.a2_violations)}};
  if (!pair.valid()) {
    r.ok = false;
    r.text << "not an exceptional pair\n";
    return;
  }
  ConstructedTilting c = construct_tilting(pair, s.max_len());
  r.ok = c.c1_t2.certified() && c.t1_c2.certified();
  r.text << "multiplicity " << c.multiplicity << "\n";
  r.text << "C1 + T2 " << (c.c1_t2.certified() ? "tilting" : "not tilting") << "\n";
  r.text << "T1 + C2 " << (c.t1_c2.certified() ? "tilting" : "not tilting") << "\n";
  r.doc["multiplicity"] = c.multiplicity;
  r.doc["left_universal"] = c.alpha.universal;
  r.doc["right_universal"] = c.beta.universal;
  r.doc["c1_t2"] = tilting_object_json(c.c1_t2);
  r.doc["t1_c2"] = tilting_object_json(c.t1_c2);
}

void reflect(const Session& s, const std::string& alg, const std::string& t, const std::string& m, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  PerfectComplex t1 = resolve_to_complex(load_module(t, a), s.max_len());
  Representation x = m.empty() ? regular_module(a).rep : load_module(m, a);
  Reflection q = reflection_iterative(t1, resolve_to_complex(x, s.max_len()), s.max_steps());
  json mult = json::object();
  for (const auto& [n, k] : q.multiplicities) mult[std::to_string(n)] = k;
  r.text << "steps " << q.steps << "\n";
  for (int n : cohomology_support(q.object)) r.text << "H^" << n << " " << cohomology(q.object, n).dim_vector() << "\n";
  r.doc = {{"steps", q.steps}, {"multiplicities", mult}, {"object", complex_json(q.object)}};
}

json localization_json(const LocalizationReport& l, const MatrixRingEvidence& ev) {
  json lambda = json::array();
  for (const auto& m : l.lambda) lambda.push_back(matrix_json(m));
  return {{"module", module_json(l.module)},
          {"decomposition", decomposition_json(l.decomposition)},
          {"trace", dims_json(l.trace.module)},
          {"eta", map_json(l.eta)},
          {"ring_dim", l.ring.dim()},
          {"lambda", lambda},
          {"lambda_multiplicative", l.lambda_multiplicative},
          {"lambda_unital", l.lambda_unital},
          {"reflection_agrees", l.reflection_agrees ? json(*l.reflection_agrees) : json(nullptr)},
          {"idempotents", ev.idempotents.size()},
          {"orthogonal", ev.orthogonal},
          {"primitive", ev.primitive},
          {"simple_scan", ev.simple_scan}};
}

LocalizationReport localization_of(const Session& s, const AlgebraPtr& a, const std::vector<std::string>& ts) {
  TiltingCertificate c = tilting_module_check(s.module_sum(a, ts), s.max_len(), s.seed());
  if (!c.sequence_ok()) throw PreconditionError("localize: no sequence 0 -> A -> T0 -> T1 -> 0 in add T");
  return universal_localization(c.sequence, s.max_len(), s.max_steps(), s.seed());
}

void localize(const Session& s, const std::string& alg, const std::vector<std::string>& ts, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  LocalizationReport l = localization_of(s, a, ts);
  MatrixRingEvidence ev = matrix_ring_evidence(l);
  r.ok = l.lambda_multiplicative && l.lambda_unital;
  r.text << "R_U " << l.module.dim_vector() << "  ring dim " << l.ring.dim() << "\n";
  for (const auto& c : l.decomposition.classes) r.text << "  " << c.module.dim_vector() << " x" << c.multiplicity << "\n";
  r.doc = localization_json(l, ev);
}

json homepi_json(const HomologicalEpiVerdict& v) {
  return {{"homological", v.homological()},
          {"ext_dims", v.ext_dims},
          {"tor_dims", v.tor_dims},
          {"ext_vanishes", v.ext_vanishes},
          {"tor_vanishes", v.tor_vanishes}};
}

void homepi(const Session& s, const std::string& alg, const std::vector<std::string>& ts, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  LocalizationReport l = localization_of(s, a, ts);
  HomologicalEpiVerdict v = homological_epi_check(l, 6, s.max_len());
  r.ok = v.homological();
  r.text << "homological epimorphism: " << yes_no(v.homological()) << "\n";
  r.text << "Ext^i(R_U, R_U), i = 1.. : " << dims_text(v.ext_dims) << "\n";
  r.text << "Tor_i(S, S), i = 1.. : " << dims_text(v.tor_dims) << "\n";
  r.doc = homepi_json(v);
}

void stratify(const Session& s, const std::string& alg, const std::vector<std::string>& names, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  std::vector<std::size_t> verts;
  for (const auto& n : names) verts.push_back(a->vertex(n));
  StratifyingVerdict v = stratifying_ideal_check(a, verts, s.max_len());
  r.ok = v.stratifying();
  r.text << "stratifying: " << yes_no(v.stratifying()) << "\n";
  r.text << "dim Ae (x) eA = " << v.tensor_dim << ", dim AeA = " << v.ideal_dim << "\n";
  r.doc = {{"stratifying", v.stratifying()},
           {"vertices", names},
           {"tensor_dim", v.tensor_dim},
           {"ideal_dim", v.ideal_dim},
           {"tor_dims", v.tor_dims},
           {"resolution_complete", v.resolution_complete}};
}

void recollement(const Session& s, const std::string& alg, const std::vector<std::string>& ts, Report& r) {
  AlgebraPtr a = s.algebra(alg);
  RecollementReport rep = recollement_report(s.module_sum(a, ts), s.max_len(), s.max_steps(), s.seed());
  MatrixRingEvidence ev = matrix_ring_evidence(rep.localization);
  r.ok = rep.orthogonal();
  r.text << "T1 " << rep.certificate.sequence.right.dim_vector() << "  T0 " << rep.certificate.sequence.middle.dim_vector()
         << "\n";
  r.text << "T2 exceptional: " << yes_no(rep.t2_exceptional) << "\n";
  r.text << "R_U " << rep.localization.module.dim_vector() << "\n";
  r.text << "homological epimorphism: " << yes_no(rep.homological_epi.homological()) << "\n";
  r.doc = {{"certificate", certificate_json(rep.certificate)},
           {"t2", complex_json(rep.y_object.object)},
           {"t2_exceptional", rep.t2_exceptional},
           {"t2_matches_localization",
            rep.t2_matches_localization ? json(*rep.t2_matches_localization) : json(nullptr)},
           {"orthogonality_violations", violations_json(rep.orthogonality_violations)},
           {"hom_t1_t0_vanishes", rep.hom_t1_t0_vanishes},
           {"equivalent_to_localization_sum",
            rep.equivalent_to_localization_sum ? json(*rep.equivalent_to_localization_sum) : json(nullptr)},
           {"localization", localization_json(rep.localization, ev)},
           {"homological_epi", homepi_json(rep.homological_epi)}};
}

/// Named checks of an end-to-end example run.
class Checklist {
 public:
  explicit Checklist(Report& r) : r_(r) { r_.doc["checks"] = json::array(); }

  void check(const std::string& name, bool passed, json witness = nullptr) {
    r_.ok = r_.ok && passed;
    r_.text << (passed ? "PASS " : "FAIL ") << name << "\n";
    r_.doc["checks"].push_back({{"name", name}, {"passed", passed}, {"witness", std::move(witness)}});
  }

 private:
  Report& r_;
};

bool h0_classes_are(const PerfectComplex& x, const std::vector<Representation>& expected, std::uint64_t seed) {
  auto support = cohomology_support(x);
  if (support != std::vector<int>{0}) return false;
  std::vector<std::pair<Representation, std::size_t>> want;
  for (const auto& e : expected) want.push_back({e, 1});
  return decomposition_matches(decompose(cohomology(x, 0), seed), want, seed);
}

void verify_cycle2(const Session& s, Report& r) {
  AlgebraPtr a = s.algebra(s.fixture("cycle2.alg"));
  Checklist c(r);
  const std::size_t v1 = a->vertex("1");
  const std::size_t v2 = a->vertex("2");
  Representation p2 = projective(a, v2);
  Representation s2 = simple(a, v2);
  Representation i1 = injective(a, v1);
  Representation i2 = injective(a, v2);
  c.check("algebra dimension 5", a->dim() == 5, a->dim());

  TiltingCertificate cert = tilting_module_check(direct_sum_module({p2, s2}), s.max_len(), s.seed());
  bool seq = cert.passed() && is_isomorphic(cert.sequence.middle, power(p2, 2), s.seed()) &&
             is_isomorphic(cert.sequence.right, s2, s.seed());
  c.check("P2 + S2 tilting with 0 -> A -> P2^2 -> S2 -> 0", seq, certificate_json(cert));

  PerpVerdict in = perp_membership({s2}, i1, s.max_len());
  PerpVerdict out = perp_membership({s2}, p2, s.max_len());
  c.check("I1 in the perpendicular category of S2", in.member);
  c.check("P2 not in the perpendicular category of S2", !out.member);

  LocalizationReport l = universal_localization(cert.sequence, s.max_len(), s.max_steps(), s.seed());
  MatrixRingEvidence ev = matrix_ring_evidence(l);
  c.check("R_U = I1^2", decomposition_matches(l.decomposition, {{i1, 2}}, s.seed()), decomposition_json(l.decomposition));
  c.check("End(R_U) is a 2x2 matrix ring",
          l.ring.dim() == 4 && ev.idempotents.size() == 2 && ev.orthogonal && ev.primitive && ev.simple_scan,
          localization_json(l, ev));

  HomologicalEpiVerdict hv = homological_epi_check(l, 6, s.max_len());
  c.check("homological epimorphism", hv.homological() && hv.ext_dims.size() == 6, homepi_json(hv));

  ExtSpace e = ext_space(1, i1, s2, s.max_len());
  c.check("dim Ext^1(I1, S2) = 1", e.dim() == 1, e.dim());
  if (e.dim() == 1) {
    ShortExactSequence ses = realize_extension(e, e.basis().row(0));
    c.check("extension middle term is I2 = P2",
            ses.is_exact() && is_isomorphic(ses.middle, i2, s.seed()) && is_isomorphic(i2, p2, s.seed()),
            module_json(ses.middle));
  }

  ExceptionalPair pair = check_A1_A2(resolve_to_complex(s2, s.max_len()), resolve_to_complex(i1, s.max_len()));
  c.check("(S2, I1) exceptional pair", pair.valid());
  if (pair.valid()) {
    ConstructedTilting ct = construct_tilting(pair, s.max_len());
    c.check("C1 + T2 is tilting with H^0 = I2 + I1",
            ct.c1_t2.certified() && h0_classes_are(ct.c1_t2.complex, {i2, i1}, s.seed()), tilting_object_json(ct.c1_t2));
  }
}

void verify_triple3(const Session& s, Report& r) {
  AlgebraPtr a = s.algebra(s.fixture("triple3.alg"));
  Checklist c(r);
  const std::size_t v1 = a->vertex("1");
  const std::size_t v2 = a->vertex("2");
  auto g = global_dimension(a, s.max_len());
  c.check("global dimension 4", g && *g == 4, g ? json(*g) : json(nullptr));

  Representation p1 = projective(a, v1);
  Representation p2 = projective(a, v2);
  Representation s1 = simple(a, v1);
  Representation reg = regular_module(a).rep;
  AddApproximation ap = left_add_approximation(reg, direct_sum_module({p1, p2, s1}), s.seed());
  Quotient q = cokernel(ap.map);
  bool t0 = is_isomorphic(ap.map.target, direct_sum_module({p1, p2, p2}), s.seed());
  c.check("approximation T0 = P1 + P2^2, T1 of dimension (1,1,0)",
          ap.map.is_injective() && t0 && q.module.dims == std::vector<std::size_t>{1, 1, 0},
          {{"t0", module_json(ap.map.target)}, {"t1", module_json(q.module)}});

  ShortExactSequence seq{reg, ap.map.target, q.module, ap.map, q.projection};
  LocalizationReport l = universal_localization(seq, s.max_len(), s.max_steps(), s.seed());
  Representation top2 = cokernel(socle(p2).inclusion).module;
  c.check("R_U = S1 + (P2/S2)^2", decomposition_matches(l.decomposition, {{s1, 1}, {top2, 2}}, s.seed()),
          decomposition_json(l.decomposition));

  HomologicalEpiVerdict hv = homological_epi_check(l, 6, s.max_len());
  const std::size_t e1 = hv.ext_dims.empty() ? 0 : hv.ext_dims.front();
  c.check("dim Ext^1(R_U, R_U) >= 1", e1 >= 1, homepi_json(hv));
  c.check("not a homological epimorphism", !hv.homological(), homepi_json(hv));
}

void verify_a2(const Session& s, Report& r) {
  AlgebraPtr a = s.algebra(s.fixture("a2.alg"));
  Checklist c(r);
  const std::size_t v1 = a->vertex("1");
  Representation s1 = simple(a, v1);
  Representation p1 = projective(a, v1);
  BongartzComplement b = bongartz_complement(s1, s.max_len(), s.seed());
  Decomposition d = decompose(b.complement, s.seed());
  c.check("Bongartz complement of S1 is P1^2", decomposition_matches(d, {{p1, 2}}, s.seed()), decomposition_json(d));
  TiltingCertificate cert = tilting_module_check(direct_sum_module({s1, p1}), s.max_len(), s.seed());
  c.check("S1 + P1 tilting", cert.passed(), certificate_json(cert));
}

void verify_example(const Session& s, const std::string& name, Report& r) {
  r.doc["example"] = name;
  if (name == "cycle2") {
    verify_cycle2(s, r);
  } else if (name == "triple3") {
    verify_triple3(s, r);
  } else if (name == "a2-bongartz") {
    verify_a2(s, r);
  } else {
    throw InputError("unknown example '" + name + "' (expected cycle2, triple3 or a2-bongartz)");
  }
  r.text << (r.ok ? "PASS" : "FAIL") << " " << name << "\n";
}

void write_json(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tilting modules, exceptional pairs and recollements of finite-dimensional algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--field", opt.field, "override the field of the algebra file (Q or GF(p))");
  app.add_option("--max-resolution", opt.max_resolution, "bound on projective resolution length")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", opt.max_steps, "bound on reflection steps")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for randomized searches");
  app.add_option("--json", opt.json_path, "write the machine report to this file");
  app.add_option("--fixtures", opt.fixtures, "fixture directory for verify-example");

  std::string alg;
  std::string m;
  std::string n;
  std::vector<std::string> ts;
  std::vector<std::string> verts;
  std::size_t k = 1;
  std::size_t bound = default_resolution_bound;
  std::string example;
  std::function<void(const Session&, Report&)> run;

  auto* c_info = app.add_subcommand("info", "basis and indecomposable projectives, injectives and simples");
  c_info->add_option("algebra", alg)->required();
  c_info->callback([&] { run = [&](const Session& s, Report& r) { info(s, alg, r); }; });

  auto* c_hom = app.add_subcommand("hom", "Hom(M, N)");
  c_hom->add_option("algebra", alg)->required();
  c_hom->add_option("M", m)->required();
  c_hom->add_option("N", n)->required();
  c_hom->callback([&] { run = [&](const Session& s, Report& r) { hom(s, alg, m, n, r); }; });

  auto* c_ext = app.add_subcommand("ext", "Ext^k(M, N)");
  c_ext->add_option("-k", k, "degree")->required();
  c_ext->add_option("algebra", alg)->required();
  c_ext->add_option("M", m)->required();
  c_ext->add_option("N", n)->required();
  c_ext->callback([&] { run = [&](const Session& s, Report& r) { ext(s, k, alg, m, n, r); }; });

  auto* c_res = app.add_subcommand("resolve", "minimal projective resolution");
  c_res->add_option("--max", bound, "maximal length");
  c_res->add_option("algebra", alg)->required();
  c_res->add_option("M", m)->required();
  c_res->callback([&] { run = [&](const Session& s, Report& r) { resolve_cmd(s, bound, alg, m, r); }; });

  auto* c_gl = app.add_subcommand("gldim", "global dimension");
  c_gl->add_option("algebra", alg)->required();
  c_gl->callback([&] { run = [&](const Session& s, Report& r) { gldim(s, alg, r); }; });

  auto* c_tc = app.add_subcommand("tilting-check", "certify the direct sum of the modules as a tilting module");
  c_tc->add_option("algebra", alg)->required();
  c_tc->add_option("T", ts)->required();
  c_tc->callback([&] { run = [&](const Session& s, Report& r) { tilting_check(s, alg, ts, r); }; });

  auto* c_bg = app.add_subcommand("bongartz", "Bongartz complement");
  c_bg->add_option("algebra", alg)->required();
  c_bg->add_option("M", m)->required();
  c_bg->callback([&] { run = [&](const Session& s, Report& r) { bongartz(s, alg, m, r); }; });

  auto* c_ct = app.add_subcommand("construct-tilting", "tilting objects from an exceptional pair");
  c_ct->add_option("algebra", alg)->required();
  c_ct->add_option("T1", m)->required();
  c_ct->add_option("T2", n)->required();
  c_ct->callback([&] { run = [&](const Session& s, Report& r) { construct(s, alg, m, n, r); }; });

  auto* c_rf = app.add_subcommand("reflect", "reflection into the perpendicular category of T1");
  c_rf->add_option("algebra", alg)->required();
  c_rf->add_option("T1", m)->required();
  c_rf->add_option("M", n, "module to reflect (default: the regular module)");
  c_rf->add_option("--max-steps", opt.max_steps, "bound on reflection steps")->check(CLI::PositiveNumber);
  c_rf->callback([&] { run = [&](const Session& s, Report& r) { reflect(s, alg, m, n, r); }; });

  auto* c_lc = app.add_subcommand("localize", "universal localization at the tilting sequence");
  c_lc->add_option("algebra", alg)->required();
  c_lc->add_option("T", ts)->required();
  c_lc->callback([&] { run = [&](const Session& s, Report& r) { localize(s, alg, ts, r); }; });

  auto* c_he = app.add_subcommand("homepi", "homological epimorphism test for the localization");
  c_he->add_option("algebra", alg)->required();
  c_he->add_option("T", ts)->required();
  c_he->callback([&] { run = [&](const Session& s, Report& r) { homepi(s, alg, ts, r); }; });

  auto* c_st = app.add_subcommand("stratify", "stratifying ideal test for AeA");
  c_st->add_option("algebra", alg)->required();
  c_st->add_option("--vertices", verts, "vertices of e")->required();
  c_st->callback([&] { run = [&](const Session& s, Report& r) { stratify(s, alg, verts, r); }; });

  auto* c_rc = app.add_subcommand("recollement", "recollement data of a tilting module");
  c_rc->add_option("algebra", alg)->required();
  c_rc->add_option("T", ts)->required();
  c_rc->callback([&] { run = [&](const Session& s, Report& r) { recollement(s, alg, ts, r); }; });

  auto* c_ve = app.add_subcommand("verify-example", "end-to-end checks of a bundled example");
  c_ve->add_option("name", example, "cycle2, triple3 or a2-bongartz")->required();
  c_ve->callback([&] { run = [&](const Session& s, Report& r) { verify_example(s, example, r); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  Report report;
  const std::string verb = app.get_subcommands().front()->get_name();
  int code = 0;
  try {
    Session session(opt);
    run(session, report);
    code = report.ok ? 0 : exit_failed;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    report.doc = {{"error", "input"}, {"message", e.what()}};
    code = exit_input;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    report.doc = {{"error", "precondition"}, {"message", e.what()}};
    code = exit_input;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    report.doc = {{"error", "bound"}, {"message", e.what()}};
    code = exit_bound;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    report.doc = {{"error", "internal"}, {"message", e.what()}};
    code = exit_internal;
  }
  std::cout << report.text.str();

  json doc = {{"verb", verb}, {"ok", code == 0}, {"exit_code", code}, {"seed", opt.seed}};
  for (auto& [key, value] : report.doc.items()) doc[key] = value;
  try {
    write_json(opt.json_path, doc);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  }
  return code;
}
