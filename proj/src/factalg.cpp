#include "vfa/factalg.hpp"
#include "vfa/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace vfa {

// ---------------------------------------------------------------------------
// Tensor
// ---------------------------------------------------------------------------

Tensor Tensor::scalar(const Scalar& c, Weight truncation) {
  Tensor t(0, truncation);
  t.add_term({}, c);
  return t;
}

Tensor Tensor::simple(const std::vector<GradedElement>& factors, Weight truncation) {
  Tensor t(factors.size(), truncation);
  t.add_simple(factors, Scalar(1));
  return t;
}

void Tensor::add_term(const Key& key, const Scalar& c) {
  if (key.size() != arity_) throw Error("tensor key arity mismatch");
  if (c.is_zero()) return;
  Weight total = 0;
  for (const auto& m : key) total += m.weight();
  if (total > truncation_) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Tensor::add_simple(const std::vector<GradedElement>& factors, const Scalar& c) {
  if (factors.size() != arity_) throw Error("tensor factor count mismatch");
  if (c.is_zero()) return;
  for (const auto& f : factors)
    if (f.is_zero()) return;
  Key key(arity_);
  auto rec = [&](auto&& self, std::size_t i, Weight used, const Scalar& acc) -> void {
    if (i == arity_) {
      add_term(key, acc);
      return;
    }
    for (const auto& [w, lc] : factors[i].components()) {
      if (used + w > truncation_) break;
      for (const auto& [m, x] : lc) {
        key[i] = m;
        self(self, i + 1, used + w, acc * x);
      }
    }
  };
  rec(rec, 0, 0, c);
}

Tensor Tensor::operator+(const Tensor& o) const {
  if (o.arity_ != arity_ || o.truncation_ != truncation_) throw Error("adding tensors of different shape");
  Tensor out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k, c);
  return out;
}

Tensor Tensor::scaled(const Scalar& c) const {
  Tensor out(arity_, truncation_);
  for (const auto& [k, x] : terms_) out.add_term(k, x * c);
  return out;
}

Tensor Tensor::concat(const Tensor& o) const {
  if (o.truncation_ != truncation_) throw Error("tensor truncation mismatch");
  Tensor out(arity_ + o.arity_, truncation_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      Key k = k1;
      k.insert(k.end(), k2.begin(), k2.end());
      out.add_term(k, c1 * c2);
    }
  return out;
}

Tensor Tensor::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != arity_) throw Error("permutation size mismatch");
  Tensor out(arity_, truncation_);
  for (const auto& [k, c] : terms_) {
    Key pk(arity_);
    for (std::size_t i = 0; i < arity_; ++i) pk[i] = k[perm[i]];
    out.add_term(pk, c);
  }
  return out;
}

std::string Tensor::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += c.str();
    for (const auto& m : k) out += (&m == &k.front() ? " * " : " (x) ") + m.str(names);
  }
  return out;
}

// ---------------------------------------------------------------------------
// TensorSection
// ---------------------------------------------------------------------------

TensorSection TensorSection::from_tensor(PresentationPtr P, const BasisElement& L, const Tensor& t) {
  if (t.arity() != L.size()) throw Error("section needs one tensor factor per disk");
  if (t.truncation() != P->max_weight()) throw Error("section truncation must match the presentation");
  std::vector<std::size_t> perm(L.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return disk_less(L[a], L[b]); });
  std::vector<Disk> disks;
  for (std::size_t i : perm) disks.push_back(L[i]);
  return TensorSection(std::move(P), BasisElement(std::move(disks)), t.permuted(perm));
}

TensorSection TensorSection::simple(PresentationPtr P, const BasisElement& L,
                                    const std::vector<GradedElement>& factors) {
  if (factors.size() != L.size()) throw Error("section needs one factor per disk");
  std::vector<GradedElement> reduced;
  for (const auto& f : factors) {
    P->check(f);
    reduced.push_back(P->reduce(f));
  }
  Weight W = P->max_weight();
  return from_tensor(P, L, Tensor::simple(reduced, W));
}

TensorSection TensorSection::unit(PresentationPtr P) {
  Weight W = P->max_weight();
  return TensorSection(std::move(P), BasisElement{}, Tensor::scalar(Scalar(1), W));
}

TensorSection TensorSection::operator+(const TensorSection& o) const {
  if (!(o.L_ == L_)) throw Error("adding sections over different basis elements");
  return TensorSection(P_, L_, t_ + o.t_);
}

TensorSection TensorSection::scaled(const Scalar& c) const { return TensorSection(P_, L_, t_.scaled(c)); }

std::string TensorSection::str() const { return "[" + L_.str() + "] " + t_.str(P_->generators()); }

// ---------------------------------------------------------------------------
// Structure maps
// ---------------------------------------------------------------------------

namespace {

Tensor collapse(const Tensor& t, const std::vector<std::vector<std::size_t>>& parts, const AlgebraPresentation& P) {
  Weight W = t.truncation();
  Tensor out(parts.size(), W);
  std::vector<GradedElement> factors(parts.size(), GradedElement(W));
  for (const auto& [key, c] : t.terms()) {
    bool vanished = false;
    for (std::size_t j = 0; j < parts.size() && !vanished; ++j) {
      JetMonomial m;
      for (std::size_t i : parts[j]) m = m * key[i];
      factors[j] = P.reduce(GradedElement::monomial(m, Scalar(1), W));
      vanished = factors[j].is_zero();
    }
    if (!vanished) out.add_simple(factors, c);
  }
  return out;
}

}  // namespace

TensorSection corestrict(const TensorSection& s, const BasisElement& M) {
  auto parts = decompose(s.basis(), M);
  return TensorSection::from_tensor(s.presentation(), M, collapse(s.tensor(), parts, *s.presentation()));
}

TensorSection corestrict(const TensorSection& s, const BasisElement& L, const BasisElement& M) {
  std::vector<Disk> sorted = L.disks();
  std::stable_sort(sorted.begin(), sorted.end(), disk_less);
  if (!(BasisElement(std::move(sorted)) == s.basis()))
    throw Error("section does not live on " + L.str());
  return corestrict(s, M);
}

TensorSection multiply_sections(const TensorSection& s, const TensorSection& t, const BasisElement& N,
                                const StructureMap& structure) {
  if (!s.basis().disjoint_from(t.basis()))
    throw Error("cannot multiply sections on overlapping " + s.basis().str() + " and " + t.basis().str());
  TensorSection joined =
      TensorSection::from_tensor(s.presentation(), s.basis().disjoint_union(t.basis()), s.tensor().concat(t.tensor()));
  return structure ? structure(joined, N) : corestrict(joined, N);
}

// ---------------------------------------------------------------------------
// Supported opens
// ---------------------------------------------------------------------------

SupportedOpen::SupportedOpen(std::vector<DiskUnion> regions) : regions_(std::move(regions)) {
  for (std::size_t r = 0; r < regions_.size(); ++r) {
    if (regions_[r].empty()) throw Error("region " + std::to_string(r) + " is empty");
    if (connected_components(regions_[r]).size() != 1)
      throw Error("region " + std::to_string(r) + " is not connected");
    for (std::size_t s = r + 1; s < regions_.size(); ++s)
      for (const auto& a : regions_[r])
        for (const auto& b : regions_[s])
          if (!disjoint(a, b))
            throw Error("regions " + std::to_string(r) + " and " + std::to_string(s) + " overlap");
  }
}

DiskUnion SupportedOpen::all_disks() const {
  DiskUnion out;
  for (const auto& r : regions_) out.insert(out.end(), r.begin(), r.end());
  return out;
}

OpenEvaluation evaluate(PresentationPtr P, const SupportedOpen& U) {
  OpenEvaluation ev;
  ev.region_count = U.region_count();
  ev.push = [P, U](const TensorSection& s) {
    std::vector<std::vector<std::size_t>> parts(U.region_count());
    for (std::size_t i = 0; i < s.basis().size(); ++i) {
      const Disk& d = s.basis()[i];
      std::size_t r = 0;
      while (r < U.region_count() &&
             std::none_of(U.regions()[r].begin(), U.regions()[r].end(),
                          [&](const Disk& o) { return contains(d, o); }))
        ++r;
      if (r == U.region_count()) throw Error("disk " + d.str() + " does not lie in any region");
      parts[r].push_back(i);
    }
    return collapse(s.tensor(), parts, *P);
  };
  return ev;
}

GradedElement mu_l(const AlgebraPresentation& P, const std::vector<GradedElement>& elements) {
  GradedElement out = P.one();
  for (const auto& e : elements) out = multiply(out, e, P);
  return out;
}

GradedElement mu_l_placed(PresentationPtr P, const std::vector<GradedElement>& elements,
                          const BasisElement& placement, const Disk& outer) {
  TensorSection s = TensorSection::simple(P, placement, elements);
  TensorSection r = corestrict(s, BasisElement({outer}));
  GradedElement out(P->max_weight());
  for (const auto& [k, c] : r.tensor().terms()) out.add_term(k[0], c);
  return out;
}

TensorSection equivariant_act(const GroupElement& g, const TensorSection& s) {
  const auto& P = *s.presentation();
  Weight W = P.max_weight();
  std::map<JetMonomial, GradedElement> cache;
  auto image = [&](const JetMonomial& m) -> const GradedElement& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    GradedElement e = completion_rotation(g.q(), GradedElement::monomial(m, Scalar(1), W));
    return cache.emplace(m, completion_translation(g.z(), e, P)).first->second;
  };
  Tensor out(s.tensor().arity(), W);
  std::vector<GradedElement> factors(s.tensor().arity(), GradedElement(W));
  for (const auto& [key, c] : s.tensor().terms()) {
    for (std::size_t i = 0; i < key.size(); ++i) factors[i] = image(key[i]);
    out.add_simple(factors, c);
  }
  return TensorSection::from_tensor(s.presentation(), act(g, s.basis()), out);
}

// ---------------------------------------------------------------------------
// Morphisms and the adjunction
// ---------------------------------------------------------------------------

TensorSection FAMorphism::apply(const TensorSection& s) const {
  if (s.presentation() != f_.source() && s.presentation()->generators() != f_.source()->generators())
    throw Error("section does not live over the morphism's source");
  Weight W = f_.target()->max_weight();
  Tensor out(s.tensor().arity(), W);
  std::map<JetMonomial, GradedElement> cache;
  std::vector<GradedElement> factors(s.tensor().arity(), GradedElement(W));
  for (const auto& [key, c] : s.tensor().terms()) {
    for (std::size_t i = 0; i < key.size(); ++i) {
      auto it = cache.find(key[i]);
      if (it == cache.end()) it = cache.emplace(key[i], f_.apply(key[i])).first;
      factors[i] = it->second;
    }
    out.add_simple(factors, c);
  }
  return TensorSection::from_tensor(f_.target(), s.basis(), out);
}

PfaMorphism as_pfa_morphism(const FAMorphism& f) {
  return {f.hom().source(), f.hom().target(), [f](const TensorSection& s) { return f.apply(s); }};
}

PfaMorphism identity_morphism(PresentationPtr P) {
  return {P, P, [](const TensorSection& s) { return s; }};
}

namespace {

GradedElement single_factor(const TensorSection& s) {
  if (s.factor_count() != 1) throw Error("expected a section on a single disk");
  GradedElement out(s.presentation()->max_weight());
  for (const auto& [k, c] : s.tensor().terms()) out.add_term(k[0], c);
  return out;
}

}  // namespace

AlgebraHom adjunction_theta(const PfaMorphism& phi, const Disk& disk) {
  const auto& A = *phi.source;
  BasisElement D({disk});
  BasisElement plane({Disk::plane()});
  std::map<JetVar, GradedElement> images;
  for (std::uint32_t g = 0; g < A.generators().size(); ++g)
    for (std::uint32_t m = 0; static_cast<Weight>(m) + 1 <= A.max_weight(); ++m) {
      TensorSection s = TensorSection::simple(phi.source, D, {A.var(g, m)});
      images.emplace(JetVar{g, m}, single_factor(corestrict(phi.component(s), plane)));
    }
  return AlgebraHom(phi.source, phi.target, std::move(images));
}

PfaMorphism adjunction_theta_prime(const AlgebraHom& f) {
  auto source = f.source();
  auto target = f.target();
  return {source, target, [f, target](const TensorSection& s) {
            // (F^{D_i}_C)^{-1}: the disk-to-plane map of F^loc_B is the
            // identity on B, so each factor is f(a_i) unchanged; the outer
            // map F^L_L is the identity.
            Weight W = target->max_weight();
            Tensor out(s.tensor().arity(), W);
            std::vector<GradedElement> factors(s.tensor().arity(), GradedElement(W));
            for (const auto& [key, c] : s.tensor().terms()) {
              for (std::size_t i = 0; i < key.size(); ++i) {
                GradedElement image = f.apply(key[i]);
                TensorSection on_plane = corestrict(
                    TensorSection::simple(target, BasisElement({s.basis()[i]}), {image}),
                    BasisElement({Disk::plane()}));
                factors[i] = single_factor(on_plane);
              }
              out.add_simple(factors, c);
            }
            return TensorSection::from_tensor(target, s.basis(), out);
          }};
}

AlgebraHom random_graded_hom(PresentationPtr source, PresentationPtr target, ElementSampler& sampler) {
  std::map<JetVar, GradedElement> images;
  for (std::uint32_t g = 0; g < source->generators().size(); ++g)
    for (std::uint32_t m = 0; static_cast<Weight>(m) + 1 <= source->max_weight(); ++m)
      images.emplace(JetVar{g, m}, sampler.homogeneous(static_cast<Weight>(m) + 1));
  return AlgebraHom(std::move(source), std::move(target), std::move(images));
}

// ---------------------------------------------------------------------------
// Configuration sampling
// ---------------------------------------------------------------------------

Rational ConfigurationSampler::small_rational(long range) {
  long num = static_cast<long>(draw(static_cast<std::uint64_t>(2 * range + 1))) - range;
  long den = 1 + static_cast<long>(draw(3));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<Disk> ConfigurationSampler::inside(const Disk& outer, std::size_t max_count) {
  return inside_exact(outer, 1 + draw(max_count));
}

std::vector<Disk> ConfigurationSampler::inside_exact(const Disk& outer, std::size_t k) {
  static const std::vector<Scalar> units = pythagorean_units();
  static const std::vector<Rational> shrink = {Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(9, 10)};
  Rational R = outer.radius.is_infinite() ? Rational(8) : outer.radius.value();
  const Scalar& u = units[draw(units.size())];
  Rational s = shrink[draw(shrink.size())];
  Rational rho = R * s / Rational(static_cast<long>(k));
  std::vector<Disk> out;
  for (std::size_t j = 0; j < k; ++j) {
    Rational t = Rational(-1) + Rational(static_cast<long>(2 * j + 1), static_cast<long>(k));
    out.emplace_back(outer.center + u * Scalar(R * t), Radius(rho));
  }
  return out;
}

std::vector<Disk> ConfigurationSampler::scattered(const Disk& outer, std::size_t k) {
  Rational R = outer.radius.is_infinite() ? Rational(8) : outer.radius.value();
  std::vector<Disk> out;
  for (std::size_t attempt = 0; out.size() < k; ++attempt) {
    if (attempt > 10000) throw Error("could not scatter " + std::to_string(k) + " disks");
    Rational rho = R * Rational(static_cast<long>(1 + draw(3)), 16);
    Scalar offset(R * Rational(static_cast<long>(draw(15)) - 7, 8), R * Rational(static_cast<long>(draw(15)) - 7, 8));
    Disk d(outer.center + offset, Radius(rho));
    if (!contains(d, outer)) continue;
    if (std::all_of(out.begin(), out.end(), [&](const Disk& e) { return disjoint(d, e); })) out.push_back(d);
  }
  return out;
}

BasisElement ConfigurationSampler::top_level(std::size_t max_count) {
  static const std::vector<Scalar> units = pythagorean_units();
  std::size_t k = 1 + draw(max_count);
  std::vector<Disk> out;
  Scalar c(small_rational(3), small_rational(3));
  for (std::size_t j = 0; j < k; ++j) {
    Rational r(static_cast<long>(1 + draw(3)));
    if (!out.empty()) {
      const Disk& prev = out.back();
      const Scalar& u = units[draw(units.size())];
      // Step far enough along u to clear every earlier disk; |re| + |im|
      // bounds the distance from prev.
      Rational step(0);
      for (const auto& d : out) {
        Scalar off = prev.center - d.center;
        Rational need = abs(off.re()) + abs(off.im()) + d.radius.value() + r;
        if (need > step) step = need;
      }
      c = prev.center + u * Scalar(step + Rational(1, 2));
    }
    out.emplace_back(c, Radius(r));
  }
  return BasisElement(std::move(out));
}

GroupElement ConfigurationSampler::group_element() {
  static const std::vector<Scalar> units = pythagorean_units();
  return GroupElement(units[draw(units.size())], Scalar(small_rational(4), small_rational(4)));
}

// ---------------------------------------------------------------------------
// Prefactorization axioms
// ---------------------------------------------------------------------------

namespace {

struct NestedConfig {
  BasisElement N, M, L;
};

NestedConfig nested(ConfigurationSampler& cs) {
  NestedConfig cfg;
  cfg.N = cs.top_level(2);
  std::vector<Disk> M, L;
  for (const auto& d : cfg.N.disks())
    for (const auto& m : cs.inside(d, 2)) {
      M.push_back(m);
      for (const auto& l : cs.inside(m, 2)) L.push_back(l);
    }
  cfg.M = BasisElement(M);
  cfg.L = BasisElement(L);
  return cfg;
}

// Homogeneous factors whose weights sum to at most `budget`, so tensor
// truncation never kills the sample outright.
std::vector<GradedElement> random_factors(ElementSampler& es, std::size_t count, Weight budget) {
  std::vector<GradedElement> out;
  for (std::size_t i = 0; i < count; ++i) {
    Weight w = es.nonempty_weight(0, budget);
    budget -= w;
    out.push_back(es.homogeneous(w));
  }
  std::shuffle(out.begin(), out.end(), es.engine());
  return out;
}

}  // namespace

Report check_pfa_axioms(PresentationPtr P, const SamplingSpec& samples, const StructureMap& structure_in) {
  StructureMap F = structure_in ? structure_in
                                : StructureMap([](const TensorSection& s, const BasisElement& M) {
                                    return corestrict(s, M);
                                  });
  Report report;
  for (const char* name :
       {"functoriality", "identity", "symmetry", "associativity", "unit", "unit_section", "disjoint_bijective",
        "equivariance_identity", "equivariance_composition", "equivariance_structure_maps",
        "equivariance_multiplication"})
    report.declare(name);

  ConfigurationSampler cs(samples.seed);
  ElementSampler es(*P, samples.seed ^ 0x9e3779b97f4a7c15ULL, samples.coefficient_range);
  Weight hi = P->max_weight();
  auto ce = [](const TensorSection& lhs, const TensorSection& rhs) {
    return [lhs, rhs] { return Json{{"lhs", lhs.str()}, {"rhs", rhs.str()}}; };
  };

  std::size_t nontrivial = 0;
  for (std::size_t n = 0; n < samples.count; ++n) {
    NestedConfig cfg = nested(cs);
    TensorSection s = TensorSection::simple(P, cfg.L, random_factors(es, cfg.L.size(), hi));

    TensorSection two_step = F(F(s, cfg.M), cfg.N);
    TensorSection direct = F(s, cfg.N);
    report.tally("functoriality", two_step == direct, ce(two_step, direct));
    if (!direct.tensor().is_zero()) ++nontrivial;
    TensorSection same = F(s, cfg.L);
    report.tally("identity", same == s, ce(same, s));

    // Split L into the disks of the first M-disk and the rest.
    auto parts = decompose(cfg.L, cfg.M);
    std::vector<Disk> first, rest;
    std::vector<GradedElement> ff, rf;
    auto fa = random_factors(es, cfg.L.size(), hi);
    for (std::size_t i = 0; i < cfg.L.size(); ++i) {
      bool in_first = std::find(parts[0].begin(), parts[0].end(), i) != parts[0].end();
      (in_first ? first : rest).push_back(cfg.L[i]);
      (in_first ? ff : rf).push_back(fa[i]);
    }
    TensorSection a = TensorSection::simple(P, BasisElement(first), ff);
    TensorSection b = TensorSection::simple(P, BasisElement(rest), rf);
    TensorSection u = TensorSection::unit(P);
    TensorSection ab = multiply_sections(a, b, cfg.N, F);
    TensorSection ba = multiply_sections(b, a, cfg.N, F);
    report.tally("symmetry", ab == ba, ce(ab, ba));

    // (a pushed into M-disk 0) * b against the one-step product of a (x) b.
    TensorSection lhs = multiply_sections(F(a, BasisElement({cfg.M[0]})), b, cfg.N, F);
    TensorSection rhs = F(TensorSection::simple(P, cfg.L, fa), cfg.N);
    report.tally("associativity", lhs == rhs, ce(lhs, rhs));

    TensorSection su = multiply_sections(s, u, cfg.N, F);
    TensorSection sn = F(s, cfg.N);
    report.tally("unit", su == sn, ce(su, sn));
    TensorSection ones = F(u, cfg.M);
    TensorSection expect_ones = TensorSection::simple(P, cfg.M, std::vector<GradedElement>(cfg.M.size(), P->one()));
    report.tally("unit_section", ones == expect_ones, ce(ones, expect_ones));

    BasisElement joint = a.basis().disjoint_union(b.basis());
    TensorSection glued = multiply_sections(a, b, joint, F);
    TensorSection concat = TensorSection::from_tensor(P, joint, a.tensor().concat(b.tensor()));
    report.tally("disjoint_bijective", glued == concat, ce(glued, concat));

    GroupElement g = cs.group_element(), h = cs.group_element();
    TensorSection id_act = equivariant_act(GroupElement(), s);
    report.tally("equivariance_identity", id_act == s, ce(id_act, s));
    TensorSection gh = equivariant_act(g * h, s);
    TensorSection g_h = equivariant_act(g, equivariant_act(h, s));
    report.tally("equivariance_composition", gh == g_h, ce(gh, g_h));
    TensorSection act_then = F(equivariant_act(g, s), act(g, cfg.M));
    TensorSection then_act = equivariant_act(g, F(s, cfg.M));
    report.tally("equivariance_structure_maps", act_then == then_act, ce(act_then, then_act));
    TensorSection m1 = equivariant_act(g, multiply_sections(a, b, cfg.N, F));
    TensorSection m2 = multiply_sections(equivariant_act(g, a), equivariant_act(g, b), act(g, cfg.N), F);
    report.tally("equivariance_multiplication", m1 == m2, ce(m1, m2));
  }
  report.record("nontrivial_samples", samples.count == 0 || nontrivial > 0,
                Json{{"nonzero", nontrivial}, {"samples", samples.count}});
  return report;
}

Report check_placement_independence(PresentationPtr P, const SamplingSpec& samples, std::size_t max_l) {
  Report report;
  report.declare("placement_independence");
  report.declare("placement_matches_product");
  ConfigurationSampler cs(samples.seed ^ 0x5bd1e995ULL);
  ElementSampler es(*P, samples.seed + 1, samples.coefficient_range);
  Weight hi = P->max_weight();
  for (std::size_t n = 0; n < samples.count; ++n) {
    std::size_t l = 1 + cs.draw(max_l);
    Disk outer(Scalar(cs.small_rational(3), cs.small_rational(3)), Radius(Rational(static_cast<long>(1 + cs.draw(4)))));
    auto elems = random_factors(es, l, hi);
    std::vector<Disk> line = cs.inside_exact(outer, l);
    for (std::size_t i = l; i > 1; --i) std::swap(line[i - 1], line[cs.draw(i)]);
    std::vector<Disk> scatter = cs.scattered(outer, l);
    GradedElement first = mu_l_placed(P, elems, BasisElement(line), outer);
    GradedElement second = mu_l_placed(P, elems, BasisElement(scatter), outer);
    GradedElement direct = mu_l(*P, elems);
    auto ce = [&] {
      return Json{{"l", l}, {"first", P->str(first)}, {"second", P->str(second)}, {"product", P->str(direct)}};
    };
    report.tally("placement_independence", first == second, ce);
    report.tally("placement_matches_product", first == direct, ce);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Coequalizer chains
// ---------------------------------------------------------------------------

Report check_coequalizer_chain(PresentationPtr P, const std::vector<Rational>& radii, Weight W) {
  Report report;
  if (radii.empty()) throw Error("coequalizer chain needs at least one radius");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i - 1] < radii[i])) throw Error("chain radii must be strictly increasing");
  if (W > P->max_weight()) throw Error("coequalizer weight exceeds the presentation bound");

  std::vector<BasisElement> disks;
  for (const auto& r : radii) disks.push_back(BasisElement({Disk(Scalar(0), Radius(r))}));
  const std::size_t k = disks.size();
  const BasisElement& top = disks.back();

  // The chain is a Weiss cover of its largest disk: probe on a grid.
  {
    std::vector<DiskUnion> cover;
    for (const auto& d : disks) cover.push_back(d.disks());
    std::vector<Scalar> grid;
    Rational R = radii.back();
    for (int x = -4; x <= 4; ++x)
      for (int y = -4; y <= 4; ++y) grid.emplace_back(R * Rational(x, 4), R * Rational(y, 4));
    auto bad = weiss_violation(cover, top.disks(), grid, 3);
    report.record("weiss_cover", !bad, Json{{"grid_points", grid.size()}});
  }

  Json dims = Json::array();
  for (Weight w = 0; w <= W; ++w) {
    auto basis = P->weight_basis(w);
    const std::size_t d = basis.size();
    auto coords = [&](const TensorSection& s) {
      std::vector<Scalar> v(d);
      for (const auto& [key, c] : s.tensor().terms())
        for (std::size_t j = 0; j < d; ++j)
          if (key[0] == basis[j]) v[j] = c;
      return v;
    };
    auto push = [&](std::size_t from, std::size_t to, std::size_t b) {
      TensorSection s = TensorSection::simple(
          P, disks[from], {GradedElement::monomial(basis[b], Scalar(1), P->max_weight())});
      return coords(corestrict(s, disks[to]));
    };

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

    // (p - q): sum over pairs of F(D_i cap D_j) -> sum_i F(D_i).
    Matrix diff(k * d, pairs.size() * d);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      std::size_t meet = std::min(i, j);  // concentric: D_i cap D_j = D_min
      for (std::size_t b = 0; b < d; ++b) {
        auto vp = push(meet, i, b);
        auto vq = push(meet, j, b);
        for (std::size_t r = 0; r < d; ++r) {
          diff(i * d + r, p * d + b) += vp[r];
          diff(j * d + r, p * d + b) -= vq[r];
        }
      }
    }
    // pi: sum_i F(D_i) -> F(D_top).
    Matrix pi(d, k * d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t b = 0; b < d; ++b) {
        auto v = push(i, k - 1, b);
        for (std::size_t r = 0; r < d; ++r) pi(r, i * d + b) = v[r];
      }

    Matrix composite = pi * diff;
    bool coequalizes = true;
    for (std::size_t r = 0; r < composite.rows(); ++r)
      for (std::size_t c = 0; c < composite.cols(); ++c) coequalizes &= composite(r, c).is_zero();
    std::size_t rank_pi = pi.rank();
    std::size_t rank_diff = diff.rank();
    bool iso = coequalizes && rank_pi == d && rank_diff == k * d - d;
    dims.push_back({{"weight", w}, {"dim", d}, {"rank_p_minus_q", rank_diff}, {"rank_pi", rank_pi}});
    report.record("weight_" + std::to_string(w), iso,
                  Json{{"dim", d}, {"cokernel_dim", k * d - rank_diff}, {"coequalizes", coequalizes}});
  }
  report.record("chain", report.all_passed(), Json{{"length", k}, {"weights", dims}});
  return report;
}

// ---------------------------------------------------------------------------
// Adjunction
// ---------------------------------------------------------------------------

Report check_adjunction(PresentationPtr source, PresentationPtr target, const SamplingSpec& samples) {
  Report report;
  for (const char* name : {"theta_identity_is_unit", "theta_of_F_f", "theta_prime_theta", "theta_theta_prime",
                           "theta_disk_independent", "naturality"})
    report.declare(name);

  {
    AlgebraHom unit = adjunction_theta(identity_morphism(source));
    std::map<JetVar, GradedElement> ids;
    for (std::uint32_t g = 0; g < source->generators().size(); ++g)
      for (std::uint32_t m = 0; static_cast<Weight>(m) + 1 <= source->max_weight(); ++m)
        ids.emplace(JetVar{g, m}, source->var(g, m));
    report.record("theta_identity_is_unit", unit == AlgebraHom(source, source, ids));
  }

  ElementSampler es(*target, samples.seed, samples.coefficient_range);
  ElementSampler src_es(*source, samples.seed + 1, samples.coefficient_range);
  ConfigurationSampler cs(samples.seed + 2);
  for (std::size_t n = 0; n < samples.count; ++n) {
    AlgebraHom f = random_graded_hom(source, target, es);
    FAMorphism Ff(f);
    PfaMorphism phi = as_pfa_morphism(Ff);

    AlgebraHom theta = adjunction_theta(phi);
    report.tally("theta_of_F_f", theta == f);
    Disk other(Scalar(cs.small_rational(5), cs.small_rational(5)), Radius(Rational(1, 1 + static_cast<long>(cs.draw(4)))));
    report.tally("theta_disk_independent", adjunction_theta(phi, other) == theta);

    PfaMorphism back = adjunction_theta_prime(theta);
    BasisElement N = cs.top_level(2);
    std::vector<Disk> Ld;
    for (const auto& d : N.disks())
      for (const auto& l : cs.inside(d, 2)) Ld.push_back(l);
    BasisElement L(Ld);
    std::vector<GradedElement> fac = random_factors(src_es, L.size(), source->max_weight());
    TensorSection s = TensorSection::simple(source, L, fac);
    TensorSection lhs = back.component(s), rhs = phi.component(s);
    report.tally("theta_prime_theta", lhs == rhs, [&] { return Json{{"lhs", lhs.str()}, {"rhs", rhs.str()}}; });

    AlgebraHom round = adjunction_theta(adjunction_theta_prime(f));
    report.tally("theta_theta_prime", round == f);

    TensorSection nat1 = Ff.apply(corestrict(s, N));
    TensorSection nat2 = corestrict(Ff.apply(s), N);
    report.tally("naturality", nat1 == nat2, [&] { return Json{{"lhs", nat1.str()}, {"rhs", nat2.str()}}; });
  }
  return report;
}

}  // namespace vfa
