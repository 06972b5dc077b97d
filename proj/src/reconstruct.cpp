#include "vfa/reconstruct.hpp"

#include <algorithm>

namespace vfa {

GradedElement InsertionSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GradedElement(truncation_) : it->second;
}

void InsertionSeries::add(const Exponents& e, const GradedElement& c) {
  if (e.size() != symbols_.size()) throw Error("exponent vector size mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedElement InsertionSeries::evaluate(const std::vector<Scalar>& values) const {
  if (values.size() != symbols_.size()) throw Error("need one value per symbol");
  GradedElement out(truncation_);
  for (const auto& [e, c] : terms_) {
    Scalar f(1);
    for (std::size_t i = 0; i < e.size(); ++i) f *= values[i].pow(e[i]);
    out = out + c.scaled(f);
  }
  return out;
}

InsertionSeries insert(const std::vector<InsertionPoint>& points, const std::vector<GradedElement>& elements,
                       const VertexAlgebra& V) {
  if (points.size() != elements.size()) throw Error("insert needs one element per point");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (!points[i].is_symbolic() && !points[j].is_symbolic() && *points[i].value == *points[j].value)
        throw Error("insertion points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  const auto& P = V.presentation();
  std::vector<std::string> symbols;
  for (const auto& p : points)
    if (p.is_symbolic()) symbols.push_back(p.symbol);
  const std::size_t nsym = symbols.size();

  InsertionSeries acc(symbols, V.max_weight());
  acc.add(InsertionSeries::Exponents(nsym, 0), V.vacuum());
  std::size_t sym = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    P.check(elements[i]);
    // e^{z_i T} a_i as a list of (power, coefficient)
    std::vector<std::pair<unsigned, GradedElement>> factor;
    if (points[i].is_symbolic()) {
      GradedElement t = P.reduce(elements[i]);
      for (unsigned k = 0; !t.is_zero(); ++k) {
        factor.emplace_back(k, t.scaled(Scalar(Rational(1) / factorial(k))));
        t = V.translation(t);
      }
    } else {
      factor.emplace_back(0, completion_translation(*points[i].value, P.reduce(elements[i]), P));
    }
    InsertionSeries next(symbols, V.max_weight());
    for (const auto& [e, c] : acc.terms())
      for (const auto& [k, f] : factor) {
        auto ee = e;
        if (points[i].is_symbolic()) ee[sym] += k;
        next.add(ee, V.product(c, f));
      }
    acc = std::move(next);
    if (points[i].is_symbolic()) ++sym;
  }
  return acc;
}

GradedElement insert_via_disks(const std::vector<Scalar>& points, const std::vector<GradedElement>& elements,
                               const VertexAlgebra& V) {
  if (points.size() != elements.size()) throw Error("insert needs one element per point");
  const auto& P = V.presentation_ptr();
  // Small radius r with 2r <= every pairwise distance.
  Rational r(1);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rational d2 = (points[i] - points[j]).norm2();
      if (sgn(d2) == 0) throw Error("insertion points coincide");
      while (4 * r * r > d2) r /= 2;
    }
  Rational R = r + 1;
  for (const auto& z : points) R += abs(z.re()) + abs(z.im());

  BasisElement at_origin({Disk(Scalar(0), Radius(r))});
  TensorSection total = TensorSection::unit(P);
  for (std::size_t i = 0; i < points.size(); ++i) {
    TensorSection placed = TensorSection::simple(P, at_origin, {elements[i]});
    TensorSection moved = equivariant_act(GroupElement(Scalar(1), points[i]), placed);
    BasisElement joint = total.basis().disjoint_union(moved.basis());
    total = multiply_sections(total, moved, joint);
  }
  TensorSection big = corestrict(total, BasisElement({Disk(Scalar(0), Radius(R))}));
  GradedElement out(P->max_weight());
  for (const auto& [k, c] : big.tensor().terms()) out.add_term(k[0], c);
  return out;
}

GradedElement vacuum_of(const VertexAlgebra& V) {
  TensorSection pushed =
      corestrict(TensorSection::unit(V.presentation_ptr()), BasisElement({Disk(Scalar(0), Radius(1))}));
  GradedElement out(V.max_weight());
  for (const auto& [k, c] : pushed.tensor().terms()) out.add_term(k[0], c);
  return out;
}

GradedElement translation_of(const GradedElement& a, const VertexAlgebra& V) {
  return insert({InsertionPoint::symbolic("z")}, {a}, V).coefficient({1});
}

GradedElement mode_of(const GradedElement& a, const GradedElement& b, int n, const VertexAlgebra& V) {
  if (n >= 0) return GradedElement(V.max_weight());
  auto series = insert({InsertionPoint::symbolic("z"), InsertionPoint::exact(Scalar(0))}, {a, b}, V);
  return series.coefficient({static_cast<unsigned>(-n - 1)});
}

ModeFn reconstructed_modes(const VertexAlgebra& V) {
  return [&V](const GradedElement& a, const GradedElement& b, int n) { return mode_of(a, b, n, V); };
}

Report eta_roundtrip_check(const VertexAlgebra& V, Weight W, const SamplingSpec& samples, int max_mode) {
  if (W > V.max_weight()) throw Error("round-trip weight exceeds the algebra's bound");
  const auto& P = V.presentation();
  Report report;
  for (const char* name : {"vacuum", "translation", "modes", "translation_identity", "two_point_factorization",
                           "disk_path", "rotation_covariance", "holomorphy_degree"})
    report.declare(name);

  GradedElement vac = vacuum_of(V);
  report.record("vacuum", vac == V.vacuum(), Json{{"value", P.str(vac)}});
  report.record("vacuum_weight", vac.homogeneous_weight() == 0);

  std::vector<GradedElement> basis;
  std::vector<Weight> weights;
  for (Weight w = 0; w <= W; ++w)
    for (const auto& m : P.weight_basis(w)) {
      basis.push_back(GradedElement::monomial(m, Scalar(1), V.max_weight()));
      weights.push_back(w);
    }

  for (const auto& b : basis) {
    GradedElement t = translation_of(b, V);
    GradedElement d = V.translation(b);
    report.tally("translation", t == d, [&] { return Json{{"a", P.str(b)}, {"lhs", P.str(t)}, {"rhs", P.str(d)}}; });
  }

  std::size_t mode_count = 0;
  for (const auto& a : basis)
    for (const auto& b : basis) {
      auto series = insert({InsertionPoint::symbolic("z"), InsertionPoint::exact(Scalar(0))}, {a, b}, V);
      bool ok = true;
      Json ce;
      for (int n = -max_mode; n <= max_mode; ++n) {
        GradedElement rec = n >= 0 ? GradedElement(V.max_weight()) : series.coefficient({static_cast<unsigned>(-n - 1)});
        GradedElement src = V.mode(a, b, n);
        ++mode_count;
        if (ok && !(rec == src)) {
          ok = false;
          ce = {{"a", P.str(a)}, {"b", P.str(b)}, {"n", n}, {"reconstructed", P.str(rec)}, {"source", P.str(src)}};
        }
      }
      // Coefficients beyond |n| <= max_mode must also vanish consistently.
      for (const auto& [e, c] : series.terms())
        if (static_cast<int>(e[0]) >= max_mode && !(c == V.mode(a, b, -static_cast<int>(e[0]) - 1))) ok = false;
      report.tally("modes", ok, [&] { return ce; });
    }
  report.record("mode_coverage", true, Json{{"basis_size", basis.size()}, {"mode_comparisons", mode_count}});

  ElementSampler es(P, samples.seed, samples.coefficient_range);
  ConfigurationSampler cs(samples.seed + 7);
  Weight hi = std::min<Weight>(W, 3);
  for (std::size_t s = 0; s < samples.count; ++s) {
    GradedElement a = es.homogeneous(es.nonempty_weight(0, hi));
    GradedElement b = es.homogeneous(es.nonempty_weight(0, hi));
    GradedElement c = es.homogeneous(es.nonempty_weight(0, hi));

    // T(a_(n) b) = -n a_(n-1) b + a_(n) (T b)
    for (int k = samples.mode_min; k <= samples.mode_max; ++k) {
      GradedElement lhs = V.translation(mode_of(a, b, k, V));
      GradedElement rhs = mode_of(a, b, k - 1, V).scaled(Scalar(-k)) + mode_of(a, V.translation(b), k, V);
      report.tally("translation_identity", lhs == rhs, [&] { return Json{{"a", P.str(a)}, {"b", P.str(b)}, {"n", k}}; });
    }

    auto two = insert({InsertionPoint::symbolic("z"), InsertionPoint::exact(Scalar(0))}, {a, b}, V);
    auto one = insert({InsertionPoint::symbolic("z")}, {a}, V);
    InsertionSeries times_b({"z"}, V.max_weight());
    for (const auto& [e, x] : one.terms()) times_b.add(e, V.product(x, b));
    report.tally("two_point_factorization", two == times_b);

    std::vector<Scalar> pts;
    while (pts.size() < 3) {
      Scalar z(cs.small_rational(3), cs.small_rational(3));
      if (std::find(pts.begin(), pts.end(), z) == pts.end()) pts.push_back(z);
    }
    std::vector<GradedElement> elems = {a, b, c};
    GradedElement fast = insert({InsertionPoint::exact(pts[0]), InsertionPoint::exact(pts[1]),
                                 InsertionPoint::exact(pts[2])},
                                elems, V)
                             .coefficient({});
    GradedElement slow = insert_via_disks(pts, elems, V);
    report.tally("disk_path", fast == slow, [&] { return Json{{"fast", P.str(fast)}, {"slow", P.str(slow)}}; });

    // q^{L_0} mu_{z,w}(a (x) b) = q^{D(a)+D(b)} mu_{qz,qw}(a (x) b)
    GroupElement g = cs.group_element();
    const Scalar& q = g.q();
    auto series = insert({InsertionPoint::symbolic("z"), InsertionPoint::symbolic("w")}, {a, b}, V);
    Weight total = *a.homogeneous_weight() + *b.homogeneous_weight();
    bool rot_ok = true, deg_ok = true;
    for (const auto& [e, x] : series.terms()) {
      GradedElement lhs = completion_rotation(q, x);
      GradedElement rhs = x.scaled(q.pow(total + static_cast<long>(e[0] + e[1])));
      rot_ok &= lhs == rhs;
      for (const auto& [w, lc] : x.components()) deg_ok &= static_cast<Weight>(e[0] + e[1]) <= w - total;
    }
    report.tally("rotation_covariance", rot_ok);
    report.tally("holomorphy_degree", deg_ok);
  }

  SamplingSpec axioms = samples;
  report.merge(check_vertex_axioms(V, axioms, reconstructed_modes(V)), "reconstructed_");
  return report;
}

AlgebraHom lift_modewise(const std::vector<GradedElement>& f0, PresentationPtr source, const VertexAlgebra& target) {
  std::map<JetVar, GradedElement> images;
  GradedElement vac = target.vacuum();
  for (std::uint32_t g = 0; g < f0.size(); ++g)
    for (std::uint32_t m = 0; static_cast<Weight>(m) + 1 <= source->max_weight(); ++m) {
      GradedElement img = target.mode(target.presentation().reduce(f0[g]), vac, -static_cast<int>(m) - 1);
      images.emplace(JetVar{g, m}, img.scaled(Scalar(factorial(m))));
    }
  return AlgebraHom(std::move(source), target.presentation_ptr(), std::move(images));
}

Report check_jet_lift(const std::vector<GradedElement>& f0, PresentationPtr source, const VertexAlgebra& target) {
  Report report;
  const auto& T = target.presentation();
  std::optional<DifferentialHom> lifted;
  try {
    lifted.emplace(lift_hom(f0, source, target.presentation_ptr()));
    report.record("lift_exists", true);
  } catch (const Error& e) {
    report.record("lift_exists", false, Json{{"error", e.what()}});
    return report;
  }
  AlgebraHom modewise = lift_modewise(f0, source, target);
  report.record("constructions_agree_on_generators", lifted->hom() == modewise);

  for (std::uint32_t g = 0; g < f0.size(); ++g) {
    GradedElement x = source->var(g, 0);
    report.tally("restricts_to_f0", lifted->apply(x) == T.reduce(f0[g]).truncated(x.truncation()));
  }
  for (Weight w = 0; w <= source->max_weight(); ++w)
    for (const auto& m : source->weight_basis(w)) {
      GradedElement a = GradedElement::monomial(m, Scalar(1), source->max_weight());
      GradedElement fa = lifted->apply(a);
      GradedElement ga = modewise.apply(a);
      report.tally("constructions_agree", fa == ga, [&] {
        return Json{{"a", source->str(a)}, {"extension", T.str(fa)}, {"modewise", T.str(ga)}};
      });
      GradedElement lhs = lifted->apply(derive(a, *source));
      GradedElement rhs = target.translation(fa).truncated(lhs.truncation());
      report.tally("differential", lhs == rhs, [&] {
        return Json{{"a", source->str(a)}, {"f(da)", T.str(lhs)}, {"T f(a)", T.str(rhs)}};
      });
    }
  return report;
}

}  // namespace vfa
