#include "vfa/vertex.hpp"

#include <algorithm>
#include <array>

namespace vfa {

VertexAlgebra::VertexAlgebra(PresentationPtr presentation) : presentation_(std::move(presentation)) {
  if (!presentation_) throw Error("vertex algebra needs a presentation");
}

GradedElement VertexAlgebra::mode(const GradedElement& a, const GradedElement& b, int n) const {
  if (n >= 0) return GradedElement(b.truncation());
  unsigned k = static_cast<unsigned>(-n - 1);
  GradedElement ta = derive_n(a, k, *presentation_);
  return product(ta, b).scaled(Scalar(Rational(1) / factorial(k)));
}

GradedElement ModeTable::at(int n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? GradedElement(truncation_) : it->second;
}

void ModeTable::set(int n, GradedElement value) { entries_[n] = std::move(value); }

ModeTable vertex_op(const GradedElement& a, const GradedElement& b, const VertexAlgebra& V) {
  ModeTable table(b.truncation());
  GradedElement ta = a;
  for (unsigned k = 0; !ta.is_zero(); ++k) {
    GradedElement entry = V.product(ta, b).scaled(Scalar(Rational(1) / factorial(k)));
    if (!entry.is_zero()) table.set(-static_cast<int>(k) - 1, std::move(entry));
    ta = V.translation(ta);
  }
  return table;
}

GradedElement completion_rotation(const Scalar& q, const GradedElement& a) {
  if (q.norm2() != 1) throw Error("rotation parameter must satisfy |q|^2 = 1, got " + q.str());
  GradedElement out(a.truncation());
  for (const auto& [w, lc] : a.components()) {
    Scalar f = q.pow(w);
    for (const auto& [m, c] : lc) out.add_term(m, c * f);
  }
  return out;
}

GradedElement completion_translation(const Scalar& z, const GradedElement& a, const AlgebraPresentation& P) {
  GradedElement out = a;
  if (z.is_zero()) return out;
  GradedElement term = a;
  Scalar zn(1);
  for (unsigned n = 1; ; ++n) {
    term = derive(term, P);
    if (term.is_zero()) break;
    zn *= z;
    out = out + term.scaled(zn * Scalar(Rational(1) / factorial(n)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

ElementSampler::ElementSampler(const AlgebraPresentation& P, std::uint64_t seed, int coefficient_range)
    : P_(P), rng_(seed), range_(coefficient_range) {}

Rational ElementSampler::draw_rational(bool allow_zero) {
  for (;;) {
    long num = draw_int(-range_, range_);
    long den = draw_int(1, range_);
    if (num == 0 && !allow_zero) continue;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
}

Scalar ElementSampler::draw_gaussian() { return Scalar(draw_rational(), draw_rational()); }

GradedElement ElementSampler::homogeneous(Weight w, bool gaussian) {
  GradedElement out(P_.max_weight());
  auto basis = P_.weight_basis(w);
  if (basis.empty()) return out;
  // A guaranteed-nonzero leading coefficient keeps the sample nonzero.
  std::size_t lead = draw(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Scalar c = gaussian ? draw_gaussian() : Scalar(draw_rational());
    if (i == lead) c = Scalar(draw_rational(false));
    if (draw(2) == 0 || i == lead) out.add_term(basis[i], c);
  }
  return out;
}

Weight ElementSampler::nonempty_weight(Weight lo, Weight hi) {
  std::vector<Weight> ok;
  for (Weight w = lo; w <= hi; ++w)
    if (!P_.weight_basis(w).empty()) ok.push_back(w);
  if (ok.empty()) throw Error("no nonzero weight space in the requested range");
  return ok[draw(ok.size())];
}

GradedElement ElementSampler::element(Weight lo, Weight hi) {
  GradedElement out(P_.max_weight());
  for (Weight w = lo; w <= hi; ++w)
    if (draw(2) == 0) out = out + homogeneous(w);
  if (out.is_zero()) out = homogeneous(nonempty_weight(lo, hi));
  return out;
}

// ---------------------------------------------------------------------------
// Axiom checks
// ---------------------------------------------------------------------------

std::pair<GradedElement, GradedElement> locality_sums(const GradedElement& a, const GradedElement& b,
                                                      const GradedElement& c, int m, int n, unsigned N,
                                                      const ModeFn& modes) {
  GradedElement lhs(c.truncation()), rhs(c.truncation());
  for (unsigned k = 0; k <= N; ++k) {
    Scalar coeff(binomial(N, k) * (k % 2 ? -1 : 1));
    int outer = m + static_cast<int>(N) - static_cast<int>(k);
    int inner = n + static_cast<int>(k);
    lhs = lhs + modes(a, modes(b, c, inner), outer).scaled(coeff);
    rhs = rhs + modes(b, modes(a, c, outer), inner).scaled(coeff);
  }
  return {lhs, rhs};
}

Report check_vertex_axioms(const VertexAlgebra& V, const SamplingSpec& samples, const ModeFn& modes_in) {
  ModeFn modes = modes_in ? modes_in : ModeFn([&V](const GradedElement& a, const GradedElement& b, int n) {
    return V.mode(a, b, n);
  });
  const auto& P = V.presentation();
  auto show = [&P](const GradedElement& e) { return P.str(e); };
  Report report;
  for (const char* name : {"vacuum", "creation", "translation", "locality_N0", "locality_N1", "locality_N2",
                           "grading", "positive_modes_vanish", "skew_symmetry"})
    report.declare(name);

  GradedElement vac = V.vacuum();
  report.record("vacuum_weight_zero", vac.homogeneous_weight() == 0);
  report.record("translation_kills_vacuum", V.translation(vac).is_zero());

  ElementSampler sampler(P, samples.seed, samples.coefficient_range);
  Weight W = V.max_weight();
  std::size_t nontrivial = 0;
  for (std::size_t s = 0; s < samples.count; ++s) {
    // Weights share a budget of W so products survive truncation.
    std::array<Weight, 3> ws{};
    Weight left = W;
    for (auto& w : ws) left -= (w = sampler.nonempty_weight(0, left));
    std::shuffle(ws.begin(), ws.end(), sampler.engine());
    auto [wa, wb, wc] = ws;
    GradedElement a = sampler.homogeneous(wa), b = sampler.homogeneous(wb), c = sampler.homogeneous(wc);
    auto base_ce = [&] { return Json{{"a", show(a)}, {"b", show(b)}, {"c", show(c)}}; };

    bool vac_ok = true, cre_ok = true, tr_ok = true, gr_ok = true, pos_ok = true, skew_ok = true;
    Json ce;
    for (int n = samples.mode_min; n <= samples.mode_max; ++n) {
      GradedElement lhs = modes(vac, a, n);
      GradedElement expect = n == -1 ? a : GradedElement(a.truncation());
      if (vac_ok && !(lhs == expect)) {
        vac_ok = false;
        ce["vacuum"] = {{"n", n}, {"lhs", show(lhs)}, {"rhs", show(expect)}};
      }
      GradedElement cre = modes(a, vac, n);
      GradedElement cexp(a.truncation());
      if (n < 0) {
        auto k = static_cast<unsigned>(-n - 1);
        cexp = derive_n(a, k, P).scaled(Scalar(Rational(1) / factorial(k)));
      }
      if (cre_ok && !(cre == cexp)) {
        cre_ok = false;
        ce["creation"] = {{"n", n}, {"lhs", show(cre)}, {"rhs", show(cexp)}};
      }

      GradedElement ab = modes(a, b, n);
      GradedElement tl = V.translation(ab);
      GradedElement tr = modes(a, b, n - 1).scaled(Scalar(-n)) + modes(a, V.translation(b), n);
      if (tr_ok && !(tl == tr)) {
        tr_ok = false;
        ce["translation"] = {{"n", n}, {"lhs", show(tl)}, {"rhs", show(tr)}};
      }
      if (!ab.is_zero() && ab.homogeneous_weight() != wa + wb - n - 1 && gr_ok) {
        gr_ok = false;
        ce["grading"] = {{"n", n}, {"value", show(ab)}, {"expected_weight", wa + wb - n - 1}};
      }
      if (n >= 0 && !ab.is_zero() && pos_ok) {
        pos_ok = false;
        ce["positive_modes_vanish"] = {{"n", n}, {"value", show(ab)}};
      }
      GradedElement skew(ab.truncation());
      for (int j = 0; j <= W + 1; ++j) {
        GradedElement t = derive_n(modes(b, a, n + j), static_cast<unsigned>(j), P);
        Scalar coeff(((n + j + 1) % 2 == 0 ? Rational(1) : Rational(-1)) / factorial(static_cast<unsigned>(j)));
        skew = skew + t.scaled(coeff);
      }
      if (skew_ok && !(skew == ab)) {
        skew_ok = false;
        ce["skew_symmetry"] = {{"n", n}, {"lhs", show(ab)}, {"rhs", show(skew)}};
      }
    }
    auto with = [&](const char* key) {
      return [&, key] {
        Json j = base_ce();
        j["identity"] = ce[key];
        return j;
      };
    };
    report.tally("vacuum", vac_ok, with("vacuum"));
    report.tally("creation", cre_ok, with("creation"));
    report.tally("translation", tr_ok, with("translation"));
    report.tally("grading", gr_ok, with("grading"));
    report.tally("positive_modes_vanish", pos_ok, with("positive_modes_vanish"));
    report.tally("skew_symmetry", skew_ok, with("skew_symmetry"));

    for (unsigned N = 0; N <= 2; ++N) {
      // Fresh triple whose weights leave room for the weight the modes add.
      // Non-negative outer indices make both sides vanish identically.
      int hi_mode = std::min(samples.mode_max, -1), lo_mode = std::min(samples.mode_min, hi_mode);
      int m = 0, n = 0;
      Weight budget = -1;
      while (budget < 0) {
        m = sampler.draw_int(lo_mode, hi_mode);
        n = sampler.draw_int(lo_mode, hi_mode);
        budget = W - std::max(0, -m - 1) - std::max(0, -n - 1);
      }
      std::array<Weight, 3> lw{};
      for (auto& w : lw) budget -= (w = sampler.nonempty_weight(0, budget));
      std::shuffle(lw.begin(), lw.end(), sampler.engine());
      GradedElement la = sampler.homogeneous(lw[0]), lb = sampler.homogeneous(lw[1]), lc = sampler.homogeneous(lw[2]);
      auto [lhs, rhs] = locality_sums(la, lb, lc, m, n, N, modes);
      if (!lhs.is_zero()) ++nontrivial;
      report.tally("locality_N" + std::to_string(N), lhs == rhs, [&] {
        return Json{{"a", show(la)}, {"b", show(lb)}, {"c", show(lc)}, {"m", m},
                    {"n", n},        {"lhs", show(lhs)}, {"rhs", show(rhs)}};
      });
    }
  }
  report.record("nontrivial_samples", samples.count == 0 || nontrivial > 0,
                Json{{"nonzero_locality_sums", nontrivial}, {"sums", 3 * samples.count}});
  return report;
}

}  // namespace vfa
