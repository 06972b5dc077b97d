// One line per acceptance criterion; exits nonzero if any fails.

#include "oracles.hpp"
#include "vfa/factalg.hpp"
#include "vfa/numcx.hpp"
#include "vfa/reconstruct.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace vfa;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

PresentationPtr jet_x(Weight W) { return make_presentation(AlgebraPresentation::free({"x"}, W)); }
PresentationPtr jet_y(Weight W) { return make_presentation(AlgebraPresentation::free({"y"}, W)); }
PresentationPtr jet_xy(Weight W) { return make_presentation(AlgebraPresentation::parse({"x", "y"}, {"x*y"}, W)); }

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks())
    if (!c.pass()) return c.name + " " + c.detail.dump();
  return "";
}

// Every check passed and each of `names` saw at least `min_samples` samples.
void require_report(Outcome& o, const Report& r, const std::string& label, const std::vector<std::string>& names,
                    std::size_t min_samples) {
  o.require(r.all_passed(), label + ": " + std::to_string(r.failures()) + " failing (" + first_failure(r) + ")");
  for (const auto& n : names) {
    const auto* c = r.find(n);
    if (!c) {
      o.require(false, label + ": missing check " + n);
      continue;
    }
    o.require(c->passed + c->failed >= min_samples,
              label + ": " + n + " ran " + std::to_string(c->passed + c->failed) + " < " +
                  std::to_string(min_samples));
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome jet_dimensions() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto dims = jet_x(12)->weight_dimensions();
  double t = seconds_since(t0);
  o.require(dims.size() == 13, "expected weights 0..12");
  for (int w = 0; w < static_cast<int>(dims.size()); ++w)
    o.require(dims[w] == oracle::partitions(w), "weight " + std::to_string(w));
  o.require(dims.size() == 13 && dims[12] == 77, "p(12) = 77");
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s >= 1 s");
  o.note("runtime " + std::to_string(t) + " s");
  return o;
}

Outcome vertex_axioms() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [name, P] : {std::pair{"jet-x", jet_x(6)}, std::pair{"jet-xy", jet_xy(6)}}) {
    Report r = check_vertex_axioms(VertexAlgebra(P), SamplingSpec{.seed = 1, .count = 200});
    require_report(o, r, name, {"vacuum", "creation", "translation", "locality_N0", "locality_N1", "locality_N2"},
                   200);
    // At least a quarter of the locality sums must be nonzero.
    std::size_t nz = r.find("nontrivial_samples")->detail.at("nonzero_locality_sums").get<std::size_t>();
    o.require(4 * nz >= 3 * 200, std::string(name) + ": only " + std::to_string(nz) + " nonzero locality sums");
    o.note(std::string(name) + " " + std::to_string(nz) + "/600 nonzero");
  }
  double t = seconds_since(t0);
  o.require(t < 30.0, "runtime " + std::to_string(t) + " s >= 30 s");
  o.note("200 triples per algebra, runtime " + std::to_string(t) + " s");
  return o;
}

Outcome pfa_axioms() {
  Outcome o;
  for (const auto& [name, P] : {std::pair{"jet-x", jet_x(6)}, std::pair{"jet-xy", jet_xy(6)}}) {
    Report r = check_pfa_axioms(P, SamplingSpec{.seed = 2, .count = 100});
    require_report(o, r, name,
                   {"functoriality", "identity", "symmetry", "associativity", "unit", "disjoint_bijective",
                    "equivariance_identity", "equivariance_composition", "equivariance_structure_maps",
                    "equivariance_multiplication"},
                   100);
    std::size_t nz = r.find("nontrivial_samples")->detail.at("nonzero").get<std::size_t>();
    o.require(2 * nz >= 100, std::string(name) + ": only " + std::to_string(nz) + " nonzero sections");
    o.note(std::string(name) + " " + std::to_string(nz) + "/100 nonzero");
  }
  o.note("100 configurations per algebra at W = 6");
  return o;
}

Outcome placement() {
  Outcome o;
  for (const auto& [name, P] : {std::pair{"jet-x", jet_x(5)}, std::pair{"jet-xy", jet_xy(5)}}) {
    Report r = check_placement_independence(P, SamplingSpec{.seed = 3, .count = 50}, 4);
    require_report(o, r, name, {"placement_independence", "placement_matches_product"}, 50);
  }
  o.note("50 samples per algebra, l <= 4");
  return o;
}

Outcome coequalizer() {
  Outcome o;
  for (const auto& [name, P] : {std::pair{"jet-x", jet_x(5)}, std::pair{"jet-xy", jet_xy(5)}}) {
    for (long k = 1; k <= 5; ++k) {
      std::vector<Rational> radii;
      for (long j = 1; j <= k; ++j) radii.emplace_back(j);
      Report r = check_coequalizer_chain(P, radii, 5);
      require_report(o, r, std::string(name) + " length " + std::to_string(k), {"chain", "weight_5"}, 1);
    }
  }
  o.note("chains of length 1..5 at W = 5");
  return o;
}

Outcome adjunction() {
  Outcome o;
  Report r = check_adjunction(jet_x(4), jet_xy(4), SamplingSpec{.seed = 4, .count = 20});
  require_report(o, r, "jet-x -> jet-xy", {"theta_prime_theta", "theta_theta_prime"}, 20);
  Report r2 = check_adjunction(jet_x(4), jet_y(4), SamplingSpec{.seed = 5, .count = 20});
  require_report(o, r2, "jet-x -> jet-y", {"theta_prime_theta", "theta_theta_prime"}, 20);
  o.note("20 morphisms per target");
  return o;
}

Outcome roundtrip() {
  Outcome o;
  for (const auto& [name, P] : {std::pair{"jet-x", jet_x(6)}, std::pair{"jet-xy", jet_xy(6)}}) {
    VertexAlgebra V(P);
    Report r = eta_roundtrip_check(V, 6, SamplingSpec{.seed = 6, .count = 20}, 6);
    require_report(o, r, name, {"vacuum", "translation", "modes"}, 1);
    std::size_t basis = 0;
    for (auto d : P->weight_dimensions()) basis += d;
    const auto* t = r.find("translation");
    o.require(t && t->passed == basis, std::string(name) + ": translation not compared on the full basis");
    const auto* m = r.find("modes");
    o.require(m && m->passed == basis * basis, std::string(name) + ": modes not compared on all basis pairs");
  }
  o.note("full basis up to W = 6, |n| <= 6");
  return o;
}

Outcome jet_lift() {
  Outcome o;
  auto src = jet_x(6);
  VertexAlgebra T(jet_y(6));
  const auto& Q = T.presentation();
  std::vector<std::vector<GradedElement>> cases = {
      {Q.parse_element("y0")}, {Q.parse_element("y0^2")}, {Q.parse_element("y0 + 3*y1 - y0^3/2")}};
  ElementSampler es(Q, 8);
  for (int s = 0; s < 5; ++s) cases.push_back({es.element(1, 4)});
  for (const auto& f0 : cases) {
    Report r = check_jet_lift(f0, src, T);
    require_report(o, r, "f0 = " + Q.str(f0[0]),
                   {"lift_exists", "constructions_agree_on_generators", "constructions_agree", "differential"}, 1);
  }
  o.note(std::to_string(cases.size()) + " maps C[x] -> J C[y] at W = 6");
  return o;
}

Outcome numeric_modes() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Report r = check_numeric_modes(VertexAlgebra(jet_x(6)), 6, 6, 128, 1.0, 1e-9);
  double t = seconds_since(t0);
  std::size_t basis = 0;
  for (auto d : jet_x(6)->weight_dimensions()) basis += d;
  require_report(o, r, "jet-x", {"numeric_modes"}, basis * basis);
  o.require(t < 10.0, "runtime " + std::to_string(t) + " s >= 10 s");
  o.note("max error " + r.find("max_error")->detail.at("value").dump() + ", runtime " + std::to_string(t) + " s");
  return o;
}

Outcome residue_swap() {
  Outcome o;
  VertexAlgebra V(jet_x(4));
  NumericModel model(V);
  SwapOptions opts;
  opts.model = &model;
  opts.tolerance = 1e-8;
  ElementSampler es(V.presentation(), 10);
  Report r;
  const std::size_t samples = 20;
  for (std::size_t k = 0; k < samples; ++k) {
    GradedElement a = es.homogeneous(es.nonempty_weight(0, 2));
    GradedElement b = es.homogeneous(es.nonempty_weight(0, 2));
    GradedElement c = es.homogeneous(es.nonempty_weight(0, 2));
    int m = es.draw_int(-3, 1), n = es.draw_int(-3, 1);
    for (unsigned N = 0; N <= 2; ++N) {
      Report one = residue_swap_check(a, b, c, m, n, N, V, opts);
      for (const auto& chk : one.checks())
        r.tally(chk.name + "_N" + std::to_string(N), chk.pass(), [&] { return chk.detail; });
    }
  }
  std::vector<std::string> names;
  for (int N = 0; N <= 2; ++N)
    for (const char* base : {"orders_agree", "outer_z_matches_symbolic", "outer_w_matches_symbolic"})
      names.push_back(std::string(base) + "_N" + std::to_string(N));
  require_report(o, r, "jet-x", names, samples);

  // Negative control: a term with residues in both orders must be detected.
  SwapOptions bad = opts;
  NumericVector unit = model.coords(V.vacuum());
  bad.perturbation = [unit](Complex z, Complex w) { return (1.0 / ((z - w) * w)) * unit; };
  const auto& P = V.presentation();
  Report neg = residue_swap_check(P.var(0, 0), P.var(0, 0), P.var(0, 0), -1, -1, 0, V, bad);
  o.require(!neg.find("orders_agree")->pass(), "perturbed integrand went undetected");
  o.note("20 samples, N <= 2, negative control detected");
  return o;
}

Outcome contour_sanity() {
  Outcome o;
  Report r = check_contour_sanity(128, 11, 20);
  require_report(o, r, "contour",
                 {"orthogonality", "goursat_triangle", "primitive_closed_curve", "laurent_radius_independence"}, 1);
  for (const char* n : {"orthogonality", "goursat_triangle", "laurent_radius_independence"})
    if (const auto* c = r.find(n)) o.note(std::string(n) + " " + c->detail.at("max_error").dump());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"jet dimensions equal partition numbers for weight <= 12", jet_dimensions},
      {"vertex axioms on jet-x and jet-xy at W = 6", vertex_axioms},
      {"prefactorization and equivariance axioms", pfa_axioms},
      {"placement independence of mu_l", placement},
      {"coequalizer chains of length <= 5", coequalizer},
      {"theta / theta' adjunction", adjunction},
      {"vertex algebra round trip", roundtrip},
      {"jet lifting", jet_lift},
      {"numeric and symbolic modes agree", numeric_modes},
      {"residue swap in both contour orders", residue_swap},
      {"contour calculus sanity", contour_sanity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %zu: %s (%s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
