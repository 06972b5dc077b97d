#include "vfa/numcx.hpp"

#include "vfa/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace vfa {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kEndpointTol = 1e-12;

void same_dim(const NumericVector& a, const NumericVector& b) {
  if (a.dim() != b.dim()) throw Error("numeric vector dimensions differ");
}

// Uniform in [0, 1) from raw 64-bit draws, identical across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

NumericVector& NumericVector::operator+=(const NumericVector& o) {
  same_dim(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

NumericVector& NumericVector::operator-=(const NumericVector& o) {
  same_dim(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

NumericVector& NumericVector::operator*=(Complex s) {
  for (auto& x : c_) x *= s;
  return *this;
}

double NumericVector::max_norm() const {
  double m = 0;
  for (const auto& x : c_) m = std::max(m, std::abs(x));
  return m;
}

double max_distance(const NumericVector& a, const NumericVector& b) { return (a - b).max_norm(); }

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

Segment Segment::circle(Complex center, double radius, bool positive) {
  if (!(radius > 0) || !std::isfinite(radius)) throw Error("circle radius must be positive and finite");
  return Segment{Kind::circle, center, center, radius, positive};
}

Segment Segment::line(Complex z0, Complex z1) { return Segment{Kind::line, z0, z1, 0, true}; }

Complex Segment::start() const { return kind == Kind::circle ? a + radius : a; }
Complex Segment::end() const { return kind == Kind::circle ? a + radius : b; }
double Segment::length() const { return kind == Kind::circle ? kTwoPi * radius : std::abs(b - a); }

Curve::Curve(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error("curve needs at least one segment");
  for (std::size_t i = 1; i < segments_.size(); ++i)
    if (std::abs(segments_[i].start() - segments_[i - 1].end()) > kEndpointTol)
      throw Error("curve segments " + std::to_string(i - 1) + " and " + std::to_string(i) + " do not connect");
}

Curve Curve::polygon(const std::vector<Complex>& vertices) {
  if (vertices.size() < 2) throw Error("polygon needs at least two vertices");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    segs.push_back(Segment::line(vertices[i], vertices[(i + 1) % vertices.size()]));
  return Curve(std::move(segs));
}

bool Curve::closed() const { return std::abs(segments_.front().start() - segments_.back().end()) <= kEndpointTol; }

double Curve::length() const {
  double L = 0;
  for (const auto& s : segments_) L += s.length();
  return L;
}

bool Domain::contains(Complex z) const {
  double r = std::abs(z - center);
  if (!(r > inner) || !(r < outer)) return false;
  for (const auto& p : exclusions)
    if (std::abs(z - p) <= exclusion_radius) return false;
  return true;
}

ContourFunction scalar_function(std::function<Complex(Complex)> f, Domain domain) {
  return ContourFunction{[f = std::move(f)](Complex z) { return NumericVector(std::vector<Complex>{f(z)}); }, 1,
                         std::move(domain)};
}

// ---------------------------------------------------------------------------
// Interval quadrature
// ---------------------------------------------------------------------------

NumericVector riemann_integral(const std::function<NumericVector(double)>& f, double lo, double hi, std::size_t n) {
  if (n < 1) throw Error("riemann_integral needs n >= 1");
  const double h = (hi - lo) / static_cast<double>(n);
  NumericVector sum = f(lo + 0.5 * h);
  for (std::size_t k = 1; k < n; ++k) sum += f(lo + (static_cast<double>(k) + 0.5) * h);
  sum *= h;
  return sum;
}

NumericVector riemann_integral_refined(const std::function<NumericVector(double)>& f, double lo, double hi,
                                       std::size_t n, unsigned levels) {
  std::vector<NumericVector> prev{riemann_integral(f, lo, hi, n)};
  for (unsigned k = 1; k <= levels; ++k) {
    std::vector<NumericVector> row{riemann_integral(f, lo, hi, n << k)};
    double factor = 1;
    for (unsigned j = 1; j <= k; ++j) {
      factor *= 4;
      row.push_back(row[j - 1] + (1.0 / (factor - 1)) * (row[j - 1] - prev[j - 1]));
    }
    prev = std::move(row);
  }
  return prev.back();
}

PartitionValidation validate_tagged_partitions(const std::function<NumericVector(double)>& f, double lo, double hi,
                                               std::size_t n, std::size_t partitions, std::uint64_t seed) {
  if (n < 1) throw Error("validation needs n >= 1");
  NumericVector uniform = riemann_integral(f, lo, hi, n);
  std::mt19937_64 rng(seed);
  PartitionValidation out;
  for (std::size_t p = 0; p < partitions; ++p) {
    std::vector<double> widths(n);
    double total = 0;
    for (auto& w : widths) total += w = 0.5 + unit_draw(rng);
    double x = lo;
    NumericVector sum(uniform.dim());
    for (double w : widths) {
      double width = w / total * (hi - lo);
      sum += width * f(x + unit_draw(rng) * width);
      out.max_mesh = std::max(out.max_mesh, std::abs(width));
      x += width;
    }
    out.max_discrepancy = std::max(out.max_discrepancy, max_distance(sum, uniform));
    ++out.partitions;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contour integrals
// ---------------------------------------------------------------------------

namespace {

NumericVector checked_eval(const ContourFunction& f, Complex z) {
  if (!f.domain.contains(z)) {
    std::ostringstream os;
    os << "quadrature node " << z << " lies outside the function's domain";
    throw Error(os.str());
  }
  NumericVector v = f.eval(z);
  if (v.dim() != f.dim) throw Error("function returned a vector of the wrong dimension");
  return v;
}

}  // namespace

NumericVector contour_integral(const ContourFunction& f, const Curve& C, std::size_t nodes, unsigned line_levels) {
  if (nodes < 1) throw Error("contour_integral needs at least one node");
  NumericVector total(f.dim);
  for (const auto& s : C.segments()) {
    if (s.kind == Segment::Kind::circle) {
      const double sign = s.positive ? 1.0 : -1.0;
      NumericVector sum(f.dim);
      for (std::size_t k = 0; k < nodes; ++k) {
        const double theta = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(nodes);
        const Complex e = std::polar(1.0, theta);
        // gamma'(theta) = i * sign * r e^{i theta}
        sum += (Complex(0, sign) * s.radius * e) * checked_eval(f, s.a + s.radius * e);
      }
      sum *= kTwoPi / static_cast<double>(nodes);
      total += sum;
    } else {
      const Complex dz = s.b - s.a;
      auto integrand = [&](double t) { return dz * checked_eval(f, s.a + t * dz); };
      total += riemann_integral_refined(integrand, 0.0, 1.0, nodes, line_levels);
    }
  }
  return total;
}

NumericVector cauchy_coeff(const ContourFunction& f, Complex center, int n, double radius, std::size_t nodes) {
  if (!(radius > 0)) throw Error("Cauchy radius must be positive");
  if (center == f.domain.center && !(radius > f.domain.inner && radius < f.domain.outer))
    throw Error("Cauchy radius " + std::to_string(radius) + " lies outside the domain annulus");
  ContourFunction g{[&](Complex z) { return std::pow(z - center, -n - 1) * f.eval(z); }, f.dim, f.domain};
  NumericVector I = contour_integral(g, Curve::circle(center, radius), nodes);
  I *= 1.0 / Complex(0, kTwoPi);
  return I;
}

std::string Singularity::str() const {
  switch (kind) {
    case Kind::removable: return "removable (within probed window)";
    case Kind::pole: return "pole of order " + std::to_string(order) + " (within probed window)";
    case Kind::essential: return "essential (within probed window)";
  }
  return "";
}

Singularity classify_singularity(const ContourFunction& f, Complex center, const std::vector<double>& probe_radii,
                                 int window, double threshold, std::size_t nodes) {
  if (probe_radii.empty()) throw Error("need at least one probe radius");
  if (window < 1) throw Error("coefficient window must be positive");
  Singularity out{Singularity::Kind::removable, 0, cauchy_coeff(f, center, -1, probe_radii.front(), nodes), {}};
  int deepest = 0;
  for (int k = 1; k <= window; ++k) {
    double m = 0;
    for (double r : probe_radii) m = std::max(m, cauchy_coeff(f, center, -k, r, nodes).max_norm());
    out.negative_coefficients.push_back(m);
    if (m > threshold) deepest = k;
  }
  if (deepest == 0) {
    out.kind = Singularity::Kind::removable;
  } else if (deepest < window) {
    out.kind = Singularity::Kind::pole;
    out.order = deepest;
  } else {
    out.kind = Singularity::Kind::essential;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numeric model
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<std::size_t, Complex>> sparse_coords(const GradedElement& a,
                                                           const std::map<JetMonomial, std::size_t>& index) {
  std::vector<std::pair<std::size_t, Complex>> out;
  a.for_each([&](const JetMonomial& m, const Scalar& c) {
    auto it = index.find(m);
    if (it == index.end()) throw Error("element has a monomial outside the standard basis");
    out.emplace_back(it->second, c.to_complex());
  });
  return out;
}

}  // namespace

NumericModel::NumericModel(const VertexAlgebra& V) : V_(V) {
  const auto& P = V.presentation();
  std::map<JetMonomial, std::size_t> index;
  for (Weight w = 0; w <= P.max_weight(); ++w)
    for (const auto& m : P.weight_basis(w)) {
      index.emplace(m, basis_.size());
      basis_.push_back(m);
      weight_.push_back(w);
    }
  const std::size_t d = basis_.size();
  T_.resize(d);
  mult_.assign(d, std::vector<std::vector<std::pair<std::size_t, Complex>>>(d));
  for (std::size_t j = 0; j < d; ++j) {
    GradedElement e = GradedElement::monomial(basis_[j], Scalar(1), P.max_weight());
    T_[j] = sparse_coords(V.translation(e), index);
    for (std::size_t i = 0; i <= j; ++i) {
      if (weight_[i] + weight_[j] > P.max_weight()) continue;
      GradedElement f = GradedElement::monomial(basis_[i], Scalar(1), P.max_weight());
      mult_[i][j] = sparse_coords(V.product(f, e), index);
      mult_[j][i] = mult_[i][j];
    }
  }
}

NumericVector NumericModel::coords(const GradedElement& a) const {
  std::map<JetMonomial, std::size_t> index;
  for (std::size_t i = 0; i < basis_.size(); ++i) index.emplace(basis_[i], i);
  NumericVector v(dim());
  for (const auto& [i, c] : sparse_coords(V_.presentation().reduce(a.truncated(V_.max_weight())), index)) v[i] += c;
  return v;
}

NumericVector NumericModel::apply_T(const NumericVector& v) const {
  NumericVector out(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    if (v[j] == Complex(0)) continue;
    for (const auto& [i, c] : T_[j]) out[i] += c * v[j];
  }
  return out;
}

NumericVector NumericModel::translate(Complex z, const NumericVector& v) const {
  NumericVector out = v;
  NumericVector term = v;
  for (Weight k = 1; k <= V_.max_weight(); ++k) {
    term = apply_T(term);
    term *= z / static_cast<double>(k);
    out += term;
  }
  return out;
}

NumericVector NumericModel::multiply(const NumericVector& u, const NumericVector& v) const {
  NumericVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (u[i] == Complex(0)) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (v[j] == Complex(0)) continue;
      const Complex s = u[i] * v[j];
      for (const auto& [k, c] : mult_[i][j]) out[k] += c * s;
    }
  }
  return out;
}

NumericVector NumericModel::insert(const std::vector<Complex>& points, const std::vector<NumericVector>& elements) const {
  if (points.size() != elements.size()) throw Error("insert needs one element per point");
  NumericVector acc(dim());
  acc[0] = 1;  // basis_[0] is the unit monomial
  for (std::size_t i = 0; i < points.size(); ++i) acc = multiply(acc, translate(points[i], elements[i]));
  return acc;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

Report check_numeric_modes(const VertexAlgebra& V, Weight W, int max_mode, std::size_t nodes, double radius,
                           double tolerance) {
  if (W > V.max_weight()) throw Error("mode check weight exceeds the algebra's bound");
  NumericModel model(V);
  const auto& P = V.presentation();
  Report report;
  report.declare("numeric_modes");
  double worst = 0;
  for (std::size_t i = 0; i < model.dim(); ++i) {
    if (model.basis()[i].weight() > W) continue;
    for (std::size_t j = 0; j < model.dim(); ++j) {
      if (model.basis()[j].weight() > W) continue;
      GradedElement a = GradedElement::monomial(model.basis()[i], Scalar(1), V.max_weight());
      GradedElement b = GradedElement::monomial(model.basis()[j], Scalar(1), V.max_weight());
      NumericVector na = model.coords(a), nb = model.coords(b);
      // Node values are shared by every n.
      std::map<std::pair<double, double>, NumericVector> cache;
      ContourFunction f{[&](Complex z) {
                          auto key = std::make_pair(z.real(), z.imag());
                          auto it = cache.find(key);
                          if (it == cache.end()) it = cache.emplace(key, model.insert({z, 0.0}, {na, nb})).first;
                          return it->second;
                        },
                        model.dim(), Domain{}};
      auto series = insert({InsertionPoint::symbolic("z"), InsertionPoint::exact(Scalar(0))}, {a, b}, V);
      double pair_err = 0;
      int worst_n = 0;
      for (int n = -max_mode; n <= max_mode; ++n) {
        NumericVector num = cauchy_coeff(f, 0.0, -n - 1, radius, nodes);
        GradedElement sym =
            n >= 0 ? GradedElement(V.max_weight()) : series.coefficient({static_cast<unsigned>(-n - 1)});
        double err = max_distance(num, model.coords(sym));
        if (err > pair_err) pair_err = err, worst_n = n;
      }
      worst = std::max(worst, pair_err);
      report.tally("numeric_modes", pair_err <= tolerance, [&] {
        return Json{{"a", P.str(a)}, {"b", P.str(b)}, {"n", worst_n}, {"error", pair_err}};
      });
    }
  }
  report.record("max_error", worst <= tolerance, Json{{"value", worst}, {"tolerance", tolerance}});
  return report;
}

Report check_contour_sanity(std::size_t nodes, std::uint64_t seed, std::size_t triangles) {
  Report report;
  std::mt19937_64 rng(seed);
  auto draw = [&] { return 2 * unit_draw(rng) - 1; };
  auto draw_c = [&] { return Complex(draw(), draw()); };

  {
    double worst = 0;
    for (int n = -5; n <= 5; ++n) {
      auto f = scalar_function([n](Complex z) { return std::pow(z, n); }, Domain{0.0, 0.0, INFINITY, {0.0}});
      NumericVector I = contour_integral(f, Curve::circle(0.0, 1.0), 64);
      I *= 1.0 / Complex(0, kTwoPi);
      worst = std::max(worst, std::abs(I[0] - (n == -1 ? 1.0 : 0.0)));
    }
    report.record("orthogonality", worst <= 1e-12, Json{{"max_error", worst}, {"tolerance", 1e-12}, {"nodes", 64}});
  }

  double goursat = 0, primitive = 0;
  for (std::size_t t = 0; t < triangles; ++t) {
    std::vector<Complex> coef(7);
    for (auto& c : coef) c = draw_c();
    auto poly = [coef](Complex z) {
      Complex acc = 0;
      for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * z + *it;
      return acc;
    };
    Curve tri = Curve::polygon({2.0 * draw_c(), 2.0 * draw_c(), 2.0 * draw_c()});
    goursat = std::max(goursat, contour_integral(scalar_function(poly), tri, nodes).max_norm());
    // Derivative of a Laurent polynomial around a circle missing the pole.
    Complex p = draw_c();
    auto deriv = [coef, p](Complex z) {
      Complex acc = 0, w = z - p;
      for (std::size_t k = 1; k < coef.size(); ++k) acc += static_cast<double>(k) * coef[k] * std::pow(w, static_cast<int>(k) - 1);
      return acc - coef[0] / (w * w);
    };
    Curve circ = Curve::circle(p + 0.5 * draw_c(), 1.0 + unit_draw(rng));
    primitive = std::max(primitive, contour_integral(scalar_function(deriv, Domain{0.0, 0.0, INFINITY, {p}}), circ, nodes)
                                        .max_norm());
  }
  report.record("goursat_triangle", goursat <= 1e-10, Json{{"max_error", goursat}, {"tolerance", 1e-10}});
  report.record("primitive_closed_curve", primitive <= 1e-10, Json{{"max_error", primitive}, {"tolerance", 1e-10}});

  {
    // Vector-valued polynomial: coordinate i holds sum_k c_{ik} z^k.
    std::vector<std::vector<Complex>> c(3, std::vector<Complex>(9));
    for (auto& row : c)
      for (auto& x : row) x = draw_c();
    ContourFunction f{[&c](Complex z) {
                        NumericVector v(c.size());
                        for (std::size_t i = 0; i < c.size(); ++i)
                          for (std::size_t k = 0; k < c[i].size(); ++k) v[i] += c[i][k] * std::pow(z, static_cast<int>(k));
                        return v;
                      },
                      3, Domain{}};
    double worst = 0;
    for (int k = -2; k < 11; ++k) {
      NumericVector a = cauchy_coeff(f, 0.0, k, 0.8, nodes);
      for (std::size_t i = 0; i < c.size(); ++i) {
        Complex expect = k >= 0 && k < static_cast<int>(c[i].size()) ? c[i][k] : 0.0;
        worst = std::max(worst, std::abs(a[i] - expect));
      }
    }
    report.record("taylor_recovery", worst <= 1e-10, Json{{"max_error", worst}, {"tolerance", 1e-10}});
  }

  {
    double worst = 0;
    auto pf = scalar_function([](Complex z) { return 1.0 / (z * (z - 2.0)); }, Domain{0.0, 0.0, 2.0, {}});
    auto ess = scalar_function([](Complex z) { return std::exp(1.0 / z); }, Domain{0.0, 0.0, INFINITY, {}});
    for (int n = -5; n <= 5; ++n) {
      worst = std::max(worst, max_distance(cauchy_coeff(pf, 0.0, n, 0.5, nodes), cauchy_coeff(pf, 0.0, n, 1.5, nodes)));
      worst = std::max(worst, max_distance(cauchy_coeff(ess, 0.0, n, 0.5, nodes), cauchy_coeff(ess, 0.0, n, 2.0, nodes)));
    }
    report.record("laurent_radius_independence", worst <= 1e-9, Json{{"max_error", worst}, {"tolerance", 1e-9}});
  }

  {
    auto f = [](double t) { return NumericVector(std::vector<Complex>{t, t * t}); };
    NumericVector I = riemann_integral(f, 0.0, 1.0, 256);
    auto osc = [](double t) { return NumericVector(std::vector<Complex>{std::polar(1.0, t)}); };
    double period = riemann_integral(osc, 0.0, kTwoPi, 256).max_norm();
    PartitionValidation pv = validate_tagged_partitions(f, 0.0, 1.0, 256, 16, seed);
    double err = std::max(std::abs(I[0] - 0.5), std::abs(I[1] - 1.0 / 3.0));
    // Midpoint error for t^2 is 1/(12 n^2).
    bool ok = err <= 1.0 / (12.0 * 256 * 256) + 1e-15 && period <= 1e-10;
    report.record("riemann_midpoint", ok,
                  Json{{"polynomial_error", err},
                       {"full_period", period},
                       {"tagged_partitions", Json{{"count", pv.partitions},
                                                  {"max_mesh", pv.max_mesh},
                                                  {"max_discrepancy", pv.max_discrepancy}}}});
  }
  return report;
}

Report residue_swap_check(const GradedElement& a, const GradedElement& b, const GradedElement& c, int m, int n,
                          unsigned N, const VertexAlgebra& V, const SwapOptions& opts) {
  if (!(opts.outer_radius > opts.inner_radius && opts.inner_radius > 0))
    throw Error("residue swap needs outer radius > inner radius > 0");
  std::optional<NumericModel> own;
  if (!opts.model) own.emplace(V);
  const NumericModel& model = opts.model ? *opts.model : *own;
  const NumericVector na = model.coords(a), nb = model.coords(b), nc = model.coords(c);
  const std::size_t d = model.dim();

  auto integrand = [&](Complex z, Complex w) {
    NumericVector v = model.insert({z, w, 0.0}, {na, nb, nc});
    v *= std::pow(z, m) * std::pow(w, n) * std::pow(z - w, static_cast<int>(N));
    if (opts.perturbation) v += opts.perturbation(z, w);
    return v;
  };
  const double to_residue = 1.0 / (kTwoPi * kTwoPi);
  // Outer variable on the large circle, inner on the small one.
  auto iterated = [&](bool z_outer) {
    ContourFunction outer{[&](Complex u) {
                            ContourFunction inner{[&](Complex v) { return z_outer ? integrand(u, v) : integrand(v, u); },
                                                  d, Domain{0.0, 0.0, std::numeric_limits<double>::infinity(), {u}}};
                            return contour_integral(inner, Curve::circle(0.0, opts.inner_radius), opts.nodes);
                          },
                          d, Domain{}};
    NumericVector I = contour_integral(outer, Curve::circle(0.0, opts.outer_radius), opts.nodes);
    I *= -to_residue;  // (1/2 pi i)^2 = -1/(4 pi^2)
    return I;
  };
  NumericVector z_first = iterated(true);   // |z| > |w|
  NumericVector w_first = iterated(false);  // |w| > |z|

  ModeFn modes = [&V](const GradedElement& x, const GradedElement& y, int k) { return V.mode(x, y, k); };
  auto [lhs, rhs] = locality_sums(a, b, c, m, n, N, modes);
  NumericVector nl = model.coords(lhs), nr = model.coords(rhs);

  Report report;
  double swap = max_distance(z_first, w_first);
  double el = max_distance(z_first, nl);
  double er = max_distance(w_first, nr);
  Json params{{"m", m}, {"n", n}, {"N", N}, {"tolerance", opts.tolerance}};
  report.record("orders_agree", swap <= opts.tolerance, Json{{"discrepancy", swap}, {"params", params}});
  report.record("outer_z_matches_symbolic", el <= opts.tolerance, Json{{"discrepancy", el}});
  report.record("outer_w_matches_symbolic", er <= opts.tolerance, Json{{"discrepancy", er}});
  return report;
}

}  // namespace vfa
