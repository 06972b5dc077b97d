#include "vfa/jetalg.hpp"
#include "vfa/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace vfa {

namespace {

// Generous bound used while parsing relations, so that top-weight parts are
// never lost to truncation.
constexpr Weight kRelationBound = 1 << 16;

void enumerate(std::size_t gens, Weight remaining, std::size_t start,
               const std::vector<JetVar>& vars, std::vector<JetVar>& acc,
               std::vector<JetMonomial>& out) {
  if (remaining == 0) {
    out.emplace_back(acc);
    return;
  }
  for (std::size_t i = start; i < vars.size(); ++i) {
    if (vars[i].weight() > remaining) continue;
    acc.push_back(vars[i]);
    enumerate(gens, remaining - vars[i].weight(), i, vars, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<JetMonomial> free_monomials(std::size_t generator_count, Weight w) {
  std::vector<JetMonomial> out;
  if (w < 0) return out;
  std::vector<JetVar> vars;
  for (std::uint32_t g = 0; g < generator_count; ++g)
    for (Weight m = 0; m + 1 <= w; ++m) vars.push_back({g, static_cast<std::uint32_t>(m)});
  std::vector<JetVar> acc;
  enumerate(generator_count, w, 0, vars, acc, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GradedElement free_derive(const GradedElement& a) {
  GradedElement out(a.truncation());
  a.for_each([&](const JetMonomial& m, const Scalar& c) {
    if (m.weight() + 1 > a.truncation()) return;
    auto f = m.factors();
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::vector<JetVar> next(f.begin(), f.end());
      ++next[i].order;
      out.add_term(JetMonomial(std::move(next)), c);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const AlgebraPresentation& P, std::string_view text, Weight bound)
      : P_(P), text_(text), bound_(bound) {}

  GradedElement parse() {
    GradedElement e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse error at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) +
                "': " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  unsigned integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  GradedElement constant(const Scalar& c) const { return GradedElement::monomial({}, c, bound_); }

  static std::optional<Scalar> as_scalar(const GradedElement& e) {
    if (e.is_zero()) return Scalar{};
    if (e.term_count() == 1 && e.components().begin()->first == 0) return e.coeff(JetMonomial{});
    return std::nullopt;
  }

  GradedElement mul(const GradedElement& a, const GradedElement& b) const { return free_product(a, b); }

  GradedElement expr() {
    GradedElement acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  GradedElement term() {
    GradedElement acc = power();
    for (;;) {
      if (accept('*')) {
        acc = mul(acc, power());
      } else if (accept('/')) {
        auto d = as_scalar(power());
        if (!d || d->is_zero()) fail("division only by a nonzero constant");
        acc = acc.scaled(Scalar(1) / *d);
      } else {
        return acc;
      }
    }
  }

  GradedElement power() {
    GradedElement base = unary();
    if (accept('^')) {
      unsigned e = integer();
      GradedElement out = constant(Scalar(1));
      for (unsigned k = 0; k < e; ++k) out = mul(out, base);
      return out;
    }
    return base;
  }

  GradedElement unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  GradedElement primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GradedElement e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(Scalar(Rational(integer())));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  GradedElement identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (auto id = P_.generator_id(name)) return var(*id, 0);
    if (name == "d") {
      unsigned k = 1;
      if (accept('^')) k = integer();
      expect('(');
      GradedElement inner = expr();
      expect(')');
      for (unsigned j = 0; j < k; ++j) inner = free_derive(inner);
      return inner;
    }
    if (name == "I") return constant(Scalar::i());
    // name<digits> denotes a jet variable of a generator
    std::size_t split = name.size();
    while (split > 0 && std::isdigit(static_cast<unsigned char>(name[split - 1]))) --split;
    if (split > 0 && split < name.size()) {
      if (auto id = P_.generator_id(name.substr(0, split)))
        return var(*id, static_cast<std::uint32_t>(std::stoul(name.substr(split))));
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  GradedElement var(std::uint32_t gen, std::uint32_t order) const {
    return GradedElement::monomial(JetMonomial::var(gen, order), Scalar(1), bound_);
  }

  const AlgebraPresentation& P_;
  std::string_view text_;
  Weight bound_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraPresentation
// ---------------------------------------------------------------------------

AlgebraPresentation::AlgebraPresentation(std::vector<std::string> generators,
                                         std::vector<GradedElement> relations, Weight max_weight)
    : generators_(std::move(generators)), max_weight_(max_weight) {
  if (max_weight_ < 0) throw Error("max_weight must be non-negative");
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty()) throw Error("empty generator name");
    if (!std::isalpha(static_cast<unsigned char>(g.front())) && g.front() != '_')
      throw Error("generator name must start with a letter: '" + g + "'");
    if (g == "d") throw Error("'d' is reserved for the derivation");
    if (!seen.insert(g).second) throw Error("duplicate generator '" + g + "'");
  }
  for (const auto& r : relations) {
    r.for_each([&](const JetMonomial& m, const Scalar&) {
      for (const auto& v : m.factors())
        if (v.gen >= generators_.size()) throw Error("relation uses an unknown generator");
    });
    if (r.is_zero()) continue;
    if (r.components().size() > 1) inhomogeneous_ = true;
    const auto& [w, lc] = *r.components().rbegin();
    GradedElement top(kRelationBound);
    for (const auto& [m, c] : lc) top.add_term(m, c);
    relations_.push_back(std::move(top));
  }
  build_reducers();
}

AlgebraPresentation AlgebraPresentation::parse(std::vector<std::string> generators,
                                               const std::vector<std::string>& relations,
                                               Weight max_weight) {
  AlgebraPresentation free_p(generators, {}, max_weight);
  std::vector<GradedElement> rel;
  for (const auto& text : relations) rel.push_back(ExpressionParser(free_p, text, kRelationBound).parse());
  return AlgebraPresentation(std::move(generators), std::move(rel), max_weight);
}

std::optional<std::uint32_t> AlgebraPresentation::generator_id(std::string_view name) const {
  for (std::uint32_t g = 0; g < generators_.size(); ++g)
    if (generators_[g] == name) return g;
  return std::nullopt;
}

GradedElement AlgebraPresentation::var(std::uint32_t gen, std::uint32_t order) const {
  if (gen >= generators_.size()) throw Error("generator id out of range");
  return GradedElement::monomial(JetMonomial::var(gen, order), Scalar(1), max_weight_);
}

void AlgebraPresentation::build_reducers() {
  reducers_.resize(static_cast<std::size_t>(max_weight_) + 1);
  for (Weight w = 0; w <= max_weight_; ++w) {
    auto& red = reducers_[w];
    auto monos = free_monomials(generators_.size(), w);
    // Columns in descending monomial order so pivots are leading monomials.
    std::vector<JetMonomial> cols(monos.rbegin(), monos.rend());
    std::map<JetMonomial, std::size_t> col_of;
    for (std::size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = j;

    std::vector<LinComb> gens;
    for (const auto& r : relations_) {
      Weight wr = r.components().begin()->first;
      GradedElement jet = r.truncated(w);
      for (Weight k = 0; wr + k <= w; ++k) {
        for (const auto& m : free_monomials(generators_.size(), w - wr - k)) {
          LinComb row;
          jet.for_each([&](const JetMonomial& rm, const Scalar& c) {
            if (rm.weight() != wr + k) return;
            auto [it, inserted] = row.try_emplace(rm * m, c);
            if (!inserted) it->second += c;
          });
          std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
          if (!row.empty()) gens.push_back(std::move(row));
        }
        jet = free_derive(jet);
      }
    }
    if (gens.empty()) {
      red.standard = std::move(monos);
      continue;
    }
    Matrix M(gens.size(), cols.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (const auto& [m, c] : gens[i]) M(i, col_of.at(m)) = c;
    auto pivots = M.rref();
    std::vector<bool> is_pivot(cols.size(), false);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      is_pivot[pivots[i]] = true;
      LinComb rest;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != pivots[i] && !M(i, j).is_zero()) rest.emplace(cols[j], M(i, j));
      red.rows.emplace(cols[pivots[i]], std::move(rest));
    }
    for (const auto& m : monos)
      if (!is_pivot[col_of.at(m)]) red.standard.push_back(m);
  }
}

void AlgebraPresentation::check(const GradedElement& a) const {
  if (a.truncation() > max_weight_)
    throw Error("element truncation " + std::to_string(a.truncation()) +
                " exceeds presentation max weight " + std::to_string(max_weight_));
  a.for_each([&](const JetMonomial& m, const Scalar&) {
    for (const auto& v : m.factors())
      if (v.gen >= generators_.size()) throw Error("element uses a generator outside the presentation");
  });
}

GradedElement AlgebraPresentation::reduce(const GradedElement& a) const {
  if (relations_.empty()) return a;
  GradedElement out(a.truncation());
  for (const auto& [w, lc] : a.components()) {
    const auto& rows = reducers_.at(w).rows;
    for (const auto& [m, c] : lc) {
      auto it = rows.find(m);
      if (it == rows.end()) {
        out.add_term(m, c);
        continue;
      }
      // m = -rest (mod I); rest only involves standard monomials
      for (const auto& [rm, rc] : it->second) out.add_term(rm, -(c * rc));
    }
  }
  return out;
}

std::vector<JetMonomial> AlgebraPresentation::weight_basis(Weight w) const {
  if (w < 0 || w > max_weight_) return {};
  return reducers_[w].standard;
}

std::vector<std::size_t> AlgebraPresentation::weight_dimensions() const {
  std::vector<std::size_t> dims;
  for (const auto& r : reducers_) dims.push_back(r.standard.size());
  return dims;
}

GradedElement AlgebraPresentation::parse_element(std::string_view text) const {
  return reduce(ExpressionParser(*this, text, max_weight_).parse());
}

// ---------------------------------------------------------------------------
// Free functions
// ---------------------------------------------------------------------------

GradedElement multiply(const GradedElement& a, const GradedElement& b, const AlgebraPresentation& P) {
  P.check(a);
  P.check(b);
  return P.reduce(free_product(a, b));
}

GradedElement derive(const GradedElement& a, const AlgebraPresentation& P) {
  P.check(a);
  return P.reduce(free_derive(a));
}

GradedElement derive_n(const GradedElement& a, unsigned k, const AlgebraPresentation& P) {
  GradedElement out = a;
  for (unsigned j = 0; j < k && !out.is_zero(); ++j) out = derive(out, P);
  return out;
}

std::vector<JetMonomial> weight_basis(const AlgebraPresentation& P, Weight w) { return P.weight_basis(w); }

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

AlgebraHom::AlgebraHom(PresentationPtr source, PresentationPtr target,
                       std::map<JetVar, GradedElement> images)
    : source_(std::move(source)), target_(std::move(target)) {
  for (auto& [v, img] : images) {
    if (v.gen >= source_->generators().size()) throw Error("image given for an unknown source generator");
    if (v.weight() > source_->max_weight()) continue;
    target_->check(img);
    if (img.truncation() != target_->max_weight())
      throw Error("jet variable images must carry the target's truncation bound");
    if (!img.is_zero() && img.components().begin()->first < v.weight())
      throw Error("image of a jet variable has components below its weight");
    GradedElement reduced = target_->reduce(img);
    if (!reduced.is_zero()) images_.emplace(v, std::move(reduced));
  }
  for (std::size_t i = 0; i < source_->relations().size(); ++i) {
    GradedElement jet = source_->relations()[i].truncated(source_->max_weight());
    for (Weight k = 0; !jet.is_zero(); ++k) {
      if (!apply(jet).is_zero())
        throw Error("relation " + source_->str(source_->relations()[i]) + " (jet order " +
                    std::to_string(k) + ") does not vanish in the target");
      jet = free_derive(jet);
    }
  }
}

const GradedElement& AlgebraHom::image(JetVar v) const {
  static const GradedElement zero_image(0);
  auto it = images_.find(v);
  return it == images_.end() ? zero_image : it->second;
}

bool AlgebraHom::is_graded() const {
  for (const auto& [v, img] : images_)
    if (img.homogeneous_weight() != v.weight()) return false;
  return true;
}

GradedElement AlgebraHom::apply(const JetMonomial& m) const {
  Weight bound = target_->max_weight();
  GradedElement out = GradedElement::unit(bound);
  for (const auto& v : m.factors()) {
    auto it = images_.find(v);
    if (it == images_.end()) return GradedElement(bound);
    out = target_->reduce(free_product(out, it->second.truncated(bound)));
    if (out.is_zero()) break;
  }
  return out;
}

GradedElement AlgebraHom::apply(const GradedElement& a) const {
  Weight bound = std::min(a.truncation(), target_->max_weight());
  GradedElement out(bound);
  a.for_each([&](const JetMonomial& m, const Scalar& c) {
    if (m.weight() > bound) return;
    apply(m).truncated(bound).for_each(
        [&](const JetMonomial& im, const Scalar& ic) { out.add_term(im, c * ic); });
  });
  return out;
}

DifferentialHom lift_hom(std::vector<GradedElement> f0, PresentationPtr source, PresentationPtr target) {
  if (f0.size() != source->generators().size())
    throw Error("lift_hom needs one image per source generator");
  std::map<JetVar, GradedElement> images;
  for (std::uint32_t g = 0; g < f0.size(); ++g) {
    target->check(f0[g]);
    if (f0[g].truncation() != target->max_weight())
      throw Error("generator images must carry the target's truncation bound");
    GradedElement img = target->reduce(f0[g]);
    f0[g] = img;
    for (std::uint32_t m = 0; static_cast<Weight>(m) + 1 <= source->max_weight(); ++m) {
      images.emplace(JetVar{g, m}, img);
      img = derive(img, *target);
    }
  }
  return DifferentialHom(AlgebraHom(std::move(source), std::move(target), std::move(images)), std::move(f0));
}

}  // namespace vfa
