#include "vfa/diskgeom.hpp"

#include <algorithm>
#include <numeric>

namespace vfa {

Radius::Radius(Rational r) : value_(std::move(r)) {
  value_->canonicalize();
  if (sgn(*value_) <= 0) throw Error("disk radius must be positive, got " + value_->get_str());
}

const Rational& Radius::value() const {
  if (!value_) throw Error("infinite radius has no rational value");
  return *value_;
}

std::strong_ordering operator<=>(const Radius& a, const Radius& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  int c = cmp(*a.value_, *b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool Disk::contains_point(const Scalar& z) const {
  if (radius.is_infinite()) return true;
  return (z - center).norm2() < radius.value() * radius.value();
}

std::string Disk::str() const { return "D_" + radius.str() + "(" + center.str() + ")"; }

bool disk_less(const Disk& a, const Disk& b) {
  if (int c = cmp(a.center.re(), b.center.re()); c != 0) return c < 0;
  if (int c = cmp(a.center.im(), b.center.im()); c != 0) return c < 0;
  return a.radius < b.radius;
}

bool contains(const Disk& inner, const Disk& outer) {
  if (outer.radius.is_infinite()) return true;
  if (inner.radius.is_infinite()) return false;
  const Rational& ro = outer.radius.value();
  const Rational& ri = inner.radius.value();
  if (ro < ri) return false;
  Rational gap = ro - ri;
  return (inner.center - outer.center).norm2() <= gap * gap;
}

bool disjoint(const Disk& a, const Disk& b) {
  if (a.radius.is_infinite() || b.radius.is_infinite()) return false;
  Rational s = a.radius.value() + b.radius.value();
  return (a.center - b.center).norm2() >= s * s;
}

BasisElement::BasisElement(std::vector<Disk> disks) : disks_(std::move(disks)) {
  for (std::size_t i = 0; i < disks_.size(); ++i)
    for (std::size_t j = i + 1; j < disks_.size(); ++j)
      if (!disjoint(disks_[i], disks_[j]))
        throw Error("disks " + disks_[i].str() + " and " + disks_[j].str() + " overlap");
}

bool BasisElement::disjoint_from(const BasisElement& other) const {
  for (const auto& a : disks_)
    for (const auto& b : other.disks_)
      if (!disjoint(a, b)) return false;
  return true;
}

BasisElement BasisElement::disjoint_union(const BasisElement& other) const {
  std::vector<Disk> all = disks_;
  all.insert(all.end(), other.disks_.begin(), other.disks_.end());
  return BasisElement(std::move(all));
}

bool BasisElement::subset_of(const BasisElement& other) const {
  return std::all_of(disks_.begin(), disks_.end(), [&](const Disk& d) {
    return std::any_of(other.disks_.begin(), other.disks_.end(), [&](const Disk& o) { return contains(d, o); });
  });
}

std::string BasisElement::str() const {
  if (disks_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < disks_.size(); ++i) out += (i ? " | " : "") + disks_[i].str();
  return out;
}

std::vector<std::vector<std::size_t>> decompose(const BasisElement& L, const BasisElement& M) {
  std::vector<std::vector<std::size_t>> parts(M.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    // M's disks are disjoint, so at most one of them contains L[i].
    std::size_t j = 0;
    while (j < M.size() && !contains(L[i], M[j])) ++j;
    if (j == M.size()) throw Error("disk " + L[i].str() + " is not contained in " + M.str());
    parts[j].push_back(i);
  }
  return parts;
}

GroupElement::GroupElement(Scalar q, Scalar z) : q_(std::move(q)), z_(std::move(z)) {
  if (q_.norm2() != 1) throw Error("group element needs |q|^2 = 1, got q = " + q_.str());
}

GroupElement GroupElement::inverse() const {
  Scalar qi = q_.conj();
  return GroupElement(qi, -(qi * z_));
}

Disk act(const GroupElement& g, const Disk& d) { return Disk(g.apply(d.center), d.radius); }

BasisElement act(const GroupElement& g, const BasisElement& L) {
  std::vector<Disk> out;
  out.reserve(L.size());
  for (const auto& d : L.disks()) out.push_back(act(g, d));
  return BasisElement(std::move(out));
}

std::vector<std::vector<std::size_t>> connected_components(const std::vector<Disk>& disks) {
  std::vector<std::size_t> parent(disks.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j)
      if (!disjoint(disks[i], disks[j])) parent[find(j)] = find(i);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(disks.size(), disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    std::size_t r = find(i);
    if (slot[r] == disks.size()) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(i);
  }
  return comps;
}

namespace {

bool in_union(const DiskUnion& U, const Scalar& z) {
  return std::any_of(U.begin(), U.end(), [&](const Disk& d) { return d.contains_point(z); });
}

}  // namespace

std::optional<std::vector<Scalar>> weiss_violation(const std::vector<DiskUnion>& cover, const DiskUnion& U,
                                                   const std::vector<Scalar>& grid, std::size_t max_card) {
  std::vector<Scalar> pts;
  for (const auto& p : grid)
    if (in_union(U, p)) pts.push_back(p);
  std::vector<std::size_t> idx;
  std::optional<std::vector<Scalar>> bad;
  auto covered = [&] {
    return std::any_of(cover.begin(), cover.end(), [&](const DiskUnion& c) {
      return std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return in_union(c, pts[i]); });
    });
  };
  // Enumerate subsets of size 1..max_card in lexicographic order.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (bad) return;
    if (!idx.empty() && !covered()) {
      bad.emplace();
      for (std::size_t i : idx) bad->push_back(pts[i]);
      return;
    }
    if (idx.size() == max_card) return;
    for (std::size_t i = start; i < pts.size() && !bad; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return bad;
}

std::vector<Scalar> pythagorean_units() {
  std::vector<Scalar> base = {Scalar(1),
                              Scalar::i(),
                              Scalar(-1),
                              -Scalar::i(),
                              Scalar(Rational(3, 5), Rational(4, 5)),
                              Scalar(Rational(5, 13), Rational(12, 13)),
                              Scalar(Rational(8, 17), Rational(15, 17)),
                              Scalar(Rational(-7, 25), Rational(24, 25))};
  std::vector<Scalar> out = base;
  for (std::size_t k = 4; k < base.size(); ++k) out.push_back(base[k].conj());
  return out;
}

}  // namespace vfa
