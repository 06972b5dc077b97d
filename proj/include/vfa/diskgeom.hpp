#pragma once

#include "vfa/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vfa {

/// Positive rational radius or infinity.
class Radius {
 public:
  Radius(Rational r);  // NOLINT(google-explicit-constructor)
  Radius(long r) : Radius(Rational(r)) {}  // NOLINT(google-explicit-constructor)
  static Radius infinite() { return Radius(); }

  bool is_infinite() const { return !value_; }
  const Rational& value() const;
  std::string str() const { return value_ ? value_->get_str() : "inf"; }

  friend bool operator==(const Radius& a, const Radius& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Radius& a, const Radius& b);

 private:
  Radius() = default;
  std::optional<Rational> value_;
};

/// Open disk D_r(c); the infinite radius denotes the whole plane.
struct Disk {
  Scalar center;
  Radius radius{1};

  Disk(Scalar c, Radius r) : center(std::move(c)), radius(std::move(r)) {}
  static Disk plane() { return Disk(Scalar{}, Radius::infinite()); }

  /// Strict interior membership, exact.
  bool contains_point(const Scalar& z) const;
  std::string str() const;

  friend bool operator==(const Disk& a, const Disk& b) { return a.center == b.center && a.radius == b.radius; }
};

/// Canonical order: center real part, center imaginary part, radius.
bool disk_less(const Disk& a, const Disk& b);

bool contains(const Disk& inner, const Disk& outer);
/// Tangent open disks count as disjoint.
bool disjoint(const Disk& a, const Disk& b);

/// A finite family of pairwise disjoint disks (possibly empty).
class BasisElement {
 public:
  BasisElement() = default;
  /// Throws if two disks overlap.
  explicit BasisElement(std::vector<Disk> disks);

  const std::vector<Disk>& disks() const { return disks_; }
  std::size_t size() const { return disks_.size(); }
  bool empty() const { return disks_.empty(); }
  const Disk& operator[](std::size_t i) const { return disks_[i]; }

  /// Disjoint union; throws when the two families overlap.
  BasisElement disjoint_union(const BasisElement& other) const;
  bool disjoint_from(const BasisElement& other) const;
  /// Every disk of this family inside some disk of `other`.
  bool subset_of(const BasisElement& other) const;

  std::string str() const;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;

 private:
  std::vector<Disk> disks_;
};

/// For each disk of M, the indices of the disks of L it contains.
/// Throws when a disk of L lies in no disk of M.
std::vector<std::vector<std::size_t>> decompose(const BasisElement& L, const BasisElement& M);

/// Element (q, z) of S^1 x| C acting by zeta -> q zeta + z.
class GroupElement {
 public:
  GroupElement() : q_(1), z_(0) {}
  /// Throws unless |q|^2 = 1.
  GroupElement(Scalar q, Scalar z);

  const Scalar& q() const { return q_; }
  const Scalar& z() const { return z_; }

  Scalar apply(const Scalar& p) const { return q_ * p + z_; }
  /// (q,z)(q',z') = (qq', z + q z').
  GroupElement operator*(const GroupElement& o) const { return GroupElement(q_ * o.q_, z_ + q_ * o.z_); }
  GroupElement inverse() const;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Scalar q_;
  Scalar z_;
};

Disk act(const GroupElement& g, const Disk& d);
BasisElement act(const GroupElement& g, const BasisElement& L);

/// Components of the overlap graph, each sorted, ordered by smallest index.
std::vector<std::vector<std::size_t>> connected_components(const std::vector<Disk>& disks);

/// An open set given as a union of disks.
using DiskUnion = std::vector<Disk>;

/// Weiss property on a finite sample: every subset of at most `max_card`
/// points of `grid` that lies in the union `U` must lie in a single cover
/// element.  Returns the first offending point set, if any.
std::optional<std::vector<Scalar>> weiss_violation(const std::vector<DiskUnion>& cover, const DiskUnion& U,
                                                   const std::vector<Scalar>& grid, std::size_t max_card = 3);

/// Gaussian-rational points of S^1 used for exact rotations.
std::vector<Scalar> pythagorean_units();

}  // namespace vfa
