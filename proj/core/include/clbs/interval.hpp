#pragma once

// Half-open rational intervals, canonical finite unions of them, and
// orientation-preserving piecewise-affine partial bijections.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clbs/rational.hpp"

namespace clbs {

class EmptySetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The set [lo, hi). Construction requires lo < hi.
class HalfOpenInterval {
 public:
  HalfOpenInterval(Rational lo, Rational hi);

  [[nodiscard]] const Rational& lo() const { return lo_; }
  [[nodiscard]] const Rational& hi() const { return hi_; }
  [[nodiscard]] Rational length() const { return hi_ - lo_; }
  [[nodiscard]] bool contains(const Rational& x) const {
    return lo_ <= x && x < hi_;
  }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const HalfOpenInterval&,
                         const HalfOpenInterval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

/// Finite union of half-open intervals in canonical form: parts sorted by lo,
/// pairwise disjoint, and no two parts touching. Set equality is therefore
/// structural equality.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(HalfOpenInterval part);

  /// Builds the union of arbitrary (possibly overlapping) intervals.
  static IntervalUnion from_parts(std::vector<HalfOpenInterval> parts);

  [[nodiscard]] const std::vector<HalfOpenInterval>& parts() const {
    return parts_;
  }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }
  [[nodiscard]] bool contains(const Rational& x) const;

  /// "{[lo,hi), [lo,hi), ...}"; the empty union prints as "{}".
  [[nodiscard]] std::string str() const;
  static IntervalUnion parse(std::string_view text);

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<HalfOpenInterval> parts_;
};

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion difference(const IntervalUnion& a, const IntervalUnion& b);
bool is_subset(const IntervalUnion& a, const IntervalUnion& b);
Rational total_length(const IntervalUnion& a);

/// Leftmost point of a non-empty union; throws EmptySetError otherwise.
Rational pick_point(const IntervalUnion& a);

/// x ↦ slope·x + offset on [lo, hi), slope > 0.
class AffinePiece {
 public:
  AffinePiece(HalfOpenInterval domain, Rational slope, Rational offset);

  [[nodiscard]] const HalfOpenInterval& domain() const { return domain_; }
  [[nodiscard]] const Rational& slope() const { return slope_; }
  [[nodiscard]] const Rational& offset() const { return offset_; }
  [[nodiscard]] Rational operator()(const Rational& x) const {
    return slope_ * x + offset_;
  }
  [[nodiscard]] HalfOpenInterval image() const;
  [[nodiscard]] bool same_affine(const AffinePiece& o) const {
    return slope_ == o.slope_ && offset_ == o.offset_;
  }

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;

 private:
  HalfOpenInterval domain_;
  Rational slope_;
  Rational offset_;
};

/// Injective piecewise-affine partial map. Pieces are kept sorted by domain,
/// with pairwise disjoint domains and images; touching pieces that share the
/// same affine law are merged, so equal maps compare equal.
class PiecewiseLinearMap {
 public:
  PiecewiseLinearMap() = default;

  /// Throws std::invalid_argument if domains or images overlap.
  static PiecewiseLinearMap from_pieces(std::vector<AffinePiece> pieces);
  static PiecewiseLinearMap identity(const IntervalUnion& on);

  [[nodiscard]] const std::vector<AffinePiece>& pieces() const {
    return pieces_;
  }
  [[nodiscard]] bool empty() const { return pieces_.empty(); }
  [[nodiscard]] IntervalUnion domain() const;
  [[nodiscard]] IntervalUnion image() const;

  /// Piece whose domain contains x, if any.
  [[nodiscard]] const AffinePiece* piece_at(const Rational& x) const;
  [[nodiscard]] std::optional<Rational> apply(const Rational& x) const;

  friend bool operator==(const PiecewiseLinearMap&,
                         const PiecewiseLinearMap&) = default;

 private:
  std::vector<AffinePiece> pieces_;
};

PiecewiseLinearMap invert(const PiecewiseLinearMap& f);

/// outer ∘ inner, defined where inner is defined and lands in outer's domain.
PiecewiseLinearMap compose(const PiecewiseLinearMap& outer,
                           const PiecewiseLinearMap& inner);

PiecewiseLinearMap restrict_to(const PiecewiseLinearMap& f,
                               const IntervalUnion& on);

}  // namespace clbs
