#include "clbs/interval.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace clbs {

HalfOpenInterval::HalfOpenInterval(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_)) {
    throw std::invalid_argument("empty interval [" + lo_.str() + "," +
                                hi_.str() + ")");
  }
}

std::string HalfOpenInterval::str() const {
  return "[" + lo_.str() + "," + hi_.str() + ")";
}

IntervalUnion::IntervalUnion(HalfOpenInterval part) {
  parts_.push_back(std::move(part));
}

IntervalUnion IntervalUnion::from_parts(std::vector<HalfOpenInterval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.lo() < b.lo(); });
  IntervalUnion out;
  for (auto& p : parts) {
    if (!out.parts_.empty() && p.lo() <= out.parts_.back().hi()) {
      if (out.parts_.back().hi() < p.hi()) {
        out.parts_.back() = HalfOpenInterval(out.parts_.back().lo(), p.hi());
      }
    } else {
      out.parts_.push_back(std::move(p));
    }
  }
  return out;
}

bool IntervalUnion::contains(const Rational& x) const {
  // first part with hi > x
  auto it = std::upper_bound(
      parts_.begin(), parts_.end(), x,
      [](const Rational& v, const HalfOpenInterval& p) { return v < p.hi(); });
  return it != parts_.end() && it->lo() <= x;
}

std::string IntervalUnion::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ", ";
    s += parts_[i].str();
  }
  return s + "}";
}

IntervalUnion IntervalUnion::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw std::invalid_argument("interval union: expected '" +
                                  std::string(1, c) + "' at position " +
                                  std::to_string(pos));
    }
    ++pos;
  };
  auto number_until = [&](char stop) {
    skip_ws();
    auto end = text.find(stop, pos);
    if (end == std::string_view::npos) {
      throw std::invalid_argument("interval union: unterminated bound");
    }
    auto tok = text.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
      tok.remove_suffix(1);
    pos = end;
    return Rational::parse(tok);
  };

  expect('{');
  std::vector<HalfOpenInterval> parts;
  skip_ws();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      expect('[');
      Rational lo = number_until(',');
      expect(',');
      Rational hi = number_until(')');
      expect(')');
      parts.emplace_back(lo, hi);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect('}');
      break;
    }
  }
  skip_ws();
  if (pos != text.size()) {
    throw std::invalid_argument("interval union: trailing characters");
  }
  return from_parts(std::move(parts));
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<HalfOpenInterval> all(a.parts());
  all.insert(all.end(), b.parts().begin(), b.parts().end());
  return IntervalUnion::from_parts(std::move(all));
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<HalfOpenInterval> out;
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    const Rational& lo = std::max(pa[i].lo(), pb[j].lo());
    const Rational& hi = std::min(pa[i].hi(), pb[j].hi());
    if (lo < hi) out.emplace_back(lo, hi);
    if (pa[i].hi() < pb[j].hi()) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion::from_parts(std::move(out));
}

IntervalUnion difference(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<HalfOpenInterval> out;
  const auto& pb = b.parts();
  std::size_t j = 0;
  for (const auto& part : a.parts()) {
    Rational cursor = part.lo();
    while (j < pb.size() && pb[j].hi() <= cursor) ++j;
    std::size_t k = j;
    while (k < pb.size() && pb[k].lo() < part.hi()) {
      if (cursor < pb[k].lo()) out.emplace_back(cursor, pb[k].lo());
      if (cursor < pb[k].hi()) cursor = pb[k].hi();
      if (!(cursor < part.hi())) break;
      ++k;
    }
    if (cursor < part.hi()) out.emplace_back(cursor, part.hi());
  }
  return IntervalUnion::from_parts(std::move(out));
}

bool is_subset(const IntervalUnion& a, const IntervalUnion& b) {
  return difference(a, b).empty();
}

Rational total_length(const IntervalUnion& a) {
  Rational sum;
  for (const auto& p : a.parts()) sum += p.length();
  return sum;
}

Rational pick_point(const IntervalUnion& a) {
  if (a.empty()) throw EmptySetError("pick_point: empty interval union");
  return a.parts().front().lo();
}

AffinePiece::AffinePiece(HalfOpenInterval domain, Rational slope,
                         Rational offset)
    : domain_(std::move(domain)),
      slope_(std::move(slope)),
      offset_(std::move(offset)) {
  if (slope_.sign() <= 0) {
    throw std::invalid_argument("affine piece slope must be positive, got " +
                                slope_.str());
  }
}

HalfOpenInterval AffinePiece::image() const {
  return HalfOpenInterval((*this)(domain_.lo()), (*this)(domain_.hi()));
}

PiecewiseLinearMap PiecewiseLinearMap::from_pieces(
    std::vector<AffinePiece> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
    return a.domain().lo() < b.domain().lo();
  });
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].domain().lo() < pieces[i - 1].domain().hi()) {
      throw std::invalid_argument("piecewise map: overlapping domains " +
                                  pieces[i - 1].domain().str() + " and " +
                                  pieces[i].domain().str());
    }
  }
  std::vector<HalfOpenInterval> images;
  images.reserve(pieces.size());
  for (const auto& p : pieces) images.push_back(p.image());
  std::sort(images.begin(), images.end(),
            [](const auto& a, const auto& b) { return a.lo() < b.lo(); });
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (images[i].lo() < images[i - 1].hi()) {
      throw std::invalid_argument("piecewise map: overlapping images " +
                                  images[i - 1].str() + " and " +
                                  images[i].str());
    }
  }

  PiecewiseLinearMap f;
  for (auto& p : pieces) {
    if (!f.pieces_.empty()) {
      auto& last = f.pieces_.back();
      if (last.domain().hi() == p.domain().lo() && last.same_affine(p)) {
        last = AffinePiece(HalfOpenInterval(last.domain().lo(), p.domain().hi()),
                           last.slope(), last.offset());
        continue;
      }
    }
    f.pieces_.push_back(std::move(p));
  }
  return f;
}

PiecewiseLinearMap PiecewiseLinearMap::identity(const IntervalUnion& on) {
  PiecewiseLinearMap f;
  for (const auto& p : on.parts()) f.pieces_.emplace_back(p, 1, 0);
  return f;
}

IntervalUnion PiecewiseLinearMap::domain() const {
  std::vector<HalfOpenInterval> parts;
  parts.reserve(pieces_.size());
  for (const auto& p : pieces_) parts.push_back(p.domain());
  return IntervalUnion::from_parts(std::move(parts));
}

IntervalUnion PiecewiseLinearMap::image() const {
  std::vector<HalfOpenInterval> parts;
  parts.reserve(pieces_.size());
  for (const auto& p : pieces_) parts.push_back(p.image());
  return IntervalUnion::from_parts(std::move(parts));
}

const AffinePiece* PiecewiseLinearMap::piece_at(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const AffinePiece& p) {
                               return v < p.domain().hi();
                             });
  if (it == pieces_.end() || !it->domain().contains(x)) return nullptr;
  return &*it;
}

std::optional<Rational> PiecewiseLinearMap::apply(const Rational& x) const {
  if (const AffinePiece* p = piece_at(x)) return (*p)(x);
  return std::nullopt;
}

PiecewiseLinearMap invert(const PiecewiseLinearMap& f) {
  std::vector<AffinePiece> out;
  out.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) {
    Rational slope = Rational(1) / p.slope();
    out.emplace_back(p.image(), slope, -p.offset() * slope);
  }
  return PiecewiseLinearMap::from_pieces(std::move(out));
}

PiecewiseLinearMap compose(const PiecewiseLinearMap& outer,
                           const PiecewiseLinearMap& inner) {
  const auto& op = outer.pieces();
  std::vector<AffinePiece> out;
  for (const auto& in : inner.pieces()) {
    HalfOpenInterval img = in.image();
    auto it = std::upper_bound(op.begin(), op.end(), img.lo(),
                               [](const Rational& v, const AffinePiece& p) {
                                 return v < p.domain().hi();
                               });
    for (; it != op.end() && it->domain().lo() < img.hi(); ++it) {
      const Rational& lo = std::max(img.lo(), it->domain().lo());
      const Rational& hi = std::min(img.hi(), it->domain().hi());
      if (!(lo < hi)) continue;
      Rational pre_lo = (lo - in.offset()) / in.slope();
      Rational pre_hi = (hi - in.offset()) / in.slope();
      out.emplace_back(HalfOpenInterval(pre_lo, pre_hi),
                       it->slope() * in.slope(),
                       it->slope() * in.offset() + it->offset());
    }
  }
  return PiecewiseLinearMap::from_pieces(std::move(out));
}

PiecewiseLinearMap restrict_to(const PiecewiseLinearMap& f,
                               const IntervalUnion& on) {
  return compose(f, PiecewiseLinearMap::identity(on));
}

}  // namespace clbs
