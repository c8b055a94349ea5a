#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace wreathlab {

/// Overflow-checked integer arithmetic; the group law on Z never wraps.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  std::int64_t r;
  if (__builtin_sub_overflow(std::int64_t{0}, a, &r)) throw Error(ErrorCode::Overflow, "integer negation");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication");
  return r;
}

/**
 * A group element in canonical form.
 *
 * Layout by kind:
 *   Int     scalar holds the integer
 *   Fin     scalar holds the index into a finite group's element list (0 = identity)
 *   Pair    parts = {left, right}
 *   Wreath  parts = {top, pos_0, val_0, pos_1, val_1, ...} with positions strictly increasing
 *
 * Elements carry no pointer to their group; the group that produced them interprets them.
 */
class Element {
 public:
  enum class Kind : std::uint8_t { Int = 0, Fin = 1, Pair = 2, Wreath = 3 };

  Element() = default;

  static Element integer(std::int64_t v) { return Element(Kind::Int, v, {}); }
  static Element fin(std::int64_t index) { return Element(Kind::Fin, index, {}); }
  static Element pair(Element left, Element right) {
    std::vector<Element> parts;
    parts.reserve(2);
    parts.push_back(std::move(left));
    parts.push_back(std::move(right));
    return Element(Kind::Pair, 0, std::move(parts));
  }
  /// `flat` is {top, pos_0, val_0, ...}; the caller guarantees canonical lamp order.
  static Element wreath_from_flat(std::vector<Element> flat) {
    return Element(Kind::Wreath, 0, std::move(flat));
  }

  Kind kind() const noexcept { return kind_; }
  std::int64_t scalar() const noexcept { return scalar_; }
  std::span<const Element> parts() const noexcept { return parts_; }

  const Element& left() const { return parts_.at(0); }
  const Element& right() const { return parts_.at(1); }

  const Element& top() const { return parts_.at(0); }
  std::size_t lamp_count() const noexcept { return parts_.empty() ? 0 : (parts_.size() - 1) / 2; }
  const Element& lamp_position(std::size_t i) const { return parts_[1 + 2 * i]; }
  const Element& lamp_value(std::size_t i) const { return parts_[2 + 2 * i]; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.kind_ == b.kind_ && a.scalar_ == b.scalar_ && a.parts_ == b.parts_;
  }

  // Int: numeric; Fin: index; Pair and Wreath: lexicographic over parts.
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.scalar_ <=> b.scalar_; c != 0) return c;
    const std::size_t n = std::min(a.parts_.size(), b.parts_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.parts_[i] <=> b.parts_[i]; c != 0) return c;
    }
    return a.parts_.size() <=> b.parts_.size();
  }

  std::size_t hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
    h ^= std::hash<std::int64_t>{}(scalar_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    for (const Element& p : parts_) h ^= p.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// Canonical byte encoding. Equal elements have equal encodings and vice versa.
  std::string encode() const {
    std::string out;
    encode_into(out);
    return out;
  }

  static Element decode(std::string_view bytes) {
    std::size_t at = 0;
    Element e = decode_from(bytes, at);
    if (at != bytes.size()) throw Error(ErrorCode::InvalidArgument, "trailing bytes after element encoding");
    return e;
  }

 private:
  Element(Kind kind, std::int64_t scalar, std::vector<Element> parts)
      : kind_(kind), scalar_(scalar), parts_(std::move(parts)) {}

  static void put_u64(std::string& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xff));
  }

  static std::uint64_t get_u64(std::string_view in, std::size_t& at) {
    if (at + 8 > in.size()) throw Error(ErrorCode::InvalidArgument, "truncated element encoding");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<unsigned char>(in[at++]);
    return v;
  }

  void encode_into(std::string& out) const {
    out.push_back(static_cast<char>(kind_));
    switch (kind_) {
      case Kind::Int:
      case Kind::Fin:
        put_u64(out, static_cast<std::uint64_t>(scalar_));
        break;
      case Kind::Pair:
        parts_[0].encode_into(out);
        parts_[1].encode_into(out);
        break;
      case Kind::Wreath:
        put_u64(out, lamp_count());
        for (const Element& p : parts_) p.encode_into(out);
        break;
    }
  }

  static Element decode_from(std::string_view in, std::size_t& at) {
    if (at >= in.size()) throw Error(ErrorCode::InvalidArgument, "truncated element encoding");
    const auto tag = static_cast<unsigned char>(in[at++]);
    switch (tag) {
      case static_cast<unsigned char>(Kind::Int):
        return integer(static_cast<std::int64_t>(get_u64(in, at)));
      case static_cast<unsigned char>(Kind::Fin):
        return fin(static_cast<std::int64_t>(get_u64(in, at)));
      case static_cast<unsigned char>(Kind::Pair): {
        Element l = decode_from(in, at);
        Element r = decode_from(in, at);
        return pair(std::move(l), std::move(r));
      }
      case static_cast<unsigned char>(Kind::Wreath): {
        const std::uint64_t lamps = get_u64(in, at);
        if (lamps > in.size()) throw Error(ErrorCode::InvalidArgument, "implausible lamp count");
        std::vector<Element> flat;
        flat.reserve(1 + 2 * lamps);
        for (std::uint64_t i = 0; i < 1 + 2 * lamps; ++i) flat.push_back(decode_from(in, at));
        return wreath_from_flat(std::move(flat));
      }
      default:
        throw Error(ErrorCode::InvalidArgument, "unknown element tag");
    }
  }

  Kind kind_ = Kind::Int;
  std::int64_t scalar_ = 0;
  std::vector<Element> parts_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

}  // namespace wreathlab
