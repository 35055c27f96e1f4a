#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kinalg/error.hpp"

namespace kinalg {

inline constexpr std::size_t kMaxVariables = 32;

/// Ordered set of distinct variable names. The order fixes variable
/// precedence for every monomial order built over it.
class VariableUniverse {
 public:
  explicit VariableUniverse(std::vector<std::string> names)
      : names_(std::move(names)) {
    if (names_.size() > kMaxVariables)
      throw InvalidArgument("too many variables (max " +
                            std::to_string(kMaxVariables) + ")");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw InvalidArgument("empty variable name");
      if (!index_.emplace(names_[i], i).second)
        throw InvalidArgument("duplicate variable '" + names_[i] + "'");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view n) const {
    auto it = index_.find(std::string(n));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(std::string_view n) const {
    auto i = find(n);
    if (!i) throw InvalidArgument("unknown variable '" + std::string(n) + "'");
    return *i;
  }
  bool contains(std::string_view n) const { return find(n).has_value(); }

  friend bool operator==(const VariableUniverse& a, const VariableUniverse& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using Universe = std::shared_ptr<const VariableUniverse>;

inline Universe make_universe(std::vector<std::string> names) {
  return std::make_shared<const VariableUniverse>(std::move(names));
}

inline bool same_universe(const Universe& a, const Universe& b) {
  return a == b || (a && b && *a == *b);
}

/// Exponent vector with one entry per universe variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : size_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVariables) throw InvalidArgument("monomial too wide");
  }
  Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }

  std::size_t size() const { return size_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, unsigned e) {
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<std::uint16_t>(e);
  }

  /// Bit i set iff variable i occurs.
  std::uint32_t support() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < size_; ++i)
      if (exps_[i]) m |= (1u << i);
    return m;
  }

  bool divides(const Monomial& o) const {
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < size_; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
      r.exps_[i] = static_cast<std::uint16_t>(a.exps_[i] + b.exps_[i]);
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// a / b; requires b | a.
  static Monomial quotient(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
      r.exps_[i] = static_cast<std::uint16_t>(a.exps_[i] - b.exps_[i]);
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) {
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) {
      r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.exps_[i] && b.exps_[i]) return false;
    return true;
  }

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned e = 1) {
    Monomial m(nvars);
    m.set(i, e);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.size_ == b.size_ && a.exps_ == b.exps_;
  }

  /// Plain lexicographic comparison of exponent vectors; used as the
  /// storage order of polynomials, not as a term order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] <=> b.exps_[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < size_; ++i) h = (h ^ exps_[i]) * 1099511628211ull;
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint8_t size_ = 0;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace kinalg
