#pragma once

#include <compare>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kinalg/error.hpp"
#include "kinalg/monomial.hpp"

namespace kinalg {

enum class OrderKind { lex, degrevlex };

struct OrderBlock {
  OrderKind kind = OrderKind::degrevlex;
  std::vector<std::size_t> vars;  // ascending universe indices
};

/// Term order over a universe: lex, degrevlex, or a product of blocks where
/// the first block is most significant.
class MonomialOrder {
 public:
  enum class Kind { lex, degrevlex, block };

  MonomialOrder() = default;

  static MonomialOrder lex(std::size_t nvars) {
    return MonomialOrder(Kind::lex, {{OrderKind::lex, iota(nvars)}}, nvars);
  }
  static MonomialOrder degrevlex(std::size_t nvars) {
    return MonomialOrder(Kind::degrevlex, {{OrderKind::degrevlex, iota(nvars)}},
                         nvars);
  }
  static MonomialOrder of_kind(OrderKind k, std::size_t nvars) {
    return k == OrderKind::lex ? lex(nvars) : degrevlex(nvars);
  }

  /// Blocks must partition {0..nvars-1}; variables inside a block keep
  /// their universe precedence.
  static MonomialOrder block(std::vector<OrderBlock> blocks, std::size_t nvars) {
    std::vector<int> seen(nvars, 0);
    for (auto& b : blocks) {
      std::sort(b.vars.begin(), b.vars.end());
      for (auto v : b.vars) {
        if (v >= nvars) throw InvalidArgument("block variable out of range");
        if (seen[v]++) throw InvalidArgument("block order repeats a variable");
      }
    }
    for (int s : seen)
      if (!s) throw InvalidArgument("block order does not cover the universe");
    std::erase_if(blocks, [](const OrderBlock& b) { return b.vars.empty(); });
    return MonomialOrder(Kind::block, std::move(blocks), nvars);
  }

  /// Two-block elimination order: `first` variables dominate the rest.
  static MonomialOrder elimination(const std::vector<std::size_t>& first,
                                   std::size_t nvars,
                                   OrderKind first_kind = OrderKind::degrevlex,
                                   OrderKind rest_kind = OrderKind::degrevlex) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < nvars; ++i)
      if (std::find(first.begin(), first.end(), i) == first.end()) rest.push_back(i);
    return block({{first_kind, first}, {rest_kind, rest}}, nvars);
  }

  Kind kind() const { return kind_; }
  std::size_t size() const { return nvars_; }
  const std::vector<OrderBlock>& blocks() const { return blocks_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    for (const auto& blk : blocks_) {
      auto c = blk.kind == OrderKind::lex ? cmp_lex(a, b, blk.vars)
                                          : cmp_grevlex(a, b, blk.vars);
      if (c != 0) return c;
    }
    return std::strong_ordering::equal;
  }
  bool greater(const Monomial& a, const Monomial& b) const {
    return compare(a, b) > 0;
  }

  /// Text form: "lex", "degrevlex", or "block:lex(a3,a1)|degrevlex(*)".
  std::string describe(const VariableUniverse& u) const {
    if (kind_ == Kind::lex) return "lex";
    if (kind_ == Kind::degrevlex) return "degrevlex";
    std::ostringstream os;
    os << "block:";
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (b) os << '|';
      os << (blocks_[b].kind == OrderKind::lex ? "lex(" : "degrevlex(");
      for (std::size_t i = 0; i < blocks_[b].vars.size(); ++i)
        os << (i ? "," : "") << u.name(blocks_[b].vars[i]);
      os << ')';
    }
    return os.str();
  }

  /// Inverse of describe(); a block may use "*" for all unlisted variables.
  static MonomialOrder parse(std::string_view text, const VariableUniverse& u) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    if (text == "lex") return lex(u.size());
    if (text == "degrevlex" || text == "grevlex" || text == "dp")
      return degrevlex(u.size());
    if (text.substr(0, 6) != "block:")
      throw ParseError("unknown monomial order '" + std::string(text) + "'", 0, 0);
    text.remove_prefix(6);
    std::vector<OrderBlock> blocks;
    int star = -1;
    std::vector<int> used(u.size(), 0);
    while (!text.empty()) {
      auto bar = text.find('|');
      auto part = trim(text.substr(0, bar));
      text = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
      auto open = part.find('(');
      if (open == std::string_view::npos || part.back() != ')')
        throw ParseError("malformed order block '" + std::string(part) + "'", 0, 0);
      auto kname = trim(part.substr(0, open));
      OrderBlock blk;
      if (kname == "lex") blk.kind = OrderKind::lex;
      else if (kname == "degrevlex" || kname == "grevlex" || kname == "dp")
        blk.kind = OrderKind::degrevlex;
      else throw ParseError("unknown block kind '" + std::string(kname) + "'", 0, 0);
      auto inner = part.substr(open + 1, part.size() - open - 2);
      while (!inner.empty()) {
        auto comma = inner.find(',');
        auto name = trim(inner.substr(0, comma));
        inner = comma == std::string_view::npos ? std::string_view{}
                                                : inner.substr(comma + 1);
        if (name == "*") {
          if (star >= 0) throw ParseError("order uses '*' twice", 0, 0);
          star = static_cast<int>(blocks.size());
          continue;
        }
        auto idx = u.find(name);
        if (!idx) throw ParseError("order names unknown variable '" +
                                   std::string(name) + "'", 0, 0);
        blk.vars.push_back(*idx);
        used[*idx] = 1;
      }
      blocks.push_back(std::move(blk));
    }
    if (star >= 0)
      for (std::size_t i = 0; i < u.size(); ++i)
        if (!used[i]) blocks[star].vars.push_back(i);
    try {
      return block(std::move(blocks), u.size());
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), 0, 0);
    }
  }

 private:
  MonomialOrder(Kind k, std::vector<OrderBlock> blocks, std::size_t n)
      : kind_(k), blocks_(std::move(blocks)), nvars_(n) {}

  static std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
  }

  static std::strong_ordering cmp_lex(const Monomial& a, const Monomial& b,
                                      const std::vector<std::size_t>& vars) {
    for (auto v : vars)
      if (a[v] != b[v]) return a[v] <=> b[v];
    return std::strong_ordering::equal;
  }

  static std::strong_ordering cmp_grevlex(const Monomial& a, const Monomial& b,
                                          const std::vector<std::size_t>& vars) {
    unsigned da = 0, db = 0;
    if (vars.size() == a.size()) {
      da = a.degree();
      db = b.degree();
    } else {
      for (auto v : vars) {
        da += a[v];
        db += b[v];
      }
    }
    if (da != db) return da <=> db;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (a[*it] != b[*it]) return b[*it] <=> a[*it];
    return std::strong_ordering::equal;
  }

  Kind kind_ = Kind::degrevlex;
  std::vector<OrderBlock> blocks_;
  std::size_t nvars_ = 0;
};

inline std::strong_ordering monomial_compare(const Monomial& a, const Monomial& b,
                                             const MonomialOrder& order) {
  return order.compare(a, b);
}

}  // namespace kinalg
