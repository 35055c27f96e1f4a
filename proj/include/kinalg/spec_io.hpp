#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kinalg/bennett.hpp"

namespace kinalg {

/// Mechanism file, line oriented, '#' starts a comment:
///
///   name cube
///   family bricard         # closed-form parametrization, optional
///   loop closed            # or open
///   [parameters]
///   m0 = 7/4
///   [bodies]
///   f fixed
///   a
///   [joints]
///   f a point 0 0 1 axis 0 0 1 plane 1 0 0 0 1 0
///   [initial]
///   a 1/2 1/2 1/2 -1/2
///   [variables]
///   a3 a1 a2 a0
///   [essential]
///   a2 a0
///
/// Numbers are integers or p/q. A file with parameters m0, m1, m2 and no
/// bodies stands for the 4R loop at those parameters.
struct MechanismFile {
  MechanismSpec spec;
  InitialConfiguration init;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == '=') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '=' && line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline Rational parse_exact(const Token& t, std::size_t line) {
  for (char c : t.text)
    if (c == '.' || c == 'e' || c == 'E')
      throw ParseError("decimal number '" + t.text + "' not allowed; write p/q", line, t.column);
  std::size_t k = t.text[0] == '-' || t.text[0] == '+' ? 1 : 0;
  bool slash = false, digit = false;
  for (; k < t.text.size(); ++k) {
    char c = t.text[k];
    if (c == '/' && !slash && digit) {
      slash = true;
      digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else {
      throw ParseError("malformed number '" + t.text + "'", line, t.column);
    }
  }
  if (!digit) throw ParseError("malformed number '" + t.text + "'", line, t.column);
  try {
    return Rational::parse(t.text[0] == '+' ? t.text.substr(1) : t.text);
  } catch (const Error& e) {
    throw ParseError(e.what(), line, t.column);
  }
}

inline Vector3 parse_vec(const std::vector<Token>& toks, std::size_t& i, std::size_t line,
                         const std::string& what) {
  if (i + 3 > toks.size()) {
    std::size_t col = i < toks.size() ? toks[i].column : (toks.empty() ? 1 : toks.back().column);
    throw ParseError(what + " needs three coordinates", line, col);
  }
  Vector3 v{parse_exact(toks[i], line), parse_exact(toks[i + 1], line),
            parse_exact(toks[i + 2], line)};
  i += 3;
  return v;
}

}  // namespace detail

inline MechanismFile parse_mechanism_text(const std::string& text) {
  MechanismFile f;
  auto& s = f.spec;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> body_index;
  struct PendingJoint {
    std::string prev, next;
    JointSpec joint;
    std::size_t line, column;
  };
  std::vector<PendingJoint> pending;
  std::map<std::string, std::pair<std::size_t, std::size_t>> init_at;
  bool have_name = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const auto& head = toks[0];
    if (head.text.front() == '[') {
      if (head.text.back() != ']' || toks.size() != 1)
        throw ParseError("malformed section header", lineno, head.column);
      section = head.text.substr(1, head.text.size() - 2);
      if (section != "parameters" && section != "bodies" && section != "joints" &&
          section != "initial" && section != "variables" && section != "essential")
        throw ParseError("unknown section [" + section + "]", lineno, head.column);
      continue;
    }
    if (section.empty()) {
      if (head.text == "name" && toks.size() == 2) {
        s.name = toks[1].text;
        have_name = true;
      } else if (head.text == "family" && toks.size() == 2 &&
                 (toks[1].text == "bricard" || toks[1].text == "bennett")) {
        s.family = toks[1].text;
      } else if (head.text == "loop" && toks.size() == 2 &&
                 (toks[1].text == "closed" || toks[1].text == "open")) {
        s.closed = toks[1].text == "closed";
      } else {
        throw ParseError("expected 'name <word>', 'family bricard|bennett', 'loop closed|open' "
                         "or a section", lineno,
                         head.column);
      }
    } else if (section == "parameters") {
      if (toks.size() != 2) throw ParseError("expected 'name = p/q'", lineno, head.column);
      if (!s.parameters.emplace(head.text, detail::parse_exact(toks[1], lineno)).second)
        throw ParseError("duplicate parameter '" + head.text + "'", lineno, head.column);
    } else if (section == "bodies") {
      bool fixed = false;
      if (toks.size() == 2 && toks[1].text == "fixed") fixed = true;
      else if (toks.size() != 1)
        throw ParseError("expected '<name>' or '<name> fixed'", lineno, toks[1].column);
      for (char c : head.text)
        if (!std::isalpha(static_cast<unsigned char>(c)))
          throw ParseError("body name '" + head.text + "' must be alphabetic", lineno,
                           head.column);
      if (!body_index.emplace(head.text, s.bodies.size()).second)
        throw ParseError("duplicate body '" + head.text + "'", lineno, head.column);
      s.bodies.push_back({head.text, fixed});
    } else if (section == "joints") {
      if (toks.size() < 2) throw ParseError("expected '<prev> <next> ...'", lineno, head.column);
      PendingJoint pj{head.text, toks[1].text, {}, lineno, head.column};
      bool point = false, axis = false;
      std::size_t i = 2;
      while (i < toks.size()) {
        const auto& key = toks[i++];
        if (key.text == "point") {
          pj.joint.point = detail::parse_vec(toks, i, lineno, "point");
          point = true;
        } else if (key.text == "axis") {
          pj.joint.axis = detail::parse_vec(toks, i, lineno, "axis");
          axis = true;
        } else if (key.text == "plane") {
          auto eta = detail::parse_vec(toks, i, lineno, "plane");
          auto xi = detail::parse_vec(toks, i, lineno, "plane");
          pj.joint.plane = std::pair{eta, xi};
        } else {
          throw ParseError("unknown joint field '" + key.text + "'", lineno, key.column);
        }
      }
      if (!point || !axis)
        throw ParseError("joint needs 'point' and 'axis'", lineno, head.column);
      pending.push_back(std::move(pj));
    } else if (section == "initial") {
      if (toks.size() != 5)
        throw ParseError("expected '<body> q0 q1 q2 q3'", lineno, head.column);
      EulerQuadruple q{detail::parse_exact(toks[1], lineno), detail::parse_exact(toks[2], lineno),
                       detail::parse_exact(toks[3], lineno), detail::parse_exact(toks[4], lineno)};
      if (!f.init.quads.emplace(head.text, q).second)
        throw ParseError("duplicate initial quadruple for '" + head.text + "'", lineno,
                         head.column);
      init_at[head.text] = {lineno, head.column};
    } else if (section == "variables") {
      for (auto& t : toks) s.variable_order.push_back(t.text);
    } else if (section == "essential") {
      for (auto& t : toks) s.essential.push_back(t.text);
    }
  }

  if (s.bodies.empty()) {
    auto get = [&](const char* k) {
      auto it = s.parameters.find(k);
      if (it == s.parameters.end())
        throw ParseError("no [bodies] and no parameter " + std::string(k), lineno ? lineno : 1, 1);
      return it->second;
    };
    BennettParameters m{get("m0"), get("m1"), get("m2")};
    try {
      m.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lineno ? lineno : 1, 1);
    }
    auto [spec, init] = bennett_preset(m);
    if (have_name) spec.name = s.name;
    if (!s.essential.empty()) spec.essential = s.essential;
    return {spec, init};
  }

  for (auto& pj : pending) {
    auto p = body_index.find(pj.prev), n = body_index.find(pj.next);
    if (p == body_index.end())
      throw ParseError("unknown body '" + pj.prev + "'", pj.line, pj.column);
    if (n == body_index.end()) throw ParseError("unknown body '" + pj.next + "'", pj.line, pj.column);
    pj.joint.prev = p->second;
    pj.joint.next = n->second;
    s.joints.push_back(pj.joint);
  }
  for (auto& [name, at] : init_at)
    if (!body_index.count(name))
      throw ParseError("initial quadruple for unknown body '" + name + "'", at.first, at.second);
  // joints in the order of the bodies they lead into
  std::stable_sort(s.joints.begin(), s.joints.end(),
                   [](const JointSpec& a, const JointSpec& b) { return a.next < b.next; });
  try {
    s.validate();
    f.init.validate(s);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), lineno ? lineno : 1, 1);
  }
  return f;
}

inline MechanismFile read_mechanism_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mechanism_text(ss.str());
}

inline std::string format_mechanism(const MechanismSpec& s, const InitialConfiguration& init) {
  std::ostringstream os;
  auto vec = [&](const Vector3& v) {
    os << ' ' << v[0].to_string() << ' ' << v[1].to_string() << ' ' << v[2].to_string();
  };
  os << "name " << s.name << '\n';
  if (!s.family.empty()) os << "family " << s.family << '\n';
  if (!s.closed) os << "loop open\n";
  if (!s.parameters.empty()) {
    os << "[parameters]\n";
    for (auto& [k, v] : s.parameters) os << k << " = " << v.to_string() << '\n';
  }
  os << "[bodies]\n";
  for (auto& b : s.bodies) os << b.name << (b.fixed ? " fixed" : "") << '\n';
  os << "[joints]\n";
  for (auto& J : s.joints) {
    os << s.bodies[J.prev].name << ' ' << s.bodies[J.next].name << " point";
    vec(J.point);
    os << " axis";
    vec(J.axis);
    if (J.plane) {
      os << " plane";
      vec(J.plane->first);
      vec(J.plane->second);
    }
    os << '\n';
  }
  os << "[initial]\n";
  for (auto& [name, q] : init.quads) {
    os << name;
    for (int i = 0; i < 4; ++i) os << ' ' << q[i].to_string();
    os << '\n';
  }
  if (!s.variable_order.empty()) {
    os << "[variables]\n";
    for (std::size_t i = 0; i < s.variable_order.size(); ++i)
      os << (i ? " " : "") << s.variable_order[i];
    os << '\n';
  }
  if (!s.essential.empty()) {
    os << "[essential]\n";
    for (std::size_t i = 0; i < s.essential.size(); ++i) os << (i ? " " : "") << s.essential[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace kinalg
