#pragma once

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kinalg/bennett.hpp"
#include "kinalg/bricard.hpp"

namespace kinalg {

// ---- reports -------------------------------------------------------------------

namespace detail {

inline nlohmann::json strings_of(const IdealPresentation& I) {
  auto out = nlohmann::json::array();
  for (auto& g : I.generators) out.push_back(g.to_string());
  return out;
}

inline nlohmann::json strings_of(const GroebnerBasis& G) {
  auto out = nlohmann::json::array();
  for (auto& g : G.elements()) out.push_back(g.to_string(G.order()));
  return out;
}

inline nlohmann::json vec_json(const Vector3& v) {
  return {v[0].to_string(), v[1].to_string(), v[2].to_string()};
}

}  // namespace detail

inline nlohmann::json report_json(const AnalysisReport& rep) {
  using nlohmann::json;
  json j;
  j["mechanism"] = rep.mechanism;
  j["universe"] = rep.universe->names();
  json params = json::object();
  for (auto& [k, v] : rep.parameters) params[k] = v.to_string();
  j["parameters"] = params;
  json init = json::object();
  for (auto& [b, q] : rep.init.quads)
    init[b] = {q[0].to_string(), q[1].to_string(), q[2].to_string(), q[3].to_string()};
  j["initial"] = init;
  json joints = json::array();
  for (auto& jr : rep.joints) {
    joints.push_back({{"index", jr.index},
                      {"prev", jr.prev},
                      {"next", jr.next},
                      {"side", to_string(jr.side)},
                      {"touches_fixed", jr.touches_fixed},
                      {"component", detail::strings_of(jr.component)}});
  }
  j["joints"] = joints;
  json subs = json::object();
  for (auto& s : rep.substitutions) subs[s.variable] = s.value.to_string();
  j["substitutions"] = subs;
  j["splits"] = rep.splits;
  j["dimension"] = rep.dimension;
  j["zero_dimensional"] = rep.zero_dimensional;
  j["essential"] = rep.essential;
  j["essential_detected"] = rep.essential_detected;
  if (rep.final_basis.universe()) {
    j["final_order"] = rep.final_basis.order().describe(*rep.universe);
    j["final_basis"] = detail::strings_of(rep.final_basis);
  }
  if (rep.elimination.universe()) j["elimination"] = detail::strings_of(rep.elimination);
  j["elimination_generators"] = detail::strings_of(rep.elimination_generators);
  j["regularity"] = {{"regular", rep.regularity.is_regular},
                     {"codim", rep.regularity.codim},
                     {"dimension", rep.regularity.dimension}};
  j["complete_intersection"] = rep.complete_intersection;
  json lift = json::object();
  for (auto& l : rep.lift) lift[l.variable] = l.value.to_string();
  j["lift"] = lift;
  if (!rep.parametrization.empty()) j["parametrization"] = rep.parametrization;
  j["notes"] = rep.notes;
  j["seconds"] = rep.seconds;
  return j;
}

inline std::string report_text(const AnalysisReport& rep) {
  std::ostringstream os;
  os << "mechanism " << rep.mechanism << '\n';
  if (!rep.parameters.empty()) {
    os << "parameters";
    for (auto& [k, v] : rep.parameters) os << ' ' << k << '=' << v.to_string();
    os << '\n';
  }
  os << "variables " << rep.universe->size() << ", constraints " << rep.original.size() << '\n';
  for (auto& jr : rep.joints)
    os << "joint " << jr.index << " " << jr.prev << "-" << jr.next << ": " << to_string(jr.side)
       << " component, " << jr.component.size() << " generators\n";
  for (auto& s : rep.substitutions) os << "  " << s.variable << " = " << s.value << '\n';
  for (auto& s : rep.splits) os << "split: " << s << '\n';
  os << "dimension " << rep.dimension << '\n';
  os << "essential";
  for (auto& e : rep.essential) os << ' ' << e;
  os << (rep.essential_detected ? " (detected)" : " (published)") << '\n';
  if (rep.elimination.universe()) {
    os << "elimination ideal:\n";
    for (auto& g : rep.elimination.elements()) os << "  " << g.to_string(rep.elimination.order()) << '\n';
  }
  os << "lift:\n";
  for (auto& l : rep.lift) os << "  " << l.variable << " = " << l.value << '\n';
  os << "regular " << (rep.regularity.is_regular ? "true" : "false") << ", codim "
     << rep.regularity.codim << ", generators " << rep.elimination_generators.size()
     << ", complete intersection " << (rep.complete_intersection ? "true" : "false") << '\n';
  for (auto& n : rep.notes) os << "note: " << n << '\n';
  os << "seconds " << rep.seconds << '\n';
  return os.str();
}

inline nlohmann::json bennett_geometry_json(const BennettParameters& m) {
  auto g = bennett_geometry(m);
  auto c = bennett_conditions_check(g.p, g.chi);
  nlohmann::json j;
  j["m"] = {m.m0.to_string(), m.m1.to_string(), m.m2.to_string()};
  j["r"] = g.r.to_string();
  for (int l = 0; l < 4; ++l) {
    j["p"].push_back(detail::vec_json(g.p[l]));
    j["chi"].push_back(detail::vec_json(g.chi[l]));
  }
  j["conditions"] = {{"equal_sides", c.cond1},
                     {"equal_twists", c.cond2},
                     {"sine_law_squared", c.cond3_squared},
                     {"axes_orthogonal_to_sides", c.orthogonal_axes},
                     {"planar", c.planar},
                     {"cos_phi0", c.cos_phi0.to_string()},
                     {"cos_phi1", c.cos_phi1.to_string()}};
  return j;
}

// ---- curves --------------------------------------------------------------------

/// Closed-form parametrization of a preset's variety. `point` maps (t, branch)
/// to the essential coordinates, `lift` those to every variable.
struct Parametrization {
  std::string kind;
  std::vector<std::string> essential;
  std::vector<int> branches;
  std::function<std::pair<double, double>(int)> range;
  bool closed_range = false;  // include the right end point
  std::function<std::vector<double>(double, int)> point;
  std::function<std::map<std::string, double>(const std::vector<double>&)> lift;
  std::vector<std::string> projection;  // coordinates tested for projection-only crossings
};

inline Parametrization bricard_parametrization() {
  Parametrization P;
  P.kind = "bricard";
  P.essential = {"a0", "a2", "c2"};
  // component 1 for |t| <= pi/3, component 2 for 2pi/3 <= t <= 4pi/3; sign is the root's
  P.branches = {1, -1, 2, -2};
  P.range = [](int b) {
    const double pi = std::numbers::pi;
    return std::abs(b) == 1 ? std::pair{-pi / 3, pi / 3} : std::pair{2 * pi / 3, 4 * pi / 3};
  };
  P.closed_range = true;
  P.point = [](double t, int b) {
    auto [p, q] = bricard_parametrize(t);
    auto& x = b > 0 ? p : q;
    return std::vector<double>{x.a0, x.a2, x.c2};
  };
  P.lift = [](const std::vector<double>& e) {
    return bricard_lift(BricardPoint<double>{e[0], e[1], e[2]});
  };
  return P;
}

inline Parametrization bennett_parametrization(const BennettParameters& m) {
  Parametrization P;
  P.branches = {1, -1};
  P.range = [](int) { return std::pair{0.0, 2 * std::numbers::pi}; };
  if (!bennett_q(m).q5.is_zero()) {
    P.kind = "bennett";
    P.essential = {"a0", "a2", "c0", "c2"};
    P.projection = {"a0", "a2", "c0"};
    P.point = [m](double t, int b) {
      auto x = bennett_parametrize(t, m, b);
      return std::vector<double>{x.a0, x.a2, x.c0, x.c2};
    };
    P.lift = [m](const std::vector<double>& e) {
      return bennett_lift(BennettPoint<double>{e[0], e[1], e[2], e[3]}, m);
    };
    return P;
  }
  auto S = std::make_shared<Q5ZeroSystem>(bennett_q5zero_system(m.m0, m.m2));
  P.kind = "bennett-q5zero";
  P.essential = {"a0", "a3", "c0", "c2"};
  P.projection = {"a0", "a3", "c0"};
  P.point = [S](double t, int b) {
    auto x = bennett_q5zero_parametrize(t, *S, b);
    return std::vector<double>(x.begin(), x.end());
  };
  P.lift = [S](const std::vector<double>& e) {
    std::map<std::string, double> x{{"a0", e[0]}, {"a3", e[1]}, {"c0", e[2]}, {"c2", e[3]}};
    for (auto& l : S->lift) x[l.variable] = l.value.evaluate(x);
    return x;
  };
  return P;
}

/// The parametrization attached to a report, if its mechanism has one.
inline std::optional<Parametrization> parametrization_of(const AnalysisReport& rep) {
  if (rep.parametrization == "bricard") return bricard_parametrization();
  if (rep.parametrization == "bennett") {
    auto get = [&](const char* k) { return rep.parameters.at(k); };
    return bennett_parametrization({get("m0"), get("m1"), get("m2")});
  }
  return std::nullopt;
}

struct CurveRow {
  double t = 0;
  int branch = 0;
  std::vector<double> essential;
  std::vector<double> lifted;
  double residual = 0;
  bool projection_crossing = false;
};

/// Rows in a fixed column order: t, branch, essential coordinates, the
/// other variables in universe order, max residual, projection flag.
struct Curve {
  std::string kind;
  std::vector<std::string> essential;
  std::vector<std::string> lifted;
  std::vector<CurveRow> rows;

  std::vector<std::string> header() const {
    std::vector<std::string> h{"t", "branch"};
    h.insert(h.end(), essential.begin(), essential.end());
    h.insert(h.end(), lifted.begin(), lifted.end());
    h.push_back("max_residual");
    h.push_back("projection_crossing");
    return h;
  }
  double max_residual() const {
    double w = 0;
    for (auto& r : rows) w = std::max(w, r.residual);
    return w;
  }
};

/// `count` rows spread over the branches; the residual is the largest
/// absolute value of the assembled constraints and the elimination ideal.
inline Curve sample_curve(const AnalysisReport& rep, const Parametrization& P, std::size_t count) {
  if (count == 0) throw InvalidArgument("sample count must be at least 1");
  Curve c;
  c.kind = P.kind;
  c.essential = P.essential;
  for (auto& n : rep.universe->names())
    if (std::find(P.essential.begin(), P.essential.end(), n) == P.essential.end())
      c.lifted.push_back(n);
  std::vector<Polynomial> checks = rep.original.generators;
  if (rep.elimination.universe())
    for (auto& g : rep.elimination.elements()) checks.push_back(g);

  const std::size_t nb = P.branches.size();
  for (std::size_t b = 0; b < nb; ++b) {
    std::size_t n = count / nb + (b < count % nb ? 1 : 0);
    auto [lo, hi] = P.range(P.branches[b]);
    for (std::size_t i = 0; i < n; ++i) {
      double t;
      if (n == 1) t = P.closed_range ? (lo + hi) / 2 : lo;
      else if (P.closed_range) t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      else t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
      CurveRow row;
      row.t = t;
      row.branch = P.branches[b];
      row.essential = P.point(t, row.branch);
      auto x = P.lift(row.essential);
      for (auto& name : c.lifted) row.lifted.push_back(x.at(name));
      row.residual = residual_sample(checks, x);
      c.rows.push_back(std::move(row));
    }
  }

  // rows whose projection meets the other branch's projection while the
  // full points stay apart
  if (!P.projection.empty() && c.rows.size() > 2) {
    std::vector<std::size_t> pi;
    for (auto& p : P.projection)
      pi.push_back(static_cast<std::size_t>(
          std::find(P.essential.begin(), P.essential.end(), p) - P.essential.begin()));
    auto dist = [&](const CurveRow& a, const CurveRow& b, bool projected) {
      double s = 0;
      for (std::size_t k = 0; k < a.essential.size(); ++k) {
        if (projected && std::find(pi.begin(), pi.end(), k) == pi.end()) continue;
        s += (a.essential[k] - b.essential[k]) * (a.essential[k] - b.essential[k]);
      }
      return std::sqrt(s);
    };
    double step = 0;
    for (std::size_t i = 1; i < c.rows.size(); ++i)
      if (c.rows[i].branch == c.rows[i - 1].branch)
        step = std::max(step, dist(c.rows[i], c.rows[i - 1], false));
    for (auto& r : c.rows)
      for (auto& s : c.rows) {
        if (s.branch == r.branch) continue;
        if (dist(r, s, true) <= step && dist(r, s, false) > 4 * step) {
          r.projection_crossing = true;
          break;
        }
      }
  }
  return c;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string curve_csv(const Curve& c) {
  std::ostringstream os;
  auto h = c.header();
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << '\n';
  for (auto& r : c.rows) {
    os << format_double(r.t) << ',' << r.branch;
    for (double v : r.essential) os << ',' << format_double(v);
    for (double v : r.lifted) os << ',' << format_double(v);
    os << ',' << format_double(r.residual) << ',' << (r.projection_crossing ? 1 : 0) << '\n';
  }
  return os.str();
}

inline nlohmann::json curve_json(const Curve& c) {
  nlohmann::json j;
  j["kind"] = c.kind;
  j["columns"] = c.header();
  j["rows"] = nlohmann::json::array();
  for (auto& r : c.rows) {
    nlohmann::json row = nlohmann::json::array();
    row.push_back(r.t);
    row.push_back(r.branch);
    for (double v : r.essential) row.push_back(v);
    for (double v : r.lifted) row.push_back(v);
    row.push_back(r.residual);
    row.push_back(r.projection_crossing ? 1 : 0);
    j["rows"].push_back(row);
  }
  j["max_residual"] = c.max_residual();
  return j;
}

}  // namespace kinalg
