#include <gtest/gtest.h>

#include "kinalg/kinalg.hpp"

using namespace kinalg;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

const std::string spec_dir = KINALG_SPEC_DIR;

const std::string pendulum = R"(name pendulum
loop open
[bodies]
f fixed
a
[joints]
f a point 0 0 0 axis 0 0 1
[initial]
a 1 0 0 0
)";

std::string with_line(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

const AnalysisReport& bricard_report() {
  static AnalysisReport rep = [] {
    auto [s, init] = bricard_preset();
    return analyze(s, init);
  }();
  return rep;
}

const AnalysisReport& bennett_report() {
  static AnalysisReport rep = [] {
    auto [s, init] = bennett_preset({R(7, 4), R(5, 6), R(1, 3)});
    return analyze(s, init);
  }();
  return rep;
}

}  // namespace

TEST(SpecIo, Pendulum) {
  auto f = parse_mechanism_text(pendulum);
  EXPECT_EQ(f.spec.name, "pendulum");
  EXPECT_FALSE(f.spec.closed);
  ASSERT_EQ(f.spec.joints.size(), 1u);
  EXPECT_EQ(f.spec.joints[0].axis, e3());
  EXPECT_EQ(assemble_constraints(f.spec, f.init).size(), 3u);
}

TEST(SpecIo, PresetsRoundTrip) {
  auto [s, init] = bricard_preset();
  auto f = parse_mechanism_text(format_mechanism(s, init));
  EXPECT_EQ(format_mechanism(f.spec, f.init), format_mechanism(s, init));
  EXPECT_EQ(f.spec.family, "bricard");
  EXPECT_EQ(assemble_constraints(f.spec, f.init).generators, assemble_constraints(s, init).generators);

  auto [bs, bi] = bennett_preset({R(7, 4), R(5, 6), R(1, 3)});
  auto g = parse_mechanism_text(format_mechanism(bs, bi));
  EXPECT_EQ(format_mechanism(g.spec, g.init), format_mechanism(bs, bi));
}

TEST(SpecIo, ShippedFilesMatchThePresets) {
  auto [s, init] = bricard_preset();
  auto f = read_mechanism_file(spec_dir + "/bricard.mech");
  EXPECT_EQ(format_mechanism(f.spec, f.init), format_mechanism(s, init));
  auto [bs, bi] = bennett_preset({R(7, 4), R(5, 6), R(1, 3)});
  auto g = read_mechanism_file(spec_dir + "/bennett.mech");
  EXPECT_EQ(format_mechanism(g.spec, g.init), format_mechanism(bs, bi));
}

TEST(SpecIo, ParametersOnlyMeansTheFourBarPreset) {
  auto f = parse_mechanism_text("name b\n[parameters]\nm0 = 7/4\nm1 = 5/6\nm2 = 1/3\n");
  auto [bs, bi] = bennett_preset({R(7, 4), R(5, 6), R(1, 3)});
  EXPECT_EQ(f.spec.joints.size(), 4u);
  EXPECT_EQ(f.init.quads, bi.quads);
  EXPECT_EQ(f.spec.family, "bennett");
}

TEST(SpecIo, DecimalsAreRejectedWithPosition) {
  auto text = with_line(pendulum, "axis 0 0 1", "axis 0 0 1.0");
  try {
    parse_mechanism_text(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 7u);
    EXPECT_EQ(e.column, 26u);
    EXPECT_NE(std::string(e.what()).find("7:26:"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("decimal"), std::string::npos);
  }
}

TEST(SpecIo, Errors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_mechanism_text(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  EXPECT_EQ(line_of(with_line(pendulum, "f a point", "f z point")), 7u);
  EXPECT_EQ(line_of(with_line(pendulum, "[joints]", "[springs]")), 6u);
  EXPECT_EQ(line_of(with_line(pendulum, "a 1 0 0 0", "a 1 0 0")), 9u);
  EXPECT_EQ(line_of(with_line(pendulum, "axis 0 0 1", "axis 0 0 1/0")), 7u);
  EXPECT_NE(line_of(with_line(pendulum, "axis 0 0 1", "axis 0 1 1")), 0u);
  EXPECT_THROW(read_mechanism_file(spec_dir + "/missing.mech"), InvalidArgument);
}

TEST(Report, JsonCarriesExactStrings) {
  auto j = report_json(bennett_report());
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_EQ(j["parameters"]["m0"], "7/4");
  EXPECT_EQ(j["parametrization"], "bennett");
  auto text = report_text(bennett_report());
  EXPECT_NE(text.find("dimension 1"), std::string::npos);
}

TEST(Sample, CountIsTheNumberOfRows) {
  auto P = parametrization_of(bricard_report());
  ASSERT_TRUE(P);
  auto c = sample_curve(bricard_report(), *P, 1);
  EXPECT_EQ(c.rows.size(), 1u);
  auto csv = curve_csv(c);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_THROW(sample_curve(bricard_report(), *P, 0), InvalidArgument);
}

TEST(Sample, CsvAndJsonAgree) {
  auto P = parametrization_of(bennett_report());
  ASSERT_TRUE(P);
  auto c = sample_curve(bennett_report(), *P, 40);
  auto j = curve_json(c);
  std::istringstream csv(curve_csv(c));
  std::string line;
  std::getline(csv, line);
  std::string joined;
  for (auto& h : c.header()) joined += (joined.empty() ? "" : ",") + h;
  EXPECT_EQ(line, joined);
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ls, cell, ',')) {
      EXPECT_EQ(std::stod(cell), j["rows"][i][k].get<double>()) << i << "," << k;
      ++k;
    }
    EXPECT_EQ(k, c.header().size());
    ++i;
  }
  EXPECT_EQ(i, 40u);
}

TEST(Sample, BricardTwoComponents) {
  auto P = parametrization_of(bricard_report());
  ASSERT_TRUE(P);
  auto c = sample_curve(bricard_report(), *P, 360);
  EXPECT_EQ(c.rows.size(), 360u);
  EXPECT_LT(c.max_residual(), 1e-9);
  // a0 = cos t / sqrt 2 is positive on one component and negative on the other
  std::size_t a0 = std::find(c.essential.begin(), c.essential.end(), "a0") - c.essential.begin();
  ASSERT_LT(a0, c.essential.size());
  int pos = 0, neg = 0;
  for (auto& r : c.rows) (r.essential[a0] > 0 ? pos : neg)++;
  EXPECT_EQ(pos, 180);
  EXPECT_EQ(neg, 180);
}

TEST(Sample, BennettProjectionCrossings) {
  auto P = parametrization_of(bennett_report());
  ASSERT_TRUE(P);
  auto c = sample_curve(bennett_report(), *P, 360);
  EXPECT_LT(c.max_residual(), 1e-9);
  EXPECT_TRUE(std::any_of(c.rows.begin(), c.rows.end(),
                          [](const CurveRow& r) { return r.projection_crossing; }));
  EXPECT_FALSE(std::all_of(c.rows.begin(), c.rows.end(),
                           [](const CurveRow& r) { return r.projection_crossing; }));
}
