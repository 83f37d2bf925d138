#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>
#include <sstream>

#include "thermofit/report.hpp"

using namespace thermofit;

namespace {

Series collinear() {
  return {"line", std::nullopt, std::nullopt, {{0, 0}, {1, 1}, {2, 2}}};
}

// Counts elements with the given tag anywhere under `tree`.
std::size_t count_tag(const boost::property_tree::ptree& tree, const std::string& tag) {
  std::size_t n = 0;
  for (const auto& [name, child] : tree) {
    if (name == tag) ++n;
    n += count_tag(child, tag);
  }
  return n;
}

boost::property_tree::ptree parse_xml(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(in, tree);
  return tree;
}

std::vector<PlotSeries> plot_input(bool with_curve) {
  const auto full = builtin_table3().second;
  const auto pts = to_points(full);
  PlotSeries s{full.label, pts, ols_fit(pts), std::nullopt};
  if (with_curve) s.curve = gauss_newton(pts, {20.2, 57, 20}).params;
  return {s};
}

}  // namespace

TEST(BuildReport, ResidualTableInvariants) {
  for (const auto& series : {builtin_table3().first, builtin_table3().second}) {
    const auto report = build_report(series);
    ASSERT_EQ(report.residual_table.size(), series.samples.size());
    for (const auto& row : report.residual_table) {
      EXPECT_NEAR(row.y_predicted - row.y_observed + row.d, 0.0, 1e-12);
    }
    EXPECT_EQ(report.series_label, series.label);
    EXPECT_EQ(report.fit_class, FitClass::kGood);
  }
}

TEST(BuildReport, OptionalParts) {
  const auto full = builtin_table3().second;
  ReportOptions opts;
  opts.nonlinear = Solver::kGaussNewton;
  opts.init = StepModelParams{20.2, 57, 20};
  const auto report = build_report(full, opts);
  ASSERT_TRUE(report.nonlinear);
  EXPECT_LT(report.nonlinear->fit.sse, report.linear.sse);

  ReportOptions weighted;
  weighted.weights = std::vector<double>(13, 1.0);
  const auto w = build_report(full, weighted);
  EXPECT_TRUE(w.weighted);
  EXPECT_NEAR(w.linear.slope, report.linear.slope, 1e-12);

  ReportOptions bad;
  bad.weights = std::vector<double>(3, 1.0);
  EXPECT_THROW(build_report(full, bad), Error);
}

TEST(RenderText, FourDecimals) {
  const auto text = render_text(build_report(builtin_table3().second));
  EXPECT_NE(text.find("Slope:        0.7288"), std::string::npos) << text;
  EXPECT_NE(text.find("r:            0.9664"), std::string::npos);
  EXPECT_NE(text.find("GOOD"), std::string::npos);
  EXPECT_EQ(text.find('\x1b'), std::string::npos);
  EXPECT_NE(render_text(build_report(builtin_table3().second), true).find('\x1b'),
            std::string::npos);
}

TEST(RenderJson, CollinearFields) {
  const auto j = nlohmann::json::parse(render_json(build_report(collinear())));
  EXPECT_EQ(j.at("r").get<double>(), 1.0);
  EXPECT_NEAR(j.at("sse").get<double>(), 0.0, 1e-24);
  EXPECT_EQ(j.at("fit_class"), "GOOD");
  EXPECT_EQ(j.at("residuals").size(), 3u);
  EXPECT_FALSE(j.contains("nonlinear"));
}

TEST(RenderJson, IdleSlope) {
  const auto j = nlohmann::json::parse(render_json(build_report(builtin_table3().first)));
  EXPECT_NEAR(j.at("slope").get<double>(), 0.16147, 1e-4);
  EXPECT_EQ(j.at("power_w").get<double>(), 85.0);
}

TEST(RenderJson, RoundTrip) {
  ReportOptions opts;
  opts.nonlinear = Solver::kGaussNewton;
  opts.init = StepModelParams{20.2, 57, 20};
  for (const auto& report :
       {build_report(builtin_table3().second, opts), build_report(collinear())}) {
    const auto back = parse_report_json(render_json(report));
    EXPECT_EQ(back.series_label, report.series_label);
    EXPECT_EQ(back.power_w, report.power_w);
    EXPECT_EQ(back.linear.slope, report.linear.slope);
    EXPECT_EQ(back.linear.intercept, report.linear.intercept);
    EXPECT_EQ(back.linear.r, report.linear.r);
    EXPECT_EQ(back.linear.sse, report.linear.sse);
    EXPECT_EQ(back.linear.n, report.linear.n);
    EXPECT_EQ(back.linear.axis, report.linear.axis);
    EXPECT_EQ(back.fit_class, report.fit_class);
    ASSERT_EQ(back.residual_table.size(), report.residual_table.size());
    for (std::size_t i = 0; i < back.residual_table.size(); ++i) {
      EXPECT_EQ(back.residual_table[i].d, report.residual_table[i].d);
      EXPECT_EQ(back.residual_table[i].y_predicted, report.residual_table[i].y_predicted);
    }
    ASSERT_EQ(back.nonlinear.has_value(), report.nonlinear.has_value());
    if (back.nonlinear) {
      EXPECT_EQ(back.nonlinear->fit.params.tau_s, report.nonlinear->fit.params.tau_s);
      EXPECT_EQ(back.nonlinear->fit.sse, report.nonlinear->fit.sse);
      EXPECT_EQ(back.nonlinear->fit.iterations, report.nonlinear->fit.iterations);
      EXPECT_EQ(back.nonlinear->fit.converged, report.nonlinear->fit.converged);
    }
    EXPECT_EQ(render_json(back), render_json(report));
  }
}

TEST(ParseReportJson, Errors) {
  EXPECT_THROW(parse_report_json("{"), Error);
  EXPECT_THROW(parse_report_json("{\"slope\": 1}"), Error);
}

TEST(RenderSvg, ElementCountsAndLabels) {
  const auto plain = render_svg(plot_input(false));
  const auto tree = parse_xml(plain);
  EXPECT_EQ(count_tag(tree, "circle"), 13u);
  EXPECT_EQ(count_tag(tree, "line"), 1u);
  EXPECT_EQ(count_tag(tree, "path"), 0u);
  EXPECT_NE(plain.find("Time in Sec"), std::string::npos);
  EXPECT_NE(plain.find("Temperature in degree"), std::string::npos);
  EXPECT_NE(plain.find("class=\"legend\""), std::string::npos);

  const auto curved = parse_xml(render_svg(plot_input(true)));
  EXPECT_EQ(count_tag(curved, "circle"), 13u);
  EXPECT_EQ(count_tag(curved, "line"), 1u);
  EXPECT_EQ(count_tag(curved, "path"), 1u);
}

TEST(RenderSvg, DeterministicAndEscaped) {
  EXPECT_EQ(render_svg(plot_input(true)), render_svg(plot_input(true)));
  PlotSeries s{"a < b & \"c\"", {{0, 1}, {1, 2}}, std::nullopt, std::nullopt};
  const auto svg = render_svg(std::vector<PlotSeries>{s});
  EXPECT_NO_THROW(parse_xml(svg));
  EXPECT_NE(svg.find("a &lt; b &amp; &quot;c&quot;"), std::string::npos);
}

TEST(RenderSvg, TwoSeries) {
  const auto [idle, full] = builtin_table3();
  std::vector<PlotSeries> both;
  for (const auto& s : {idle, full}) {
    const auto pts = to_points(s);
    both.push_back({s.label, pts, ols_fit(pts), std::nullopt});
  }
  const auto tree = parse_xml(render_svg(both));
  EXPECT_EQ(count_tag(tree, "circle"), 26u);
  EXPECT_EQ(count_tag(tree, "line"), 2u);
}
