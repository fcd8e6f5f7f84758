#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qfourier/errors.hpp"
#include "qfourier/serialize.hpp"

using namespace qfourier;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

const ConfigEcho echo = {{"command", "transform"}, {"qp", "1.5"}};

std::vector<TransformSample> two_samples() {
  return {{Complex(-1.0, 0.0), Complex(0.25, -0.5), 1e-13, true},
          {Complex(1.0, 0.5), Complex(0.125, 0.75), 2e-12, true}};
}

}  // namespace

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(1.0), "1.0000000000000000e+00");
  EXPECT_EQ(format_number(-0.1), "-1.0000000000000001e-01");
  EXPECT_EQ(format_number(0.0), "0.0000000000000000e+00");
  const double v = 0.2222222222222222;
  EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(ParseDensitySpec, Hilhorst) {
  const DensitySpec d = parse_density_spec("hilhorst:a=1,b=2,q=1.5");
  const auto* h = std::get_if<HilhorstFamily>(&d.variant());
  ASSERT_NE(h, nullptr);
  EXPECT_EQ(h->a(), 1.0);
  EXPECT_EQ(h->b(), 2.0);
  EXPECT_EQ(h->q(), 1.5);
  EXPECT_NO_THROW(parse_density_spec("hilhorst: q=1.5 , b=2, a=1"));
}

TEST(ParseDensitySpec, QGaussianAndTabulated) {
  const DensitySpec g = parse_density_spec("qgaussian:q=1.5,width=1");
  EXPECT_NE(std::get_if<QGaussianDensity>(&g.variant()), nullptr);

  const auto path = std::filesystem::temp_directory_path() / "qfourier_parse_tab.csv";
  std::ofstream(path) << "x,f\n0,0\n1,1\n2,0\n";
  const DensitySpec t = parse_density_spec("tabulated:path=" + path.string());
  EXPECT_NE(std::get_if<TabulatedDensity>(&t.variant()), nullptr);
  std::filesystem::remove(path);
}

TEST(ParseDensitySpec, Errors) {
  for (const char* bad : {"hilhorst", "hilhorst:a=1,b=2", "hilhorst:a=1,b=2,q=1.5,c=3",
                          "hilhorst:a=1,a=2,b=3,q=1.5", "hilhorst:a=x,b=2,q=1.5",
                          "hilhorst:a=1,b=2,q=2.5", "hilhorst:a=2,b=1,q=1.5", "cauchy:s=1",
                          "qgaussian:q=1.5", "tabulated:", "hilhorst:a1,b=2,q=1.5"}) {
    EXPECT_THROW(parse_density_spec(bad), DomainError) << bad;
  }
}

TEST(TransformCsv, HeaderEchoAndRows) {
  std::ostringstream os;
  write_transform_csv(os, two_samples(), echo);
  const auto lines = lines_of(os.str());
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "# command=transform");
  EXPECT_EQ(lines[1], "# qp=1.5");
  EXPECT_EQ(lines[2], "k_re,k_im,F_re,F_im,abs_err");
  EXPECT_EQ(lines[3],
            "-1.0000000000000000e+00,0.0000000000000000e+00,2.5000000000000000e-01,"
            "-5.0000000000000000e-01,1.0000000000000000e-13");
}

TEST(TransformJson, FieldOrderAndValues) {
  std::ostringstream os;
  write_transform_json(os, two_samples(), echo);
  const std::string text = os.str();
  const json doc = json::parse(text);
  EXPECT_EQ(doc["meta"]["command"], "transform");
  ASSERT_EQ(doc["records"].size(), 2u);
  EXPECT_EQ(doc["records"][1]["F_im"].get<double>(), 0.75);
  EXPECT_EQ(doc["records"][1]["k_im"].get<double>(), 0.5);
  const auto pos = [&](const char* key) { return text.find(std::string("\"") + key + "\""); };
  EXPECT_LT(pos("meta"), pos("records"));
  EXPECT_LT(pos("k_re"), pos("k_im"));
  EXPECT_LT(pos("k_im"), pos("F_re"));
  EXPECT_LT(pos("F_re"), pos("F_im"));
  EXPECT_LT(pos("F_im"), pos("abs_err"));
}

TEST(RecoveryCsv, FlagsAndL1) {
  RecoveryReport r;
  r.points.push_back({1.5, 8.0 / 9.0, 0.89, 0.0011, false, 0.0, false});
  r.points.push_back({2.0, 0.5, 0.25, 0.25, true, 0.0, false});
  r.l1_error = 0.0011;
  std::ostringstream os;
  write_recovery_csv(os, r, {{"command", "invert"}});
  const auto lines = lines_of(os.str());
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[1], "# l1_error=1.1000000000000001e-03");
  EXPECT_EQ(lines[2], "x,f_true,f_recovered,abs_err,flagged");
  EXPECT_EQ(lines[3].substr(lines[3].rfind(',') + 1), "false");
  EXPECT_EQ(lines[4].substr(lines[4].rfind(',') + 1), "true");
}

TEST(ClassJson, VerdictFields) {
  EquivalenceClassProbe probe{1.5, std::numbers::sqrt2, {HilhorstFamily(1.0, 2.0, 1.5)}};
  CollapseReport collapse;
  collapse.collapse_ok = true;
  collapse.rows.push_back({1.0, {Complex(0.2, 0.6)}, {1e-12}, Complex(0.2, 0.6), 0.0, 1e-11, 0.0, 1e-11});

  std::ostringstream without;
  write_class_json(without, probe, collapse, std::nullopt, {{"command", "class"}});
  const json a = json::parse(without.str());
  EXPECT_TRUE(a["collapse_ok"].get<bool>());
  EXPECT_TRUE(a["separation_ok"].is_null());
  EXPECT_EQ(a["class"]["members"][0]["b"].get<double>(), 2.0);
  EXPECT_EQ(a["collapse"]["table"][0]["closed_form"][1].get<double>(), 0.6);

  SeparationReport sep;
  sep.separation_ok = false;
  std::ostringstream with;
  write_class_json(with, probe, collapse, sep, {{"command", "class"}});
  const json b = json::parse(with.str());
  EXPECT_FALSE(b["separation_ok"].get<bool>());
  EXPECT_TRUE(b.contains("separation"));
}
