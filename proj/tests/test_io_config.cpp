#include <gtest/gtest.h>

#include <sstream>

#include "sbt/config.hpp"
#include "sbt/io.hpp"
#include "sbt/random.hpp"
#include "sbt/svg.hpp"

using namespace sbt;

TEST(Csv, QuotedSplit) {
  const auto f = csv::split("\"1,-2\",0.5,-1e-3");
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], "1,-2");
  EXPECT_THROW(csv::split("\"1,2,3"), FormatError);
  EXPECT_THROW(csv::number("1.5x"), FormatError);
}

TEST(Csv, CoefficientRoundTrip) {
  for (Group g : {Group::torus(1), Group::torus(2), Group::su2()}) {
    const SpectralCoefficients c = random_coefficients(enumerate_spectrum(g, 3), 5);
    std::stringstream ss;
    write_coefficients_csv(ss, c);
    const SpectralCoefficients back = read_coefficients_csv(ss, g);
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back[i], c[i]);
  }
}

TEST(Csv, CoefficientErrors) {
  std::stringstream bad_header("lbl,re,im\n");
  EXPECT_THROW(read_coefficients_csv(bad_header, Group::torus(1)), FormatError);
  std::stringstream wrong_dim("label,re,im\n\"1,2\",1,0\n");
  EXPECT_THROW(read_coefficients_csv(wrong_dim, Group::torus(1)), FormatError);
  std::stringstream too_big("label,re,im\n5,1,0\n");
  EXPECT_THROW(read_coefficients_csv(too_big, Group::torus(1), 2), FormatError);
  std::stringstream sparse("label,re,im\n3,1,0\n");
  const SpectralCoefficients c = read_coefficients_csv(sparse, Group::torus(1));
  EXPECT_EQ(c.spectrum().cutoff(), 3);
  EXPECT_EQ(c.at({3}), cplx(1.0, 0.0));
  EXPECT_EQ(c.at({-3}), cplx{});
}

TEST(Csv, ExpansionRoundTrip) {
  const HermiteExpansion e = random_expansion(2, 4, 9);
  std::stringstream ss;
  write_expansion_csv(ss, e);
  EXPECT_NE(ss.str().find("\"4,0\""), std::string::npos);
  const HermiteExpansion back = read_expansion_csv(ss, 2);
  ASSERT_EQ(back.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(back[i], e[i]);
  std::stringstream neg("alpha,re,im\n\"-1\",1,0\n");
  EXPECT_THROW(read_expansion_csv(neg, 1), FormatError);
}

TEST(Csv, GridAndModes) {
  std::vector<GridSample> rows{{0.0, 1.0, cplx(1, 2), 0.0}, {0.5, -1.0, cplx(-3, 0.25), 1e-9}};
  std::stringstream ss;
  write_grid_csv(ss, rows, true);
  EXPECT_EQ(ss.str().substr(0, 25), "x,y,re,im,tail_bound\n0,1,");
  const auto back = read_grid_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].value, cplx(-3, 0.25));
  EXPECT_EQ(back[1].tail, 1e-9);

  std::stringstream ms;
  write_mode_csv(ms, mode_table(0.5, 1.0, 0.1, 0.2, 10));
  std::string header;
  std::getline(ms, header);
  EXPECT_EQ(header, "rho,b,residual");
}

TEST(Config, SectionsAndComments) {
  std::stringstream in("# comment\n; other\n[run]\ncutoff = 6\nt=0.5\nseed = 42\n[torus]\nscaling = unit\n");
  const ConfigFile f = ConfigFile::parse(in);
  EXPECT_EQ(f.get("run.cutoff", ""), "6");
  RunConfig c;
  c.apply(f);
  EXPECT_EQ(c.cutoff, 6);
  EXPECT_EQ(c.t, 0.5);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.scaling, GeneratorScaling::Unit);
  EXPECT_TRUE(std::isnan(c.s));
}

TEST(Config, Errors) {
  std::stringstream no_eq("[run]\ncutoff 6\n");
  EXPECT_THROW(ConfigFile::parse(no_eq), ConfigError);
  std::stringstream dup("a=1\na=2\n");
  EXPECT_THROW(ConfigFile::parse(dup), ConfigError);
  std::stringstream bad_header("[run\n");
  EXPECT_THROW(ConfigFile::parse(bad_header), ConfigError);
  std::stringstream unknown("[run]\nfoo=1\n");
  RunConfig c;
  EXPECT_THROW(c.apply(ConfigFile::parse(unknown)), ConfigError);
  std::stringstream nan_val("[run]\nt=abc\n");
  EXPECT_THROW(c.apply(ConfigFile::parse(nan_val)), ConfigError);
  RunConfig neg;
  neg.t = -1.0;
  EXPECT_THROW(neg.validate(), ConfigError);
  RunConfig grp;
  grp.group = "sl3";
  EXPECT_THROW(grp.validate(), ConfigError);
  EXPECT_THROW(ConfigFile::load("/nonexistent/config.cfg"), ConfigError);
}

TEST(Svg, WritesPolyline) {
  std::stringstream ss;
  write_svg_plot(ss, {0.0, 1.0, 2.0}, {{"a", {1.0, 2.0, 0.5}, "#000"}}, "title");
  EXPECT_NE(ss.str().find("<polyline"), std::string::npos);
  EXPECT_THROW(write_svg_plot(ss, {0.0, 1.0}, {{"a", {1.0}, "#000"}}, "t"), PreconditionError);
}
