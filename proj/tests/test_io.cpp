#include <gtest/gtest.h>

#include "compforms/constructors.hpp"
#include "compforms/io.hpp"
#include "compforms/registry.hpp"

using namespace compforms;

TEST(Io, EveryRegistryEntryRoundTrips) {
  for (const auto& e : registry()) {
    FormedAlgebra F = e.build(rationals(), e.resolve({}));
    std::string text = write_algebra(F);
    FormedAlgebra G = read_algebra(text);
    EXPECT_EQ(write_algebra(G), text) << e.name;
    EXPECT_EQ(G.rank(), F.rank());
    EXPECT_EQ(G.form.poly, F.form.poly);
    EXPECT_EQ(G.ring(), F.ring());
    EXPECT_EQ(G.expect_nondegenerate, F.expect_nondegenerate);
  }
}

TEST(Io, OtherBaseRings) {
  for (Ring r : {prime_field(7), poly_ring(rationals()), quad_ext(Scalar::integer(rationals(), 5))}) {
    FormedAlgebra F = zorn(r);
    std::string text = write_algebra(F);
    EXPECT_EQ(write_algebra(read_algebra(text)), text) << r->name();
  }
}

TEST(Io, HeaderAndLayout) {
  std::string text = write_algebra(zorn(rationals()));
  EXPECT_EQ(text.substr(0, text.find('\n')), "Q, 8, 2");
  EXPECT_NE(text.find("labels: a v1 v2 v3 w1 w2 w3 b\n"), std::string::npos);
  std::string laurent = write_algebra(cubic_tits(laurent_ring(rationals()), Scalar::variable(laurent_ring(rationals()))));
  EXPECT_EQ(laurent.substr(0, laurent.find('\n')), "Q[t,1/t], 3, 3");
}

TEST(Io, MalformedInput) {
  EXPECT_THROW(read_algebra(""), std::invalid_argument);
  EXPECT_THROW(read_algebra("Q 8 2\nunit: 1\nform: x1\n"), std::invalid_argument);
  std::string text = write_algebra(zorn(rationals()));
  std::string no_form = text.substr(0, text.find("form:"));
  EXPECT_THROW(read_algebra(no_form), std::invalid_argument);
  std::string bad_index = text;
  bad_index.replace(bad_index.find("\n0 0 0 1"), 8, "\nx 0 0 1");
  EXPECT_THROW(read_algebra(bad_index), std::invalid_argument);
}
