#include "padist/parse.hpp"

#include <gtest/gtest.h>

#include "padist/errors.hpp"

namespace padist {
namespace {

TEST(Parse, Precedence) {
  Ast a = parse_expr("1 + 2*b1^3");
  ASSERT_EQ(a.kind, Ast::Add);
  EXPECT_EQ(a.kids[1].kind, Ast::Mul);
  EXPECT_EQ(a.kids[1].kids[1].kind, Ast::Pow);
  EXPECT_EQ(a.kids[1].kids[1].exponent, 3);
}

TEST(Parse, NegativeExponents) {
  EXPECT_EQ(parse_expr("pi^-2").exponent, -2);
  EXPECT_EQ(parse_expr("pi^(-2)").exponent, -2);
}

TEST(Parse, Calls) {
  Ast a = parse_expr("log(1+b2_1)");
  ASSERT_EQ(a.kind, Ast::Call);
  EXPECT_EQ(a.name, "log");
  EXPECT_EQ(a.kids[0].kids[1].name, "b2_1");
}

TEST(Parse, ErrorsReportColumn) {
  for (const char* bad : {"1 +", "(1", "b1^", "2 $ 3", ""}) {
    EXPECT_THROW(parse_expr(bad), ParseError) << bad;
  }
  try {
    parse_expr("b1 ** 2");
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("column 4"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace padist
