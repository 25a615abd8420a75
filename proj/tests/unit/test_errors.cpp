#include <gtest/gtest.h>

#include "c2qf/errors.hpp"

using namespace c2qf;

TEST(Errors, CodesHaveStableNames) {
  EXPECT_EQ(to_string(ErrorCode::BudgetExceeded), "BudgetExceeded");
  EXPECT_EQ(to_string(ErrorCode::SyntaxError), "SyntaxError");
  EXPECT_EQ(to_string(ErrorCode::CertificateInvalid), "CertificateInvalid");
}

TEST(Errors, ParseErrorCarriesPosition) {
  const ParseError e(ErrorCode::SyntaxError, 7, "')'", "boom");
  EXPECT_EQ(e.position(), 7u);
  EXPECT_EQ(e.expected(), "')'");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
}
