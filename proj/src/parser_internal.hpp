#pragma once

#include <string>
#include <string_view>

#include "c2qf/field.hpp"

namespace c2qf {

// Recursive-descent reader shared by the field, element and form grammars.
class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  void skip_ws();
  bool at_end();
  char peek();
  char peek_at(std::size_t offset);
  bool accept(char c);
  bool accept(std::string_view word);
  void expect(char c);
  std::string identifier();
  long long integer();
  bool at_identifier();
  bool at_digit();
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::string_view text() const { return s_; }

  [[noreturn]] void error(const std::string& expected);
  [[noreturn]] void error_at(std::size_t pos, ErrorCode code, const std::string& expected,
                             const std::string& message);

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

Field read_field(Reader& r);

// Reads an element expression. In scalar mode the reader stops before a
// top-level "*(" so that "c*(form)" can be handled by the caller.
Element read_element(Reader& r, Field field, bool scalar_mode = false);

void expect_end(Reader& r);

}  // namespace c2qf
