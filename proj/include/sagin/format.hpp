#ifndef SAGIN_FORMAT_HPP
#define SAGIN_FORMAT_HPP

#include <charconv>
#include <string>

namespace sagin {

// Shortest text that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace sagin

#endif  // SAGIN_FORMAT_HPP
