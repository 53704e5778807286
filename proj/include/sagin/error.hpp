#ifndef SAGIN_ERROR_HPP
#define SAGIN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sagin {

// Bad input: malformed config/topology/scenario files, invalid parameter
// ranges, inconsistent CLI flags. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sagin

#endif  // SAGIN_ERROR_HPP
