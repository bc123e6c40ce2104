#ifndef BSIDEAL_ERROR_HPP
#define BSIDEAL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace bsideal {

/// Library error carrying a stable machine-readable code such as
/// "parse-error", "no-solution-within-bounds", "invertible-f^a", "empty-K"
/// or "unsupported-codimension".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* parse_error = "parse-error";
inline constexpr const char* no_solution = "no-solution-within-bounds";
inline constexpr const char* invertible = "invertible-f^a";
inline constexpr const char* empty_k = "empty-K";
inline constexpr const char* unsupported_codim = "unsupported-codimension";
inline constexpr const char* empty_coset = "empty-coset";
inline constexpr const char* invalid_argument = "invalid-argument";
inline constexpr const char* check_failed = "check-failed";
}  // namespace errc

}  // namespace bsideal

#endif  // BSIDEAL_ERROR_HPP
