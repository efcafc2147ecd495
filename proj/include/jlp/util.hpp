#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>

namespace jlp {

std::uint64_t splitmix64(std::uint64_t x);

/// Order-sensitive combination of seed components.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

/// Thrown when a numerical recursion degenerates (maps to exit code 2).
class NumericalAbort : public std::exception {
 public:
  explicit NumericalAbort(std::string what) : what_(std::move(what)) {}
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  std::string what_;
};

}  // namespace jlp
