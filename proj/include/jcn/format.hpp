#ifndef JCN_FORMAT_HPP
#define JCN_FORMAT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "jcn/instance.hpp"

namespace jcn {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and validates. Structural errors raise ParseError with the line
/// number, invariant violations raise InstanceError.
Instance parse_instance(const std::string& text);

std::string serialize(const Instance& inst);

std::string to_dot(const Instance& inst);

std::uint64_t instance_hash(const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace jcn

#endif
