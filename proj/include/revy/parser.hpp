#ifndef REVY_PARSER_HPP
#define REVY_PARSER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include "revy/term.hpp"

namespace revy {

struct parse_error : std::runtime_error {
  std::size_t offset;
  parse_error(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)),
        offset(off) {}
};

// Source-level system term. Every named process carries the initial key;
// literal keys, memories, unbound variables and restriction of `omega`
// are rejected.
SysPtr parse_system(const std::string& text);

// Source-level process term (used for tests composed with a system).
ProcPtr parse_process(const std::string& text);

// Full configuration grammar "<history> |- <system>": integer keys,
// memories and rollbacks of literal keys are allowed.
Configuration parse_configuration(const std::string& text);

}  // namespace revy

#endif
