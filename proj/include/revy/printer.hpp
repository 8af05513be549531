#ifndef REVY_PRINTER_HPP
#define REVY_PRINTER_HPP

#include <string>
#include <vector>

#include "revy/term.hpp"

namespace revy {

// All printers emit text the parser accepts; parse(print(x)) rebuilds x.

std::string print_action(const Action& a);
std::string print_key(Key k);
std::string print_process(const ProcPtr& p);
std::string print_system(const SysPtr& s);
std::string print_history(const DepHistory& d);
std::string print_configuration(const Configuration& c);

}  // namespace revy

#endif
