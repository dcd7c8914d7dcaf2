#pragma once

#include "confunc/states.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace confunc::states {

class StateFormatError : public std::runtime_error {
 public:
  explicit StateFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Plain-text state file:
///
///   # confunc-state
///   # n=<n> x_min=<x_min> x_max=<x_max> hbar=<hbar> representation=<position|momentum> conjugate_min=<v>
///   x re_psi im_psi
///   <one row per grid point>
///
/// Values are written with 17 significant digits, so a read reproduces the
/// state bit for bit.
void write_state(std::ostream& out, const GriddedState& state);

/// Throws StateFormatError on a malformed header or row.
[[nodiscard]] GriddedState read_state(std::istream& in);

}  // namespace confunc::states
