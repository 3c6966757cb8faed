#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mhd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a cell leaves the physical state space (rho <= 0 or p < 0).
/// The index is in storage order of the orientation the state had when the
/// failure was detected.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, std::array<int, 3> cell)
      : Error(what + " at cell (" + std::to_string(cell[0]) + "," + std::to_string(cell[1]) +
              "," + std::to_string(cell[2]) + ")"),
        cell_(cell) {}

  std::array<int, 3> cell() const { return cell_; }

 private:
  std::array<int, 3> cell_;
};

/// Failure inside one slab of a parallel_for; wraps the original message.
class SlabError : public Error {
 public:
  SlabError(std::size_t slab, const std::string& inner)
      : Error("slab " + std::to_string(slab) + ": " + inner), slab_(slab), inner_(inner) {}

  std::size_t slab() const { return slab_; }
  const std::string& inner() const { return inner_; }

 private:
  std::size_t slab_;
  std::string inner_;
};

}  // namespace mhd
