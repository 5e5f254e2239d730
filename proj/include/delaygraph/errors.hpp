#pragma once

#include <stdexcept>
#include <string>

namespace delaygraph {

// Raised by the spectrum search when a certificate cannot be established.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero suspected on a contour; caller should move the contour.
class BoundaryZeroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure inside the inversion pipeline; message carries the step label.
class InverseError : public std::runtime_error {
 public:
  InverseError(const std::string& step, const std::string& what)
      : std::runtime_error("step (" + step + "): " + what), step_(step) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

}  // namespace delaygraph
