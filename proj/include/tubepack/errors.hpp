#pragma once

#include <stdexcept>
#include <string>

namespace tubepack {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (syntax or schema).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A track or box that violates the frame geometry.
class InvalidTrack : public Error {
 public:
  InvalidTrack(const std::string& tube_id, int frame_index, const std::string& what)
      : Error("track '" + tube_id + "' frame " + std::to_string(frame_index) + ": " + what),
        tube_id_(tube_id),
        frame_index_(frame_index) {}

  const std::string& tube_id() const noexcept { return tube_id_; }
  int frame_index() const noexcept { return frame_index_; }

 private:
  std::string tube_id_;
  int frame_index_;
};

// Bad parameters: geometry, constraints, solver settings.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The instance admits no feasible placement (some tube is longer than t_max).
class InstanceRejected : public Error {
 public:
  using Error::Error;
};

// A state that fails hard-constraint validation was handed to the cost model.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The exhaustive oracle would have to enumerate more states than its budget.
class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

// Cost requested for an empty tube set.
class UndefinedCost : public Error {
 public:
  using Error::Error;
};

}  // namespace tubepack
