#pragma once

#include <stdexcept>

namespace mirror {

// Shared error taxonomy. Each type corresponds to one failure contract so
// callers (and tests) can catch precisely.

// A top-level object was constructed with unusable parameters.
struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A function argument violates its documented precondition.
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A number lies outside the declared universe [1, 2N], or an index lies
// outside its container.
struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A declaration was submitted by the player not on the move.
struct WrongTurn : std::logic_error {
  using std::logic_error::logic_error;
};

// A declaration was submitted to a game that already terminated.
struct GameOver : std::logic_error {
  using std::logic_error::logic_error;
};

// A strategy was driven out of order (e.g. asked to move after aborting).
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

// Two sketches that must share parameters do not.
struct ParamMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Sketch recovery failed: the stream was corrupted or more than k values
// were missing.
struct DecodeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A random bit string ran out before every number of the universe appeared.
struct IncompleteCoverage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact computation was requested above its feasibility cap.
struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A move was requested but no legal value remains.
struct Exhausted : std::logic_error {
  using std::logic_error::logic_error;
};

// File input/output failed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mirror
