#ifndef SFP_ERROR_HPP
#define SFP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sfp {

/// Bad user input: malformed data, violated preconditions, inapplicable procedures.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug or a corrupted object graph.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace sfp

#endif  // SFP_ERROR_HPP
