#pragma once

#include <stdexcept>
#include <string>

namespace unitary {

// A computation needs prime factors beyond the sieve limit of the table it
// was given.
class NeedsLargerTable : public std::runtime_error {
public:
  explicit NeedsLargerTable(const std::string& what) : std::runtime_error(what) {}
};

// The requested tolerance cannot be met within the configured work cap or
// within double precision.
class PrecisionUnachievable : public std::runtime_error {
public:
  explicit PrecisionUnachievable(const std::string& what) : std::runtime_error(what) {}
};

// A guaranteed mathematical fact failed numerically; signals a bug in the
// evaluation pipeline, not bad input.
class InternalInconsistency : public std::logic_error {
public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

// A sign decision fell inside its propagated error bound and cannot be
// made honestly at working precision.
class Inconclusive : public std::runtime_error {
public:
  explicit Inconclusive(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unitary
