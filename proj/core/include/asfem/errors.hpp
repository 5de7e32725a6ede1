#pragma once

#include <stdexcept>
#include <string>

namespace asfem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegenerateTriangle : public Error { public: using Error::Error; };
class DegenerateTetrahedron : public Error { public: using Error::Error; };

/// A singular kernel was requested on a triangle that contains the source.
class SourceOnElement : public Error { public: using Error::Error; };
class EvaluationAtSource : public Error { public: using Error::Error; };
class NonpositiveSigmaInf : public Error { public: using Error::Error; };
class UnsupportedOrder : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

class ValidationError : public Error { public: using Error::Error; };
class NonManifold : public Error { public: using Error::Error; };
class SourceOutsideMesh : public Error { public: using Error::Error; };
class AnisotropicSourceRegion : public Error { public: using Error::Error; };
class IncompatibleRHS : public Error { public: using Error::Error; };
class InvalidRadii : public Error { public: using Error::Error; };
class SourceTooDeepForConvergence : public Error { public: using Error::Error; };
class ZeroReference : public Error { public: using Error::Error; };

}  // namespace asfem
