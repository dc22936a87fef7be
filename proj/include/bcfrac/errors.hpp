#pragma once

#include <stdexcept>
#include <string>

namespace bcfrac {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { public: using Error::Error; };
class ZeroDivisorError : public Error { public: using Error::Error; };
class ZeroError : public Error { public: using Error::Error; };
class QuadratureError : public Error { public: using Error::Error; };
class StepError : public Error { public: using Error::Error; };
class EmptyProbesError : public Error { public: using Error::Error; };
class NotInvertibleError : public Error { public: using Error::Error; };
class UnsupportedWeightsError : public Error { public: using Error::Error; };
class WOnBoundaryError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class IOError : public Error { public: using Error::Error; };

} // namespace bcfrac
