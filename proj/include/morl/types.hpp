#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace morl {

using StateId = std::size_t;
using ActionIndex = std::size_t;

/// One real value per objective.
using RewardVector = std::vector<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad file contents, unknown ids, dimension mismatches.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An exact procedure would exceed its configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A policy has no action for an observation and declares no fallback.
class MissingObservation : public Error {
public:
    using Error::Error;
};

/// Which reward signal feeds the accumulated-reward part of the observation.
enum class Regime { True, Proxy, None };

/// What a policy conditions on.
enum class ObservationKind { Markov, TrueAugmented, ProxyAugmented };

std::string to_string(Regime regime);
std::string to_string(ObservationKind kind);
Regime parse_regime(const std::string& text);
ObservationKind parse_observation_kind(const std::string& text);

}  // namespace morl
