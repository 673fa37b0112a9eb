#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "morl/momdp.hpp"
#include "morl/policy.hpp"
#include "morl/qlearning.hpp"
#include "morl/reward_model.hpp"

namespace morl::io {

using nlohmann::json;

/// MOMDP document:
///   { "d", "gamma", "horizon",
///     "states": [{"id", "terminal", "actions"?: [names]}],
///     "mu": {state: prob},
///     "transitions": [{"from", "action", "to", "prob"}],
///     "rewards": [{"from", "action", "to", "outcomes": [{"vector", "prob"}]}] }
///
/// Action order per state is the optional "actions" list, else order of first
/// appearance in "transitions".
json to_json(const Momdp& momdp);

/// Structural parse only; throws InvalidInput on malformed documents or
/// dangling ids but leaves model invariants to validate().
Momdp momdp_from_json(const json& doc);

/// Parses and validates.
Momdp load_momdp(const std::filesystem::path& path);

/// `builtin:fig1`, `builtin:fig2` or a file path. When `validated` is false
/// the file is parsed without enforcing model invariants.
Momdp resolve_env(const std::string& ref, bool validated = true);

json to_json(const Policy& policy, const Momdp& momdp);
Policy policy_from_json(const json& doc, const Momdp& momdp);

json to_json(const RewardModel& model, const Momdp& momdp);
RewardModel reward_model_from_json(const json& doc, const Momdp& momdp);

json to_json(const QTable& table, const Momdp& momdp);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// FNV-1a over a canonical dump; identifies models and policies in reports.
std::uint64_t fingerprint(const json& doc);
std::uint64_t fingerprint(const Momdp& momdp);
std::uint64_t fingerprint(const Policy& policy, const Momdp& momdp);

std::string hex(std::uint64_t value);

}  // namespace morl::io
