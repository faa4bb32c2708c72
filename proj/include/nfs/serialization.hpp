#pragma once

#include "nfs/membership.hpp"
#include "nfs/rulebase.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace nfs {

// Membership functions:  { "kind": "gaussian", "params": { "m": 5, "sigma": 2 } }
//
// Rule bases:
//   { "kind": "MA" | "TSK" | "ANNBFIS",
//     "inputs": ["input 1", ...], "output": "output",
//     "rules": [ { "premise": [ { "attr": 0, "mf": <membership> }, ... ],
//                  "consequence": <consequence> } ] }
//
// consequence: MA      { "triangle": { "a": .., "b": .., "c": .. } }
//              TSK     { "weights": [..], "constant": .. }
//              ANNBFIS { "width": .., "weights": [..], "constant": .. }
//
// Readers throw SchemaError carrying the JSON pointer of the offending node.

nlohmann::json to_json(const MembershipFunction& f);
MembershipFunction membership_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json to_json(const RuleBase& rb);
RuleBase rulebase_from_json(const nlohmann::json& j);

RuleBase load_rulebase(const std::filesystem::path& path);
void save_rulebase(const RuleBase& rb, const std::filesystem::path& path);

}  // namespace nfs
