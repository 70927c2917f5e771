#pragma once

#include <string>

#include <json.hpp>

#include "crs/discrete_set.hpp"
#include "crs/interval_set.hpp"
#include "crs/models.hpp"

namespace crs {

/// Interval sets serialize as arrays of [a, b] pairs with half-open
/// semantics; discrete sets as {"m": ..., "mask": ...}.
void to_json(nlohmann::json& j, const IntervalSet& s);
void from_json(const nlohmann::json& j, IntervalSet& s);
void to_json(nlohmann::json& j, const DiscreteSet& s);
void from_json(const nlohmann::json& j, DiscreteSet& s);

/// Model specs:
///   {"components": [{"kind":"lebesgue","window":[[0,1]],"scale":1},
///                   {"kind":"slice","n":2},
///                   {"kind":"binomial","window":[[0,1]],"count":5}],
///    "shift": "std-normal"|null, "tail": "example1"|null,
///    "restrict": [[a,b],...]|null}
/// or {"parts": [<part spec>, ...], "name": "..."} for mixtures. A bare
/// [a,b] pair is accepted wherever an interval set is expected.
CrSetModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const CrSetModel& model);

/// Resolves a --model argument: preset name, inline JSON (leading '{'),
/// or a path to a JSON file.
CrSetModel load_model(const std::string& arg);

nlohmann::json realization_to_json(const Realization& r);

}  // namespace crs
