#include "crs/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace crs {

using nlohmann::json;

void to_json(json& j, const IntervalSet& s) {
  j = json::array();
  for (const Interval& iv : s.components()) j.push_back(json::array({iv.lo, iv.hi}));
}

void from_json(const json& j, IntervalSet& s) {
  if (!j.is_array()) throw std::invalid_argument("interval set must be a JSON array");
  std::vector<Interval> comps;
  if (j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    comps.push_back({j[0].get<double>(), j[1].get<double>()});  // bare [a, b]
  } else {
    for (const json& pair : j) {
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("interval must be an [a, b] pair");
      }
      comps.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  s = IntervalSet::from_intervals(std::move(comps));
}

void to_json(json& j, const DiscreteSet& s) {
  j = json{{"m", s.universe_size()}, {"mask", s.mask()}};
}

void from_json(const json& j, DiscreteSet& s) {
  s = DiscreteSet(j.at("m").get<int>(), j.at("mask").get<std::uint32_t>());
}

namespace {

Component component_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "lebesgue") {
    LebesgueComponent c;
    c.window = j.at("window").get<IntervalSet>();
    c.scale = j.value("scale", 1.0);
    if (c.scale < 0.0) throw std::invalid_argument("component scale must be nonnegative");
    return c;
  }
  if (kind == "slice") {
    SliceComponent c;
    c.n = j.at("n").get<std::int64_t>();
    if (c.n < 1) throw std::invalid_argument("slice index must be >= 1");
    return c;
  }
  if (kind == "binomial") {
    BinomialComponent c;
    c.window = j.at("window").get<IntervalSet>();
    c.count = j.at("count").get<int>();
    if (c.count < 0) throw std::invalid_argument("binomial count must be nonnegative");
    if (c.window.empty()) throw std::invalid_argument("binomial window must be nonempty");
    return c;
  }
  throw std::invalid_argument("unknown component kind: " + kind);
}

json component_to_json(const Component& c) {
  return std::visit(
      [](const auto& comp) -> json {
        using T = std::decay_t<decltype(comp)>;
        if constexpr (std::is_same_v<T, LebesgueComponent>) {
          return json{{"kind", "lebesgue"}, {"window", comp.window}, {"scale", comp.scale}};
        } else if constexpr (std::is_same_v<T, SliceComponent>) {
          return json{{"kind", "slice"}, {"n", comp.n}};
        } else {
          return json{{"kind", "binomial"}, {"window", comp.window}, {"count", comp.count}};
        }
      },
      c);
}

ModelPart part_from_json(const json& j) {
  ModelPart part;
  if (j.contains("components") && !j.at("components").is_null()) {
    for (const json& cj : j.at("components")) part.components.push_back(component_from_json(cj));
  }
  if (j.contains("tail") && !j.at("tail").is_null()) {
    const std::string tail = j.at("tail").get<std::string>();
    if (tail != "example1") throw std::invalid_argument("unknown tail kind: " + tail);
    part.example1_tail = true;
  }
  if (j.contains("shift") && !j.at("shift").is_null()) {
    const std::string shift = j.at("shift").get<std::string>();
    if (shift != "std-normal") throw std::invalid_argument("unknown shift kind: " + shift);
    part.shift_std_normal = true;
  }
  if (j.contains("restrict") && !j.at("restrict").is_null()) {
    part.restrict_to = j.at("restrict").get<IntervalSet>();
  }
  return part;
}

json part_to_json(const ModelPart& part) {
  json j;
  j["components"] = json::array();
  for (const Component& c : part.components) j["components"].push_back(component_to_json(c));
  j["tail"] = part.example1_tail ? json("example1") : json(nullptr);
  j["shift"] = part.shift_std_normal ? json("std-normal") : json(nullptr);
  j["restrict"] = part.restrict_to ? json(*part.restrict_to) : json(nullptr);
  return j;
}

}  // namespace

CrSetModel model_from_json(const json& j) {
  CrSetModel model;
  model.name = j.value("name", "custom");
  if (j.contains("parts")) {
    for (const json& pj : j.at("parts")) model.parts.push_back(part_from_json(pj));
  } else {
    model.parts.push_back(part_from_json(j));
  }
  if (model.parts.empty()) throw std::invalid_argument("model has no parts");
  return model;
}

json model_to_json(const CrSetModel& model) {
  json j;
  j["name"] = model.name;
  j["parts"] = json::array();
  for (const ModelPart& p : model.parts) j["parts"].push_back(part_to_json(p));
  return j;
}

CrSetModel load_model(const std::string& arg) {
  if (arg.empty()) throw std::invalid_argument("empty model spec");
  if (arg.front() == '{') {
    return model_from_json(json::parse(arg));
  }
  if (arg.find('.') != std::string::npos || arg.find('/') != std::string::npos) {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open model file: " + arg);
    json j;
    in >> j;
    return model_from_json(j);
  }
  return preset_model(arg);
}

json realization_to_json(const Realization& r) {
  json j;
  j["seed"] = r.seed;
  j["replicate"] = r.replicate;
  j["depth"] = r.depth;
  j["parts"] = json::array();
  for (const PartRealization& part : r.parts) {
    json pj;
    pj["shift"] = part.shift ? json(*part.shift) : json(nullptr);
    pj["components"] = part.component_points;
    j["parts"].push_back(pj);
  }
  return j;
}

}  // namespace crs
