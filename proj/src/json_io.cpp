#include "eaplan/json_io.hpp"

namespace eaplan::io {

json rational_to_json(const Rational& r) {
  return json{{"exact", r.str()}, {"approx", r.toDouble()}};
}

Rational rational_from_json(const json& j) {
  if (j.is_object()) return Rational::parse(j.at("exact").get<std::string>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  return Rational(j.get<long long>());
}

json to_json(const ea::ModelUpdate& u) {
  return json{{"kind", ea::kind_name(u.kind)},
              {"action", u.action},
              {"fluent", u.fluent},
              {"canonical", u.canonical()}};
}

ea::ModelUpdate update_from_json(const json& j) {
  auto kind = ea::kind_from_name(j.at("kind").get<std::string>());
  if (!kind.has_value())
    throw std::runtime_error("unknown update kind: " + j.at("kind").get<std::string>());
  ea::ModelUpdate u;
  u.kind = *kind;
  u.action = j.value("action", std::string{});
  u.fluent = j.at("fluent").get<std::string>();
  return u;
}

json to_json(const ea::ModelDiff& d) {
  json plus = json::array(), minus = json::array();
  for (const auto& u : d.plus) plus.push_back(to_json(u));
  for (const auto& u : d.minus) minus.push_back(to_json(u));
  return json{{"plus", plus}, {"minus", minus}, {"size", d.size()}};
}

json to_json(const ValidityReport& r) {
  json j{{"executable", r.executable},
         {"goal_reached", r.goalReached},
         {"valid", r.valid()},
         {"total_cost", rational_to_json(r.totalCost)}};
  if (r.failStep >= 0) {
    j["fail_step"] = r.failStep;
    j["violated"] = r.violatedCondition;
  }
  return j;
}

json to_json(const search::Result& r, const PlanningTask& task) {
  json j{{"status", search::to_string(r.status)},
         {"cost", rational_to_json(r.cost)},
         {"expanded", r.expanded},
         {"generated", r.generated},
         {"wall_time_s", r.wallTime}};
  if (r.status == search::Status::Solved) j["plan"] = r.planNames(task);
  return j;
}

json to_json(const ea::EASolution& s) {
  json expl = json::array();
  for (const auto& u : s.explanation) expl.push_back(to_json(u));
  return json{{"explanation", expl},
              {"side_effect_conveyed", s.sideEffectConveyed},
              {"task_plan", s.taskPlan},
              {"explanation_cost", rational_to_json(s.explanationCost)},
              {"task_cost", rational_to_json(s.taskCost)}};
}

ea::EASolution solution_from_json(const json& j) {
  ea::EASolution s;
  for (const auto& u : j.at("explanation")) s.explanation.push_back(update_from_json(u));
  s.taskPlan = j.at("task_plan").get<std::vector<std::string>>();
  if (j.contains("explanation_cost")) s.explanationCost = rational_from_json(j["explanation_cost"]);
  if (j.contains("task_cost")) s.taskCost = rational_from_json(j["task_cost"]);
  if (j.contains("side_effect_conveyed"))
    s.sideEffectConveyed = j["side_effect_conveyed"].get<std::vector<std::string>>();
  return s;
}

json to_json(const ea::SolutionReport& r) {
  json j{{"robot", to_json(r.robot)},
         {"updated_human", to_json(r.updatedHuman)},
         {"updates_consistent", r.updatesConsistent},
         {"valid", r.valid()}};
  if (r.taskPlanOptimalInUpdated.has_value())
    j["task_plan_optimal_in_updated"] = *r.taskPlanOptimalInUpdated;
  if (r.updatedOptimalCost.has_value())
    j["updated_optimal_cost"] = rational_to_json(*r.updatedOptimalCost);
  return j;
}

json to_json(const ea::SolveOutcome& o) {
  json search{{"status", search::to_string(o.search.status)},
              {"cost", rational_to_json(o.search.cost)},
              {"expanded", o.search.expanded},
              {"generated", o.search.generated},
              {"wall_time_s", o.search.wallTime}};
  if (!o.augmentedPlan.empty()) search["plan"] = o.augmentedPlan;
  json j{{"search", search},
         {"solution", to_json(o.solution)},
         {"penalized", o.penalized},
         {"objective", rational_to_json(o.objective)},
         {"guard_tests", o.guardTests},
         {"guard_cache_hits", o.guardCacheHits},
         {"guard_indeterminate", o.guardIndeterminate}};
  return j;
}

json to_json(const mss::MssResult& r) {
  json j{{"status", mss::to_string(r.status)},
         {"nodes_visited", r.nodesVisited},
         {"inner_searches", r.innerSearches},
         {"wall_time_s", r.wallTime}};
  if (r.status == mss::MssStatus::Solved) {
    j["solution"] = to_json(r.solution);
    j["total_cost"] = rational_to_json(r.totalCost);
  }
  return j;
}

}  // namespace eaplan::io
