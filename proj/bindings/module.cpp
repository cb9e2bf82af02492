// Python bindings: experiment configs, the run/compare entry points and the
// relay-situation miner. Long-running calls release the GIL.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sedplan/envs/finesse.hpp"
#include "sedplan/envs/mini_hanabi.hpp"
#include "sedplan/harness.hpp"

namespace py = pybind11;
using namespace sed;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deviation-planning harness for small cooperative games";

  py::register_exception<SedError>(m, "SedError");

  py::class_<PlannerConfig>(m, "PlannerConfig")
      .def(py::init<>())
      .def_readwrite("M", &PlannerConfig::M)
      .def_readwrite("N", &PlannerConfig::N)
      .def_readwrite("K", &PlannerConfig::K)
      .def_readwrite("eps_p", &PlannerConfig::eps_p)
      .def_readwrite("eps_q", &PlannerConfig::eps_q)
      .def_readwrite("temperature", &PlannerConfig::temperature)
      .def_readwrite("exact", &PlannerConfig::exact)
      .def_readwrite("restrict_relay", &PlannerConfig::restrict_relay)
      .def_readwrite("seed", &PlannerConfig::seed)
      .def_readwrite("exact_budget", &PlannerConfig::exact_budget);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("env", &ExperimentConfig::env)
      .def_readwrite("blueprint", &ExperimentConfig::blueprint)
      .def_property(
          "mode", [](const ExperimentConfig& c) { return to_string(c.mode); },
          [](ExperimentConfig& c, const std::string& s) { c.mode = agent_mode_from_string(s); })
      .def_readwrite("episodes", &ExperimentConfig::episodes)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("planner", &ExperimentConfig::planner)
      .def_readwrite("share_f", &ExperimentConfig::share_f)
      .def_readwrite("plan_turn", &ExperimentConfig::plan_turn)
      .def_readwrite("env_p", &ExperimentConfig::env_p)
      .def_readwrite("raw_seed", &ExperimentConfig::raw_seed)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir)
      .def_readwrite("run_name", &ExperimentConfig::run_name)
      .def("to_json", &config_to_json)
      .def("__repr__", [](const ExperimentConfig& c) {
        return "<ExperimentConfig " + config_to_json(c) + ">";
      });

  py::class_<DeviationEvent>(m, "DeviationEvent")
      .def_readonly("turn", &DeviationEvent::turn)
      .def_readonly("deviator", &DeviationEvent::deviator)
      .def_readonly("responder", &DeviationEvent::responder)
      .def_readonly("a1", &DeviationEvent::a1)
      .def_readonly("a2", &DeviationEvent::a2)
      .def_readonly("detected", &DeviationEvent::detected)
      .def_readonly("responded", &DeviationEvent::responded)
      .def_readonly("planned_value", &DeviationEvent::planned_value)
      .def_readonly("policy_value", &DeviationEvent::policy_value);

  py::class_<EpisodeRecord>(m, "EpisodeRecord")
      .def_readonly("index", &EpisodeRecord::index)
      .def_readonly("seed", &EpisodeRecord::seed)
      .def_readonly("ret", &EpisodeRecord::ret)
      .def_readonly("turns", &EpisodeRecord::turns)
      .def_readonly("deviations", &EpisodeRecord::deviations)
      .def_readonly("responses", &EpisodeRecord::responses)
      .def_readonly("finesses", &EpisodeRecord::finesses)
      .def_readonly("events", &EpisodeRecord::events);

  py::class_<SummaryReport>(m, "SummaryReport")
      .def_readonly("env", &SummaryReport::env)
      .def_readonly("blueprint", &SummaryReport::blueprint)
      .def_readonly("mode", &SummaryReport::mode)
      .def_readonly("episodes", &SummaryReport::episodes)
      .def_readonly("mean_return", &SummaryReport::mean_return)
      .def_readonly("stderr_return", &SummaryReport::stderr_return)
      .def_readonly("min_return", &SummaryReport::min_return)
      .def_readonly("max_return", &SummaryReport::max_return)
      .def_readonly("total_deviations", &SummaryReport::total_deviations)
      .def_readonly("total_responses", &SummaryReport::total_responses)
      .def_readonly("total_finesses", &SummaryReport::total_finesses)
      .def("to_tsv", &SummaryReport::to_tsv);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("episodes", &RunResult::episodes)
      .def_readonly("summary", &RunResult::summary);

  py::class_<CompareResult>(m, "CompareResult")
      .def_readonly("a", &CompareResult::a)
      .def_readonly("b", &CompareResult::b)
      .def_readonly("mean_delta", &CompareResult::mean_delta)
      .def_readonly("stderr_delta", &CompareResult::stderr_delta)
      .def("to_tsv", &CompareResult::to_tsv);

  py::class_<FinesseSituation>(m, "FinesseSituation")
      .def_readonly("seed", &FinesseSituation::seed)
      .def_readonly("turn", &FinesseSituation::turn)
      .def_readonly("deviator", &FinesseSituation::deviator)
      .def_readonly("responder", &FinesseSituation::responder)
      .def_readonly("relay", &FinesseSituation::relay)
      .def_readonly("hint", &FinesseSituation::hint)
      .def_readonly("responder_slot", &FinesseSituation::responder_slot)
      .def_readonly("relay_slot", &FinesseSituation::relay_slot)
      .def_readonly("deal", &FinesseSituation::deal);

  m.def("default_config", &default_config);
  m.def(
      "apply_json",
      [](ExperimentConfig& cfg, const std::string& text) { apply_json(&cfg, text); },
      py::arg("config"), py::arg("json_text"),
      "Overlay the keys present in the JSON text onto the config.");
  m.def(
      "run_experiment", [](const ExperimentConfig& cfg) { return run_experiment(cfg); },
      py::arg("config"), py::call_guard<py::gil_scoped_release>(),
      "Run the configured episodes; writes artifacts when out_dir is set.");
  m.def("expected_episode_value", &expected_episode_value, py::arg("config"),
        py::call_guard<py::gil_scoped_release>(),
        "Exact expected episode value by full chance enumeration.");
  m.def(
      "compare",
      [](const ExperimentConfig& a, const ExperimentConfig& b) { return compare(a, b); },
      py::arg("a"), py::arg("b"), py::call_guard<py::gil_scoped_release>(),
      "Paired comparison of two configs on shared episode seeds.");
  m.def(
      "episode_json",
      [](const ExperimentConfig& cfg, const EpisodeRecord& rec) {
        return episode_to_json(*make_game(cfg), rec);
      },
      py::arg("config"), py::arg("episode"),
      "Serialize one episode exactly as the run artifacts do.");
  m.def(
      "mine_finesse",
      [](uint64_t seed, int min_turn, bool first_only) {
        MiniHanabiGame game;
        ScriptedHanabiBlueprint pi;
        return mine_finesse(game, pi, seed, min_turn, first_only);
      },
      py::arg("seed"), py::arg("min_turn") = 2, py::arg("first_only") = true,
      py::call_guard<py::gil_scoped_release>(),
      "Relay-hint situations reachable under the bundled card-game convention.");
  m.def(
      "finesse_completes",
      [](const FinesseSituation& sit) {
        MiniHanabiGame game;
        ScriptedHanabiBlueprint pi;
        return finesse_completes(game, pi, sit);
      },
      py::arg("situation"), py::call_guard<py::gil_scoped_release>(),
      "Whether forcing the mined hint leads to both relay plays scoring.");
}
