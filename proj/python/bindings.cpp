#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "condkin/evolution.hpp"
#include "condkin/generator.hpp"
#include "condkin/grid.hpp"
#include "condkin/kernels.hpp"
#include "condkin/mellin.hpp"
#include "condkin/nonlinear.hpp"
#include "condkin/observables.hpp"
#include "condkin/scenario.hpp"
#include "condkin/timechange.hpp"

namespace py = pybind11;
using namespace condkin;

PYBIND11_MODULE(_core, m) {
  m.doc() = "conservative solver for the linearized condensate/normal-fluid kinetics";

  py::enum_<WeightConvention>(m, "WeightConvention")
      .value("SINH_X2", WeightConvention::SinhX2)
      .value("SINH_HALF_X2", WeightConvention::SinhHalfX2);

  py::enum_<StepMethod>(m, "StepMethod")
      .value("CRANK_NICOLSON", StepMethod::CrankNicolson)
      .value("RK4", StepMethod::Rk4)
      .value("BACKWARD_EULER", StepMethod::BackwardEuler);

  py::enum_<HorizonClass>(m, "HorizonClass")
      .value("FINITE", HorizonClass::Finite)
      .value("INFINITE", HorizonClass::Infinite)
      .value("UNDECIDED", HorizonClass::Undecided);

  py::class_<RadialGrid>(m, "RadialGrid")
      .def_static("graded", &RadialGrid::graded, py::arg("n"), py::arg("x_max") = 8.0,
                  py::arg("grading") = 2.0)
      .def_readonly("nodes", &RadialGrid::nodes)
      .def_readonly("weights", &RadialGrid::weights)
      .def_readonly("x_max", &RadialGrid::x_max)
      .def("__len__", &RadialGrid::size);

  py::class_<StateField>(m, "StateField")
      .def(py::init([](std::vector<double> values, double theta) {
             return StateField{std::move(values), theta};
           }),
           py::arg("values"), py::arg("theta") = 0.5)
      .def_readwrite("values", &StateField::values)
      .def_readwrite("theta", &StateField::theta)
      .def("norm_theta", &StateField::norm_theta);

  py::class_<EquilibriumWeights>(m, "EquilibriumWeights")
      .def_static("build", &EquilibriumWeights::build)
      .def_readonly("nodes", &EquilibriumWeights::nodes)
      .def_readonly("w4", &EquilibriumWeights::w4)
      .def_readonly("w6", &EquilibriumWeights::w6)
      .def_readonly("convention", &EquilibriumWeights::convention);

  m.def("equilibrium_n0", &equilibrium_n0);
  m.def("kernel_M", &kernel_M);
  m.def("kernel_W", &kernel_W);
  m.def("kernel_T", [](double x, double y) { return kernel_T(x, y); });
  m.def("kernel_row_mass", &kernel_row_mass, py::arg("x"), py::arg("x_max"),
        py::arg("max_evaluations") = 100000);

  py::class_<GeneratorMatrix>(m, "GeneratorMatrix")
      .def("__len__", &GeneratorMatrix::size)
      .def("apply", &GeneratorMatrix::apply)
      .def("entry", &GeneratorMatrix::entry)
      .def("weighted_sum", &GeneratorMatrix::weighted_sum)
      .def("quadratic_form", &GeneratorMatrix::quadratic_form)
      .def_property_readonly("balance_measure", &GeneratorMatrix::balance_measure);
  m.def("assemble_generator", &assemble_generator);
  m.def("apply_calL", &apply_calL);
  m.def("apply_L", &apply_L);
  m.def("apply_F", &apply_F);

  py::class_<RunSchedule>(m, "RunSchedule")
      .def(py::init<>())
      .def_readwrite("dt", &RunSchedule::dt)
      .def_readwrite("tau_end", &RunSchedule::tau_end)
      .def_readwrite("store_every", &RunSchedule::store_every)
      .def_readwrite("method", &RunSchedule::method);

  py::class_<EvolutionRun>(m, "EvolutionRun")
      .def_readonly("times", &EvolutionRun::times)
      .def_readonly("states", &EvolutionRun::states)
      .def_readonly("dt", &EvolutionRun::dt)
      .def_readonly("tau_end", &EvolutionRun::tau_end);

  m.def("step", &step);
  m.def("run", &run);

  py::class_<BoundaryLimit>(m, "BoundaryLimit")
      .def_readonly("value", &BoundaryLimit::value)
      .def_readonly("error_indicator", &BoundaryLimit::error_indicator)
      .def_readonly("low_confidence", &BoundaryLimit::low_confidence);
  m.def("boundary_limit", &boundary_limit, py::arg("f"), py::arg("grid"),
        py::arg("delta") = 0.05);

  py::class_<MassEnergy>(m, "MassEnergy")
      .def_readonly("N", &MassEnergy::N)
      .def_readonly("E", &MassEnergy::E);
  m.def("mass_energy", &mass_energy);

  py::class_<AsymptoticConstants>(m, "AsymptoticConstants")
      .def_readonly("Cstar", &AsymptoticConstants::Cstar)
      .def_readonly("Mcal_inf", &AsymptoticConstants::Mcal_inf)
      .def_readonly("pc_limit_ratio", &AsymptoticConstants::pc_limit_ratio)
      .def_readonly("N0", &AsymptoticConstants::N0)
      .def_readonly("E0", &AsymptoticConstants::E0);
  m.def("asymptotic_constants", &asymptotic_constants);
  m.def("dissipation", &dissipation);

  py::class_<ObservableSeries>(m, "ObservableSeries")
      .def_readonly("tau", &ObservableSeries::tau)
      .def_readonly("N", &ObservableSeries::N)
      .def_readonly("E", &ObservableSeries::E)
      .def_readonly("m", &ObservableSeries::m)
      .def_readonly("Mcal", &ObservableSeries::Mcal)
      .def_readonly("qc", &ObservableSeries::qc)
      .def_readonly("D", &ObservableSeries::D)
      .def_readonly("b", &ObservableSeries::b)
      .def_readonly("Cstar", &ObservableSeries::Cstar)
      .def_readonly("Mcal_inf", &ObservableSeries::Mcal_inf);
  m.def("drift_series", &drift_series, py::arg("run"), py::arg("gen"), py::arg("weights"),
        py::arg("qc0") = 1.0, py::arg("cross_check_tol") = 1e-4);

  py::class_<TimeMap>(m, "TimeMap")
      .def_readonly("tau", &TimeMap::tau)
      .def_readonly("t", &TimeMap::t)
      .def_readonly("qc", &TimeMap::qc)
      .def("t_end", &TimeMap::t_end);
  m.def("build_map", &build_map);
  m.def("tau_of_t", &tau_of_t);

  py::class_<PhysicalState>(m, "PhysicalState")
      .def_readonly("u", &PhysicalState::u)
      .def_readonly("pc", &PhysicalState::pc)
      .def_readonly("t", &PhysicalState::t)
      .def_readonly("tau", &PhysicalState::tau);
  m.def("physical_solution", &physical_solution);

  m.def("symbol_W", &symbol_W);
  m.def("symbol_B", &symbol_B, py::arg("s"), py::arg("beta"), py::arg("quad_budget") = 100000);
  m.def("functional_equation_residual", &functional_equation_residual, py::arg("s"),
        py::arg("quad_budget") = 100000);

  py::class_<NonlinearDriveConfig>(m, "NonlinearDriveConfig")
      .def(py::init<>())
      .def_readwrite("C1", &NonlinearDriveConfig::C1)
      .def_readwrite("C2", &NonlinearDriveConfig::C2)
      .def_readwrite("qc0", &NonlinearDriveConfig::qc0);
  py::class_<HorizonResult>(m, "HorizonResult")
      .def_readonly("classification", &HorizonResult::classification)
      .def_readonly("Tstar", &HorizonResult::Tstar)
      .def_readonly("tail_slope", &HorizonResult::tail_slope)
      .def_readonly("diagnostics", &HorizonResult::diagnostics);
  m.def("nonlinear_drift", &nonlinear_drift);
  m.def("classify_horizon", &classify_horizon);
  m.def("horizon", &horizon);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("grid_n", &ScenarioConfig::grid_n)
      .def_readwrite("x_max", &ScenarioConfig::x_max)
      .def_readwrite("grading", &ScenarioConfig::grading)
      .def_readwrite("initial", &ScenarioConfig::initial)
      .def_readwrite("constant_value", &ScenarioConfig::constant_value)
      .def_readwrite("theta", &ScenarioConfig::theta)
      .def_readwrite("tau_end", &ScenarioConfig::tau_end)
      .def_readwrite("dt", &ScenarioConfig::dt)
      .def_readwrite("store_every", &ScenarioConfig::store_every)
      .def_readwrite("qc0", &ScenarioConfig::qc0)
      .def_readwrite("convention", &ScenarioConfig::convention)
      .def_readwrite("method", &ScenarioConfig::method)
      .def_readwrite("snapshots", &ScenarioConfig::snapshots);
  py::enum_<InitialKind>(m, "InitialKind")
      .value("EXAMPLE1", InitialKind::Example1)
      .value("EXAMPLE2", InitialKind::Example2)
      .value("CONSTANT", InitialKind::Constant)
      .value("BUMP", InitialKind::Bump)
      .value("FILE", InitialKind::File);

  py::class_<ScenarioResult>(m, "ScenarioResult")
      .def_readonly("constants", &ScenarioResult::constants)
      .def_readonly("energy_rel_drift", &ScenarioResult::energy_rel_drift)
      .def_readonly("drift_identity", &ScenarioResult::drift_identity)
      .def_readonly("log_conservation", &ScenarioResult::log_conservation)
      .def_readonly("pc_end_ratio", &ScenarioResult::pc_end_ratio)
      .def_readonly("t_end", &ScenarioResult::t_end);
  m.def("run_scenario", &run_scenario);
  m.def("initial_state", &initial_state);
}
