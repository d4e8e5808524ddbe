#include "photon_slh/photon_slh.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace photon_slh;

namespace {

// Operators cross the boundary as plain complex matrices.
std::vector<Matrix> matrices(const std::vector<Operator>& ops) {
  std::vector<Matrix> out;
  for (const auto& op : ops) out.push_back(op.matrix());
  return out;
}

Pulse analytic_pulse(const PulseShape& shape, const TimeGrid& grid, std::optional<Vector> weights) {
  return weights ? Pulse::analytic(shape, grid, *weights) : Pulse::analytic(shape, grid);
}

}  // namespace

PYBIND11_MODULE(_photon_slh, m) {
  m.doc() = "Single-photon response of finite-level open quantum systems";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<NotFactorizedError>(m, "NotFactorizedError", PyExc_ValueError);
  py::register_exception<SingularLoopError>(m, "SingularLoopError", PyExc_ArithmeticError);
  py::register_exception<GridError>(m, "GridError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationFailed>(m, "ValidationFailed", PyExc_RuntimeError);

  m.def("sigma_z", [] { return sigma_z().matrix(); });
  m.def("sigma_plus", [] { return sigma_plus().matrix(); });
  m.def("sigma_minus", [] { return sigma_minus().matrix(); });
  m.def("commutator", [](const Matrix& a, const Matrix& b) {
    return commutator(Operator(a), Operator(b)).matrix();
  });
  m.def("embed_site", [](const Matrix& a, std::size_t site, std::size_t n_sites) {
    return embed_site(Operator(a), site, n_sites).matrix();
  }, py::arg("a"), py::arg("site"), py::arg("n_sites"));

  py::class_<SLHModel>(m, "SLHModel")
      .def(py::init([](const Matrix& s, const Vector& theta, const Matrix& l0, const Matrix& h0) {
             return SLHModel(s, theta, Operator(l0), Operator(h0));
           }),
           py::arg("S"), py::arg("theta"), py::arg("L0"), py::arg("H0"))
      .def_static("general", [](const Matrix& s, const std::vector<Matrix>& ls, const Matrix& h) {
        std::vector<Operator> ops(ls.begin(), ls.end());
        return SLHModel::general(s, std::move(ops), Operator(h));
      }, py::arg("S"), py::arg("L"), py::arg("H"))
      .def_static("identity", &SLHModel::identity, py::arg("levels"), py::arg("channels"))
      .def_property_readonly("levels", &SLHModel::levels)
      .def_property_readonly("channels", &SLHModel::channels)
      .def_property_readonly("factorized", &SLHModel::factorized)
      .def_property_readonly("S", &SLHModel::scattering)
      .def_property_readonly("H", [](const SLHModel& s) { return s.hamiltonian().matrix(); })
      .def_property_readonly("theta", &SLHModel::theta)
      .def_property_readonly("L0", [](const SLHModel& s) { return s.coupling_operator().matrix(); })
      .def_property_readonly("L", [](const SLHModel& s) { return matrices(s.couplings()); })
      .def("to_json", &io::dump_model)
      .def_static("from_json", [](const std::string& text) { return io::parse_model(text); });

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("alpha", &DerivedParams::alpha)
      .def_readonly("beta", &DerivedParams::beta)
      .def_readonly("h", &DerivedParams::h)
      .def_readonly("a", &DerivedParams::a)
      .def_readonly("coupling_weight", &DerivedParams::coupling_weight);

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("name", &ConditionReport::name)
      .def_readonly("holds", &ConditionReport::holds)
      .def_readonly("residual", &ConditionReport::residual)
      .def_readonly("value", &ConditionReport::value)
      .def_readonly("message", &ConditionReport::message);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("passed", &ValidationReport::passed)
      .def_readonly("params", &ValidationReport::params)
      .def_property_readonly("conditions", [](const ValidationReport& r) {
        std::vector<ConditionReport> out;
        for (const auto* c : r.conditions()) out.push_back(*c);
        return out;
      })
      .def("first_failure", &ValidationReport::first_failure);

  m.def("validate_linear_response", &validate_linear_response, py::arg("model"),
        py::arg("tol") = kDefaultTolerance, py::arg("stability_margin") = 0.0);
  m.def("series_product", &series_product, py::arg("g2"), py::arg("g1"),
        py::arg("tol") = kDefaultTolerance);

  py::class_<FeedbackReduction>(m, "FeedbackReduction")
      .def_readonly("model", &FeedbackReduction::model)
      .def_readonly("loop_gain", &FeedbackReduction::loop_gain)
      .def_readonly("theta", &FeedbackReduction::theta)
      .def_readonly("detuning", &FeedbackReduction::detuning);
  m.def("feedback_reduction", &feedback_reduction);
  m.def("feedback_reduce", &feedback_reduce);

  py::class_<PhotonTransfer>(m, "PhotonTransfer")
      .def_static("identity", &PhotonTransfer::identity, py::arg("channels"))
      .def_property_readonly("channels", &PhotonTransfer::channels)
      .def_property_readonly("num_stages", [](const PhotonTransfer& f) { return f.stages().size(); })
      .def("response", &PhotonTransfer::response, py::arg("omega"))
      .def("responses", [](const PhotonTransfer& f, const std::vector<double>& omegas) {
        std::vector<Matrix> out;
        for (double w : omegas) out.push_back(f.response(w));
        return out;
      });
  m.def("from_model", &from_model, py::arg("model"), py::arg("tol") = kDefaultTolerance);
  m.def("cascade", &cascade, py::arg("first"), py::arg("second"));

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("t_start"), py::arg("dt"), py::arg("size"))
      .def_static("centered", &TimeGrid::centered, py::arg("span"), py::arg("log2_n"))
      .def_readonly("t_start", &TimeGrid::t_start)
      .def_readonly("dt", &TimeGrid::dt)
      .def_readonly("size", &TimeGrid::size)
      .def("times", [](const TimeGrid& g) {
        Eigen::VectorXd t(static_cast<Index>(g.size));
        for (std::size_t j = 0; j < g.size; ++j) t(static_cast<Index>(j)) = g.time(j);
        return t;
      });

  py::class_<GaussianShape>(m, "Gaussian")
      .def(py::init<double, double, double>(), py::arg("center") = 0.0, py::arg("width") = 1.0,
           py::arg("carrier") = 0.0);
  py::class_<DecayingExpShape>(m, "DecayingExp")
      .def(py::init<double, double>(), py::arg("kappa") = 1.0, py::arg("t_on") = 0.0);
  py::class_<RisingExpShape>(m, "RisingExp")
      .def(py::init<double, double>(), py::arg("kappa") = 1.0, py::arg("omega_c") = 0.0);
  py::class_<SquareShape>(m, "Square")
      .def(py::init<double, double>(), py::arg("t0") = 0.0, py::arg("t1") = 1.0);

  py::class_<Pulse>(m, "Pulse")
      .def_static("sampled", &Pulse::sampled, py::arg("grid"), py::arg("samples"))
      .def_static("analytic", &analytic_pulse, py::arg("shape"), py::arg("grid"),
                  py::arg("weights") = py::none())
      .def_property_readonly("grid", &Pulse::grid)
      .def_property_readonly("samples", &Pulse::samples)
      .def_property_readonly("channels", &Pulse::channels)
      .def("norm", &Pulse::norm)
      .def("energy_before", &Pulse::energy_before, py::arg("t0"));
  m.def("normalize", &normalize);

  py::class_<Spectrum>(m, "Spectrum")
      .def_property_readonly("omegas", [](const Spectrum& s) {
        Eigen::VectorXd w(static_cast<Index>(s.omegas.size));
        for (std::size_t j = 0; j < s.omegas.size; ++j) w(static_cast<Index>(j)) = s.omegas[j];
        return w;
      })
      .def_readonly("values", &Spectrum::values);
  m.def("fourier", &fourier);
  m.def("inverse_fourier", &inverse_fourier);

  py::class_<ShapeResult>(m, "ShapeResult")
      .def_readonly("output", &ShapeResult::output)
      .def_readonly("input_norm", &ShapeResult::input_norm)
      .def_readonly("output_norm", &ShapeResult::output_norm);
  m.def("shape_fft", &shape_fft, py::arg("pulse"), py::arg("filter"));
  m.def("shape_ode", &shape_ode, py::arg("pulse"), py::arg("filter"));
  m.def("l2_distance", &l2_distance);
  m.def("l2_distance_up_to_phase", &l2_distance_up_to_phase);

  py::class_<TwoLevelParams>(m, "TwoLevelParams")
      .def(py::init<double, double>(), py::arg("kappa"), py::arg("omega_c"))
      .def_readonly("kappa", &TwoLevelParams::kappa)
      .def_readonly("omega_c", &TwoLevelParams::omega_c);
  m.def("two_level_model", &two_level_model);
  m.def("two_channel_model", &two_channel_model, py::arg("kappa1"), py::arg("kappa2"),
        py::arg("omega_c"), py::arg("S") = Matrix(Matrix::Identity(2, 2)));
  m.def("joint_memory_model", &joint_memory_model, py::arg("n_atoms"), py::arg("params"));
  m.def("two_level_G", &two_level_G);
  m.def("two_channel_G", &two_channel_G);
  m.def("memory_GN", &memory_GN);
  m.def("hyp1f1", &hyp1f1);
  m.def("memory_kernel_1f1", &memory_kernel_1f1);
  m.def("inverting_pulse", &inverting_pulse);
}
