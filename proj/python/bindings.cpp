#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdeph/dynamics.hpp"
#include "qdeph/ensembles.hpp"
#include "qdeph/io.hpp"
#include "qdeph/model.hpp"
#include "qdeph/pt.hpp"
#include "qdeph/spectral.hpp"
#include "qdeph/tomography.hpp"
#include "qdeph/verify.hpp"

namespace py = pybind11;
using namespace qdeph;

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Correlated dephasing environments: partial-transpose "
              "entanglement witness, exact dynamics, tomography, ensembles";

  py::register_exception<RankDeficientError>(mod, "RankDeficientError");

  py::class_<DephasingModel>(mod, "DephasingModel")
      .def_readonly("n", &DephasingModel::n)
      .def_readonly("C", &DephasingModel::C)
      .def_readonly("h", &DephasingModel::h)
      .def_readonly("physical", &DephasingModel::physical)
      .def("__repr__", [](const DephasingModel& m) {
        return "<DephasingModel n=" + std::to_string(m.n) + ">";
      });

  mod.def("make_model", &make_model, py::arg("n"), py::arg("C"), py::arg("h"));
  mod.def("case_c1", &case_c1, py::arg("n"));
  mod.def("case_c2", &case_c2, py::arg("n"));
  mod.def("case_c3", &case_c3, py::arg("n"));
  mod.def("g_theta", &g_theta, py::arg("theta"));
  mod.def("two_qubit_family", &two_qubit_family, py::arg("r"),
          py::arg("alpha"));
  mod.def("sample_ginibre", &sample_ginibre, py::arg("n"), py::arg("seed"));
  mod.def("rank_proxy", &rank_proxy);
  mod.def("rel_imag_norm", &rel_imag_norm);

  py::class_<Bipartition>(mod, "Bipartition")
      .def(py::init(
               [](int n, std::vector<int> qubits) {
                 return Bipartition::make(n, std::move(qubits));
               }),
           py::arg("n"), py::arg("qubits"))
      .def_readonly("n", &Bipartition::n)
      .def_readonly("qubits", &Bipartition::qubits)
      .def("contains", &Bipartition::contains);

  py::class_<TransformedModel>(mod, "TransformedModel")
      .def_readonly("n", &TransformedModel::n)
      .def_readonly("C_tilde", &TransformedModel::C_tilde)
      .def_readonly("h_tilde", &TransformedModel::h_tilde)
      .def_readonly("part", &TransformedModel::part);

  mod.def("pt_transform", &pt_transform, py::arg("model"), py::arg("part"));
  mod.def("enumerate_bipartitions", &enumerate_bipartitions, py::arg("n"));
  mod.def("witness", &witness, py::arg("model"), py::arg("part"));

  py::class_<WitnessResult>(mod, "WitnessResult")
      .def_readonly("lambda_min", &WitnessResult::lambda_min)
      .def_readonly("part", &WitnessResult::part);

  mod.def("witness_all", &witness_all, py::arg("model"),
          py::arg("n_threads") = 0, py::arg("cap") = kWitnessAllCap);
  mod.def("entangling_threshold", &entangling_threshold, py::arg("C"));

  py::class_<SpectralReport>(mod, "SpectralReport")
      .def_readonly("eigenvalues", &SpectralReport::eigenvalues)
      .def_readonly("lambda_min", &SpectralReport::lambda_min)
      .def_readonly("is_psd", &SpectralReport::is_psd)
      .def_readonly("pseudo_det", &SpectralReport::pseudo_det)
      .def_readonly("numerical_rank", &SpectralReport::numerical_rank);

  mod.def("eig_hermitian", &eig_hermitian, py::arg("M"),
          py::arg("psd_tol") = kDefaultPsdTol,
          py::arg("rank_tol") = kDefaultRankTol);
  mod.def("pseudo_det", &pseudo_det, py::arg("M"),
          py::arg("rank_tol") = kDefaultRankTol);
  mod.def("trace_norm", &trace_norm);

  py::class_<LindbladComponent>(mod, "LindbladComponent")
      .def_readonly("gamma", &LindbladComponent::gamma)
      .def_readonly("l", &LindbladComponent::l);

  mod.def("lindblad_decomposition", &lindblad_decomposition, py::arg("C"),
          py::arg("rank_tol") = kDefaultRankTol);

  py::class_<DensityMatrix>(mod, "DensityMatrix")
      .def_readonly("n", &DensityMatrix::n)
      .def_readonly("rho", &DensityMatrix::rho);

  mod.def("product_plus_state", &product_plus_state, py::arg("n"));
  mod.def("bell_state", &bell_state, py::arg("i"), py::arg("j"), py::arg("n"));
  mod.def("bar_state", &bar_state, py::arg("i"), py::arg("j"), py::arg("n"));
  mod.def(
      "evolve",
      [](const DensityMatrix& rho0, const DephasingModel& m, double t) {
        return evolve(rho0, m, t);
      },
      py::arg("rho0"), py::arg("model"), py::arg("t"));
  mod.def("gamma_rate",
          py::overload_cast<const std::vector<int>&, const std::vector<int>&,
                            const DephasingModel&>(&gamma_rate));
  mod.def("omega_freq",
          py::overload_cast<const std::vector<int>&, const std::vector<int>&,
                            const DephasingModel&>(&omega_freq));
  mod.def("log_negativity", &log_negativity, py::arg("rho"), py::arg("part"));
  mod.def("negativity_trace", &negativity_trace, py::arg("model"),
          py::arg("rho0"), py::arg("part"), py::arg("t_grid"));
  mod.def("positivity_probe", &positivity_probe, py::arg("tm"),
          py::arg("dt"));
  mod.def("geometric_grid", &geometric_grid, py::arg("tmin"), py::arg("tmax"),
          py::arg("points"));

  mod.def("feedforward_equiv", &feedforward_equiv, py::arg("L"));
  mod.def("z_sum_operator", &z_sum_operator, py::arg("coeffs"));

  py::class_<ClassicalMcResult>(mod, "ClassicalMcResult")
      .def_readonly("rho_mc", &ClassicalMcResult::rho_mc)
      .def_readonly("max_dev", &ClassicalMcResult::max_dev);

  mod.def("classical_mc", &classical_mc, py::arg("model"), py::arg("rho0"),
          py::arg("t"), py::arg("n_traj"), py::arg("seed"),
          py::arg("n_threads") = 0);

  py::class_<MeasurementSet>(mod, "MeasurementSet")
      .def_readonly("n", &MeasurementSet::n)
      .def_readonly("gamma_single", &MeasurementSet::gamma_single)
      .def_readonly("gamma_pair", &MeasurementSet::gamma_pair)
      .def_readonly("omega_pair", &MeasurementSet::omega_pair)
      .def_readonly("gamma_bar", &MeasurementSet::gamma_bar)
      .def_readonly("omega_bar", &MeasurementSet::omega_bar);

  py::class_<RecoveryResult>(mod, "RecoveryResult")
      .def_readonly("C_hat", &RecoveryResult::C_hat)
      .def_readonly("h_hat", &RecoveryResult::h_hat)
      .def_readonly("rank", &RecoveryResult::rank);

  py::class_<RoundtripReport>(mod, "RoundtripReport")
      .def_readonly("err_re_c", &RoundtripReport::err_re_c)
      .def_readonly("err_im_c", &RoundtripReport::err_im_c)
      .def_readonly("err_h", &RoundtripReport::err_h)
      .def_readonly("rank", &RoundtripReport::rank);

  mod.def("predict_measurements", &predict_measurements, py::arg("model"));
  mod.def("measurement_matrix", &measurement_matrix, py::arg("n"));
  mod.def("recover", &recover, py::arg("measurements"));
  mod.def("tomography_roundtrip", &roundtrip, py::arg("model"),
          py::arg("noise_sigma"), py::arg("t_grid"), py::arg("seed"));

  py::class_<EnsembleRecord>(mod, "EnsembleRecord")
      .def_readonly("sample_index", &EnsembleRecord::sample_index)
      .def_readonly("seed", &EnsembleRecord::seed)
      .def_readonly("lambda_min", &EnsembleRecord::lambda_min)
      .def_readonly("rel_imag_norm", &EnsembleRecord::rel_imag_norm)
      .def_readonly("rank_proxy", &EnsembleRecord::rank_proxy)
      .def_readonly("entangling", &EnsembleRecord::entangling);

  py::class_<Fig2Bin>(mod, "Fig2Bin")
      .def_readonly("lo", &Fig2Bin::lo)
      .def_readonly("total", &Fig2Bin::total)
      .def_readonly("entangling", &Fig2Bin::entangling)
      .def_readonly("fraction", &Fig2Bin::fraction);

  py::class_<Fig2Result>(mod, "Fig2Result")
      .def_readonly("records", &Fig2Result::records)
      .def_readonly("bins", &Fig2Result::bins);

  py::class_<FractionPoint>(mod, "FractionPoint")
      .def_readonly("n", &FractionPoint::n)
      .def_readonly("f", &FractionPoint::f)
      .def_readonly("stderr_f", &FractionPoint::stderr_f);

  mod.def(
      "fig2_scan",
      [](int64_t n_samples, uint64_t seed, double bin_width, int n_threads) {
        return fig2_scan({3, n_samples, seed, bin_width, n_threads});
      },
      py::arg("n_samples"), py::arg("seed"), py::arg("bin_width") = 0.02,
      py::arg("n_threads") = 0);
  mod.def(
      "fig3_scan",
      [](int n, int64_t n_samples, uint64_t seed, int n_threads) {
        return fig3_scan({n, n_samples, seed, 0.02, n_threads});
      },
      py::arg("n"), py::arg("n_samples"), py::arg("seed"),
      py::arg("n_threads") = 0);
  mod.def("fraction_vs_n", &fraction_vs_n, py::arg("n_min"), py::arg("n_max"),
          py::arg("n_samples"), py::arg("seed"), py::arg("n_threads") = 0);
  mod.def("sample_record", &sample_record, py::arg("n"),
          py::arg("master_seed"), py::arg("index"));

  mod.def("read_model", &read_model, py::arg("path"));
  mod.def("write_model", &write_model, py::arg("model"), py::arg("path"));
}
