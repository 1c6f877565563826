#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "symplrom/bounds.hpp"
#include "symplrom/pipeline.hpp"
#include "symplrom/snapshot_file.hpp"
#include "symplrom/wave2d.hpp"

namespace py = pybind11;
using namespace symplrom;

namespace {

SketchConfig make_config(Index k, Index p_ovs, Index q_pow, std::uint64_t seed,
                         const std::string& kind, bool stabilize, Index s) {
  SketchConfig cfg;
  cfg.k = k;
  cfg.p_ovs = p_ovs;
  cfg.q_pow = q_pow;
  cfg.seed = seed;
  cfg.stabilize = stabilize;
  cfg.s = s;
  if (kind == "srft") {
    cfg.kind = SketchKind::srft;
  } else if (kind == "gaussian") {
    cfg.kind = SketchKind::gaussian;
  } else {
    throw ArgumentError("kind must be 'srft' or 'gaussian'");
  }
  return cfg;
}

py::dict report_to_dict(const BoundReport& r) {
  py::dict d;
  d["k"] = r.k;
  d["p_ovs"] = r.p_ovs;
  d["q_pow"] = r.q_pow;
  d["s"] = r.s;
  d["seed"] = r.seed;
  d["l"] = r.l;
  d["e_proj_frob"] = r.e_proj_frob;
  d["e_proj_sq"] = r.e_proj_sq;
  d["tail"] = r.tail;
  d["eta_det"] = r.eta_det;
  d["eta_det_adv"] = r.eta_det_adv;
  d["eta_det_adv_sharp"] = r.eta_det_adv_sharp;
  d["eta_prob"] = r.eta_prob;
  d["eta_prob_adv"] = r.eta_prob_adv;
  d["eff_det"] = r.eff_det;
  d["eff_det_adv"] = r.eff_det_adv;
  d["eff_prob"] = r.eff_prob;
  d["eff_prob_adv"] = r.eff_prob_adv;
  d["quasi_opt_c"] = r.quasi_opt_c;
  d["failure_prob"] = r.failure_prob;
  d["basis_seconds"] = r.basis_seconds;
  d["assumption_ok"] = r.assumption_ok;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_symplrom, m) {
  m.doc() = "Structure-preserving model reduction: cSVD/rcSVD bases, error bounds, wave benchmark";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<RankError>(m, "RankError", PyExc_RuntimeError);
  py::register_exception<GapError>(m, "GapError", PyExc_RuntimeError);
  py::register_exception<AssumptionError>(m, "AssumptionError", PyExc_RuntimeError);
  py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);

  py::class_<OrthoSymplecticBasis>(m, "OrthoSymplecticBasis")
      .def_readonly("VQ", &OrthoSymplecticBasis::VQ)
      .def_readonly("VP", &OrthoSymplecticBasis::VP)
      .def_property_readonly("k", &OrthoSymplecticBasis::pair_count)
      .def("assembled", &OrthoSymplecticBasis::assembled)
      .def("as_complex", &OrthoSymplecticBasis::as_complex);

  py::class_<StructureReport>(m, "StructureReport")
      .def_readonly("orthonormality_defect", &StructureReport::orthonormality_defect)
      .def_readonly("symplecticity_defect", &StructureReport::symplecticity_defect)
      .def_readonly("passed", &StructureReport::pass);

  m.def("csvd", [](const Matrix& xs, Index k) { return csvd(SnapshotMatrix(xs), k); },
        py::arg("xs"), py::arg("k"));

  m.def(
      "rcsvd",
      [](const Matrix& xs, Index k, Index p_ovs, Index q_pow, std::uint64_t seed,
         const std::string& kind, bool stabilize, Index s) {
        return rcsvd(SnapshotMatrix(xs), make_config(k, p_ovs, q_pow, seed, kind, stabilize, s));
      },
      py::arg("xs"), py::arg("k"), py::arg("p_ovs") = 0, py::arg("q_pow") = 0,
      py::arg("seed") = 0, py::arg("kind") = "srft", py::arg("stabilize") = false,
      py::arg("s") = 0);

  m.def(
      "rcsvd_real",
      [](const Matrix& xs, Index k, Index p_ovs, Index q_pow, std::uint64_t seed,
         const std::string& kind, bool stabilize, Index s) {
        return rcsvd_real(SnapshotMatrix(xs),
                          make_config(k, p_ovs, q_pow, seed, kind, stabilize, s));
      },
      py::arg("xs"), py::arg("k"), py::arg("p_ovs") = 0, py::arg("q_pow") = 0,
      py::arg("seed") = 0, py::arg("kind") = "srft", py::arg("stabilize") = false,
      py::arg("s") = 0);

  m.def("check_structure", &check_structure, py::arg("basis"), py::arg("tol"));
  m.def("symplectic_inverse", &symplectic_inverse, py::arg("basis"));
  m.def(
      "projection_error",
      [](const Matrix& xs, const OrthoSymplecticBasis& v) {
        const auto e = projection_error(SnapshotMatrix(xs), v);
        return py::make_tuple(e.frob, e.squared);
      },
      py::arg("xs"), py::arg("basis"), "Returns (frobenius, squared)");

  m.def(
      "spectrum",
      [](const Matrix& xs) { return singular_values(complexify(SnapshotMatrix(xs))); },
      py::arg("xs"), "Singular values of the complexified snapshot matrix");
  m.def(
      "optimal_tail",
      [](const Vector& sigma, Index k) {
        return optimal_tail(make_singular_spectrum(sigma, "input"), k);
      },
      py::arg("sigma"), py::arg("k"));

  m.def("srft_threshold", &srft_threshold, py::arg("k"), py::arg("n"));
  m.def(
      "srft_materialize",
      [](Index n, Index l, std::uint64_t seed) { return srft_materialize(srft_new(n, l, seed)); },
      py::arg("n"), py::arg("l"), py::arg("seed"));
  m.def(
      "srft_apply",
      [](const ComplexMatrix& a, Index l, std::uint64_t seed) {
        return srft_apply(a, srft_new(a.cols(), l, seed));
      },
      py::arg("a"), py::arg("l"), py::arg("seed"));
  m.def("gaussian_sketch", &gaussian_sketch, py::arg("n"), py::arg("l"), py::arg("seed"));
  m.def(
      "power_sketch",
      [](const ComplexMatrix& xc, const ComplexMatrix& omega, Index q_pow, bool stabilize) {
        return power_sketch(xc, Sketch::dense(omega), q_pow, stabilize);
      },
      py::arg("xc"), py::arg("omega"), py::arg("q_pow") = 0, py::arg("stabilize") = false);

  m.def(
      "bound_report",
      [](const Matrix& xs_data, Index k, Index p_ovs, Index q_pow, std::uint64_t seed,
         const std::string& kind, Index s) {
        const SnapshotMatrix xs(xs_data);
        const ComplexMatrix xc = complexify(xs);
        return report_to_dict(evaluate_rcsvd_bounds(
            xs, xc, svd(xc), make_config(k, p_ovs, q_pow, seed, kind, false, s)));
      },
      py::arg("xs"), py::arg("k"), py::arg("p_ovs") = 0, py::arg("q_pow") = 0,
      py::arg("seed") = 0, py::arg("kind") = "srft", py::arg("s") = 0);

  py::class_<WaveModelConfig>(m, "WaveModelConfig")
      .def(py::init<>())
      .def_readwrite("n_xi1", &WaveModelConfig::n_xi1)
      .def_readwrite("n_xi2", &WaveModelConfig::n_xi2)
      .def_readwrite("xi1_extent", &WaveModelConfig::xi1_extent)
      .def_readwrite("xi2_extent", &WaveModelConfig::xi2_extent)
      .def_readwrite("c", &WaveModelConfig::c)
      .def_readwrite("u0_sup", &WaveModelConfig::u0_sup)
      .def_readwrite("bump_center_offset", &WaveModelConfig::bump_center_offset)
      .def_readwrite("nt", &WaveModelConfig::nt)
      .def_property_readonly("dof", &WaveModelConfig::dof);

  m.def("initial_state", &initial_state, py::arg("config"));
  m.def(
      "integrate",
      [](const WaveModelConfig& cfg) {
        const auto sys = build_system(cfg);
        const auto traj = implicit_midpoint(sys, initial_state(cfg), cfg.t0, cfg.t_end(), cfg.nt);
        py::dict d;
        d["times"] = traj.times;
        d["states"] = traj.states;
        d["energy"] = traj.hamiltonian_trace;
        return d;
      },
      py::arg("config"), "Implicit midpoint trajectory of the full model");
  m.def(
      "collect_snapshots",
      [](const WaveModelConfig& cfg, const std::vector<double>& mu_values, Index nt,
         bool include_initial) {
        return collect_snapshots(cfg, mu_values, nt, include_initial).data();
      },
      py::arg("config"), py::arg("mu_values"), py::arg("nt"), py::arg("include_initial") = false);

  m.def("save_matrix", &save_matrix, py::arg("path"), py::arg("matrix"));
  m.def("load_matrix", &load_matrix, py::arg("path"));

  m.attr("__version__") = "0.1.0";
}
