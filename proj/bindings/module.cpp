#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arw/almost_period.hpp"
#include "arw/bessel.hpp"
#include "arw/covariance.hpp"
#include "arw/errors.hpp"
#include "arw/experiments.hpp"
#include "arw/field.hpp"
#include "arw/lattice.hpp"
#include "arw/nodal.hpp"

namespace py = pybind11;
using namespace arw;

namespace {

// Python callables are evaluated under the GIL; the grid sweep itself runs
// with the GIL released, so workers re-acquire per call.
ScalarField wrap_scalar(const py::function& fn) {
  return [fn](double x, double y) {
    py::gil_scoped_acquire gil;
    return fn(x, y).cast<double>();
  };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Arithmetic random waves: frequency sets, almost periods, nodal geometry";

  py::register_exception<NotRepresentableError>(m, "NotRepresentableError");
  py::register_exception<UnsupportedOrderError>(m, "UnsupportedOrderError");
  py::register_exception<OmegaInvalidError>(m, "OmegaInvalidError");
  py::register_exception<NotFoundWithinBoxError>(m, "NotFoundWithinBoxError");
  py::register_exception<DegenerateGridError>(m, "DegenerateGridError");
  py::register_exception<SkippedLowMarginError>(m, "SkippedLowMarginError");

  // ---- lattice ----------------------------------------------------------
  py::class_<FrequencySet>(m, "FrequencySet")
      .def_readonly("n", &FrequencySet::n)
      .def_readonly("cardinality", &FrequencySet::cardinality)
      .def_readonly("omega", &FrequencySet::omega)
      .def_readonly("split_angles", &FrequencySet::split_angles)
      .def_readonly("base_angle", &FrequencySet::base_angle)
      .def_property_readonly("points",
                             [](const FrequencySet& fs) {
                               py::list out;
                               for (const auto& p : fs.points)
                                 out.append(py::make_tuple(p.x, p.y));
                               return out;
                             })
      .def("__repr__", [](const FrequencySet& fs) {
        return "FrequencySet(n=" + std::to_string(fs.n) +
               ", cardinality=" + std::to_string(fs.cardinality) + ")";
      });

  m.def("is_sum_of_two_squares", &is_sum_of_two_squares, py::arg("n"));
  m.def("enumerate_lattice", &enumerate_lattice, py::arg("n"));
  m.def("cardinality_from_factorization", &cardinality_from_factorization, py::arg("n"));
  m.def("admissible_sequence", &admissible_sequence, py::arg("limit"), py::arg("kappa"));

  py::class_<AngularMeasure>(m, "AngularMeasure")
      .def_readonly("atoms", &AngularMeasure::atoms)
      .def_readonly("weight", &AngularMeasure::weight);
  m.def("angular_measure", &angular_measure, py::arg("fs"));
  m.def("kolmogorov_distance", &kolmogorov_distance, py::arg("measure"));

  // ---- covariance -------------------------------------------------------
  py::class_<CovarianceKernel>(m, "CovarianceKernel")
      .def_readonly("dim", &CovarianceKernel::dim)
      .def_readonly("weight", &CovarianceKernel::weight)
      .def_readonly("vectors", &CovarianceKernel::vectors)
      .def_readonly("period", &CovarianceKernel::period)
      .def_property_readonly("size", &CovarianceKernel::size);
  m.def("arw_kernel", &arw_kernel, py::arg("fs"));
  m.def("rescaled_kernel", &rescaled_kernel, py::arg("fs"));
  m.def("kernel_from_vectors", &kernel_from_vectors, py::arg("dim"), py::arg("vectors"));
  m.def(
      "eval_kernel",
      [](const CovarianceKernel& k, const std::vector<double>& t) { return eval(k, t); },
      py::arg("kernel"), py::arg("t"));
  m.def(
      "eval_partial",
      [](const CovarianceKernel& k, const std::vector<int>& alpha, const std::vector<double>& t) {
        return eval_partial(k, alpha, t);
      },
      py::arg("kernel"), py::arg("alpha"), py::arg("t"));
  m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));
  m.def("mean_covariance_radial", &mean_covariance_radial, py::arg("d"), py::arg("r"));
  m.def("berry_sup_deviation", &berry_sup_deviation, py::arg("kernel"), py::arg("radius"),
        py::arg("h"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<LinearisedKernel>(m, "LinearisedKernel")
      .def_readonly("base_angles", &LinearisedKernel::base_angles)
      .def_readonly("eta_frequencies", &LinearisedKernel::eta_frequencies)
      .def_readonly("weight", &LinearisedKernel::weight);
  m.def("linearised_kernel", &linearised_kernel, py::arg("fs"));
  m.def("eval_linearised", &eval_linearised, py::arg("kernel"), py::arg("t"));

  // ---- almost periods ---------------------------------------------------
  py::class_<AlmostPeriod>(m, "AlmostPeriod")
      .def_readonly("tau", &AlmostPeriod::tau)
      .def_readonly("epsilon_certified", &AlmostPeriod::epsilon_certified)
      .def_readonly("epsilon_target", &AlmostPeriod::epsilon_target)
      .def_readonly("norm", &AlmostPeriod::norm)
      .def_readonly("m", &AlmostPeriod::m)
      .def_readonly("max_fractional_distance", &AlmostPeriod::max_fractional_distance)
      .def_property_readonly("method",
                             [](const AlmostPeriod& ap) { return std::string(to_string(ap.method)); })
      .def_property_readonly("sup_norm", &AlmostPeriod::sup_norm);

  py::class_<SupCertificate>(m, "SupCertificate")
      .def_readonly("grid_spacing", &SupCertificate::grid_spacing)
      .def_readonly("grid_sup", &SupCertificate::grid_sup)
      .def_readonly("lipschitz_bound", &SupCertificate::lipschitz_bound)
      .def_readonly("certified_sup", &SupCertificate::certified_sup);

  m.def(
      "dirichlet_pigeonhole",
      [](const std::vector<std::vector<double>>& mus, int m_param, std::int64_t max_box) {
        if (mus.empty()) throw std::invalid_argument("empty constraint list");
        const int dim = static_cast<int>(mus.front().size());
        std::vector<double> flat;
        for (const auto& v : mus) {
          if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("ragged constraint list");
          flat.insert(flat.end(), v.begin(), v.end());
        }
        return dirichlet_pigeonhole(flat, dim, m_param, max_box);
      },
      py::arg("mus"), py::arg("m"), py::arg("max_box") = 1'000'000,
      py::call_guard<py::gil_scoped_release>());
  m.def("almost_period_of_kernel", &almost_period_of_kernel, py::arg("kernel"), py::arg("m"),
        py::arg("max_box") = 1'000'000, py::call_guard<py::gil_scoped_release>());
  m.def(
      "sup_difference_bound",
      [](const CovarianceKernel& k, const std::vector<double>& tau) {
        return sup_difference_bound(k, tau);
      },
      py::arg("kernel"), py::arg("tau"));
  m.def(
      "certified_sup_difference",
      [](const CovarianceKernel& k, const std::vector<double>& tau, double radius, double h,
         const std::vector<int>& alpha, int threads) {
        return certified_sup_difference(k, tau, radius, h, alpha, threads);
      },
      py::arg("kernel"), py::arg("tau"), py::arg("domain_radius"), py::arg("h"),
      py::arg("alpha") = std::vector<int>{}, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def("smallest_almost_period_scan", &smallest_almost_period_scan, py::arg("kernel"),
        py::arg("epsilon"), py::arg("radius"), py::arg("h"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "lower_bound_witness",
      [](const FrequencySet& fs, const std::vector<double>& tau) {
        return lower_bound_witness(fs, tau);
      },
      py::arg("fs"), py::arg("tau_rescaled"));
  m.def("linearised_almost_period", &linearised_almost_period, py::arg("kernel"),
        py::arg("epsilon"), py::call_guard<py::gil_scoped_release>());

  // ---- fields -----------------------------------------------------------
  py::class_<FieldRealization>(m, "FieldRealization")
      .def_readonly("seed", &FieldRealization::seed)
      .def_readonly("rescaled", &FieldRealization::rescaled)
      .def_readonly("n", &FieldRealization::n)
      .def_property_readonly("modes", &FieldRealization::modes)
      .def("eval", &FieldRealization::eval, py::arg("x"), py::arg("y"))
      .def("gradient", &FieldRealization::gradient, py::arg("x"), py::arg("y"))
      .def("laplacian", &FieldRealization::laplacian, py::arg("x"), py::arg("y"));
  m.def("sample_arw", &sample_arw, py::arg("fs"), py::arg("seed"), py::arg("rescaled") = false);
  m.def(
      "translated_field",
      [](const FieldRealization& f, const std::vector<double>& tau) {
        if (tau.size() != 2) throw std::invalid_argument("tau must have two entries");
        return translated_field(f, {tau[0], tau[1]});
      },
      py::arg("field"), py::arg("tau"));

  py::class_<DirectionSample>(m, "DirectionSample")
      .def_readonly("dim", &DirectionSample::dim)
      .def_readonly("directions", &DirectionSample::directions)
      .def_readonly("seed", &DirectionSample::seed)
      .def_property_readonly("count", &DirectionSample::count);
  m.def("sample_directions", &sample_directions, py::arg("d"), py::arg("count"), py::arg("seed"));
  m.def("empirical_kernel", &empirical_kernel, py::arg("directions"));

  py::class_<OptimalityRow>(m, "OptimalityRow")
      .def_readonly("n_modes", &OptimalityRow::n_modes)
      .def_readonly("trials", &OptimalityRow::trials)
      .def_readonly("no_period_count", &OptimalityRow::no_period_count)
      .def_readonly("probability", &OptimalityRow::probability);
  m.def(
      "optimality_experiment",
      [](int d, const std::vector<int>& n_range, double a, double eps, int trials,
         std::uint64_t seed, double spacing_factor, int threads) {
        return optimality_experiment(d, n_range, a, eps, trials, seed, spacing_factor, threads);
      },
      py::arg("d"), py::arg("n_range"), py::arg("a"), py::arg("epsilon"), py::arg("trials"),
      py::arg("seed"), py::arg("spacing_factor") = 1.0, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());

  // ---- nodal geometry ----------------------------------------------------
  py::class_<Window>(m, "Window")
      .def_static("rect", &Window::rect, py::arg("x0"), py::arg("y0"), py::arg("x1"), py::arg("y1"))
      .def_static("disk", &Window::disk, py::arg("cx"), py::arg("cy"), py::arg("r"))
      .def_static("parse", &Window::parse, py::arg("spec"))
      .def("contains", &Window::contains, py::arg("x"), py::arg("y"))
      .def("__repr__", [](const Window& w) { return "Window(" + w.to_string() + ")"; });

  py::class_<NodalSegment>(m, "NodalSegment")
      .def_readonly("x1", &NodalSegment::x1)
      .def_readonly("y1", &NodalSegment::y1)
      .def_readonly("x2", &NodalSegment::x2)
      .def_readonly("y2", &NodalSegment::y2)
      .def_readonly("cell_i", &NodalSegment::cell_i)
      .def_readonly("cell_j", &NodalSegment::cell_j)
      .def_property_readonly("length", &NodalSegment::length);

  py::class_<NodalCurveSet>(m, "NodalCurveSet")
      .def_readonly("segments", &NodalCurveSet::segments)
      .def_property_readonly("total_length", &NodalCurveSet::total_length);

  m.def(
      "extract_nodal",
      [](const FieldRealization& f, const Window& w, double h) { return extract_nodal(f, w, h); },
      py::arg("field"), py::arg("window"), py::arg("h"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "extract_nodal_fn",
      [](const py::function& fn, const Window& w, double h) {
        auto wrapped = wrap_scalar(fn);
        py::gil_scoped_release release;
        return extract_nodal(wrapped, w, h);
      },
      py::arg("fn"), py::arg("window"), py::arg("h"));
  m.def(
      "nodal_length",
      [](const FieldRealization& f, const Window& w, double h) { return nodal_length(f, w, h); },
      py::arg("field"), py::arg("window"), py::arg("h"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "weighted_gamma_fn",
      [](const py::function& fn, const py::function& phi, const Window& w, double h) {
        auto wf = wrap_scalar(fn);
        auto wp = wrap_scalar(phi);
        py::gil_scoped_release release;
        return weighted_gamma(wf, wp, w, h);
      },
      py::arg("fn"), py::arg("phi"), py::arg("window"), py::arg("h"));

  py::class_<ReplicationRow>(m, "ReplicationRow")
      .def_readonly("phi", &ReplicationRow::phi)
      .def_readonly("gamma_base", &ReplicationRow::gamma_base)
      .def_readonly("gamma_translated", &ReplicationRow::gamma_translated)
      .def_readonly("abs_diff", &ReplicationRow::abs_diff)
      .def_readonly("rel_diff", &ReplicationRow::rel_diff);
  py::class_<ReplicationReport>(m, "ReplicationReport")
      .def_readonly("n", &ReplicationReport::n)
      .def_readonly("seed", &ReplicationReport::seed)
      .def_readonly("m", &ReplicationReport::m)
      .def_readonly("tau", &ReplicationReport::tau)
      .def_readonly("eps_certified", &ReplicationReport::eps_certified)
      .def_readonly("rows", &ReplicationReport::rows)
      .def_readonly("hausdorff_midpoints", &ReplicationReport::hausdorff_midpoints)
      .def_readonly("regular_margin_base", &ReplicationReport::regular_margin_base)
      .def_readonly("regular_margin_translated", &ReplicationReport::regular_margin_translated);
  m.def("replication_experiment", &replication_experiment, py::arg("n"), py::arg("seed"),
        py::arg("m"), py::arg("window"), py::arg("h"), py::call_guard<py::gil_scoped_release>());

  py::class_<ExpectedLengthReport>(m, "ExpectedLengthReport")
      .def_readonly("n", &ExpectedLengthReport::n)
      .def_readonly("trials", &ExpectedLengthReport::trials)
      .def_readonly("grid_h", &ExpectedLengthReport::grid_h)
      .def_readonly("target", &ExpectedLengthReport::target)
      .def_readonly("mean", &ExpectedLengthReport::mean)
      .def_readonly("stddev", &ExpectedLengthReport::stddev)
      .def_readonly("rel_error", &ExpectedLengthReport::rel_error)
      .def_readonly("lengths", &ExpectedLengthReport::lengths);
  m.def("expected_length_check", &expected_length_check, py::arg("n"), py::arg("trials"),
        py::arg("seed"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<CorrelationReport>(m, "CorrelationReport")
      .def_readonly("n", &CorrelationReport::n)
      .def_readonly("eps", &CorrelationReport::eps)
      .def_readonly("trials", &CorrelationReport::trials)
      .def_readonly("ball_radius", &CorrelationReport::ball_radius)
      .def_readonly("correlation", &CorrelationReport::correlation)
      .def_readonly("ci_lo", &CorrelationReport::ci_lo)
      .def_readonly("ci_hi", &CorrelationReport::ci_hi)
      .def_readonly("var_full", &CorrelationReport::var_full)
      .def_readonly("var_reference", &CorrelationReport::var_reference);
  m.def("correlation_experiment", &correlation_experiment, py::arg("n"), py::arg("eps"),
        py::arg("trials"), py::arg("seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  // ---- model comparison --------------------------------------------------
  py::class_<ModelComparisonRow>(m, "ModelComparisonRow")
      .def_readonly("model", &ModelComparisonRow::model)
      .def_readonly("degrees_of_freedom", &ModelComparisonRow::degrees_of_freedom)
      .def_readonly("bound", &ModelComparisonRow::bound)
      .def_readonly("measured_smallest", &ModelComparisonRow::measured_smallest)
      .def_readonly("omega_valid", &ModelComparisonRow::omega_valid);
  py::class_<ModelComparison>(m, "ModelComparison")
      .def_readonly("n", &ModelComparison::n)
      .def_readonly("epsilon", &ModelComparison::epsilon)
      .def_readonly("rows", &ModelComparison::rows);
  m.def("compare_models", &compare_models, py::arg("n"), py::arg("epsilon"),
        py::arg("scan_radius") = 50.0, py::arg("scan_h") = 0.01,
        py::call_guard<py::gil_scoped_release>());
}
