#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "laser/experiments.hpp"
#include "laser/laser.hpp"
#include "laser/signals.hpp"
#include "laser/tuning.hpp"

namespace py = pybind11;

namespace {

laser::Variant variant_of(const std::string& s) {
    if (s == "full") return laser::Variant::full;
    if (s == "dyadic") return laser::Variant::dyadic;
    throw std::invalid_argument("variant must be 'full' or 'dyadic'");
}

laser::Semantics semantics_of(const std::string& s) {
    if (s == "max-good") return laser::Semantics::max_good;
    if (s == "first-failure") return laser::Semantics::first_failure;
    throw std::invalid_argument("semantics must be 'max-good' or 'first-failure'");
}

laser::FitOptions options_of(int degree, std::optional<double> lambda,
                             const std::string& variant, const std::string& semantics,
                             int threads) {
    laser::FitOptions opts;
    opts.degree = degree;
    opts.lambda = lambda;
    opts.variant = variant_of(variant);
    opts.semantics = semantics_of(semantics);
    opts.threads = threads;
    return opts;
}

laser::SignalSpec signal_of(const std::string& name, int n) {
    laser::SignalSpec spec;
    spec.kind = laser::signal_kind_from_string(name);
    spec.n = n;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_laser, m) {
    m.doc() = "Variable-bandwidth local polynomial regression";

    py::class_<laser::FitResult>(m, "FitResult")
        .def_readonly("theta_hat", &laser::FitResult::theta_hat)
        .def_readonly("h_hat", &laser::FitResult::h_hat)
        .def_readonly("lambda_", &laser::FitResult::lambda)
        .def_readonly("degree", &laser::FitResult::degree)
        .def_property_readonly("variant",
                               [](const laser::FitResult& r) {
                                   return r.variant == laser::Variant::full ? "full" : "dyadic";
                               })
        .def_readonly("select_ms", &laser::FitResult::select_ms)
        .def_readonly("evaluate_ms", &laser::FitResult::evaluate_ms);

    py::class_<laser::CvReport>(m, "CvReport")
        .def_readonly("lambda_grid", &laser::CvReport::lambda_grid)
        .def_readonly("cv_error", &laser::CvReport::cv_error)
        .def_readonly("lambda_star", &laser::CvReport::lambda_star)
        .def_readonly("folds", &laser::CvReport::folds)
        .def_readonly("seed", &laser::CvReport::seed);

    m.def(
        "fit",
        [](const std::vector<double>& y, int degree, std::optional<double> lambda,
           const std::string& variant, const std::string& semantics, int threads,
           const std::vector<double>& design) {
            return laser::fit(y, options_of(degree, lambda, variant, semantics, threads),
                              design);
        },
        py::arg("y"), py::arg("degree") = 2, py::arg("lambda_") = std::nullopt,
        py::arg("variant") = "dyadic", py::arg("semantics") = "max-good",
        py::arg("threads") = 1, py::arg("design") = std::vector<double>{},
        "Fit every location; lambda_=None uses the default noise-scale rule.");

    m.def(
        "fit_at",
        [](const std::vector<double>& y, int i0, int degree, std::optional<double> lambda,
           const std::string& variant, const std::string& semantics,
           const std::vector<double>& design) {
            const laser::FitAtResult r =
                laser::fit_at(y, i0, options_of(degree, lambda, variant, semantics, 1), design);
            return py::make_tuple(r.estimate, r.bandwidth.h_hat);
        },
        py::arg("y"), py::arg("i0"), py::arg("degree") = 2, py::arg("lambda_") = std::nullopt,
        py::arg("variant") = "dyadic", py::arg("semantics") = "max-good",
        py::arg("design") = std::vector<double>{},
        "Single-location fit at 1-based index i0; returns (estimate, h_hat).");

    m.def(
        "predict_at",
        [](const std::vector<double>& y, double x, int degree, std::optional<double> lambda,
           const std::string& variant, const std::string& semantics,
           const std::vector<double>& design) {
            return laser::predict_at(y, x,
                                     options_of(degree, lambda, variant, semantics, 1), design);
        },
        py::arg("y"), py::arg("x"), py::arg("degree") = 2, py::arg("lambda_") = std::nullopt,
        py::arg("variant") = "dyadic", py::arg("semantics") = "max-good",
        py::arg("design") = std::vector<double>{},
        "Evaluate the estimator at an off-grid abscissa in [0, 1].");

    m.def(
        "t_stat",
        [](const std::vector<double>& theta, int lo, int hi, int degree,
           const std::string& variant, const std::vector<double>& design) {
            return laser::t_stat(theta, laser::IntInterval(lo, hi), degree,
                                 variant_of(variant), design)
                .t_value;
        },
        py::arg("theta"), py::arg("lo"), py::arg("hi"), py::arg("degree") = 0,
        py::arg("variant") = "full", py::arg("design") = std::vector<double>{},
        "Local discrepancy statistic over the window [lo, hi] (1-based, inclusive).");

    m.def(
        "q_form",
        [](const std::vector<double>& theta, int inner_lo, int inner_hi, int lo, int hi,
           int degree, const std::vector<double>& design) {
            return laser::q_form(theta, laser::IntInterval(inner_lo, inner_hi),
                                 laser::IntInterval(lo, hi), degree, design);
        },
        py::arg("theta"), py::arg("inner_lo"), py::arg("inner_hi"), py::arg("lo"),
        py::arg("hi"), py::arg("degree") = 0, py::arg("design") = std::vector<double>{},
        "Q quadratic form of the split (inner vs complement) inside [lo, hi].");

    m.def(
        "effective_noise",
        [](const std::vector<double>& eps, int degree, const std::string& variant) {
            return laser::effective_noise(eps, degree, variant_of(variant));
        },
        py::arg("eps"), py::arg("degree") = 0, py::arg("variant") = "full",
        "Max of T over sub-intervals of [1, n].");

    m.def(
        "generate",
        [](const std::string& signal, int n) { return laser::generate(signal_of(signal, n)); },
        py::arg("signal"), py::arg("n"),
        "Sample a named test signal at x_i = i/n.");

    m.def(
        "scale_to_snr",
        [](const std::vector<double>& v, double snr, double sigma) {
            return laser::scale_to_snr(v, snr, sigma);
        },
        py::arg("v"), py::arg("snr"), py::arg("sigma"));

    m.def(
        "add_noise",
        [](const std::vector<double>& theta, double sigma, std::uint64_t seed) {
            return laser::add_noise(theta, {sigma, seed});
        },
        py::arg("theta"), py::arg("sigma"), py::arg("seed") = 0);

    m.def("estimate_sigma",
          [](const std::vector<double>& y) { return laser::estimate_sigma(y); },
          py::arg("y"), "First-difference MAD noise-scale estimate.");

    m.def("default_lambda", &laser::default_lambda, py::arg("sigma"), py::arg("n"));

    m.def(
        "cv_lambda",
        [](const std::vector<double>& y, int degree, const std::vector<double>& lambda_grid,
           int folds, std::uint64_t seed, const std::string& variant,
           const std::vector<double>& design) {
            return laser::cv_lambda(y, degree, lambda_grid, folds, seed, variant_of(variant),
                                    design);
        },
        py::arg("y"), py::arg("degree"), py::arg("lambda_grid"), py::arg("folds") = 5,
        py::arg("seed") = 0, py::arg("variant") = "dyadic",
        py::arg("design") = std::vector<double>{},
        "K-fold cross-validation over a lambda grid.");

    m.def(
        "rmse",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return laser::rmse(a, b);
        },
        py::arg("theta_hat"), py::arg("theta"));

    m.def(
        "baseline_fixed_bandwidth",
        [](const std::vector<double>& y, int degree, int h, const std::vector<double>& design) {
            return laser::baseline_fixed_bandwidth(y, degree, h, design);
        },
        py::arg("y"), py::arg("degree"), py::arg("h"),
        py::arg("design") = std::vector<double>{},
        "Non-adaptive fixed-bandwidth local polynomial fit.");
}
