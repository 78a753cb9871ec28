// Python bindings for the steering-geometry core.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steer/classify.hpp"
#include "steer/states.hpp"
#include "steer/workbench.hpp"

namespace py = pybind11;
using namespace steer;

namespace {

PauliVector pauli_from_seq(const std::array<double, 4>& x) {
    return {x[0], x[1], x[2], x[3]};
}

std::array<double, 4> pauli_to_seq(const PauliVector& v) { return v.x; }

} // namespace

PYBIND11_MODULE(_steergeo, m) {
    m.doc() = "Two-qubit separability and steerability from 4D steering-outcome geometry";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<geometry_error>(m, "GeometryError", PyExc_RuntimeError);

    py::class_<PauliVector>(m, "PauliVector")
        .def(py::init(&pauli_from_seq))
        .def(py::init<double, double, double, double>())
        .def_property_readonly("x", &pauli_to_seq)
        .def("__getitem__", [](const PauliVector& v, int i) {
            if (i < 0 || i > 3) throw py::index_error();
            return v[i];
        })
        .def("__repr__", [](const PauliVector& v) {
            return "PauliVector(" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + ", " +
                   std::to_string(v[2]) + ", " + std::to_string(v[3]) + ")";
        });

    py::class_<ConeMembership>(m, "ConeMembership")
        .def_readonly("in_forward_cone", &ConeMembership::in_forward_cone)
        .def_readonly("in_backward_cone", &ConeMembership::in_backward_cone)
        .def_readonly("margin", &ConeMembership::margin)
        .def("in_double_cone", &ConeMembership::in_double_cone);

    m.def("eigenvalues_of", &eigenvalues_of);
    m.def("classify_cone", &classify_cone, py::arg("v"), py::arg("tol") = kConeTol);
    m.def("outcome_support", &outcome_support);
    m.def("reflect_through", &reflect_through);
    m.def("hs_inner", &hs_inner);

    py::enum_<Side>(m, "Side")
        .value("AliceToBob", Side::AliceToBob)
        .value("BobToAlice", Side::BobToAlice);

    py::class_<TwoQubitState>(m, "TwoQubitState")
        .def_readonly("theta", &TwoQubitState::theta)
        .def_readonly("psd_margin", &TwoQubitState::psd_margin);

    py::class_<EprMap>(m, "EprMap")
        .def_readonly("m", &EprMap::m)
        .def_readonly("side", &EprMap::side);

    py::class_<EllipsoidReport>(m, "EllipsoidReport")
        .def_readonly("center", &EllipsoidReport::center)
        .def_readonly("semiaxes", &EllipsoidReport::semiaxes)
        .def_readonly("orientation", &EllipsoidReport::orientation)
        .def_readonly("degenerate", &EllipsoidReport::degenerate);

    m.def("theta_from_density", &theta_from_density);
    m.def("state_from_theta", &state_from_theta);
    m.def("reconstruct_density", &reconstruct_density);
    m.def("epr_map", &epr_map, py::arg("state"), py::arg("side") = Side::AliceToBob);
    m.def("apply_map", &apply_map);
    m.def("reduced_state", &reduced_state);
    m.def("steering_support", &steering_support);
    m.def("steering_ellipsoid", &steering_ellipsoid);

    py::class_<FiniteAnsatz>(m, "FiniteAnsatz")
        .def(py::init([](const std::vector<PauliVector>& gens) {
            FiniteAnsatz a{gens};
            validate(a);
            return a;
        }))
        .def_readonly("generators", &FiniteAnsatz::generators);

    py::class_<UniformAnsatz>(m, "UniformAnsatz").def(py::init<>());

    py::class_<DiscreteMixture>(m, "DiscreteMixture")
        .def(py::init([](const std::vector<double>& w, const std::vector<Eigen::Vector3d>& n) {
            DiscreteMixture mix{w, n};
            validate(mix);
            return mix;
        }))
        .def_readonly("weights", &DiscreteMixture::weights)
        .def_readonly("directions", &DiscreteMixture::directions);

    m.def("principal_vertex", &principal_vertex);
    m.def("box_support", &box_support);
    m.def("uniform_cross_section_radius", &uniform_cross_section_radius);

    py::class_<BoundaryPoint>(m, "BoundaryPoint")
        .def_readonly("x0", &BoundaryPoint::x0)
        .def_readonly("b", &BoundaryPoint::b)
        .def_readonly("lam", &BoundaryPoint::lambda)
        .def_readonly("n0", &BoundaryPoint::n0)
        .def_readonly("g_values", &BoundaryPoint::g_values);

    m.def(
        "boundary_point",
        [](const Ansatz& ansatz, const Eigen::Vector3d& n0, double lambda,
           const std::vector<double>& g) {
            if (const auto* mix = std::get_if<DiscreteMixture>(&ansatz))
                return boundary_point(SphericalAnsatz{*mix}, n0, lambda, g);
            if (std::holds_alternative<UniformAnsatz>(ansatz))
                return boundary_point(SphericalAnsatz{UniformAnsatz{}}, n0, lambda, g);
            throw validation_error("boundary_point: spherical ansatz required");
        },
        py::arg("ansatz"), py::arg("n0"), py::arg("lam"), py::arg("g") = std::vector<double>{});

    py::class_<FacetNormalSet>(m, "FacetNormalSet")
        .def_readonly("normals", &FacetNormalSet::normals)
        .def_readonly("degenerate", &FacetNormalSet::degenerate);

    m.def("facet_normals", &facet_normals);
    m.def("box_from_cone", &box_from_cone);

    py::class_<PackingCertificate>(m, "PackingCertificate")
        .def_readonly("contained", &PackingCertificate::contained)
        .def_readonly("witness", &PackingCertificate::witness)
        .def_readonly("slack", &PackingCertificate::slack)
        .def_readonly("sampled_fallback", &PackingCertificate::sampled_fallback);

    py::class_<SeparabilityDecision>(m, "SeparabilityDecision")
        .def_readonly("separable", &SeparabilityDecision::separable)
        .def_readonly("certificate", &SeparabilityDecision::certificate)
        .def_readonly("ppt_min_eigenvalue", &SeparabilityDecision::ppt_min_eigenvalue);

    py::class_<StochasticMatrix>(m, "StochasticMatrix")
        .def(py::init([](const Eigen::MatrixXd& entries) {
            StochasticMatrix g{entries};
            validate(g);
            return g;
        }))
        .def_readonly("entries", &StochasticMatrix::entries);

    py::class_<CapResponse>(m, "CapResponse")
        .def_readonly("lam", &CapResponse::lambda)
        .def_readonly("n0", &CapResponse::n0)
        .def_readonly("scale", &CapResponse::scale);

    m.def("check_packing", &check_packing, py::arg("map"), py::arg("ansatz"),
          py::arg("tol") = 1e-9, py::arg("n_directions") = 2048);
    m.def("is_ppt", &is_ppt, py::arg("state"), py::arg("tol") = 1e-9);
    m.def("decide_separable", &decide_separable, py::arg("state"), py::arg("tol") = 1e-9);
    m.def("find_box_certificate", &find_box_certificate, py::arg("state"), py::arg("tol") = 1e-8);
    m.def("lhs_response", &lhs_response);
    m.def("lhs_reconstruct", &lhs_reconstruct);
    m.def("binary_lhs_rows", &binary_lhs_rows);
    m.def("compose_stochastic", &compose_stochastic);

    py::class_<BinaryPovmSpectral>(m, "BinaryPovmSpectral")
        .def_readonly("h", &BinaryPovmSpectral::h)
        .def_readonly("p1", &BinaryPovmSpectral::p1)
        .def_readonly("p2", &BinaryPovmSpectral::p2);
    m.def("binary_povm_from_spectral", &binary_povm_from_spectral);

    m.def("threshold_scan", &threshold_scan);

    m.def("build_state", [](const std::string& spec) { return build(parse_state_spec(spec)); });
    m.def("random_state", &random_state);
    m.def("random_outcome", &random_outcome);

    m.def(
        "analyze_json",
        [](const std::string& input, const std::optional<Ansatz>& ansatz, double tol,
           int n_directions) { return report_to_json(analyze(input, ansatz, tol, n_directions)); },
        py::arg("input"), py::arg("ansatz") = std::nullopt, py::arg("tol") = 1e-9,
        py::arg("n_directions") = 2048);
}
