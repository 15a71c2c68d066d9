#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "crooked/foliation.hpp"
#include "crooked/oracle.hpp"

namespace py = pybind11;
using namespace crooked;

namespace {

std::string vec_repr(const char* name, double x, double y, double z) {
    std::ostringstream os;
    os << name << "(" << x << ", " << y << ", " << z << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Crooked-plane geometry kernel: exact disjointness and foliation synthesis "
              "in Minkowski 3-space";

    py::register_exception<Error>(m, "CrookedError");

    py::class_<LVec3>(m, "LVec3")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readonly("x", &LVec3::x)
        .def_readonly("y", &LVec3::y)
        .def_readonly("z", &LVec3::z)
        .def("__neg__", [](const LVec3& v) { return -v; })
        .def("__add__", [](const LVec3& a, const LVec3& b) { return a + b; })
        .def("__sub__", [](const LVec3& a, const LVec3& b) { return a - b; })
        .def("__rmul__", [](const LVec3& v, double s) { return s * v; })
        .def("__repr__", [](const LVec3& v) { return vec_repr("LVec3", v.x, v.y, v.z); });

    py::class_<MinPoint>(m, "MinPoint")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readonly("x", &MinPoint::x)
        .def_readonly("y", &MinPoint::y)
        .def_readonly("z", &MinPoint::z)
        .def("__add__", [](const MinPoint& p, const LVec3& v) { return p + v; })
        .def("__sub__", [](const MinPoint& p, const MinPoint& q) { return p - q; })
        .def("__repr__", [](const MinPoint& p) { return vec_repr("MinPoint", p.x, p.y, p.z); });

    py::enum_<CausalClass>(m, "CausalClass")
        .value("Spacelike", CausalClass::Spacelike)
        .value("Timelike", CausalClass::Timelike)
        .value("Null", CausalClass::Null)
        .value("Zero", CausalClass::Zero);

    py::class_<NullFrame>(m, "NullFrame")
        .def_readonly("u", &NullFrame::u)
        .def_readonly("u_minus", &NullFrame::u_minus)
        .def_readonly("u_plus", &NullFrame::u_plus);

    py::enum_<PieceKind>(m, "PieceKind")
        .value("Stem", PieceKind::Stem)
        .value("WingPlus", PieceKind::WingPlus)
        .value("WingMinus", PieceKind::WingMinus)
        .value("Outside", PieceKind::Outside);

    py::class_<PieceLabel>(m, "PieceLabel")
        .def_readonly("kind", &PieceLabel::kind)
        .def_readonly("marginal", &PieceLabel::marginal);

    py::class_<FrameCoords>(m, "FrameCoords")
        .def_readonly("alpha", &FrameCoords::alpha)
        .def_readonly("beta", &FrameCoords::beta)
        .def_readonly("gamma", &FrameCoords::gamma);

    py::class_<CrookedPlane>(m, "CrookedPlane")
        .def(py::init<const MinPoint&, const LVec3&>(), py::arg("vertex"), py::arg("direction"))
        .def_readonly("vertex", &CrookedPlane::vertex)
        .def_readonly("direction", &CrookedPlane::direction);

    py::class_<Mesh>(m, "Mesh")
        .def_readonly("vertices", &Mesh::vertices)
        .def_readonly("triangles", &Mesh::triangles)
        .def_readonly("piece_tags", &Mesh::pieceTags);

    py::enum_<PairClass>(m, "PairClass")
        .value("Ultraparallel", PairClass::Ultraparallel)
        .value("Asymptotic", PairClass::Asymptotic)
        .value("Identical", PairClass::Identical)
        .value("OppositeIdentical", PairClass::OppositeIdentical)
        .value("Crossing", PairClass::Crossing);

    py::class_<SignChoice>(m, "SignChoice")
        .def_readonly("eps1", &SignChoice::eps1)
        .def_readonly("eps2", &SignChoice::eps2);

    py::class_<ConicalHull>(m, "ConicalHull")
        .def_readonly("generators", &ConicalHull::generators)
        .def_readonly("extreme_rays", &ConicalHull::extremeRays)
        .def_readonly("facet_normals", &ConicalHull::facetNormals)
        .def_readonly("rank", &ConicalHull::rank)
        .def_readonly("salient", &ConicalHull::salient);

    py::enum_<ConeLocation>(m, "ConeLocation")
        .value("In", ConeLocation::In)
        .value("Out", ConeLocation::Out)
        .value("Marginal", ConeLocation::Marginal)
        .value("Degenerate", ConeLocation::Degenerate);

    py::enum_<DisjointVerdict>(m, "DisjointVerdict")
        .value("Disjoint", DisjointVerdict::Disjoint)
        .value("Intersect", DisjointVerdict::Intersect)
        .value("DegenerateCase", DisjointVerdict::DegenerateCase)
        .value("Marginal", DisjointVerdict::Marginal);

    py::class_<DirectingPath>(m, "DirectingPath")
        .def("value", &DirectingPath::value, py::arg("t"))
        .def("derivative", &DirectingPath::derivative, py::arg("t"))
        .def("frame", &DirectingPath::frame, py::arg("t"));

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("endpoint_residual", &ValidationReport::endpointResidual)
        .def_readonly("pairwise_disjoint_pairs", &ValidationReport::pairwiseDisjointPairs)
        .def_readonly("failures", &ValidationReport::failures)
        .def_readonly("derivative_cone_violations", &ValidationReport::derivativeConeViolations)
        .def_readonly("orientation_violations", &ValidationReport::orientationViolations)
        .def("passed", &ValidationReport::passed);

    py::class_<BasisFamily>(m, "BasisFamily")
        .def_readonly("n", &BasisFamily::n)
        .def_readonly("coefficients", &BasisFamily::c)
        .def_readonly("delta", &BasisFamily::delta)
        .def("f", &BasisFamily::f, py::arg("s"))
        .def("g", &BasisFamily::g, py::arg("s"));

    py::class_<VertexCurve>(m, "VertexCurve")
        .def("position", &VertexCurve::position, py::arg("t"))
        .def("velocity", &VertexCurve::velocity, py::arg("t"))
        .def_property_readonly("basis", &VertexCurve::basis)
        .def_property_readonly("residual", &VertexCurve::residual);

    py::class_<Foliation>(m, "Foliation")
        .def_readonly("path", &Foliation::path)
        .def_readonly("curve", &Foliation::curve)
        .def("leaf", [](const Foliation& f, double t) { return leaf(f, t); }, py::arg("t"));

    py::class_<Witness>(m, "Witness")
        .def_readonly("point", &Witness::point)
        .def_readonly("piece_a", &Witness::pieceA)
        .def_readonly("piece_b", &Witness::pieceB)
        .def_readonly("separation", &Witness::separation);

    m.def("lorentz_dot", &lorentz_dot, py::arg("u"), py::arg("v"));
    m.def("lorentz_cross", &lorentz_cross, py::arg("u"), py::arg("v"));
    m.def("det3", &det3, py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("classify_vector", &classify_vector, py::arg("v"), py::arg("eps") = kClassTol);
    m.def("normalize_spacelike", &normalize_spacelike, py::arg("v"), py::arg("eps") = kClassTol);
    m.def("null_frame", &null_frame, py::arg("u"));

    m.def("frame_coordinates", &frame_coordinates, py::arg("v"), py::arg("frame"));
    m.def("stem_contains", &stem_contains, py::arg("v"), py::arg("frame"),
          py::arg("tol") = kMembershipTol);
    m.def("piece_classify", &piece_classify, py::arg("v"), py::arg("frame"),
          py::arg("tol") = kMembershipTol);
    m.def("crooked_contains", &crooked_contains, py::arg("point"), py::arg("plane"),
          py::arg("tol") = kMembershipTol);
    m.def("stem_quadrant_contains", &stem_quadrant_contains, py::arg("v"), py::arg("frame"),
          py::arg("strict"), py::arg("tol") = kMembershipTol);
    m.def("mesh_crooked_plane", &mesh_crooked_plane, py::arg("plane"), py::arg("radius"),
          py::arg("resolution"));

    m.def("consistently_oriented", &consistently_oriented, py::arg("u"), py::arg("u2"),
          py::arg("tol") = kPairTol);
    m.def(
        "orient_pair",
        [](const LVec3& u, const LVec3& u2, double tol) -> py::object {
            const auto signs = orient_pair(u, u2, tol);
            if (!signs) return py::none();
            return py::cast(*signs);
        },
        py::arg("u"), py::arg("u2"), py::arg("tol") = kPairTol);
    m.def("classify_pair", &classify_pair, py::arg("u"), py::arg("u2"),
          py::arg("eps") = kPairTol);
    m.def("conical_hull", &conical_hull, py::arg("generators"));
    m.def("displacement_cone", &displacement_cone, py::arg("u"), py::arg("u2"),
          py::arg("tol") = kPairTol);
    m.def("cone_contains", &cone_contains, py::arg("hull"), py::arg("x"), py::arg("strict"),
          py::arg("tol") = kPairTol);
    m.def("crooked_disjoint", &crooked_disjoint, py::arg("P"), py::arg("Q"),
          py::arg("tol") = kPairTol);

    py::enum_<ExtremeRay>(m, "ExtremeRay")
        .value("StartMinus", ExtremeRay::StartMinus)
        .value("EndMinus", ExtremeRay::EndMinus)
        .value("StartPlusNegated", ExtremeRay::StartPlusNegated)
        .value("EndPlusNegated", ExtremeRay::EndPlusNegated);

    m.def("interp_path", &interp_path, py::arg("u0"), py::arg("u1"));
    m.def("sampled_path", &sampled_path, py::arg("knots"));
    m.def("validate_path", &validate_path, py::arg("path"), py::arg("grid_size"));
    m.def("extreme_ray_displacement", &extreme_ray_displacement, py::arg("path"), py::arg("n"),
          py::arg("ray"), py::arg("quad_tol") = kQuadTol);
    m.def("displacement_integral", &displacement_integral, py::arg("path"), py::arg("f"),
          py::arg("g"), py::arg("quad_tol") = kQuadTol);
    m.def("solve_vertex_path", &solve_vertex_path, py::arg("path"), py::arg("p0"), py::arg("p1"),
          py::arg("solver_tol") = kSolverTol, py::arg("n_max") = kDefaultNMax);
    m.def("build_foliation", &build_foliation, py::arg("P"), py::arg("Q"),
          py::arg("solver_tol") = kSolverTol, py::arg("n_max") = kDefaultNMax);
    m.def("validate_foliation", &validate_foliation, py::arg("foliation"), py::arg("samples"));

    m.def(
        "crooked_intersect_oracle",
        [](const CrookedPlane& P, const CrookedPlane& Q, double radius,
           int resolution) -> py::object {
            const auto w = crooked_intersect_oracle(P, Q, radius, resolution);
            if (!w) return py::none();
            return py::cast(*w);
        },
        py::arg("P"), py::arg("Q"), py::arg("radius") = 20.0, py::arg("resolution") = 128);
    m.def("cone_contains_oracle", &cone_contains_oracle, py::arg("generators"), py::arg("x"),
          py::arg("tol") = 1e-8);
    m.def("cone_interior_oracle", &cone_interior_oracle, py::arg("generators"), py::arg("x"),
          py::arg("tol") = 1e-8);
}
