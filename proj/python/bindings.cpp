#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qorrelate/dicke.hpp"
#include "qorrelate/errors.hpp"
#include "qorrelate/linalg.hpp"
#include "qorrelate/measures.hpp"
#include "qorrelate/monogamy.hpp"
#include "qorrelate/states.hpp"

namespace py = pybind11;
using namespace qorrelate;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_numpy(const ComplexMatrix& m) {
    ComplexArray out({m.dim(), m.dim()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) view(i, j) = m(i, j);
    return out;
}

ComplexMatrix from_numpy(const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("expected a square 2-d array");
    const auto n = static_cast<std::size_t>(a.shape(0));
    std::vector<Complex> data(a.data(), a.data() + n * n);
    return ComplexMatrix(n, std::move(data));
}

MeasureKind kind_from(const std::string& name) {
    const auto kind = parse_measure(name);
    if (!kind) throw std::invalid_argument("unknown measure '" + name + "'");
    return *kind;
}

Direction direction_from(const std::string& name) {
    if (name == "fwd") return Direction::OnFirst;
    if (name == "bwd") return Direction::OnSecond;
    throw std::invalid_argument("direction must be 'fwd' or 'bwd', got '" + name + "'");
}

Family family_from(const std::string& name) {
    const auto family = parse_family(name);
    if (!family) throw std::invalid_argument("unknown family '" + name + "'");
    return *family;
}

OptimizerOptions optimizer(int theta_steps, int phi_steps) {
    OptimizerOptions o;
    o.theta_steps = theta_steps;
    o.phi_steps = phi_steps;
    return o;
}

py::dict record_dict(const MonogamyRecord& r) {
    py::dict d;
    d["kind"] = std::string(measure_name(r.kind));
    d["nodal"] = r.nodal;
    d["cut_value"] = r.cut_value;
    d["pair_values"] = r.pair_values;
    d["score"] = r.score;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qorrelate, m) {
    m.doc() = "Monogamy scores of quantum correlation measures for n-qubit pure states";

    auto base = py::reinterpret_borrow<py::object>(PyExc_ValueError);
    py::register_exception<InvalidSubsetError>(m, "InvalidSubsetError", base);
    py::register_exception<NotHermitianError>(m, "NotHermitianError", base);
    py::register_exception<InvalidDensityMatrixError>(m, "InvalidDensityMatrixError", base);

    m.attr("MEASURES") = [] {
        py::list names;
        for (MeasureKind k : kAllMeasureKinds) names.append(std::string(measure_name(k)));
        return names;
    }();

    py::class_<PureState>(m, "PureState")
        .def(py::init([](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& amps) {
                 return PureState::normalized(std::vector<Complex>(amps.data(), amps.data() + amps.size()));
             }),
             py::arg("amplitudes"), "Normalizes the given amplitude vector (length 2^n).")
        .def_property_readonly("qubits", &PureState::qubits)
        .def_property_readonly("amplitudes",
                               [](const PureState& psi) {
                                   const auto a = psi.amplitudes();
                                   return ComplexArray(static_cast<py::ssize_t>(a.size()), a.data());
                               })
        .def("__repr__", [](const PureState& psi) { return "PureState(qubits=" + std::to_string(psi.qubits()) + ")"; });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const ComplexArray& a, QubitList qubits) { return DensityMatrix(from_numpy(a), qubits); }),
             py::arg("matrix"), py::arg("qubits"))
        .def_static("from_pure", &DensityMatrix::from_pure)
        .def_property_readonly("matrix", [](const DensityMatrix& r) { return to_numpy(r.matrix()); })
        .def_property_readonly("qubits", &DensityMatrix::qubits)
        .def_property_readonly("eigenvalues", [](const DensityMatrix& r) {
            const auto ev = r.eigenvalues();
            return std::vector<double>(ev.begin(), ev.end());
        });

    // states
    m.def("haar_random_pure", &haar_random_pure, py::arg("n"), py::arg("seed"));
    m.def("w_state", &w_state, py::arg("n"));
    m.def("ghz_state", &ghz_state, py::arg("n"));
    m.def("dicke_state", &dicke_state, py::arg("n"), py::arg("r"));
    m.def("generalized_dicke_random", &generalized_dicke_random, py::arg("n"), py::arg("r"), py::arg("seed"));
    m.def("symmetric_random", &symmetric_random, py::arg("n"), py::arg("seed"));

    // linear algebra
    m.def("partial_trace",
          [](const PureState& psi, const QubitList& keep) { return partial_trace(psi, keep); },
          py::arg("state"), py::arg("keep"));
    m.def("partial_trace",
          [](const DensityMatrix& rho, const QubitList& keep) { return partial_trace(rho, keep); },
          py::arg("rho"), py::arg("keep"));
    m.def("partial_transpose",
          [](const DensityMatrix& rho, const QubitList& part) { return to_numpy(partial_transpose(rho, part)); },
          py::arg("rho"), py::arg("part") = QubitList{1});
    m.def("eigvalsh", [](const ComplexArray& a) { return hermitian_eigvals(from_numpy(a)); }, py::arg("matrix"),
          "Ascending eigenvalues of a Hermitian matrix (Jacobi).");
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));

    // bipartite measures
    m.def("concurrence", &concurrence_two_qubit, py::arg("rho"));
    m.def("concurrence_pure_cut", &concurrence_pure_cut, py::arg("state"), py::arg("nodal") = 1);
    m.def("eof_from_concurrence", &eof_from_concurrence, py::arg("c"));
    m.def("negativity",
          [](const DensityMatrix& rho, const QubitList& part) { return negativity(rho, part); },
          py::arg("rho"), py::arg("part") = QubitList{1});
    m.def("log_negativity",
          [](const DensityMatrix& rho, const QubitList& part) { return log_negativity(rho, part); },
          py::arg("rho"), py::arg("part") = QubitList{1});
    m.def("mutual_information", &mutual_information, py::arg("rho"));
    m.def("unmeasured_conditional_entropy", &unmeasured_conditional_entropy, py::arg("rho"));
    m.def("quantum_discord",
          [](const DensityMatrix& rho, const std::string& dir, int t, int p) {
              return quantum_discord(rho, direction_from(dir), optimizer(t, p));
          },
          py::arg("rho"), py::arg("direction") = "bwd", py::arg("theta_steps") = 60, py::arg("phi_steps") = 120,
          "'fwd' measures the first qubit of the pair, 'bwd' the second.");
    m.def("work_deficit",
          [](const DensityMatrix& rho, const std::string& dir, int t, int p) {
              return work_deficit_one_way(rho, direction_from(dir), optimizer(t, p));
          },
          py::arg("rho"), py::arg("direction") = "bwd", py::arg("theta_steps") = 60, py::arg("phi_steps") = 120);

    // monogamy
    m.def("monogamy_score",
          [](const PureState& psi, const std::string& kind, Qubit nodal) {
              return record_dict(monogamy_score(psi, kind_from(kind), nodal));
          },
          py::arg("state"), py::arg("kind"), py::arg("nodal") = 1);
    m.def("tangle", &tangle, py::arg("state"), py::arg("nodal") = 1);
    m.def("theorem4_bound_check",
          [](const PureState& psi, Qubit nodal) {
              const Theorem4Check c = theorem4_bound_check(psi, nodal);
              py::dict d;
              d["score"] = c.score;
              d["bound"] = c.bound;
              d["tangle"] = c.tangle;
              d["premise"] = c.premise;
              d["bound_holds"] = c.bound_holds;
              return d;
          },
          py::arg("state"), py::arg("nodal") = 1,
          "Discord score with the partners measured, its zero-tangle bound, and the tangle.");
    m.def("percentage_table",
          [](const std::string& family, int n, int r, std::uint64_t samples, std::uint64_t seed,
             const std::vector<std::string>& kinds, Qubit nodal, double eps, unsigned workers) {
              std::vector<MeasureKind> parsed;
              for (const auto& k : kinds) parsed.push_back(kind_from(k));
              EvaluationOptions opts;
              opts.workers = workers;
              std::vector<PercentageRow> rows;
              {
                  py::gil_scoped_release release;
                  rows = percentage_table(EnsembleSpec{family_from(family), n, r, samples, seed}, parsed, nodal, eps,
                                          opts);
              }
              py::list out;
              for (const auto& row : rows) {
                  py::dict d;
                  d["kind"] = std::string(measure_name(row.kind));
                  d["monogamous_count"] = row.monogamous_count;
                  d["total"] = row.total;
                  d["percentage"] = row.percentage;
                  out.append(d);
              }
              return out;
          },
          py::arg("family"), py::arg("n"), py::arg("r") = 0, py::arg("samples") = 1000, py::arg("seed") = 1,
          py::arg("kinds") = std::vector<std::string>{"c2"}, py::arg("nodal") = 1,
          py::arg("eps") = kDefaultMonogamyEpsilon, py::arg("workers") = 0);
    m.def("scaling_fit",
          [](const std::vector<std::pair<double, double>>& points, double p_c) {
              std::vector<ScalingPoint> pts;
              for (const auto& [n, p] : points) pts.push_back({n, p});
              const ScalingFit fit = scaling_fit(pts, p_c);
              py::dict d;
              d["alpha"] = fit.alpha;
              d["intercept"] = fit.intercept;
              d["residual"] = fit.residual;
              d["p_c"] = fit.p_c;
              return d;
          },
          py::arg("points"), py::arg("p_c") = 0.0);

    // Dicke closed forms
    m.def("dicke_discord_score", &dicke_discord_score, py::arg("n"), py::arg("r"));
    m.def("dicke_workdeficit_score",
          [](int n, int r, const std::string& dir) { return dicke_workdeficit_score(n, r, direction_from(dir)); },
          py::arg("n"), py::arg("r"), py::arg("direction") = "bwd");
    m.def("dicke_tangle", &dicke_tangle, py::arg("n"), py::arg("r"));
}
