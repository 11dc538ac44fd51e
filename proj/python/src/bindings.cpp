#include "archinf/archinf.hpp"
#include "cli.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace archinf;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict report_dict(const ExistenceReport& r) {
    py::dict d;
    d["verdict"] = std::string(to_string(r.verdict));
    d["p_star"] = r.p_star;
    d["phi"] = r.phi_at_p_star;
    d["iarch_lhs"] = r.iarch_lhs;
    d["A1"] = r.A1;
    d["mu1"] = r.mu1;
    d["diagnostics"] = r.diagnostics;
    return d;
}

SimConfig make_config(std::size_t n, std::size_t J, std::optional<std::size_t> burn_in, double a0,
                      std::uint64_t seed, std::uint64_t stream, std::size_t chaos_order) {
    SimConfig c;
    c.n = n;
    c.J = J;
    c.burn_in = burn_in;
    c.a0 = a0;
    c.seed = seed;
    c.stream = stream;
    c.chaos_order = chaos_order;
    return c;
}

}  // namespace

PYBIND11_MODULE(_archinf, m) {
    m.doc() = "Existence checks, coefficient sums and simulation for ARCH(inf) and FIGARCH models.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BoundUndefinedError>(m, "BoundUndefinedError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

    py::class_<CoeffSequence>(m, "CoeffSequence")
        .def_static("figarch0d0", &CoeffSequence::figarch0d0, py::arg("d"), py::arg("j_max"))
        .def_static(
            "figarch_pq",
            [](double d, std::vector<double> theta, std::vector<double> phi, std::size_t j_max) {
                return CoeffSequence::figarch_pq(d, PowerSeries(std::move(theta)), PowerSeries(std::move(phi)), j_max);
            },
            py::arg("d"), py::arg("theta"), py::arg("phi"), py::arg("j_max"))
        .def_static("geometric", &CoeffSequence::geometric, py::arg("scale"), py::arg("ratio"), py::arg("j_max"))
        .def_static("explicit_list", &CoeffSequence::explicit_list, py::arg("values"))
        .def("at", &CoeffSequence::at, py::arg("j"))
        .def("head", [](const CoeffSequence& s, std::size_t J) {
            auto h = s.head(J);
            return to_array({h.begin(), h.end()});
        })
        .def_property_readonly("kind", [](const CoeffSequence& s) { return std::string(to_string(s.kind())); })
        .def_property_readonly("j_max", &CoeffSequence::j_max)
        .def_property_readonly("tail_exponent", &CoeffSequence::tail_exponent)
        .def_property_readonly("p_min", &CoeffSequence::p_min);

    py::class_<InnovationDist>(m, "InnovationDist")
        .def_static("parse", &InnovationDist::parse, py::arg("spec"))
        .def_static("empirical", &InnovationDist::empirical, py::arg("values"))
        .def_property_readonly("spec", &InnovationDist::spec)
        .def("__repr__", [](const InnovationDist& d) { return "InnovationDist('" + d.spec() + "')"; });

    m.def("figarch_pi", &figarch_pi, py::arg("d"), py::arg("J"));
    m.def(
        "a_norm_p",
        [](const CoeffSequence& s, double p, std::size_t J, bool tail) { return a_norm_p(s, p, {J, tail, 1}); },
        py::arg("seq"), py::arg("p"), py::arg("J") = kDefaultTruncation, py::arg("tail") = true);
    m.def(
        "sum_a_log_a", [](const CoeffSequence& s, std::size_t J, bool tail) { return sum_a_log_a(s, {J, tail, 1}); },
        py::arg("seq"), py::arg("J") = kDefaultTruncation, py::arg("tail") = true);
    m.def("mu_p", &mu_p, py::arg("dist"), py::arg("p"));
    m.def("z2_log_z2", &z2_log_z2, py::arg("dist"));
    m.def(
        "sample", [](const InnovationDist& d, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            return to_array(sample(d, n, StreamId{seed, stream}));
        },
        py::arg("dist"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

    m.def(
        "phi",
        [](const CoeffSequence& s, const InnovationDist& d, double q, std::size_t J) { return phi(s, d, q, {J, true, 1}); },
        py::arg("seq"), py::arg("dist"), py::arg("q"), py::arg("J") = kDefaultTruncation);
    m.def(
        "check_cs",
        [](const CoeffSequence& s, const InnovationDist& d, std::size_t J, double margin) {
            ExistenceOptions o;
            o.sums = SumOptions{J, true, 1};
            o.margin = margin;
            py::gil_scoped_release release;
            auto r = check_cs(s, d, o);
            py::gil_scoped_acquire acquire;
            return report_dict(r);
        },
        py::arg("seq"), py::arg("dist"), py::arg("J") = kDefaultTruncation, py::arg("margin") = 1e-8);
    m.def(
        "find_d_star",
        [](const InnovationDist& d, double tol, std::size_t J) {
            DStarOptions o;
            o.tol = tol;
            o.truncation = J;
            const auto r = find_d_star(d, o);
            py::dict out;
            out["d_star"] = r.d_star;
            out["uncertainty"] = r.uncertainty;
            out["kappa"] = r.kappa;
            out["lower_bound"] = r.lower_bound;
            out["monotone_on_grid"] = r.monotone_on_grid;
            return out;
        },
        py::arg("dist"), py::arg("tol") = 1e-4, py::arg("J") = kDefaultTruncation);

    m.def(
        "simulate",
        [](const CoeffSequence& s, const InnovationDist& d, std::size_t n, std::size_t J,
           std::optional<std::size_t> burn_in, double a0, std::uint64_t seed, std::uint64_t stream,
           const std::string& engine, std::size_t chaos_order) {
            const auto cfg = make_config(n, J, burn_in, a0, seed, stream, chaos_order);
            Path p;
            {
                py::gil_scoped_release release;
                p = engine == "volterra" ? simulate_volterra(s, d, cfg) : simulate_recursive(s, d, cfg);
            }
            return py::make_tuple(to_array(p.sigma2), to_array(p.x));
        },
        py::arg("seq"), py::arg("dist"), py::arg("n"), py::arg("J"), py::arg("burn_in") = py::none(),
        py::arg("a0") = 1.0, py::arg("seed") = 0, py::arg("stream") = 0, py::arg("engine") = "recursive",
        py::arg("chaos_order") = 30);
    m.def(
        "engine_discrepancy",
        [](const CoeffSequence& s, const InnovationDist& d, std::size_t window, std::vector<std::uint64_t> seeds) {
            return check_engine_equivalence(s, d, window, seeds).overall;
        },
        py::arg("seq"), py::arg("dist"), py::arg("window"), py::arg("seeds"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "archinf");
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
