// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutseq/classifier.hpp"
#include "cutseq/expr.hpp"
#include "cutseq/geometry.hpp"
#include "cutseq/wordlab.hpp"

namespace py = pybind11;
using namespace cutseq;

namespace {

// Results cross the boundary as JSON text; the Python layer decodes them.
std::string dumps(const nlohmann::json& j) { return j.dump(); }

std::optional<Point3> start_point(const std::optional<std::string>& text, const Direction3& w) {
    if (!text) return std::nullopt;
    return parse_point(*text, w.field());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact cutting sequences of cube billiard directions";

    static py::exception<Error> base(m, "CutseqError");
    static py::exception<cutseq::ParseError> parse_error(m, "ParseError", base.ptr());
    static py::exception<SingularOrbit> singular(m, "SingularOrbit", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const cutseq::ParseError& e) {
            PyErr_SetObject(parse_error.ptr(), py::make_tuple(e.what(), e.position(), e.expected()).ptr());
        } catch (const SingularOrbit& e) {
            PyErr_SetString(singular.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetObject(base.ptr(), py::make_tuple(e.what(), e.code()).ptr());
        }
    });

    py::class_<Direction3>(m, "Direction")
        .def(py::init([](const std::string& text) { return parse_direction(text); }), py::arg("text"))
        .def("__str__", &format_direction)
        .def("__repr__", [](const Direction3& w) { return "Direction(\"" + format_direction(w) + "\")"; })
        .def_property_readonly("field", [](const Direction3& w) { return w.field()->poly_string(); })
        .def_property_readonly("degree", [](const Direction3& w) { return w.field()->degree(); })
        .def("approx", [](const Direction3& w) {
            return std::vector<double>{w.w[0].approx(), w.w[1].approx(), w.w[2].approx()};
        });

    m.def("_classify", [](const Direction3& w) { return dumps(classify(w).to_json()); });

    m.def(
        "_word",
        [](const Direction3& w, std::size_t length, const std::optional<std::string>& start) {
            const Point3 p = start_point(start, w).value_or(Point3::default_start(w.field()));
            py::gil_scoped_release unlocked;
            return cutting_word_3d(w, p, length).str();
        },
        py::arg("direction"), py::arg("length"), py::arg("start") = py::none());

    m.def(
        "_profile",
        [](const Direction3& w, std::size_t length, std::size_t n_max, const std::optional<std::string>& start,
           std::size_t seed_points) {
            VerifyOptions o;
            o.length = length;
            o.n_max = n_max;
            o.start = start_point(start, w);
            o.seed_points = seed_points;
            const Classification c = classify(w);
            py::gil_scoped_release unlocked;
            return dumps(measured_profile(w, c, o).to_json());
        },
        py::arg("direction"), py::arg("length"), py::arg("n_max"), py::arg("start") = py::none(),
        py::arg("seed_points") = 1);

    m.def(
        "_verify",
        [](const Direction3& w, std::size_t length, std::size_t n_max, const std::optional<std::string>& start,
           std::size_t seed_points, const std::optional<Direction3>& partner) {
            VerifyOptions o;
            o.length = length;
            o.n_max = n_max;
            o.start = start_point(start, w);
            o.seed_points = seed_points;
            o.partner = partner;
            py::gil_scoped_release unlocked;
            return dumps(verify(w, o).to_json());
        },
        py::arg("direction"), py::arg("length"), py::arg("n_max"), py::arg("start") = py::none(),
        py::arg("seed_points") = 1, py::arg("partner") = py::none());

    m.def("_diagonals", [](const Direction3& w, std::size_t n_max) {
        std::vector<DiagonalCount> counts;
        {
            py::gil_scoped_release unlocked;
            counts = count_diagonals_up_to(w, n_max);
        }
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t n = 1; n < counts.size(); ++n) rows.push_back(counts[n].to_json());
        return dumps(rows);
    });

    m.def(
        "factor_counts",
        [](const std::string& word, std::size_t n_max) {
            int alphabet = 1;
            for (char ch : word) {
                if (ch < '1' || ch > '9') throw InvalidArgument("word letters must be the digits 1..9");
                alphabet = std::max(alphabet, ch - '0');
            }
            const SymbolicWord w = SymbolicWord::from_string(word, alphabet);
            py::gil_scoped_release unlocked;
            return FactorIndex(w).factor_counts(n_max);
        },
        py::arg("word"), py::arg("n_max"),
        "Distinct factors of each length 0..n_max of a word written with the digits 1..9.");
}
