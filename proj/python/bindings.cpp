// SPDX-License-Identifier: Apache-2.0
//
// iagrass: interference alignment with quantized Grassmannian CSI feedback
// Copyright (C) 2026 The iagrass authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Python bindings. Matrices cross the boundary as complex128 numpy arrays.

#include "iagrass/channel.hpp"
#include "iagrass/config.hpp"
#include "iagrass/feedback.hpp"
#include "iagrass/grassmann.hpp"
#include "iagrass/harness.hpp"
#include "iagrass/ia.hpp"
#include "iagrass/metrics.hpp"
#include "iagrass/report.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace iagrass;

namespace {

std::vector<int> as_bits(const py::object& bits)
{
    if (py::isinstance<py::int_>(bits))
        return {bits.cast<int>()};
    return bits.cast<std::vector<int>>();
}

ManifoldKind parse_kind(const std::string& name)
{
    if (name == "subspace")
        return ManifoldKind::subspace;
    if (name == "composite")
        return ManifoldKind::composite;
    throw std::invalid_argument("manifold kind must be 'subspace' or 'composite'");
}

py::dict row_to_dict(const CurveRow& r)
{
    py::dict d;
    d["scheme"] = r.scheme;
    d["snr_db"] = r.snr_db;
    d["bits"] = r.bits;
    d["mean_sum_rate"] = r.mean_sum_rate;
    d["stderr"] = r.std_error;
    d["mean_leakage"] = r.mean_leakage;
    d["trials"] = r.trials;
    d["series"] = r.series;
    d["mean_user_rate"] = r.mean_user_rate;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Interference alignment with quantized Grassmannian feedback";

    py::register_exception<RankDeficientError>(m, "RankDeficientError", PyExc_ArithmeticError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<FailureBudgetError>(m, "FailureBudgetError", PyExc_RuntimeError);

    py::class_<SystemDims>(m, "SystemDims")
        .def(py::init([](int K, int M, int N, int d) {
                 SystemDims dims{K, M, N, d};
                 dims.validate();
                 return dims;
             }),
             py::arg("K") = 3, py::arg("M") = 2, py::arg("N") = 2, py::arg("d") = 1)
        .def_readonly("K", &SystemDims::K)
        .def_readonly("M", &SystemDims::M)
        .def_readonly("N", &SystemDims::N)
        .def_readonly("d", &SystemDims::d)
        .def("ia_proper", &SystemDims::ia_proper)
        .def("__eq__", [](const SystemDims& a, const SystemDims& b) { return a == b; })
        .def("__repr__", [](const SystemDims& d) { return "SystemDims(" + to_string(d) + ")"; });

    // channel
    py::class_<ChannelRealization>(m, "Channel")
        .def_property_readonly("dims", &ChannelRealization::dims)
        .def("block", [](const ChannelRealization& ch, int i, int j) -> CMatrix {
            const int K = ch.dims().K;
            if (i < 0 || i >= K || j < 0 || j >= K)
                throw py::index_error("user index out of range");
            return ch(i, j);
        }, py::arg("i"), py::arg("j"), "H_ij, shape N x M")
        .def("interference", &concat_interference, py::arg("i"));
    m.def("gen_channel", &gen_channel, py::arg("dims"), py::arg("seed"));
    m.def("row_space_qr", [](const CMatrix& Hi) {
        auto f = row_space_qr(Hi);
        return py::make_tuple(f.F, f.C);
    }, py::arg("Hi"), "(F, C) with Hi^H = F C");

    // grassmann
    m.def("haar_point", [](int n, int p, std::uint64_t seed) { return haar_point(n, p, seed).basis(); },
          py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("chordal_distance", [](const CMatrix& X, const CMatrix& Y) {
        return chordal_distance(GrassmannPoint(X), GrassmannPoint(Y));
    }, py::arg("X"), py::arg("Y"));
    m.def("composite_distance", &composite_distance, py::arg("Z"), py::arg("T"));

    py::class_<Codebook>(m, "Codebook")
        .def_property_readonly("kind", [](const Codebook& cb) {
            return cb.shape().kind == ManifoldKind::subspace ? "subspace" : "composite";
        })
        .def_property_readonly("n", [](const Codebook& cb) { return cb.shape().n; })
        .def_property_readonly("p", [](const Codebook& cb) { return cb.shape().p; })
        .def_property_readonly("bits", &Codebook::bits)
        .def_property_readonly("seed", &Codebook::seed)
        .def("__len__", &Codebook::size)
        .def("entry", [](const Codebook& cb, std::size_t k) -> CMatrix {
            if (k >= cb.size())
                throw py::index_error("codeword index out of range");
            return cb.entry(k);
        }, py::arg("k"))
        .def("save", [](const Codebook& cb, const std::filesystem::path& p) { save_codebook(cb, p); },
             py::arg("path"));
    m.def("rvq_codebook", [](const std::string& kind, int n, int p, int bits, std::uint64_t seed) {
        return rvq_codebook({parse_kind(kind), n, p}, bits, seed);
    }, py::arg("kind"), py::arg("n"), py::arg("p"), py::arg("bits"), py::arg("seed"));
    m.def("load_codebook", &load_codebook, py::arg("path"));
    m.def("quantize", [](const CMatrix& target, const Codebook& cb) {
        auto q = quantize(target, cb);
        return py::make_tuple(q.index, q.distance, q.codeword);
    }, py::arg("target"), py::arg("codebook"), "(index, distance, codeword)");
    m.def("quantize_rvq", [](const CMatrix& target, const std::string& kind, int bits, std::uint64_t seed) {
        const CodebookShape shape{parse_kind(kind), static_cast<int>(target.rows()), static_cast<int>(target.cols())};
        QuantizeResult q;
        {
            py::gil_scoped_release release;
            q = quantize_rvq(target, shape, bits, seed);
        }
        return py::make_tuple(q.index, q.distance, q.codeword);
    }, py::arg("target"), py::arg("kind"), py::arg("bits"), py::arg("seed"));
    m.def("packing_radius", [](int n, int p, double bits) {
        return packing_radius(grassmann_constants(n, p), bits);
    }, py::arg("n"), py::arg("p"), py::arg("bits"));
    m.def("distortion_moment_bounds", [](int n, int p, double bits, double k) {
        auto b = distortion_moment_bounds(grassmann_constants(n, p), bits, k);
        return py::make_tuple(b.lower, b.upper);
    }, py::arg("n"), py::arg("p"), py::arg("bits"), py::arg("k") = 2.0);
    m.def("ball_coeff", &grassmann_ball_coeff, py::arg("n"), py::arg("p"));
    m.def("perturb", [](const CMatrix& F, int bits, std::uint64_t seed) {
        return perturb(GrassmannPoint(F), bits, seed).basis();
    }, py::arg("F"), py::arg("bits"), py::arg("seed"));
    m.def("perturb_at_distance", [](const CMatrix& F, double r, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return perturb_at_distance(GrassmannPoint(F), r, rng).basis();
    }, py::arg("F"), py::arg("r"), py::arg("seed"));

    // ia
    py::class_<IASolution>(m, "IASolution")
        .def_readonly("V", &IASolution::V)
        .def_readonly("U", &IASolution::U)
        .def_readonly("residual", &IASolution::residual)
        .def_readonly("iterations", &IASolution::iterations)
        .def_readonly("converged", &IASolution::converged)
        .def_readonly("warnings", &IASolution::warnings)
        .def_readonly("residual_history", &IASolution::residual_history);
    m.def("solve_ia", [](const Surrogates& A, const SystemDims& dims, const std::string& solver,
                         double tolerance, int max_iterations, std::uint64_t seed) {
        AltMinOptions opts;
        opts.tolerance = tolerance;
        opts.max_iterations = max_iterations;
        opts.seed = seed;
        return solve_ia(A, dims, parse_solver(solver), opts);
    }, py::arg("surrogates"), py::arg("dims"), py::arg("solver") = "auto", py::arg("tolerance") = 1e-9,
       py::arg("max_iterations") = 5000, py::arg("seed") = 0);

    // feedback
    py::class_<FeedbackReport>(m, "FeedbackReport")
        .def_property_readonly("scheme", [](const FeedbackReport& r) { return to_string(r.scheme); })
        .def_property_readonly("payloads", [](const FeedbackReport& r) {
            std::vector<CMatrix> out;
            for (const auto& x : r.receivers)
                out.push_back(x.payload);
            return out;
        })
        .def_property_readonly("indices", [](const FeedbackReport& r) {
            std::vector<std::size_t> out;
            for (const auto& x : r.receivers)
                out.push_back(x.index);
            return out;
        })
        .def_property_readonly("distances", [](const FeedbackReport& r) {
            std::vector<double> out;
            for (const auto& x : r.receivers)
                out.push_back(x.distance);
            return out;
        })
        .def_property_readonly("bits", [](const FeedbackReport& r) {
            std::vector<int> out;
            for (const auto& x : r.receivers)
                out.push_back(x.bits);
            return out;
        })
        .def("surrogates", &FeedbackReport::surrogates)
        .def("receive_filters", &FeedbackReport::receive_filters, py::arg("solution"));
    m.def("feedback_perfect", &feedback_perfect, py::arg("channel"));
    m.def("feedback_proposed", [](const ChannelRealization& ch, const py::object& bits, std::uint64_t seed) {
        return feedback_proposed_rvq(ch, as_bits(bits), seed);
    }, py::arg("channel"), py::arg("bits"), py::arg("seed"));
    m.def("feedback_ncq", [](const ChannelRealization& ch, const py::object& bits, std::uint64_t seed) {
        return feedback_ncq_rvq(ch, as_bits(bits), seed);
    }, py::arg("channel"), py::arg("bits"), py::arg("seed"));
    m.def("feedback_perturbed", [](const ChannelRealization& ch, const py::object& bits, std::uint64_t seed) {
        return feedback_perturbed(ch, as_bits(bits), seed);
    }, py::arg("channel"), py::arg("bits"), py::arg("seed"));
    m.def("bits_per_log2_snr", [](const SystemDims& dims, const std::string& kind) {
        return bits_per_log2_snr(dims, parse_kind(kind));
    }, py::arg("dims"), py::arg("kind") = "subspace");

    // metrics
    m.def("leakage", &leakage, py::arg("channel"), py::arg("V"), py::arg("filters"), py::arg("P"));
    m.def("sum_rate_optimal", [](const ChannelRealization& ch, const std::vector<CMatrix>& V, double P) {
        return sum_rate_optimal(ch, V, P).per_user_rate;
    }, py::arg("channel"), py::arg("V"), py::arg("P"), "per-user rates, unfiltered receivers");
    m.def("sum_rate_projected", [](const ChannelRealization& ch, const std::vector<CMatrix>& V,
                                   const std::vector<CMatrix>& G, double P) {
        return sum_rate_projected(ch, V, G, P).per_user_rate;
    }, py::arg("channel"), py::arg("V"), py::arg("filters"), py::arg("P"), "per-user rates after the filters");
    m.def("leakage_bound", &subspace_leakage_bound, py::arg("dims"), py::arg("bits"), py::arg("P"));
    m.def("rate_loss_lower_bound", &rvq_rate_loss_lower_bound, py::arg("dims"), py::arg("bits"), py::arg("P"),
          py::arg("R_p"));

    // harness
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("base_seed", &ExperimentConfig::base_seed)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def_readwrite("snr_db", &ExperimentConfig::snr_db)
        .def_readwrite("max_quantizer_bits", &ExperimentConfig::max_quantizer_bits)
        .def_readwrite("failure_budget", &ExperimentConfig::failure_budget)
        .def_readonly("dims", &ExperimentConfig::dims)
        .def_property_readonly("schemes", [](const ExperimentConfig& c) {
            std::vector<std::string> out;
            for (const auto& s : c.schemes)
                out.push_back(s.label());
            return out;
        })
        .def("validate", &ExperimentConfig::validate);
    m.def("preset", &preset, py::arg("name"));
    m.def("preset_names", &preset_names);
    m.def("build_config", &build_config, py::arg("entries"),
          "config from the same keys as the flat config file");
    m.def("run_experiment", [](const ExperimentConfig& cfg) {
        ExperimentResult res;
        {
            py::gil_scoped_release release;
            res = run_experiment(cfg);
        }
        py::list rows;
        for (const auto& r : res.rows)
            rows.append(row_to_dict(r));
        return rows;
    }, py::arg("config"), "list of row dicts sorted by (scheme, snr_db)");
    m.def("run_to_csv", [](const ExperimentConfig& cfg) {
        ExperimentResult res;
        {
            py::gil_scoped_release release;
            res = run_experiment(cfg);
        }
        return format_csv(res.rows);
    }, py::arg("config"));
    m.def("resolve_threads", &resolve_threads, py::arg("requested") = 0);
    m.attr("CSV_HEADER") = kCsvHeader;
}
