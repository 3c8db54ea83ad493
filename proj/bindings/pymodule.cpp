// Python bindings: the streaming clustering engine, the baselines, the
// synthetic benchmark helpers, and the evaluation metrics.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "icvistream/baselines.hpp"
#include "icvistream/bench.hpp"
#include "icvistream/configfile.hpp"
#include "icvistream/runner.hpp"

namespace py = pybind11;
using namespace icvistream;

namespace {

std::vector<Vec> to_rows(const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
    if (x.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
    const auto n = static_cast<std::size_t>(x.shape(0));
    const auto d = static_cast<std::size_t>(x.shape(1));
    std::vector<Vec> rows(n, Vec(d));
    const double* p = x.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) rows[i][j] = p[i * d + j];
    }
    return rows;
}

py::array_t<int> to_array(const std::vector<int>& v) {
    py::array_t<int> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Config config_from_kwargs(const py::kwargs& kwargs) {
    KvConfig kv;
    for (auto item : kwargs) {
        const auto key = item.first.cast<std::string>();
        const auto value = item.second;
        if (py::isinstance<py::bool_>(value)) {
            kv.set(key, value.cast<bool>() ? "true" : "false");
        } else if (py::isinstance<py::str>(value)) {
            kv.set(key, value.cast<std::string>());
        } else {
            kv.set(key, py::str(value).cast<std::string>());
        }
    }
    return RunSpec::from_config(kv).cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "streaming clustering engine: topological fuzzy ARTMAP guided by "
              "incremental cluster validity indices, plus baselines and metrics";

    py::class_<StepReport>(m, "StepReport")
        .def_readonly("t", &StepReport::t)
        .def_readonly("cluster", &StepReport::cluster)
        .def_readonly("k", &StepReport::k)
        .def_readonly("p", &StepReport::p)
        .def_readonly("rho_a", &StepReport::rho_a)
        .def_readonly("v", &StepReport::v)
        .def_readonly("icvi_value", &StepReport::icvi_value)
        .def_readonly("category", &StepReport::category)
        .def_readonly("created_category", &StepReport::created_category);

    py::class_<IcviTopoArtMap>(m, "IcviTopoArtMap")
        .def(py::init([](const py::kwargs& kwargs) {
            return IcviTopoArtMap(config_from_kwargs(kwargs));
        }))
        .def(
            "step",
            [](IcviTopoArtMap& self, const std::vector<double>& x, std::optional<int> label) {
                return self.step(x, label);
            },
            py::arg("x"), py::arg("label") = py::none())
        .def(
            "fit",
            [](IcviTopoArtMap& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
               const std::optional<std::vector<std::optional<int>>>& labels) {
                const auto rows = to_rows(x);
                return run_stream(self, rows, labels ? &*labels : nullptr);
            },
            py::arg("x"), py::arg("labels") = py::none())
        .def(
            "predict",
            [](const IcviTopoArtMap& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                return to_array(self.predict(to_rows(x)));
            },
            py::arg("x"))
        .def_property_readonly("n_categories", &IcviTopoArtMap::categories)
        .def_property_readonly("n_clusters", &IcviTopoArtMap::clusters)
        .def_property_readonly("icvi_value", &IcviTopoArtMap::icvi_value)
        .def_property_readonly("tracker", &IcviTopoArtMap::tracker)
        .def_property_readonly("vigilance", &IcviTopoArtMap::vigilance)
        .def_property_readonly("samples_seen", &IcviTopoArtMap::samples_seen)
        .def("state_digest", &IcviTopoArtMap::state_digest)
        .def("__repr__", [](const IcviTopoArtMap& self) {
            return "<IcviTopoArtMap k=" + std::to_string(self.clusters()) +
                   " P=" + std::to_string(self.categories()) + ">";
        });

    py::class_<SequentialKMeans>(m, "SequentialKMeans")
        .def(py::init<std::size_t, std::size_t>(), py::arg("k"), py::arg("seed_window") = 16)
        .def("step",
             [](SequentialKMeans& self, const std::vector<double>& x) { return self.step(x); })
        .def(
            "fit",
            [](SequentialKMeans& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                for (const auto& row : to_rows(x)) self.step(row);
            },
            py::arg("x"))
        .def(
            "predict",
            [](const SequentialKMeans& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                return to_array(self.predict(to_rows(x)));
            },
            py::arg("x"))
        .def_property_readonly("centroids", [](const SequentialKMeans& self) {
            return self.centroids();
        });

    py::class_<WsDualVigilanceArt>(m, "WsDualVigilanceArt")
        .def(py::init<double, double, double, double>(), py::arg("rho_ub"), py::arg("rho_lb"),
             py::arg("alpha") = 1e-3, py::arg("beta") = 1.0)
        .def("step",
             [](WsDualVigilanceArt& self, const std::vector<double>& x) { return self.step(x); })
        .def(
            "fit",
            [](WsDualVigilanceArt& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                for (const auto& row : to_rows(x)) self.step(row);
            },
            py::arg("x"))
        .def(
            "predict",
            [](const WsDualVigilanceArt& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                return to_array(self.predict(to_rows(x)));
            },
            py::arg("x"))
        .def_property_readonly("n_categories", &WsDualVigilanceArt::categories)
        .def_property_readonly("n_clusters", &WsDualVigilanceArt::clusters);

    py::class_<WsTopoFuzzyArt>(m, "WsTopoFuzzyArt")
        .def(py::init([](double rho, double alpha, double beta_1, double beta_2,
                         long long prune_every, long long min_samples) {
                 ArtParams p;
                 p.rho = rho;
                 p.alpha = alpha;
                 p.beta1 = beta_1;
                 p.beta2 = beta_2;
                 return WsTopoFuzzyArt(p, prune_every, min_samples);
             }),
             py::arg("rho") = 0.0, py::arg("alpha") = 1e-3, py::arg("beta_1") = 1.0,
             py::arg("beta_2") = 0.0, py::arg("prune_every") = 0, py::arg("min_samples") = 0)
        .def("step",
             [](WsTopoFuzzyArt& self, const std::vector<double>& x) { return self.step(x); })
        .def(
            "fit",
            [](WsTopoFuzzyArt& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                for (const auto& row : to_rows(x)) self.step(row);
            },
            py::arg("x"))
        .def(
            "predict",
            [](const WsTopoFuzzyArt& self,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                return to_array(self.predict(to_rows(x)));
            },
            py::arg("x"))
        .def_property_readonly("n_categories", &WsTopoFuzzyArt::categories)
        .def_property_readonly("n_clusters", &WsTopoFuzzyArt::clusters);

    m.def(
        "ari",
        [](const std::vector<int>& a, const std::vector<int>& b) {
            return adjusted_rand_index(a, b);
        },
        py::arg("labels_a"), py::arg("labels_b"));

    m.def(
        "accuracy",
        [](const std::vector<int>& pred, const std::vector<int>& truth) {
            const auto r = accuracy(pred, truth);
            return py::make_tuple(r.acc, r.n_mis);
        },
        py::arg("pred"), py::arg("truth"));

    m.def(
        "gen_synthetic",
        [](std::uint64_t seed, std::size_t total) {
            const auto data = gen_synthetic(seed, SyntheticSpec::default7(total));
            py::array_t<double> x({data.x.size(), data.dim});
            double* p = x.mutable_data();
            for (std::size_t i = 0; i < data.x.size(); ++i) {
                for (std::size_t j = 0; j < data.dim; ++j) p[i * data.dim + j] = data.x[i][j];
            }
            return py::make_tuple(x, to_array(data.y));
        },
        py::arg("seed") = 1, py::arg("total") = 1600,
        "seven 2-d gaussian clusters (two upper, five lower)");

    m.def(
        "order_stream",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const std::vector<int>& y, const std::string& mode, std::uint64_t seed) {
            Dataset data;
            data.x = to_rows(x);
            data.y = y;
            data.dim = data.x.empty() ? 0 : data.x[0].size();
            const auto o = ordering_from_name(mode);
            if (!o) throw std::invalid_argument("unknown ordering '" + mode + "'");
            const auto out = order_stream(data, *o, seed);
            py::array_t<double> xo({out.x.size(), out.dim});
            double* p = xo.mutable_data();
            for (std::size_t i = 0; i < out.x.size(); ++i) {
                for (std::size_t j = 0; j < out.dim; ++j) p[i * out.dim + j] = out.x[i][j];
            }
            return py::make_tuple(xo, to_array(out.y));
        },
        py::arg("x"), py::arg("y"), py::arg("mode"), py::arg("seed") = 1);
}
