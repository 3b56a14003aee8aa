// Copyright 2026 The flatchain Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatchain/bv_coarea.hpp"
#include "flatchain/decomposition.hpp"
#include "flatchain/deform.hpp"
#include "flatchain/io.hpp"

namespace py = pybind11;
using namespace flatchain;

namespace {

Group group_from_name(const std::string& name) {
  const auto g = Group::parse(name);
  if (!g) throw std::invalid_argument("unknown group '" + name + "'");
  return *g;
}

GroupValue coef_from_object(const py::handle& obj, const Group& g) {
  switch (g.kind) {
    case GroupKind::real:
      return GroupValue::real(obj.cast<double>());
    case GroupKind::integer:
      return GroupValue::integer(obj.cast<std::int64_t>());
    case GroupKind::integer_mod:
      return GroupValue::integer_mod(obj.cast<std::int64_t>(), g.modulus);
    case GroupKind::real_vector:
      return GroupValue::real_vector(obj.cast<std::vector<double>>());
  }
  throw std::invalid_argument("unknown group kind");
}

py::object coef_to_object(const GroupValue& g) {
  switch (g.group().kind) {
    case GroupKind::real:
      return py::float_(g.real_value());
    case GroupKind::integer:
    case GroupKind::integer_mod:
      return py::int_(g.int_value());
    case GroupKind::real_vector:
      return py::cast(g.vector_value());
  }
  return py::none();
}

Chain make_chain(int n, int k, double spacing, const std::string& group, const py::list& cells) {
  Chain a(n, k, spacing, group_from_name(group));
  for (const py::handle& entry : cells) {
    const py::tuple t = entry.cast<py::tuple>();
    if (t.size() != 3) throw std::invalid_argument("cells must be (anchor, axes, coef) triples");
    Cell cell{t[0].cast<std::vector<int>>(), t[1].cast<std::vector<int>>()};
    a.set_coefficient(cell, coef_from_object(t[2], a.group()));
  }
  return a;
}

py::list chain_cells(const Chain& a) {
  py::list out;
  for (const auto& [cell, g] : a.coefficients()) {
    out.append(py::make_tuple(cell.anchor, cell.axes, coef_to_object(g)));
  }
  return out;
}

Raster raster_from_rows(const std::vector<std::vector<double>>& rows) {
  return Raster::from_rows(rows);
}

py::list partition_to_list(const CellPartition& partition) {
  py::list blocks;
  for (const CellSet& block : partition) {
    py::list cells;
    for (const Cell& cell : block) cells.append(py::make_tuple(cell.anchor, cell.axes));
    blocks.append(cells);
  }
  return blocks;
}

py::list site_partition_to_list(const SitePartition& partition) {
  py::list blocks;
  for (const SiteSet& block : partition) {
    py::list sites;
    for (const Site& s : block) sites.append(py::cast(s));
    blocks.append(sites);
  }
  return blocks;
}

CellSet cellset_from_list(const py::list& cells) {
  CellSet out;
  for (const py::handle& entry : cells) {
    const py::tuple t = entry.cast<py::tuple>();
    out.insert(Cell{t[0].cast<std::vector<int>>(), t[1].cast<std::vector<int>>()});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(flatchain, m) {
  m.doc() = "Set-decomposition of cubical flat chains with group coefficients";

  py::class_<Chain>(m, "Chain")
      .def(py::init(&make_chain), py::arg("n"), py::arg("k"), py::arg("spacing"),
           py::arg("group"), py::arg("cells"))
      .def_property_readonly("n", &Chain::ambient_dim)
      .def_property_readonly("k", &Chain::degree)
      .def_property_readonly("spacing", &Chain::spacing)
      .def_property_readonly("group", [](const Chain& a) { return a.group().name(); })
      .def("cells", &chain_cells)
      .def("__len__", &Chain::support_size)
      .def("is_zero", &Chain::is_zero);

  py::class_<Raster>(m, "Raster")
      .def(py::init(&raster_from_rows), py::arg("rows"))
      .def_property_readonly("shape", &Raster::shape);

  py::class_<CostFunction>(m, "CostFunction")
      .def_static("power", &CostFunction::power_shape, py::arg("alpha"))
      .def_static("sqrt", &CostFunction::sqrt_shape)
      .def_static("identity", &CostFunction::identity)
      .def("__call__", &CostFunction::eval)
      .def("inverse", &CostFunction::inverse)
      .def_property_readonly("slopes", &CostFunction::slopes)
      .def_property_readonly("tail_index", &CostFunction::tail_index)
      .def("to_json",
           [](const CostFunction& h) { return cost_function_to_json(h).dump(); });

  m.def("boundary", &boundary, py::arg("chain"));
  m.def("add", &add);
  m.def("negate", &negate);
  m.def("mass", &mass);
  m.def("normal_mass", &normal_mass);
  m.def("h_mass", &h_mass);
  m.def("restrict", [](const Chain& a, const py::list& cells) {
    return restrict_to(a, cellset_from_list(cells));
  });
  m.def("support", [](const Chain& a) {
    py::list out;
    for (const Cell& cell : support(a)) out.append(py::make_tuple(cell.anchor, cell.axes));
    return out;
  });

  m.def(
      "construct_h",
      [](const std::vector<std::pair<double, double>>& samples, int depth) {
        return construct_h(band_masses(samples), depth);
      },
      py::arg("samples"), py::arg("depth") = 64);
  m.def("eta", &eta, py::arg("h"), py::arg("m"), py::arg("c"), py::arg("k"));
  m.def("eta_star", &eta_star, py::arg("h"), py::arg("m"), py::arg("c"), py::arg("k"));

  m.def(
      "flat_norm",
      [](const Chain& a, int margin) {
        FlatNormOptions options;
        options.margin = margin;
        const FlatNormCertificate cert = flat_norm(a, options);
        py::dict out;
        out["value"] = cert.value;
        out["filler"] = cert.filler;
        out["remainder"] = cert.remainder;
        out["exact"] = cert.exact;
        return out;
      },
      py::arg("chain"), py::arg("margin") = -1);

  m.def(
      "deform",
      [](const Chain& a, int rho, std::vector<int> offset) {
        const DeformationResult d = deform(a, rho, std::move(offset));
        py::dict out;
        out["p"] = d.p;
        out["r"] = d.r;
        out["s"] = d.s;
        out["ratio_mass_p"] = d.ratios.mass_p_over_mass_a;
        out["ratio_remainder"] = d.ratios.remainder_over_rho_eps_normal;
        return out;
      },
      py::arg("chain"), py::arg("rho"), py::arg("offset"));

  m.def("is_set_decomposition", [](const Chain& a, const py::list& blocks) {
    CellPartition partition;
    for (const py::handle& block : blocks)
      partition.push_back(cellset_from_list(block.cast<py::list>()));
    return is_set_decomposition(a, partition);
  });
  m.def(
      "is_indecomposable",
      [](const Chain& a, long long budget) {
        const AtomReport r = is_indecomposable(a, budget);
        py::dict out;
        out["decided"] = r.status == SearchStatus::decided;
        out["is_atom"] = r.status == SearchStatus::decided ? py::object(py::bool_(r.is_atom))
                                                           : py::object(py::none());
        out["witness"] = partition_to_list(r.witness);
        return out;
      },
      py::arg("chain"), py::arg("budget") = kDefaultSearchBudget);
  m.def(
      "maximal_decomposition",
      [](const Chain& a, long long budget) {
        const Decomposition d = maximal_decomposition(a, budget);
        py::dict out;
        out["decided"] = d.status == SearchStatus::decided;
        out["valid"] = d.valid;
        out["all_atoms"] = d.all_atoms;
        out["parts"] = py::cast(d.parts);
        out["partition"] = partition_to_list(d.partition);
        return out;
      },
      py::arg("chain"), py::arg("budget") = kDefaultSearchBudget);
  m.def("decompose_lex", [](const Chain& a) {
    const Decomposition d = decompose_lex(a);
    py::dict out;
    out["valid"] = d.valid;
    out["all_atoms"] = d.all_atoms;
    out["parts"] = py::cast(d.parts);
    out["partition"] = partition_to_list(d.partition);
    return out;
  });
  m.def("q_value", &q_value);
  m.def("nu_value", &nu_value);
  m.def("extract_atom", [](const Chain& a, const CostFunction& h) {
    auto [atom, rest] = extract_atom(a, h);
    return py::make_tuple(atom, rest);
  });

  m.def("raster_to_chain", &raster_to_chain);
  m.def("chain_to_raster", [](const Chain& a) {
    const Raster f = chain_to_raster(a);
    std::vector<std::vector<double>> rows;
    if (f.dim() == 2) {
      for (int i = 0; i < f.shape()[0]; ++i) {
        std::vector<double> row;
        for (int j = 0; j < f.shape()[1]; ++j)
          row.push_back(f[static_cast<std::int64_t>(i) * f.shape()[1] + j]);
        rows.push_back(std::move(row));
      }
    }
    return rows;
  });
  m.def("tv", &tv);
  m.def("perimeter", [](const std::vector<Site>& sites) {
    return perimeter(SiteSet(sites.begin(), sites.end()));
  });
  m.def("coarea_check", [](const Raster& f) {
    const CoareaReport r = coarea_check(f);
    py::dict out;
    out["lhs"] = r.lhs;
    out["rhs"] = r.rhs;
    out["equal"] = r.equal;
    out["exact"] = r.exact;
    return out;
  });
  m.def("finest_partition",
        [](const Raster& f) { return site_partition_to_list(finest_partition(f)); });
  m.def("m_connected_components", [](const std::vector<Site>& sites) {
    py::list out;
    for (const SiteSet& comp : m_connected_components(SiteSet(sites.begin(), sites.end()))) {
      py::list block;
      for (const Site& s : comp) block.append(py::cast(s));
      out.append(block);
    }
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
