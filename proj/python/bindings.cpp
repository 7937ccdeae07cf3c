#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shapecode/gsf.hpp"
#include "shapecode/lz78.hpp"
#include "shapecode/metrics.hpp"
#include "shapecode/model.hpp"
#include "shapecode/optimizer.hpp"
#include "shapecode/pipeline.hpp"
#include "shapecode/varn.hpp"

namespace py = pybind11;
namespace sc = shapecode;

namespace {

sc::Pmf to_pmf(const std::vector<double>& p) { return sc::Pmf(p); }

py::dict solution_dict(const sc::ShapingSolution& s) {
    py::dict d;
    d["mu"] = s.mu;
    d["N"] = s.normalizer;
    d["p_hat"] = s.p_hat.probs();
    d["f"] = s.f;
    d["avg_cost"] = s.avg_cost;
    d["total_cost"] = s.total_cost;
    d["entropy_h"] = s.entropy_h;
    return d;
}

sc::Word stream_from_str(const std::string& text) { return sc::word_from_text(text); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rate-constrained shaping and distribution-matching codes";

    py::register_exception<sc::InfeasibleRate>(m, "InfeasibleRate");
    py::register_exception<sc::ZeroMinCost>(m, "ZeroMinCost");
    py::register_exception<sc::CorruptStream>(m, "CorruptStream");
    py::register_exception<sc::TreeMismatch>(m, "TreeMismatch");

    m.def("entropy", [](const std::vector<double>& p) { return sc::entropy(to_pmf(p)); },
          py::arg("pmf"), "Shannon entropy in bits");
    m.def("kl_divergence",
          [](const std::vector<double>& p, const std::vector<double>& q) {
              return sc::kl_divergence(to_pmf(p), to_pmf(q));
          },
          py::arg("p"), py::arg("q"));
    m.def("solve_mu_capacity",
          [](const std::vector<double>& c) { return sc::solve_mu_capacity(sc::CostVector(c)); },
          py::arg("costs"));
    m.def("min_avg_cost",
          [](const std::vector<double>& c, double h, double f) {
              return solution_dict(sc::min_avg_cost(sc::CostVector(c), h, f));
          },
          py::arg("costs"), py::arg("h_source"), py::arg("f"));
    m.def("optimal_expansion",
          [](const std::vector<double>& c, double h) {
              sc::OptimalExpansion o = sc::optimal_expansion(sc::CostVector(c), h);
              py::dict d;
              d["f_opt"] = o.f_opt;
              d["t_min"] = o.t_min;
              d["solution"] = solution_dict(o.solution);
              return d;
          },
          py::arg("costs"), py::arg("h_source"));
    m.def("equivalent_cost_vector",
          [](const std::vector<double>& p) {
              return sc::equivalent_cost_vector(to_pmf(p)).costs();
          },
          py::arg("p_hat"));
    m.def("dm_design",
          [](const std::vector<double>& target, double h) {
              sc::DmDesign d = sc::dm_design(to_pmf(target), h);
              py::dict out;
              out["costs"] = d.costs.costs();
              out["f_opt"] = d.f_opt;
              return out;
          },
          py::arg("target"), py::arg("h_source"));
    m.def("i_min_of_f",
          [](const std::vector<double>& target, double h, double f) {
              return sc::i_min_of_f(to_pmf(target), h, f);
          },
          py::arg("target"), py::arg("h_source"), py::arg("f"));
    m.def("min_kl_under_cost",
          [](const std::vector<double>& target, double budget) {
              sc::MinKlResult r = sc::min_kl_under_cost(to_pmf(target), budget);
              py::dict d;
              d["divergence"] = r.divergence;
              d["p_hat"] = r.p_hat.probs();
              d["mu"] = r.mu;
              return d;
          },
          py::arg("target"), py::arg("budget"));

    py::class_<sc::CodeTree>(m, "CodeTree")
        .def_property_readonly("v", &sc::CodeTree::output_alphabet_size)
        .def_property_readonly("leaf_count", &sc::CodeTree::leaf_count)
        .def("leaves",
             [](const sc::CodeTree& t) {
                 std::vector<std::pair<std::string, double>> out;
                 for (const auto& l : t.leaves()) out.push_back({sc::word_to_text(l.path), l.cost});
                 return out;
             })
        .def("mean_leaf_length", &sc::CodeTree::mean_leaf_length)
        .def("mean_leaf_cost", &sc::CodeTree::mean_leaf_cost)
        .def("to_json", &sc::CodeTree::canonical_json)
        .def("hash", &sc::CodeTree::hash)
        .def_static("from_json", &sc::CodeTree::from_json, py::arg("text"));

    py::class_<sc::CodeBook>(m, "CodeBook")
        .def(py::init([](int u, int q, int v, const std::vector<std::string>& entries) {
                 std::vector<sc::Word> words;
                 words.reserve(entries.size());
                 for (const auto& e : entries) words.push_back(sc::word_from_text(e));
                 return sc::CodeBook(u, q, v, std::move(words));
             }),
             py::arg("u"), py::arg("q"), py::arg("v"), py::arg("entries"))
        .def_property_readonly("u", &sc::CodeBook::source_alphabet_size)
        .def_property_readonly("q", &sc::CodeBook::block_length)
        .def_property_readonly("v", &sc::CodeBook::output_alphabet_size)
        .def("entries", [](const sc::CodeBook& b) {
            std::vector<std::string> out;
            for (const auto& w : b.entries()) out.push_back(sc::word_to_text(w));
            return out;
        });

    m.def("varn_build",
          [](std::uint64_t k, const std::vector<double>& c) {
              return sc::varn_build(k, sc::CostVector(c));
          },
          py::arg("codebook_size"), py::arg("costs"));
    m.def("modified_varn_build",
          [](int k_bits, const std::vector<double>& c) {
              return sc::modified_varn_build(k_bits, sc::CostVector(c));
          },
          py::arg("k_bits"), py::arg("costs"));
    m.def("tree_to_codebook", &sc::tree_to_codebook, py::arg("tree"), py::arg("u"), py::arg("q"));
    m.def("gsf_build",
          [](const std::vector<double>& pmf, int q, const std::vector<double>& c) {
              sc::GsfCode code = sc::gsf_build(sc::SourceSpec(to_pmf(pmf), q), sc::CostVector(c));
              py::dict d;
              d["book"] = code.book;
              d["mu"] = code.mu;
              return d;
          },
          py::arg("source_pmf"), py::arg("q"), py::arg("costs"));

    m.def("codebook_stats",
          [](const sc::CodeBook& b, const std::vector<double>& pmf, int q) {
              sc::CodeBookStats st = sc::codebook_stats(b, sc::SourceSpec(to_pmf(pmf), q));
              py::dict d;
              d["expected_length"] = st.expected_length;
              d["expansion_factor"] = st.expansion_factor;
              d["expected_counts"] = st.expected_counts;
              return d;
          },
          py::arg("book"), py::arg("source_pmf"), py::arg("q"));
    m.def("evaluate",
          [](const sc::CodeBook& b, const std::vector<double>& pmf, int q,
             const std::vector<double>& target, std::optional<std::vector<double>> costs,
             std::optional<std::string> stream) {
              std::optional<sc::CostVector> cv;
              if (costs) cv = sc::CostVector(*costs);
              std::optional<sc::Word> w;
              if (stream) w = stream_from_str(*stream);
              sc::MetricsReport r = sc::evaluate(b, sc::SourceSpec(to_pmf(pmf), q), to_pmf(target),
                                                 cv, w ? &*w : nullptr);
              py::dict d;
              d["p_hat"] = r.p_hat.probs();
              d["f"] = r.f;
              d["avg_cost"] = r.avg_cost;
              d["total_cost"] = r.total_cost;
              d["gef"] = r.gef;
              d["i_div"] = r.i_div;
              d["norm_i_div"] = r.norm_i_div;
              d["kl_gap"] = r.kl_gap;
              d["serial_kl"] = r.serial_kl;
              return d;
          },
          py::arg("book"), py::arg("source_pmf"), py::arg("q"), py::arg("target"),
          py::arg("costs") = std::nullopt, py::arg("stream") = std::nullopt);
    m.def("serial_kl",
          [](const std::string& stream, const std::vector<double>& target, int order) {
              return sc::serial_kl(stream_from_str(stream), to_pmf(target), order);
          },
          py::arg("stream"), py::arg("target"), py::arg("order"));

    m.def("pipeline_encode",
          [](py::bytes data, const sc::CodeTree& tree) {
              std::string s = data;
              auto out = sc::pipeline_encode(
                  std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()),
                                                s.size()),
                  tree);
              return py::bytes(reinterpret_cast<const char*>(out.data()), out.size());
          },
          py::arg("data"), py::arg("tree"));
    m.def("pipeline_decode",
          [](py::bytes stream, const sc::CodeTree& tree) {
              std::string s = stream;
              auto out = sc::pipeline_decode(
                  std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()),
                                                s.size()),
                  tree);
              return py::bytes(reinterpret_cast<const char*>(out.data()), out.size());
          },
          py::arg("stream"), py::arg("tree"));
    m.def("pipeline_report",
          [](py::bytes data, const std::vector<double>& c, int k_bits, double f_target) {
              std::string s = data;
              sc::PipelineReport r = sc::pipeline_report(
                  std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()),
                                                s.size()),
                  sc::CostVector(c), k_bits, f_target);
              py::dict d;
              d["g"] = r.compression_ratio_g;
              d["f_back_target"] = r.f_back_target;
              d["back_solution"] = solution_dict(r.back_solution);
              d["equivalent_costs"] = r.equivalent_costs;
              d["f_back_measured"] = r.f_back_measured;
              d["overall_expansion"] = r.overall_expansion;
              d["avg_cost_measured"] = r.avg_cost_measured;
              d["shaped_pmf"] = r.shaped_pmf;
              d["max_pmf_deviation"] = r.max_pmf_deviation;
              d["source_bits"] = r.source_bits;
              d["compressed_bits"] = r.compressed_bits;
              d["output_symbols"] = r.output_symbols;
              return d;
          },
          py::arg("data"), py::arg("costs"), py::arg("k_bits"), py::arg("f_target"));
}
