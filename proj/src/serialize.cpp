#include "shapecode/serialize.hpp"

namespace shapecode {

using nlohmann::json;

json to_json(const ShapingSolution& s) {
    return json{{"mu", s.mu},
                {"N", s.normalizer},
                {"p_hat", s.p_hat.probs()},
                {"f", s.f},
                {"avg_cost", s.avg_cost},
                {"total_cost", s.total_cost},
                {"entropy_h", s.entropy_h}};
}

json to_json(const OptimalExpansion& o) {
    return json{{"f_opt", o.f_opt}, {"t_min", o.t_min}, {"solution", to_json(o.solution)}};
}

json to_json(const MetricsReport& r) {
    return json{{"p_hat", r.p_hat.probs()},
                {"f", r.f},
                {"avg_cost", r.avg_cost},
                {"total_cost", r.total_cost},
                {"gef", r.gef},
                {"i_div", r.i_div},
                {"norm_i_div", r.norm_i_div},
                {"kl_gap", r.kl_gap},
                {"serial_kl", r.serial_kl}};
}

json to_json(const PipelineReport& r) {
    return json{{"g", r.compression_ratio_g},
                {"f_back_target", r.f_back_target},
                {"back_solution", to_json(r.back_solution)},
                {"equivalent_costs", r.equivalent_costs},
                {"f_back_measured", r.f_back_measured},
                {"overall_expansion", r.overall_expansion},
                {"avg_cost_measured", r.avg_cost_measured},
                {"shaped_pmf", r.shaped_pmf},
                {"max_pmf_deviation", r.max_pmf_deviation},
                {"source_bits", r.source_bits},
                {"compressed_bits", r.compressed_bits},
                {"output_symbols", r.output_symbols}};
}

json to_json(const CodeBook& b) {
    std::vector<std::string> entries;
    entries.reserve(b.domain_size());
    for (const Word& w : b.entries()) entries.push_back(word_to_text(w));
    return json{{"u", b.source_alphabet_size()},
                {"q", b.block_length()},
                {"v", b.output_alphabet_size()},
                {"entries", entries}};
}

CodeBook codebook_from_json(const json& j) {
    if (!j.is_object() || !j.contains("u") || !j.contains("q") || !j.contains("v") ||
        !j.contains("entries"))
        throw InvalidArgument("malformed codebook JSON");
    std::vector<Word> entries;
    for (const auto& t : j["entries"]) entries.push_back(word_from_text(t.get<std::string>()));
    return CodeBook(j["u"].get<int>(), j["q"].get<int>(), j["v"].get<int>(), std::move(entries));
}

} // namespace shapecode
