// shapecode CLI: solve | curve | build | encode | decode | eval | dm-test
//
// Numeric CSV output is fixed at 6 significant digits; JSON carries full
// precision. Exit codes: 0 ok, 2 infeasible rate, 3 zero minimum cost,
// 4 I/O or corrupt stream.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapecode/gsf.hpp"
#include "shapecode/lz78.hpp"
#include "shapecode/metrics.hpp"
#include "shapecode/model.hpp"
#include "shapecode/optimizer.hpp"
#include "shapecode/pipeline.hpp"
#include "shapecode/rng.hpp"
#include "shapecode/serialize.hpp"
#include "shapecode/varn.hpp"

namespace sc = shapecode;
using nlohmann::json;

namespace {

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw sc::InvalidArgument("empty numeric list: '" + s + "'");
    return out;
}

std::vector<std::uint64_t> parse_int_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw sc::InvalidArgument("empty integer list: '" + s + "'");
    return out;
}

// grid "a:b:n" -> n points from a to b inclusive
std::vector<double> parse_grid(const std::string& s) {
    double a, b;
    long n;
    if (std::sscanf(s.c_str(), "%lf:%lf:%ld", &a, &b, &n) != 3 || n < 1)
        throw sc::InvalidArgument("grid must be a:b:n with n >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; i++)
        out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw sc::CorruptStream("cannot open input file: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw sc::CorruptStream("cannot open output file: " + path);
    f.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!f) throw sc::CorruptStream("write failed: " + path);
}

std::string read_text(const std::string& path) {
    auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        write_file(out_path, text.data(), text.size());
    }
}

// Config file (JSON, RunConfig field names) merged under explicit flags:
// flags win whenever the user passed them.
struct RunConfig {
    std::optional<std::vector<double>> costs, source_pmf, target_pmf;
    std::optional<int> q, k_bits;
    std::optional<std::uint64_t> K, seed;
    std::optional<double> f, f_target, hsource, budget;
    std::optional<std::string> grid, input, output;
    bool optimal = false, divergence = false, modified = false;
};

void load_config_file(const std::string& path, RunConfig& cfg) {
    json j = json::parse(read_text(path), nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw sc::InvalidArgument("config file is not a JSON object: " + path);
    auto get_list = [&](const char* k, std::optional<std::vector<double>>& dst) {
        if (j.contains(k)) dst = j[k].get<std::vector<double>>();
    };
    get_list("costs", cfg.costs);
    get_list("source_pmf", cfg.source_pmf);
    get_list("target_pmf", cfg.target_pmf);
    if (j.contains("q")) cfg.q = j["q"].get<int>();
    if (j.contains("k_bits")) cfg.k_bits = j["k_bits"].get<int>();
    if (j.contains("K")) cfg.K = j["K"].get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("f")) cfg.f = j["f"].get<double>();
    if (j.contains("f_target")) cfg.f_target = j["f_target"].get<double>();
    if (j.contains("hsource")) cfg.hsource = j["hsource"].get<double>();
    if (j.contains("grid")) cfg.grid = j["grid"].get<std::string>();
    if (j.contains("input")) cfg.input = j["input"].get<std::string>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
}

sc::CostVector require_costs(const RunConfig& cfg) {
    if (!cfg.costs) throw sc::InvalidArgument("--costs is required");
    return sc::CostVector(*cfg.costs);
}

sc::Pmf require_target(const RunConfig& cfg) {
    if (!cfg.target_pmf) throw sc::InvalidArgument("--target is required");
    return sc::Pmf(*cfg.target_pmf);
}

double require_hsource(const RunConfig& cfg) {
    if (!cfg.hsource) throw sc::InvalidArgument("--hsource is required");
    return *cfg.hsource;
}

sc::CodeTree load_tree(const std::string& path) {
    return sc::CodeTree::from_json(read_text(path));
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_solve(const RunConfig& cfg) {
    sc::CostVector costs = require_costs(cfg);
    double h = require_hsource(cfg);
    json out;
    if (cfg.optimal) {
        out = sc::to_json(sc::optimal_expansion(costs, h));
    } else {
        if (!cfg.f) throw sc::InvalidArgument("solve needs --f or --optimal");
        out = sc::to_json(sc::min_avg_cost(costs, h, *cfg.f));
    }
    emit(cfg.output.value_or(""), out.dump(2));
    return 0;
}

int cmd_curve(const RunConfig& cfg) {
    double h = require_hsource(cfg);
    if (!cfg.grid) throw sc::InvalidArgument("curve needs --grid a:b:n");
    std::vector<double> grid = parse_grid(*cfg.grid);
    std::optional<sc::CostVector> costs;
    std::optional<sc::Pmf> target;
    if (cfg.divergence) {
        target = require_target(cfg);
        costs = sc::equivalent_cost_vector(*target);
    } else {
        costs = require_costs(cfg);
    }
    std::ostringstream csv;
    csv << "f,mu,N,entropy_h,avg_cost,total_cost";
    if (cfg.divergence) csv << ",i_min";
    csv << "\n";
    for (double f : grid) {
        sc::ShapingSolution s = sc::min_avg_cost(*costs, h, f);
        csv << fmt6(s.f) << ',' << fmt6(s.mu) << ',' << fmt6(s.normalizer) << ','
            << fmt6(s.entropy_h) << ',' << fmt6(s.avg_cost) << ',' << fmt6(s.total_cost);
        if (cfg.divergence) csv << ',' << fmt6(s.avg_cost - h / f);
        csv << "\n";
    }
    emit(cfg.output.value_or(""), csv.str());
    return 0;
}

int cmd_build(const RunConfig& cfg, const std::string& hist_path) {
    sc::CostVector costs = require_costs(cfg);
    std::optional<sc::CodeTree> tree;
    if (cfg.k_bits && cfg.K) throw sc::InvalidArgument("build takes --K or --k-bits, not both");
    if (cfg.k_bits) tree = sc::modified_varn_build(*cfg.k_bits, costs);
    else if (cfg.K) tree = sc::varn_build(*cfg.K, costs);
    else throw sc::InvalidArgument("build needs --K or --k-bits");

    emit(cfg.output.value_or(""), tree->canonical_json());

    if (!hist_path.empty()) {
        std::map<std::size_t, std::uint64_t> hist;
        for (const auto& l : tree->leaves()) hist[l.path.size()]++;
        std::ostringstream csv;
        csv << "length,count\n";
        for (auto& [len, cnt] : hist) csv << len << ',' << cnt << "\n";
        write_file(hist_path, csv.str().data(), csv.str().size());
    }
    std::ostringstream summary;
    summary << "leaves=" << tree->leaf_count() << " mean_length=" << fmt6(tree->mean_leaf_length())
            << " mean_cost=" << fmt6(tree->mean_leaf_cost());
    if (cfg.q) summary << " f=" << fmt6(tree->mean_leaf_length() / *cfg.q);
    summary << "\n";
    std::cerr << summary.str();
    return 0;
}

int cmd_encode(const RunConfig& cfg, const std::string& tree_path) {
    if (!cfg.input || !cfg.output) throw sc::InvalidArgument("encode needs --in and --out");
    sc::CodeTree tree = load_tree(tree_path);
    std::vector<std::uint8_t> data = read_file(*cfg.input);
    std::vector<std::uint8_t> stream = sc::pipeline_encode(data, tree);
    write_file(*cfg.output, stream.data(), stream.size());
    return 0;
}

int cmd_decode(const RunConfig& cfg, const std::string& tree_path) {
    if (!cfg.input || !cfg.output) throw sc::InvalidArgument("decode needs --in and --out");
    sc::CodeTree tree = load_tree(tree_path);
    std::vector<std::uint8_t> stream = read_file(*cfg.input);
    std::vector<std::uint8_t> data = sc::pipeline_decode(stream, tree);
    write_file(*cfg.output, data.data(), data.size());
    return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& tree_path, const std::string& book_path,
             std::uint64_t gen_stream) {
    if (!cfg.source_pmf) throw sc::InvalidArgument("eval needs --source-pmf");
    sc::Pmf source(*cfg.source_pmf);
    std::optional<sc::CodeBook> book;
    int q = cfg.q.value_or(1);
    if (!tree_path.empty()) {
        sc::CodeTree tree = load_tree(tree_path);
        book = sc::tree_to_codebook(tree, source.size(), q);
    } else if (!book_path.empty()) {
        book = sc::codebook_from_json(json::parse(read_text(book_path)));
        q = book->block_length();
    } else {
        throw sc::InvalidArgument("eval needs --tree or --codebook");
    }
    sc::SourceSpec src(source, q);
    sc::Pmf target = require_target(cfg);
    std::optional<sc::CostVector> costs;
    if (cfg.costs) costs = sc::CostVector(*cfg.costs);

    std::optional<sc::Word> stream;
    if (gen_stream > 0) {
        if (!cfg.seed) throw sc::InvalidArgument("--gen-stream needs --seed");
        sc::Xoshiro256 rng(*cfg.seed);
        sc::PmfSampler sampler(source);
        sc::Word s;
        std::uint64_t u = static_cast<std::uint64_t>(source.size());
        for (std::uint64_t i = 0; i < gen_stream; i++) {
            std::uint64_t block = 0;
            for (int d = 0; d < q; d++)
                block = block * u + static_cast<std::uint64_t>(sampler.sample(rng));
            s += book->entry(block);
        }
        stream = std::move(s);
    }
    sc::MetricsReport r = sc::evaluate(*book, src, target, costs, stream ? &*stream : nullptr);
    emit(cfg.output.value_or(""), sc::to_json(r).dump(2));
    return 0;
}

int cmd_dm_test(const RunConfig& cfg, const std::string& k_list, std::uint64_t codewords) {
    sc::Pmf target = require_target(cfg);
    if (!cfg.seed) throw sc::InvalidArgument("dm-test needs --seed");
    std::vector<std::uint64_t> ks = parse_int_list(k_list);
    sc::CostVector costs = sc::equivalent_cost_vector(target);
    std::ostringstream csv;
    csv << "K,p0,I1,I2,I3\n";
    for (std::size_t idx = 0; idx < ks.size(); idx++) {
        std::uint64_t K = ks[idx];
        sc::CodeTree tree = sc::varn_build(K, costs);
        sc::Xoshiro256 rng = sc::Xoshiro256::derived(*cfg.seed, idx);
        sc::Word stream;
        for (std::uint64_t i = 0; i < codewords; i++)
            tree.append_leaf_path(rng.next_below(K), stream);
        std::uint64_t zeros = 0;
        for (char s : stream)
            if (s == 0) zeros++;
        double p0 = static_cast<double>(zeros) / static_cast<double>(stream.size());
        csv << K << ',' << fmt6(p0);
        for (int m = 1; m <= 3; m++) csv << ',' << fmt6(sc::serial_kl(stream, target, m));
        csv << "\n";
    }
    emit(cfg.output.value_or(""), csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shaping and distribution-matching codes for noiseless costly channels"};
    app.require_subcommand(1);

    std::string config_path, costs_s, source_pmf_s, target_s, grid_s, in_path, out_path;
    std::string tree_path, book_path, hist_path, k_list;
    RunConfig cfg;
    int q = 0, k_bits = 0;
    std::uint64_t K = 0, seed = 0, gen_stream = 0, codewords = 100000;
    double f = 0, f_target = 0, hsource = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override it)");
        sub->add_option("--costs", costs_s, "comma-separated symbol costs");
        sub->add_option("--target", target_s, "comma-separated target pmf");
        sub->add_option("--source-pmf", source_pmf_s, "comma-separated source pmf");
        sub->add_option("--hsource", hsource, "source entropy, bits/symbol");
        sub->add_option("--q", q, "source block length");
        sub->add_option("--f", f, "expansion factor");
        sub->add_option("--f-target", f_target, "pipeline expansion target, symbols/source bit");
        sub->add_option("--k-bits", k_bits, "bits per shaping block (modified Varn)");
        sub->add_option("--K", K, "codebook size");
        sub->add_option("--seed", seed, "PRNG seed");
        sub->add_option("--grid", grid_s, "grid a:b:n");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--in", in_path, "input path");
    };

    CLI::App* solve = app.add_subcommand("solve", "rate-constrained minimum-cost distribution");
    add_common(solve);
    solve->add_flag("--optimal", cfg.optimal, "solve for the total-cost optimum instead of fixed f");

    CLI::App* curve = app.add_subcommand("curve", "cost/divergence versus expansion factor, CSV");
    add_common(curve);
    curve->add_flag("--divergence", cfg.divergence,
                    "emit I_min(f) for --target (costs become -log2 target)");

    CLI::App* build = app.add_subcommand("build", "construct a Varn or modified Varn code tree");
    add_common(build);
    build->add_option("--hist", hist_path, "also write a codeword-length histogram CSV");

    CLI::App* encode = app.add_subcommand("encode", "compress and shape a file");
    add_common(encode);
    encode->add_option("--tree", tree_path, "code tree JSON (from build)")->required();

    CLI::App* decode = app.add_subcommand("decode", "invert encode");
    add_common(decode);
    decode->add_option("--tree", tree_path, "code tree JSON (from build)")->required();

    CLI::App* eval = app.add_subcommand("eval", "evaluate a codebook with the full metric set");
    add_common(eval);
    eval->add_option("--tree", tree_path, "code tree JSON; leaves become the codebook");
    eval->add_option("--codebook", book_path, "codebook JSON {u,q,v,entries}");
    eval->add_option("--gen-stream", gen_stream, "sample N blocks for the serial test");

    CLI::App* dm = app.add_subcommand("dm-test", "Varn distribution matching across codebook sizes");
    add_common(dm);
    dm->add_option("--K-list", k_list, "comma-separated codebook sizes")->required();
    dm->add_option("--codewords", codewords, "codewords per stream (default 100000)");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) load_config_file(config_path, cfg);
        // flags override config
        if (sub->count("--costs")) cfg.costs = parse_list(costs_s);
        if (sub->count("--target")) cfg.target_pmf = parse_list(target_s);
        if (sub->count("--source-pmf")) cfg.source_pmf = parse_list(source_pmf_s);
        if (sub->count("--hsource")) cfg.hsource = hsource;
        if (sub->count("--q")) cfg.q = q;
        if (sub->count("--f")) cfg.f = f;
        if (sub->count("--f-target")) cfg.f_target = f_target;
        if (sub->count("--k-bits")) cfg.k_bits = k_bits;
        if (sub->count("--K")) cfg.K = K;
        if (sub->count("--seed")) cfg.seed = seed;
        if (sub->count("--grid")) cfg.grid = grid_s;
        if (sub->count("--out")) cfg.output = out_path;
        if (sub->count("--in")) cfg.input = in_path;

        if (sub == solve) return cmd_solve(cfg);
        if (sub == curve) return cmd_curve(cfg);
        if (sub == build) return cmd_build(cfg, hist_path);
        if (sub == encode) return cmd_encode(cfg, tree_path);
        if (sub == decode) return cmd_decode(cfg, tree_path);
        if (sub == eval) return cmd_eval(cfg, tree_path, book_path, gen_stream);
        if (sub == dm) return cmd_dm_test(cfg, k_list, codewords);
        throw sc::InvalidArgument("unknown subcommand");
    } catch (const sc::InfeasibleRate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sc::ZeroMinCost& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sc::CorruptStream& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const sc::TreeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
