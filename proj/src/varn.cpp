#include "shapecode/varn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>

#include <json.hpp>

#include "shapecode/optimizer.hpp"

namespace shapecode {

namespace {

constexpr double kInf = 1e300;
constexpr std::uint64_t kGeneralCap = 1024; // exact search cap for v >= 3

bool canonical_less(const CodeTree::Leaf& a, const CodeTree::Leaf& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
    return a.path < b.path;
}

// ----- binary / exhaustive construction: split the cheapest leaf -----------
// Ties broken by lexicographically smallest path. With all splits full this
// is the classic exhaustive construction; it requires (k-1) % (v-1) == 0.
std::vector<Word> cheapest_leaf_splits(std::uint64_t k, const CostVector& c) {
    using Entry = std::pair<double, Word>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, Word()});
    int v = c.size();
    std::uint64_t splits = (k - 1) / static_cast<std::uint64_t>(v - 1);
    for (std::uint64_t s = 0; s < splits; s++) {
        auto [w, path] = heap.top();
        heap.pop();
        for (int i = 0; i < v; i++) {
            Word child = path;
            child.push_back(static_cast<char>(i));
            heap.push({w + c[i], std::move(child)});
        }
    }
    std::vector<Word> out;
    out.reserve(k);
    while (!heap.empty()) {
        out.push_back(heap.top().second);
        heap.pop();
    }
    return out;
}

// ----- exact construction for v >= 3 ---------------------------------------
// best[k] = minimum total leaf cost over all prefix trees with k leaves
// (every internal node has between 2 and v children). The per-node DP walks
// the letters in index order assigning each a subtree size.
std::vector<double> best_costs(std::uint64_t K, const CostVector& c) {
    int v = c.size();
    std::vector<double> best(K + 1, kInf);
    best[1] = 0.0;
    for (std::uint64_t k = 2; k <= K; k++) {
        std::size_t n = static_cast<std::size_t>(k) + 1;
        // g[t*3+u]: t leaves left for letters j..v-1, u = min(#children, 2)
        std::vector<double> g(n * 3, kInf);
        g[0 * 3 + 2] = 0.0;
        for (int j = v - 1; j >= 0; j--) {
            std::vector<double> ng(n * 3, kInf);
            for (std::size_t t = 0; t <= k; t++)
                for (int u = 0; u < 3; u++) {
                    double acc = kInf;
                    // s = 0: letter unused
                    if (g[t * 3 + u] < kInf) acc = g[t * 3 + u];
                    for (std::size_t s = 1; s <= t; s++) {
                        if (best[s] >= kInf) continue;
                        int nu = std::min(2, u + 1);
                        double rest = g[(t - s) * 3 + nu];
                        if (rest >= kInf) continue;
                        double val = best[s] + static_cast<double>(s) * c[j] + rest;
                        if (val < acc) acc = val;
                    }
                    ng[t * 3 + u] = acc;
                }
            g.swap(ng);
        }
        best[k] = g[static_cast<std::size_t>(k) * 3 + 0];
    }
    return best;
}

void rebuild(std::uint64_t k, const std::vector<double>& best, const CostVector& c,
             Word& path, std::vector<Word>& out) {
    if (k == 1) {
        out.push_back(path);
        return;
    }
    int v = c.size();
    double tol = 1e-6 * std::max(1.0, std::abs(best[k]));
    std::vector<std::uint64_t> alloc(static_cast<std::size_t>(v), 0);
    // first allocation (letters in index order, sizes ascending) matching best[k]
    auto search = [&](auto&& self, int j, std::uint64_t rem, int used, double acc) -> bool {
        if (acc > best[k] + tol) return false;
        if (j == v) return rem == 0 && used >= 2 && std::abs(acc - best[k]) <= tol;
        for (std::uint64_t s = 0; s <= rem; s++) {
            double sub = (s == 0) ? 0.0 : best[s] + static_cast<double>(s) * c[j];
            if (sub >= kInf) continue;
            alloc[static_cast<std::size_t>(j)] = s;
            if (self(self, j + 1, rem - s, used + (s ? 1 : 0), acc + sub)) return true;
        }
        alloc[static_cast<std::size_t>(j)] = 0;
        return false;
    };
    if (!search(search, 0, k, 0, 0.0))
        throw Error("varn_build: optimal tree reconstruction failed");
    std::vector<std::uint64_t> a = alloc;
    for (int j = 0; j < v; j++) {
        if (a[static_cast<std::size_t>(j)] == 0) continue;
        path.push_back(static_cast<char>(j));
        rebuild(a[static_cast<std::size_t>(j)], best, c, path, out);
        path.pop_back();
    }
}

std::string double_to_string(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

void CodeTree::index_from_paths(std::vector<Word> paths) {
    if (paths.empty()) throw InvalidArgument("code tree needs at least one leaf");
    if (!check_prefix_free(paths)) throw InvalidArgument("leaf paths are not prefix-free");
    int v = costs_.size();
    leaves_.clear();
    leaves_.reserve(paths.size());
    for (Word& p : paths) {
        double w = 0.0;
        for (char s : p) {
            if (static_cast<unsigned char>(s) >= static_cast<unsigned>(v))
                throw InvalidArgument("leaf path symbol outside alphabet");
            w += costs_[static_cast<unsigned char>(s)];
        }
        leaves_.push_back({std::move(p), w});
    }
    std::sort(leaves_.begin(), leaves_.end(), canonical_less);
    nodes_.assign(1, Node{});
    nodes_[0].child.assign(static_cast<std::size_t>(v), -1);
    for (std::size_t idx = 0; idx < leaves_.size(); idx++) {
        std::size_t n = 0;
        for (char s : leaves_[idx].path) {
            auto sym = static_cast<std::size_t>(static_cast<unsigned char>(s));
            if (nodes_[n].child[sym] < 0) {
                nodes_[n].child[sym] = static_cast<std::int32_t>(nodes_.size());
                nodes_.emplace_back();
                nodes_.back().child.assign(static_cast<std::size_t>(v), -1);
            }
            n = static_cast<std::size_t>(nodes_[n].child[sym]);
        }
        nodes_[n].leaf_index = static_cast<std::int64_t>(idx);
    }
}

CodeTree CodeTree::from_leaf_paths(std::vector<Word> paths, CostVector costs) {
    CodeTree t(std::move(costs));
    t.index_from_paths(std::move(paths));
    return t;
}

double CodeTree::mean_leaf_cost() const {
    double s = 0.0;
    for (const Leaf& l : leaves_) s += l.cost;
    return s / static_cast<double>(leaves_.size());
}

double CodeTree::mean_leaf_length() const {
    double s = 0.0;
    for (const Leaf& l : leaves_) s += static_cast<double>(l.path.size());
    return s / static_cast<double>(leaves_.size());
}

void CodeTree::append_leaf_path(std::uint64_t leaf_index, Word& out) const {
    out += leaves_[leaf_index].path;
}

CodeTree::Decoded CodeTree::decode(const Word& symbols, std::uint64_t max_leaves) const {
    Decoded out;
    std::size_t n = 0;
    Word partial;
    int v = costs_.size();
    for (std::size_t i = 0; i < symbols.size(); i++) {
        if (out.indices.size() >= max_leaves) {
            out.residual = symbols.substr(i);
            return out;
        }
        auto sym = static_cast<unsigned char>(symbols[i]);
        if (sym >= static_cast<unsigned>(v))
            throw CorruptStream("stream symbol outside output alphabet");
        std::int32_t nxt = nodes_[n].child[sym];
        if (nxt < 0) throw CorruptStream("stream path enters a missing branch");
        n = static_cast<std::size_t>(nxt);
        partial.push_back(symbols[i]);
        if (nodes_[n].leaf_index >= 0) {
            out.indices.push_back(static_cast<std::uint64_t>(nodes_[n].leaf_index));
            n = 0;
            partial.clear();
        }
    }
    out.residual = std::move(partial);
    return out;
}

std::string CodeTree::canonical_json() const {
    std::vector<std::string> texts;
    texts.reserve(leaves_.size());
    for (const Leaf& l : leaves_) texts.push_back(word_to_text(l.path));
    std::sort(texts.begin(), texts.end());
    std::string out = "{\"v\":" + std::to_string(costs_.size()) + ",\"costs\":[";
    for (int i = 0; i < costs_.size(); i++) {
        if (i) out += ',';
        out += double_to_string(costs_[i]);
    }
    out += "],\"leaves\":[";
    for (std::size_t i = 0; i < texts.size(); i++) {
        if (i) out += ',';
        out += '"';
        out += texts[i];
        out += '"';
    }
    out += "]}";
    return out;
}

std::uint64_t CodeTree::hash() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : canonical_json()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

CodeTree CodeTree::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("v") || !j.contains("costs") ||
        !j.contains("leaves"))
        throw InvalidArgument("malformed code tree JSON");
    std::vector<double> costs = j["costs"].get<std::vector<double>>();
    if (static_cast<int>(costs.size()) != j["v"].get<int>())
        throw InvalidArgument("code tree JSON: v does not match costs length");
    std::vector<Word> paths;
    for (const auto& t : j["leaves"]) paths.push_back(word_from_text(t.get<std::string>()));
    return from_leaf_paths(std::move(paths), CostVector(std::move(costs)));
}

CodeTree varn_build(std::uint64_t codebook_size, const CostVector& c) {
    if (codebook_size < 2) throw InvalidArgument("codebook size must be >= 2");
    int v = c.size();
    std::vector<Word> paths;
    if (v == 2) {
        paths = cheapest_leaf_splits(codebook_size, c);
    } else {
        if (codebook_size > kGeneralCap)
            throw InvalidArgument("codebook size above exact-search cap (" +
                                  std::to_string(kGeneralCap) + ") for v >= 3");
        std::vector<double> best = best_costs(codebook_size, c);
        Word path;
        rebuild(codebook_size, best, c, path, paths);
    }
    CodeTree t(c);
    t.index_from_paths(std::move(paths));
    return t;
}

CodeTree modified_varn_build(int k_bits, const CostVector& c) {
    if (k_bits < 1 || k_bits > 24) throw InvalidArgument("k_bits must be in 1..24");
    if (c.min_cost() <= 0.0)
        throw ZeroMinCost("modified Varn construction needs a positive minimum cost");
    int v = c.size();
    std::uint64_t K = std::uint64_t(1) << k_bits;
    std::uint64_t nu = (K - 1) % static_cast<std::uint64_t>(v - 1);
    std::uint64_t delta = nu > 0 ? static_cast<std::uint64_t>(v - 1) - nu : 0;
    std::uint64_t M = K + delta;
    std::vector<Word> paths = cheapest_leaf_splits(M, c);
    if (delta > 0) {
        // trim the delta most expensive leaves, (cost, path) descending
        std::vector<std::pair<double, Word>> order;
        order.reserve(paths.size());
        for (Word& p : paths) order.push_back({word_cost(p, c.costs()), std::move(p)});
        std::sort(order.begin(), order.end(), std::greater<>());
        order.erase(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(delta));
        paths.clear();
        for (auto& [w, p] : order) paths.push_back(std::move(p));
    }
    CodeTree t(c);
    t.index_from_paths(std::move(paths));
    return t;
}

CodeBook tree_to_codebook(const CodeTree& tree, int u, int q) {
    std::uint64_t domain = 1;
    for (int i = 0; i < q; i++) domain *= static_cast<std::uint64_t>(u);
    if (domain != tree.leaf_count())
        throw InvalidArgument("leaf count " + std::to_string(tree.leaf_count()) +
                              " does not match u^q = " + std::to_string(domain));
    std::vector<Word> entries;
    entries.reserve(domain);
    for (const CodeTree::Leaf& l : tree.leaves()) entries.push_back(l.path);
    return CodeBook(u, q, tree.output_alphabet_size(), std::move(entries));
}

} // namespace shapecode
