#include "rds/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace rds {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char* field) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(line, std::string("invalid ") + field + " '" + std::string(text) + "'");
    return value;
}

bool parse_flag(std::string_view text, std::size_t line, const char* field) {
    if (text == "1" || text == "true") return true;
    if (text == "0" || text == "false") return false;
    throw ParseError(line, std::string("invalid ") + field + " '" + std::string(text) + "'");
}

std::string label(std::span<const std::string> ids, std::size_t v) {
    return ids.empty() ? std::to_string(v) : ids[v];
}

class IdTable {
public:
    Vertex intern(std::string_view id) {
        auto [it, inserted] = index_.try_emplace(std::string(id), static_cast<Vertex>(ids_.size()));
        if (inserted) ids_.push_back(it->first);
        return it->second;
    }

    std::vector<std::string> release() { return std::move(ids_); }
    std::size_t size() const { return ids_.size(); }

private:
    std::unordered_map<std::string, Vertex> index_;
    std::vector<std::string> ids_;
};

LoadedGraph finish(IdTable& table, const std::vector<Edge>& edges) {
    LoadedGraph out;
    const std::size_t n = table.size();
    out.graph = Graph::from_edges(n, edges, &out.cleaning);
    out.ids = table.release();
    return out;
}

}  // namespace

LoadedGraph read_edge_list(std::istream& in) {
    IdTable table;
    std::vector<Edge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::istringstream tokens{std::string(body)};
        std::string a, b, extra;
        if (!(tokens >> a >> b) || (tokens >> extra))
            throw ParseError(lineno, "expected exactly two vertex ids");
        const Vertex u = table.intern(a);
        const Vertex v = table.intern(b);
        edges.emplace_back(u, v);
    }
    return finish(table, edges);
}

LoadedGraph read_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_edge_list(in);
}

LoadedGraph from_edge_list(std::span<const std::pair<std::string, std::string>> pairs) {
    IdTable table;
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        const Vertex u = table.intern(a);
        const Vertex v = table.intern(b);
        edges.emplace_back(u, v);
    }
    return finish(table, edges);
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> ids) {
    for (auto [u, v] : g.edges()) out << label(ids, u) << ' ' << label(ids, v) << '\n';
}

void write_traits(std::ostream& out, std::span<const std::uint8_t> traits, const std::string& name,
                  std::span<const std::string> ids) {
    out << "id," << name << '\n';
    for (std::size_t v = 0; v < traits.size(); ++v) out << label(ids, v) << ',' << int{traits[v]} << '\n';
}

TraitTable read_traits(std::istream& in, std::span<const std::string> ids) {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t v = 0; v < ids.size(); ++v) index.emplace(ids[v], v);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing trait header");
    const auto header = split_csv(line);
    if (header.size() != 2 || header[0] != "id") throw ParseError(1, "trait header must be 'id,<trait-name>'");

    TraitTable out;
    out.name = std::string(header[1]);
    out.values.assign(ids.size(), 0);
    std::vector<bool> seen(ids.size(), false);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cols = split_csv(line);
        if (cols.size() != 2) throw ParseError(lineno, "expected two columns");
        const auto it = index.find(cols[0]);
        if (it == index.end()) throw ParseError(lineno, "unknown vertex id '" + std::string(cols[0]) + "'");
        if (seen[it->second]) throw ParseError(lineno, "duplicate vertex id '" + std::string(cols[0]) + "'");
        const int value = parse_number<int>(cols[1], lineno, "trait value");
        if (value != 0 && value != 1) throw ParseError(lineno, "trait values must be 0 or 1");
        out.values[it->second] = static_cast<std::uint8_t>(value);
        seen[it->second] = true;
    }
    for (std::size_t v = 0; v < ids.size(); ++v)
        if (!seen[v]) throw ParseError(lineno, "no trait value for vertex '" + ids[v] + "'");
    return out;
}

void write_sample_csv(std::ostream& out, const RdsSample& s, std::span<const std::string> ids) {
    out << "id,degree,y,is_seed,recruiter,wave\n";
    for (const auto& r : s.records) {
        out << label(ids, r.id) << ',' << r.degree << ',' << r.y << ',' << (r.is_seed ? 1 : 0) << ',';
        if (r.recruiter) out << label(ids, *r.recruiter);
        out << ',' << r.wave << '\n';
    }
}

SampleFile read_sample_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing sample header");
    const auto header = split_csv(line);
    const std::vector<std::string_view> expected{"id", "degree", "y", "is_seed", "recruiter", "wave"};
    if (header != expected) throw ParseError(1, "sample header must be 'id,degree,y,is_seed,recruiter,wave'");

    IdTable table;
    SampleFile out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cols = split_csv(line);
        if (cols.size() != 6) throw ParseError(lineno, "expected six columns");
        if (cols[0].empty()) throw ParseError(lineno, "empty respondent id");
        Respondent r;
        const std::size_t before = table.size();
        r.id = table.intern(cols[0]);
        if (table.size() == before) throw ParseError(lineno, "duplicate respondent id '" + std::string(cols[0]) + "'");
        r.degree = parse_number<int>(cols[1], lineno, "degree");
        r.y = parse_number<int>(cols[2], lineno, "y");
        if (r.y != 0 && r.y != 1) throw ParseError(lineno, "y must be 0 or 1");
        r.is_seed = parse_flag(cols[3], lineno, "is_seed");
        if (!cols[4].empty()) {
            const std::size_t known = table.size();
            const Vertex rec = table.intern(cols[4]);
            if (table.size() != known) throw ParseError(lineno, "recruiter '" + std::string(cols[4]) + "' not seen earlier");
            r.recruiter = rec;
        }
        r.wave = parse_number<int>(cols[5], lineno, "wave");
        out.sample.records.push_back(r);
    }
    out.ids = table.release();
    return out;
}

nlohmann::json to_json(const EstimateReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json flags = nlohmann::json::array();
    for (auto f : r.flags) flags.push_back(to_string(f));
    return {
        {"sample_size", r.sample_size},
        {"num_seeds", r.num_seeds},
        {"c_hat", r.c_hat},
        {"ed_seeds", opt(r.ed_seeds)},
        {"var_ed_seeds", opt(r.var_ed_seeds)},
        {"ed_rw", opt(r.ed_rw)},
        {"var_ed_rw", opt(r.var_ed_rw)},
        {"w_star", r.w_star},
        {"ed_hat", r.ed_hat},
        {"weights", r.weights},
        {"mu_t", r.mu_t},
        {"mu_vh", r.mu_vh},
        {"mu_sm", r.mu_sm},
        {"degenerate_flags", flags},
    };
}

nlohmann::json to_json(const GenerationReport& r) {
    return {
        {"stubs", r.stubs},
        {"odd_stub_dropped", r.odd_stub_dropped},
        {"self_loops_erased", r.self_loops_erased},
        {"multiedges_collapsed", r.multiedges_collapsed},
        {"drawn_mean_degree", r.drawn_mean_degree},
        {"realized_mean_degree", r.realized_mean_degree},
    };
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace rds
