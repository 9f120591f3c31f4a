#include "voa/presentation_io.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "voa/errors.hpp"
#include "voa/grammar.hpp"

namespace voa {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

Rat parse_weight(const std::string& s) {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(s);
    return Rat(s.substr(0, slash)) / Rat(s.substr(slash + 1));
}

std::string weight_str(const Rat& w) { return w.get_str(); }

} // namespace

LoadedPresentation parse_presentation(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    int schema = 0;
    std::string name;
    std::vector<std::string> params;
    std::vector<std::pair<std::string, std::string>> root_lines;
    std::optional<std::string> virasoro;
    std::vector<Generator> gens;
    struct RawOpe {
        std::string left, right;
        std::vector<std::pair<int, std::string>> poles;
    };
    std::vector<RawOpe> opes;
    RawOpe* open = nullptr;

    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        auto words = split_ws(line);
        const std::string& kw = words[0];
        auto need = [&](size_t n) {
            if (words.size() < n)
                fail(ErrorKind::Unsupported,
                     "presentation line " + std::to_string(lineno) + ": malformed '" + kw + "'");
        };
        if (open) {
            if (kw == "end") {
                open = nullptr;
                continue;
            }
            // "<pole> -> <expr>"
            size_t arrow = line.find("->");
            if (arrow == std::string::npos)
                fail(ErrorKind::Unsupported,
                     "presentation line " + std::to_string(lineno) + ": expected 'pole -> expr'");
            int pole = std::stoi(strip(line.substr(0, arrow)));
            open->poles.emplace_back(pole, strip(line.substr(arrow + 2)));
            continue;
        }
        if (kw == "schema") {
            need(2);
            schema = std::stoi(words[1]);
        } else if (kw == "name") {
            need(2);
            name = words[1];
        } else if (kw == "params") {
            params.assign(words.begin() + 1, words.end());
        } else if (kw == "root") {
            need(3);
            std::string expr;
            for (size_t i = 2; i < words.size(); ++i) expr += (i > 2 ? " " : "") + words[i];
            root_lines.emplace_back(words[1], expr);
        } else if (kw == "virasoro") {
            need(2);
            virasoro = words[1];
        } else if (kw == "generator") {
            need(4);
            if (words[2] != "even" && words[2] != "odd")
                fail(ErrorKind::Unsupported,
                     "presentation line " + std::to_string(lineno) + ": parity must be even|odd");
            gens.push_back(Generator{words[1], words[2] == "odd", parse_weight(words[3])});
        } else if (kw == "ope") {
            need(3);
            opes.push_back(RawOpe{words[1], words[2], {}});
            open = &opes.back();
        } else {
            fail(ErrorKind::Unsupported,
                 "presentation line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }
    if (open) fail(ErrorKind::Unsupported, "presentation ends inside an ope block");
    if (schema != 1) fail(ErrorKind::Unsupported, "unsupported presentation schema");

    CtxPtr plain = ScalarContext::make(params);
    std::vector<std::pair<std::string, RatFun>> roots;
    for (const auto& [rname, rexpr] : root_lines)
        roots.emplace_back(rname, parse_ratfun(rexpr, plain));
    CtxPtr ctx = ScalarContext::make(params, roots);

    std::vector<Algebra::TableEntry> entries;
    for (const auto& raw : opes) {
        Algebra::TableEntry e;
        e.left = raw.left;
        e.right = raw.right;
        for (const auto& [pole, text] : raw.poles)
            e.ope.set_pole(pole, parse_field_expr(text, ctx, gens));
        entries.push_back(std::move(e));
    }
    LoadedPresentation out{Algebra(ctx, std::move(gens), entries, virasoro, name), schema};
    return out;
}

LoadedPresentation load_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Unsupported, "cannot open presentation file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
}

std::string data_dir() {
    if (const char* env = std::getenv("VOA_DATA_DIR")) return env;
#ifdef VOA_DATA_DIR
    return VOA_DATA_DIR;
#else
    return "data";
#endif
}

LoadedPresentation load_named_presentation(const std::string& name) {
    return load_presentation_file(data_dir() + "/" + name + ".pres");
}

std::string save_presentation(const Algebra& alg, int schema) {
    std::ostringstream out;
    out << "schema " << schema << "\n";
    if (!alg.name().empty()) out << "name " << alg.name() << "\n";
    const auto& ctx = *alg.ctx();
    out << "params";
    for (const auto& p : ctx.params()) out << " " << p;
    out << "\n";
    for (int i = 0; i < ctx.nroots(); ++i)
        out << "root " << ctx.root(i).name << " " << ctx.root(i).square.str(ctx.params()) << "\n";
    if (alg.virasoro()) out << "virasoro " << alg.generator(*alg.virasoro()).name << "\n";
    for (const auto& g : alg.generators())
        out << "generator " << g.name << " " << (g.odd ? "odd" : "even") << " "
            << weight_str(g.weight) << "\n";
    for (int i = 0; i < alg.ngens(); ++i) {
        for (int j = i; j < alg.ngens(); ++j) {
            const OpeSingular& s = alg.table(i, j);
            if (s.empty()) continue;
            out << "ope " << alg.generator(i).name << " " << alg.generator(j).name << "\n";
            for (auto it = s.poles().rbegin(); it != s.poles().rend(); ++it)
                out << "  " << it->first << " -> " << print_field_expr(it->second, alg) << "\n";
            out << "end\n";
        }
    }
    return out.str();
}

std::string presentation_hash(const Algebra& alg) {
    std::string s = save_presentation(alg);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace voa
