#include "dynrmat/formats.hpp"

#include <fstream>
#include <sstream>

#include "dynrmat/errors.hpp"
#include "dynrmat/expr_parser.hpp"

namespace dynrmat {

json algebra_to_json(const LieAlgebra& alg, const Decomposition& dec) {
    json j;
    j["dim"] = alg.dim();
    j["labels"] = alg.labels();
    json brackets = json::array();
    for (int i = 0; i < alg.dim(); ++i) {
        for (int k = i + 1; k < alg.dim(); ++k) {
            const BracketTerms& terms = alg.bracket_basis(i, k);
            if (terms.empty()) continue;
            json entry;
            entry["i"] = i;
            entry["j"] = k;
            json ts = json::array();
            for (const auto& [idx, c] : terms) ts.push_back({{"k", idx}, {"c", c.str()}});
            entry["terms"] = ts;
            brackets.push_back(entry);
        }
    }
    j["brackets"] = brackets;
    j["base"] = dec.base;
    j["complement"] = dec.complement;
    return j;
}

BuiltinAlgebra algebra_from_json(const json& j) {
    if (!j.is_object()) throw Error("algebra file: expected a JSON object");
    int dim = j.at("dim").get<int>();
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    auto alg = std::make_shared<LieAlgebra>(dim, labels);
    for (const auto& entry : j.at("brackets")) {
        int i = entry.at("i").get<int>();
        int k = entry.at("j").get<int>();
        BracketTerms terms;
        for (const auto& t : entry.at("terms"))
            terms.emplace_back(t.at("k").get<int>(), Rational::parse(t.at("c").get<std::string>()));
        alg->set_bracket(i, k, terms);
    }
    Decomposition dec;
    dec.alg = alg;
    dec.base = j.at("base").get<std::vector<int>>();
    dec.complement = j.at("complement").get<std::vector<int>>();
    for (int b : dec.base)
        if (b < 0 || b >= dim) throw Error("algebra file: base index out of range");
    for (int c : dec.complement)
        if (c < 0 || c >= dim) throw Error("algebra file: complement index out of range");

    auto rep = alg->validate();
    if (!rep.ok()) {
        std::ostringstream os;
        os << "algebra file: structure constants invalid:";
        for (const auto& v : rep.antisymmetry)
            os << " antisymmetry(" << v.i << "," << v.j << "," << v.k << ")";
        for (const auto& v : rep.jacobi)
            os << " jacobi(" << v.i << "," << v.j << "," << v.k << ";" << v.p << ")";
        throw Error(os.str());
    }
    auto red = dec.check_reductive();
    if (!red.ok()) {
        std::ostringstream os;
        os << "algebra file: decomposition not reductive:";
        for (const auto& v : red.violations)
            os << " " << v.kind << "(" << v.i << "," << v.j << "->" << v.k << ")";
        throw Error(os.str());
    }
    return {alg, dec};
}

json rmatrix_to_json(const DynamicalR& r, const std::string& algebra_ref) {
    json j;
    j["algebra"] = algebra_ref;
    json terms = json::array();
    for (const auto& [t, c] : r.r.terms()) {
        if (t.size() != 2) throw Error("r-matrix must be a bivector");
        terms.push_back({{"i", t[0]}, {"j", t[1]}, {"coeff", c.str()}});
    }
    j["terms"] = terms;
    return j;
}

DynamicalR rmatrix_from_json(const json& j, const Decomposition& dec) {
    DynamicalR out{dec, Multivector(dec.alg)};
    int l = dec.base_dim();
    for (const auto& t : j.at("terms")) {
        int i = t.at("i").get<int>();
        int k = t.at("j").get<int>();
        ScalarExpr c = parse_expr(t.at("coeff").get<std::string>(), l);
        out.r.add_term({i, k}, c);
    }
    return out;
}

json twist_to_json(const DynTensor& t) {
    json j;
    j["arity"] = t.arity();
    j["truncation"] = t.trunc();
    json terms = json::array();
    const LieAlgebra& g = *t.context()->g;
    for (int k = 0; k <= t.trunc(); ++k) {
        for (const auto& [legs, c] : t.order(k)) {
            json legs_json = json::array();
            for (const Word& w : legs) {
                json word = json::array();
                for (int idx : w) word.push_back(g.label(idx));
                legs_json.push_back(word);
            }
            terms.push_back({{"hbar", k}, {"coeff", c.str()}, {"legs", legs_json}});
        }
    }
    j["terms"] = terms;
    return j;
}

DynTensor twist_from_json(const json& j, const QContextPtr& ctx) {
    int arity = j.at("arity").get<int>();
    DynTensor out(ctx, arity);
    int l = ctx->dec.base_dim();
    const LieAlgebra& g = *ctx->g;
    for (const auto& t : j.at("terms")) {
        int k = t.at("hbar").get<int>();
        if (k < 0) throw Error("twist file: negative hbar order");
        if (k > ctx->trunc) continue; // beyond the working truncation
        ScalarExpr c = parse_expr(t.at("coeff").get<std::string>(), l);
        const auto& legs_json = t.at("legs");
        if (static_cast<int>(legs_json.size()) != arity) throw Error("twist file: leg count mismatch");
        LegTuple legs;
        for (const auto& word_json : legs_json) {
            Word w;
            for (const auto& lab : word_json) {
                int idx = g.index_of(lab.get<std::string>());
                if (idx < 0) throw UnknownName(lab.get<std::string>());
                w.push_back(idx);
            }
            legs.push_back(std::move(w));
        }
        out.add_term(k, legs, c);
    }
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // convert the byte offset into line/column
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        int line = 1, col = 1;
        for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

std::string fnv1a_hex(const std::string& content) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace dynrmat
