#include <algorithm>
#include <cctype>

#include "dynrmat/errors.hpp"
#include "dynrmat/lie_algebra.hpp"

namespace dynrmat {

namespace {

BuiltinAlgebra make_sl2() {
    auto alg = std::make_shared<LieAlgebra>(3, std::vector<std::string>{"h", "e", "f"});
    alg->set_bracket(0, 1, {{1, Rational(2)}});  // [h,e] = 2e
    alg->set_bracket(0, 2, {{2, Rational(-2)}}); // [h,f] = -2f
    alg->set_bracket(1, 2, {{0, Rational(1)}});  // [e,f] = h
    Decomposition dec{alg, {0}, {1, 2}};
    return {alg, dec};
}

// Chevalley basis of sl3 realized by elementary matrices:
//   e1=E12, e2=E23, e3=E13, f1=E21, f2=E32, f3=E31, h1=E11-E22, h2=E22-E33.
// Pairings [e_a, f_a] give the coroots h1, h2, h1+h2.
LieAlgebraPtr make_sl3_algebra() {
    auto alg = std::make_shared<LieAlgebra>(
        8, std::vector<std::string>{"h1", "h2", "e1", "e2", "e3", "f1", "f2", "f3"});
    const int h1 = 0, h2 = 1, e1 = 2, e2 = 3, e3 = 4, f1 = 5, f2 = 6, f3 = 7;
    auto one = Rational(1);
    alg->set_bracket(h1, e1, {{e1, Rational(2)}});
    alg->set_bracket(h1, e2, {{e2, Rational(-1)}});
    alg->set_bracket(h1, e3, {{e3, one}});
    alg->set_bracket(h2, e1, {{e1, Rational(-1)}});
    alg->set_bracket(h2, e2, {{e2, Rational(2)}});
    alg->set_bracket(h2, e3, {{e3, one}});
    alg->set_bracket(h1, f1, {{f1, Rational(-2)}});
    alg->set_bracket(h1, f2, {{f2, one}});
    alg->set_bracket(h1, f3, {{f3, Rational(-1)}});
    alg->set_bracket(h2, f1, {{f1, one}});
    alg->set_bracket(h2, f2, {{f2, Rational(-2)}});
    alg->set_bracket(h2, f3, {{f3, Rational(-1)}});
    alg->set_bracket(e1, e2, {{e3, one}});
    alg->set_bracket(f1, f2, {{f3, Rational(-1)}});
    alg->set_bracket(e1, f1, {{h1, one}});
    alg->set_bracket(e2, f2, {{h2, one}});
    alg->set_bracket(e3, f3, {{h1, one}, {h2, one}});
    alg->set_bracket(e1, f3, {{f2, Rational(-1)}});
    alg->set_bracket(e2, f3, {{f1, one}});
    alg->set_bracket(e3, f1, {{e2, Rational(-1)}});
    alg->set_bracket(e3, f2, {{e1, one}});
    return alg;
}

BuiltinAlgebra make_sl3() {
    auto alg = make_sl3_algebra();
    Decomposition dec{alg, {0, 1}, {2, 3, 4, 5, 6, 7}};
    return {alg, dec};
}

// 2(m+n)+1 dimensional Heisenberg algebra, [p_i, q_i] = c. The base h is the
// Heisenberg subalgebra spanned by {p_{m+i}, q_{m+i}, c; i = 1..n}, the
// complement m is spanned by {p_i, q_i; i = 1..m}.
BuiltinAlgebra make_heisenberg(int m, int n) {
    if (m <= 0 || n <= 0) throw Error("heisenberg(m,n) needs positive m, n");
    int half = m + n;
    std::vector<std::string> labels;
    for (int i = 1; i <= half; ++i) labels.push_back("p" + std::to_string(i));
    for (int i = 1; i <= half; ++i) labels.push_back("q" + std::to_string(i));
    labels.push_back("c");
    auto alg = std::make_shared<LieAlgebra>(2 * half + 1, std::move(labels));
    int c = 2 * half;
    for (int i = 0; i < half; ++i) alg->set_bracket(i, half + i, {{c, Rational(1)}});
    Decomposition dec{alg, {}, {}};
    for (int i = m; i < half; ++i) dec.base.push_back(i);
    for (int i = m; i < half; ++i) dec.base.push_back(half + i);
    dec.base.push_back(c);
    for (int i = 0; i < m; ++i) dec.complement.push_back(i);
    for (int i = 0; i < m; ++i) dec.complement.push_back(half + i);
    std::sort(dec.base.begin(), dec.base.end());
    std::sort(dec.complement.begin(), dec.complement.end());
    dec.alg = alg;
    return {alg, dec};
}

BuiltinAlgebra make_abelian(int n) {
    if (n <= 0) throw Error("abelian(n) needs positive n");
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    auto alg = std::make_shared<LieAlgebra>(n, std::move(labels));
    Decomposition dec{alg, {}, {}};
    for (int i = 0; i < n; ++i) dec.base.push_back(i);
    return {alg, dec};
}

bool parse_two_ints(const std::string& name, const std::string& head, int& a, int& b) {
    if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return false;
    std::string args = name.substr(head.size() + 1, name.size() - head.size() - 2);
    auto comma = args.find(',');
    if (comma == std::string::npos) return false;
    try {
        a = std::stoi(args.substr(0, comma));
        b = std::stoi(args.substr(comma + 1));
    } catch (...) {
        return false;
    }
    return true;
}

bool parse_one_int(const std::string& name, const std::string& head, int& a) {
    if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return false;
    try {
        a = std::stoi(name.substr(head.size() + 1, name.size() - head.size() - 2));
    } catch (...) {
        return false;
    }
    return true;
}

} // namespace

BuiltinAlgebra builtin(const std::string& name) {
    if (name == "sl2") return make_sl2();
    if (name == "sl3") return make_sl3();
    int a = 0, b = 0;
    if (parse_two_ints(name, "heisenberg", a, b)) return make_heisenberg(a, b);
    if (parse_one_int(name, "abelian", a)) return make_abelian(a);
    throw UnknownName(name);
}

BuiltinAlgebra sl3_reductive_base(int root) {
    if (root < 1 || root > 3) throw Error("sl3 root index must be 1, 2 or 3");
    auto alg = make_sl3_algebra();
    int e = 1 + root, f = 4 + root;
    Decomposition dec{alg, {0, 1, e, f}, {}};
    for (int i = 2; i < 8; ++i)
        if (i != e && i != f) dec.complement.push_back(i);
    std::sort(dec.base.begin(), dec.base.end());
    return {alg, dec};
}

} // namespace dynrmat
