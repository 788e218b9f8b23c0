#include "specseq/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace specseq {

namespace {

/* Tokenizer for polynomial text: identifiers, integers, and the symbols
 * + - * ^ /.  Whitespace separates tokens and is otherwise ignored. */
struct Lexer {
    std::string text;
    size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool done() {
        skip();
        return pos >= text.size();
    }
    char peek() {
        skip();
        return text[pos];
    }
    bool eat(char c) {
        if (!done() && peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '\''))
            ++pos;
        return text.substr(start, pos - start);
    }
    long integer() {
        skip();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            throw parse_error("expected a number at position " + std::to_string(start) + " in '" +
                              text + "'");
        return std::stol(text.substr(start, pos - start));
    }
};

} // namespace

HomogeneousPoly parse_polynomial(Field f, const std::vector<std::string>& vars,
                                 const std::vector<int>& weights, const std::string& text) {
    auto var_index = [&](const std::string& name) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name)
                return static_cast<int>(i);
        throw parse_error("unknown variable '" + name + "' in '" + text + "'");
    };

    Lexer lx{text};
    if (lx.done())
        throw parse_error("empty polynomial");

    struct Term {
        Scalar coeff;
        std::vector<int> exps;
        int weight;
    };
    std::vector<Term> terms;

    bool first = true;
    while (!lx.done()) {
        Scalar sign = Scalar::one(f);
        if (lx.eat('+')) {
            // explicit plus
        } else if (lx.eat('-')) {
            sign = -sign;
        } else if (!first) {
            throw parse_error("expected + or - at position " + std::to_string(lx.pos) + " in '" +
                              text + "'");
        }
        first = false;

        Scalar coeff = sign;
        std::vector<int> exps(vars.size(), 0);
        bool saw_factor = false;
        for (;;) {
            if (lx.done())
                break;
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                long num = lx.integer();
                if (lx.eat('/')) {
                    long den = lx.integer();
                    if (den == 0)
                        throw parse_error("zero denominator in '" + text + "'");
                    coeff = coeff * Scalar(f, num) / Scalar(f, den);
                } else {
                    coeff = coeff * Scalar(f, num);
                }
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                int v = var_index(lx.ident());
                int e = 1;
                if (lx.eat('^'))
                    e = static_cast<int>(lx.integer());
                if (e < 0)
                    throw parse_error("negative exponent in '" + text + "'");
                exps[static_cast<size_t>(v)] += e;
            } else {
                throw parse_error(std::string("unexpected character '") + c + "' in '" + text +
                                  "'");
            }
            saw_factor = true;
            if (!lx.eat('*'))
                break;
        }
        if (!saw_factor)
            throw parse_error("empty term in '" + text + "'");
        int w = 0;
        for (size_t i = 0; i < exps.size(); ++i)
            w += exps[i] * weights[i];
        terms.push_back({coeff, std::move(exps), w});
    }

    int degree = terms.front().weight;
    for (const auto& t : terms)
        if (t.weight != degree)
            throw invariant_error("polynomial '" + text + "' mixes weights " +
                                  std::to_string(degree) + " and " + std::to_string(t.weight));
    HomogeneousPoly p(f, weights, degree);
    for (const auto& t : terms)
        p.add_term(t.exps, t.coeff);
    return p;
}

GradedAlgebraPresentation::GradedAlgebraPresentation(Field f, std::vector<std::string> vars,
                                                     std::vector<int> weights,
                                                     std::vector<HomogeneousPoly> relations)
    : fld_(f), vars_(std::move(vars)), weights_(std::move(weights)),
      relations_(std::move(relations)) {
    if (vars_.size() != weights_.size())
        throw invariant_error("algebra presentation: variable and weight counts differ");
    std::set<std::string> seen(vars_.begin(), vars_.end());
    if (seen.size() != vars_.size())
        throw invariant_error("algebra presentation: duplicate variable names");
    for (int w : weights_)
        if (w < 1)
            throw invariant_error("algebra presentation: weights must be at least 1");
    for (const auto& r : relations_) {
        require_same_field(fld_, r.field(), "algebra presentation");
        if (r.weights() != weights_)
            throw invariant_error("algebra presentation: relation from a different ring");
        if (r.is_zero())
            throw invariant_error("algebra presentation: zero relation");
        if (r.degree() == 0)
            throw invariant_error("algebra presentation: a weight-0 relation collapses the ring");
    }
}

GradedAlgebraPresentation GradedAlgebraPresentation::parse(
    Field f, const std::vector<std::pair<std::string, int>>& vars,
    const std::vector<std::string>& relations) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (const auto& [n, w] : vars) {
        names.push_back(n);
        weights.push_back(w);
    }
    std::vector<HomogeneousPoly> rels;
    for (const auto& text : relations)
        rels.push_back(parse_polynomial(f, names, weights, text));
    return GradedAlgebraPresentation(f, std::move(names), std::move(weights), std::move(rels));
}

GradedAlgebraPresentation GradedAlgebraPresentation::free_ring(Field f,
                                                               std::vector<std::string> vars,
                                                               std::vector<int> weights) {
    return GradedAlgebraPresentation(f, std::move(vars), std::move(weights), {});
}

int GradedAlgebraPresentation::dim(int d) const { return piece(d).dim(); }

const Subquotient& GradedAlgebraPresentation::piece(int d) const {
    auto it = cache_.find(d);
    if (it == cache_.end()) {
        int ambient = static_cast<int>(weighted_monomials(weights_, d).size());
        it = cache_
                 .emplace(d, Subquotient(Subspace::full(fld_, ambient), ideal_piece(d)))
                 .first;
    }
    return it->second;
}

Subspace GradedAlgebraPresentation::ideal_piece(int d) const {
    if (relations_.empty())
        return Subspace(fld_, static_cast<int>(weighted_monomials(weights_, d).size()));
    return power_ideal_piece(fld_, weights_, relations_, 1, d);
}

Matrix GradedAlgebraPresentation::reduce(const HomogeneousPoly& p) const {
    require_same_field(fld_, p.field(), "algebra reduce");
    if (p.weights() != weights_)
        throw invariant_error("algebra reduce: polynomial from a different ring");
    return piece(p.degree()).coords(p.coordinates());
}

Matrix GradedAlgebraPresentation::multiplication(const HomogeneousPoly& p, int d) const {
    const Subquotient& src = piece(d);
    const Subquotient& dst = piece(d + p.degree());
    return dst.coords(multiplication_matrix(p, d) * src.coset_basis().transpose());
}

HomogeneousPoly GradedAlgebraPresentation::representative(int d, int i) const {
    auto mons = weighted_monomials(weights_, d);
    Matrix basis = piece(d).coset_basis();
    HomogeneousPoly out(fld_, weights_, d);
    for (size_t m = 0; m < mons.size(); ++m) {
        Scalar c = basis.at(i, static_cast<int>(m));
        if (!c.is_zero())
            out.add_term(mons[m], c);
    }
    return out;
}

bool GradedAlgebraPresentation::same_ring_as(const GradedAlgebraPresentation& o) const {
    return fld_ == o.fld_ && vars_ == o.vars_ && weights_ == o.weights_;
}

bool GradedAlgebraPresentation::quotient_of(const GradedAlgebraPresentation& o,
                                            int degree_bound) const {
    if (fld_ != o.fld_ || vars_ != o.vars_ || weights_ != o.weights_)
        return false;
    for (int d = 0; d <= degree_bound; ++d)
        if (!ideal_piece(d).contains(o.ideal_piece(d)))
            return false;
    return true;
}

} // namespace specseq
