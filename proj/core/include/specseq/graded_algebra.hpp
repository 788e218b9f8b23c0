#pragma once

#include <map>
#include <string>
#include <vector>

#include "specseq/multilinear.hpp"

namespace specseq {

/* Parse a homogeneous polynomial like "x^2 - 3*x*y + 1/2*z^2" over the
 * given variables.  Every term must have the same total weight; throws
 * parse_error on malformed input and invariant_error on mixed weights. */
HomogeneousPoly parse_polynomial(Field f, const std::vector<std::string>& vars,
                                 const std::vector<int>& weights, const std::string& text);

/* A graded quotient of a weighted polynomial ring, R = k[x_1..x_m]/(rels),
 * realized one internal degree at a time: the degree-d piece is the span
 * of monomials modulo the degree-d slice of the relation ideal.  All
 * methods are exact for any degree they are asked about. */
class GradedAlgebraPresentation {
public:
    GradedAlgebraPresentation(Field f, std::vector<std::string> vars, std::vector<int> weights,
                              std::vector<HomogeneousPoly> relations);
    static GradedAlgebraPresentation parse(Field f,
                                           const std::vector<std::pair<std::string, int>>& vars,
                                           const std::vector<std::string>& relations);
    /* the polynomial ring itself */
    static GradedAlgebraPresentation free_ring(Field f, std::vector<std::string> vars,
                                               std::vector<int> weights);

    const Field& field() const { return fld_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::vector<HomogeneousPoly>& relations() const { return relations_; }

    int dim(int d) const;
    /* degree-d piece in coset coordinates over the monomial basis */
    const Subquotient& piece(int d) const;
    /* degree-d slice of the relation ideal, in monomial coordinates */
    Subspace ideal_piece(int d) const;

    /* class of p in piece(deg p) coordinates, as a column */
    Matrix reduce(const HomogeneousPoly& p) const;
    /* multiplication by the class of p, from piece(d) to piece(d + deg p) */
    Matrix multiplication(const HomogeneousPoly& p, int d) const;
    /* a polynomial representative of the i-th basis coset of piece(d) */
    HomogeneousPoly representative(int d, int i) const;

    bool same_ring_as(const GradedAlgebraPresentation& o) const;
    /* is this algebra a quotient of o — does our relation ideal contain
     * o's, degreewise up to the bound? */
    bool quotient_of(const GradedAlgebraPresentation& o, int degree_bound) const;

private:
    Field fld_;
    std::vector<std::string> vars_;
    std::vector<int> weights_;
    std::vector<HomogeneousPoly> relations_;
    mutable std::map<int, Subquotient> cache_;
};

} // namespace specseq
