#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uw {

// Letters are +-(g+1) for generator g; words are kept freely reduced.
using Word = std::vector<int>;

Word reduce(Word w);
Word cyclic_reduce(Word w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
std::string word_string(const Word& w);  // a, A, b, B, ...
Word parse_word(const std::string& s);

// Group elements for the two kinds of deck groups we can compute with:
// free groups (reduced words) and finitely generated abelian groups
// (exponent vectors reduced modulo a relation lattice in Hermite normal form).
class Group {
public:
    enum class Kind { Free, Abelian };
    using Element = std::vector<std::int64_t>;

    static Group free(int rank);
    // relations: rows of integer vectors of length rank
    static Group abelian(int rank, const std::vector<Element>& relations);

    Kind kind() const { return kind_; }
    int rank() const { return rank_; }
    bool is_trivial() const;
    bool is_finite() const;
    // order for finite groups, 0 when infinite
    std::int64_t order() const;
    // free rank of the abelian group (or free rank for free groups)
    int free_rank() const;
    const std::vector<Element>& lattice() const { return hnf_; }

    Element identity() const;
    Element generator(int g, bool inverse = false) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element pow(const Element& a, std::int64_t n) const;
    bool is_identity(const Element& a) const;
    Element from_word(const Word& w) const;
    std::string key(const Element& a) const;   // canonical, for hashing
    std::string format(const Element& a) const;  // word form
    // smallest n >= 1 with a^n = e, or 0 when a has infinite order
    std::int64_t element_order(const Element& a) const;
    // Canonical label of the coset a<c>.
    std::string coset_key(const Element& a, const Element& c) const;
    // Image of a in the abelianisation, as an integer vector (Free: exponent sums).
    Element abelianise(const Element& a) const;

private:
    Element normal(Element v) const;

    Kind kind_ = Kind::Free;
    int rank_ = 0;
    std::vector<Element> hnf_;  // abelian relation lattice, row-style HNF
};

// Row-style Hermite normal form of an integer matrix (rows = generators of a lattice).
std::vector<Group::Element> hermite_normal_form(std::vector<Group::Element> rows, int cols);

}  // namespace uw
