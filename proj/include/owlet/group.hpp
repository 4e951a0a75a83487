#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "owlet/rational.hpp"

namespace owlet::groups {

enum class GroupKind { IntLattice, RealVector, HeisenbergInt, PadicTruncated, Product };

/// Describes one of the supported groups: Z^d, R^d (rational coordinates),
/// H3(Z), truncated Q_p, or a flattened product of these.
struct GroupDescriptor {
    GroupKind kind = GroupKind::IntLattice;
    int dim = 1;                            // IntLattice / RealVector
    long long prime = 2;                    // PadicTruncated
    int precision = 1;                      // PadicTruncated: valuation-depth cutoff
    std::vector<GroupDescriptor> factors;   // Product, flattened, size >= 2

    static GroupDescriptor int_lattice(int d);
    static GroupDescriptor real_vector(int d);
    static GroupDescriptor heisenberg();
    static GroupDescriptor padic(long long p, int precision);
    static GroupDescriptor product(std::vector<GroupDescriptor> fs);

    bool operator==(const GroupDescriptor& o) const;
    bool is_discrete() const;
    std::string str() const;
};

/// Heisenberg triple (a,b,c), multiplication (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b').
struct HeisTriple {
    long long a = 0, b = 0, c = 0;
    bool operator==(const HeisTriple&) const = default;
};

/// p-adic rational a*p^{-k} in lowest form; the descriptor bounds k.
struct PadicValue {
    Rational value;
    bool operator==(const PadicValue&) const = default;
};

struct GroupElement;
using ElementTuple = std::vector<GroupElement>;

struct GroupElement {
    std::variant<std::vector<long long>,   // IntLattice
                 std::vector<Rational>,    // RealVector
                 HeisTriple,               // HeisenbergInt
                 PadicValue,               // PadicTruncated
                 ElementTuple>             // Product
        value;

    bool operator==(const GroupElement& o) const { return value == o.value; }
    const std::vector<long long>& ints() const { return std::get<std::vector<long long>>(value); }
    const std::vector<Rational>& rats() const { return std::get<std::vector<Rational>>(value); }
    const HeisTriple& heis() const { return std::get<HeisTriple>(value); }
    const Rational& padic() const { return std::get<PadicValue>(value).value; }
    const ElementTuple& tuple() const { return std::get<ElementTuple>(value); }
};

GroupElement make_int_element(std::vector<long long> coords);
GroupElement make_rat_element(std::vector<Rational> coords);
GroupElement make_heis_element(long long a, long long b, long long c);
GroupElement make_padic_element(const GroupDescriptor& g, Rational value);
GroupElement make_tuple_element(ElementTuple parts);

GroupElement identity(const GroupDescriptor& g);
GroupElement op(const GroupDescriptor& g, const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupDescriptor& g, const GroupElement& x);

/// Total order used for canonical sorting; consistent across runs.
int compare(const GroupElement& x, const GroupElement& y);
bool element_less(const GroupElement& x, const GroupElement& y);

/// Throws if the element does not belong to the described group.
void validate_element(const GroupDescriptor& g, const GroupElement& x);

std::string element_str(const GroupElement& x);

/// Sorted duplicate-free finite subset of a group.
struct FiniteSet {
    GroupDescriptor group;
    std::vector<GroupElement> elements;

    static FiniteSet make(GroupDescriptor g, std::vector<GroupElement> elems);
    std::size_t size() const { return elements.size(); }
    bool contains(const GroupElement& x) const;
    bool subset_of(const FiniteSet& other) const;
    bool operator==(const FiniteSet& o) const { return group == o.group && elements == o.elements; }
};

/// Minkowski product {xy : x in A, y in B}; groups must match.
FiniteSet minkowski(const FiniteSet& A, const FiniteSet& B);
FiniteSet minkowski_inverse(const FiniteSet& A);

/// Convenience constructors for Z^d subsets.
FiniteSet interval_set(long long lo, long long hi);                 // {lo..hi} in Z
FiniteSet grid_set(int d, long long lo, long long hi);              // {lo..hi}^d in Z^d
FiniteSet singleton(const GroupDescriptor& g, GroupElement x);

}  // namespace owlet::groups
