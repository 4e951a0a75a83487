#include "owlet/group.hpp"

#include <algorithm>
#include <sstream>

namespace owlet::groups {

namespace {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

GroupDescriptor GroupDescriptor::int_lattice(int d) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    GroupDescriptor g;
    g.kind = GroupKind::IntLattice;
    g.dim = d;
    return g;
}

GroupDescriptor GroupDescriptor::real_vector(int d) {
    if (d < 1) throw std::invalid_argument("vector dimension must be >= 1");
    GroupDescriptor g;
    g.kind = GroupKind::RealVector;
    g.dim = d;
    return g;
}

GroupDescriptor GroupDescriptor::heisenberg() {
    GroupDescriptor g;
    g.kind = GroupKind::HeisenbergInt;
    g.dim = 3;
    return g;
}

GroupDescriptor GroupDescriptor::padic(long long p, int precision) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    GroupDescriptor g;
    g.kind = GroupKind::PadicTruncated;
    g.prime = p;
    g.precision = precision;
    return g;
}

GroupDescriptor GroupDescriptor::product(std::vector<GroupDescriptor> fs) {
    if (fs.size() < 2) throw std::invalid_argument("product needs at least 2 factors");
    for (const auto& f : fs)
        if (f.kind == GroupKind::Product)
            throw std::invalid_argument("product factors must be flattened");
    GroupDescriptor g;
    g.kind = GroupKind::Product;
    g.factors = std::move(fs);
    return g;
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case GroupKind::IntLattice:
        case GroupKind::RealVector: return dim == o.dim;
        case GroupKind::HeisenbergInt: return true;
        case GroupKind::PadicTruncated: return prime == o.prime && precision == o.precision;
        case GroupKind::Product: return factors == o.factors;
    }
    return false;
}

bool GroupDescriptor::is_discrete() const {
    switch (kind) {
        case GroupKind::IntLattice:
        case GroupKind::HeisenbergInt: return true;
        case GroupKind::RealVector:
        case GroupKind::PadicTruncated: return false;
        case GroupKind::Product:
            return std::all_of(factors.begin(), factors.end(),
                               [](const GroupDescriptor& f) { return f.is_discrete(); });
    }
    return false;
}

std::string GroupDescriptor::str() const {
    switch (kind) {
        case GroupKind::IntLattice: return "Z^" + std::to_string(dim);
        case GroupKind::RealVector: return "R^" + std::to_string(dim);
        case GroupKind::HeisenbergInt: return "H3(Z)";
        case GroupKind::PadicTruncated:
            return "Q_" + std::to_string(prime) + "[depth " + std::to_string(precision) + "]";
        case GroupKind::Product: {
            std::string s;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) s += " x ";
                s += factors[i].str();
            }
            return s;
        }
    }
    return "?";
}

GroupElement make_int_element(std::vector<long long> coords) {
    GroupElement e;
    e.value = std::move(coords);
    return e;
}

GroupElement make_rat_element(std::vector<Rational> coords) {
    GroupElement e;
    e.value = std::move(coords);
    return e;
}

GroupElement make_heis_element(long long a, long long b, long long c) {
    GroupElement e;
    e.value = HeisTriple{a, b, c};
    return e;
}

GroupElement make_padic_element(const GroupDescriptor& g, Rational value) {
    if (g.kind != GroupKind::PadicTruncated)
        throw std::invalid_argument("descriptor is not p-adic");
    BigInt den = denominator(value);
    BigInt p(g.prime);
    int k = 0;
    while (den % p == 0) { den /= p; ++k; }
    if (den != 1)
        throw std::invalid_argument("p-adic value must have denominator a power of " +
                                    std::to_string(g.prime) + ": " + rat_str(value));
    if (k > g.precision)
        throw std::domain_error("p-adic value exceeds valuation precision " +
                                std::to_string(g.precision) + ": " + rat_str(value));
    GroupElement e;
    e.value = PadicValue{std::move(value)};
    return e;
}

GroupElement make_tuple_element(ElementTuple parts) {
    GroupElement e;
    e.value = std::move(parts);
    return e;
}

GroupElement identity(const GroupDescriptor& g) {
    switch (g.kind) {
        case GroupKind::IntLattice: return make_int_element(std::vector<long long>(g.dim, 0));
        case GroupKind::RealVector: return make_rat_element(std::vector<Rational>(g.dim, Rational(0)));
        case GroupKind::HeisenbergInt: return make_heis_element(0, 0, 0);
        case GroupKind::PadicTruncated: return make_padic_element(g, Rational(0));
        case GroupKind::Product: {
            ElementTuple t;
            t.reserve(g.factors.size());
            for (const auto& f : g.factors) t.push_back(identity(f));
            return make_tuple_element(t);
        }
    }
    throw std::logic_error("unreachable");
}

GroupElement op(const GroupDescriptor& g, const GroupElement& x, const GroupElement& y) {
    switch (g.kind) {
        case GroupKind::IntLattice: {
            const auto& a = x.ints();
            const auto& b = y.ints();
            std::vector<long long> r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
            return make_int_element(std::move(r));
        }
        case GroupKind::RealVector: {
            const auto& a = x.rats();
            const auto& b = y.rats();
            std::vector<Rational> r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
            return make_rat_element(std::move(r));
        }
        case GroupKind::HeisenbergInt: {
            const auto& u = x.heis();
            const auto& v = y.heis();
            return make_heis_element(u.a + v.a, u.b + v.b, u.c + v.c + u.a * v.b);
        }
        case GroupKind::PadicTruncated:
            return make_padic_element(g, x.padic() + y.padic());
        case GroupKind::Product: {
            const auto& a = x.tuple();
            const auto& b = y.tuple();
            ElementTuple t;
            t.reserve(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) t.push_back(op(g.factors[i], a[i], b[i]));
            return make_tuple_element(t);
        }
    }
    throw std::logic_error("unreachable");
}

GroupElement inverse(const GroupDescriptor& g, const GroupElement& x) {
    switch (g.kind) {
        case GroupKind::IntLattice: {
            auto r = x.ints();
            for (auto& c : r) c = -c;
            return make_int_element(std::move(r));
        }
        case GroupKind::RealVector: {
            auto r = x.rats();
            for (auto& c : r) c = -c;
            return make_rat_element(std::move(r));
        }
        case GroupKind::HeisenbergInt: {
            const auto& u = x.heis();
            // (a,b,c)^{-1} = (-a,-b,ab-c)
            return make_heis_element(-u.a, -u.b, u.a * u.b - u.c);
        }
        case GroupKind::PadicTruncated:
            return make_padic_element(g, -x.padic());
        case GroupKind::Product: {
            ElementTuple t;
            const auto& a = x.tuple();
            t.reserve(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) t.push_back(inverse(g.factors[i], a[i]));
            return make_tuple_element(t);
        }
    }
    throw std::logic_error("unreachable");
}

int compare(const GroupElement& x, const GroupElement& y) {
    if (x.value.index() != y.value.index())
        return x.value.index() < y.value.index() ? -1 : 1;
    struct Visitor {
        const GroupElement& y;
        int operator()(const std::vector<long long>& a) const {
            const auto& b = y.ints();
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        }
        int operator()(const std::vector<Rational>& a) const {
            const auto& b = y.rats();
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        }
        int operator()(const HeisTriple& a) const {
            const auto& b = y.heis();
            if (a.a != b.a) return a.a < b.a ? -1 : 1;
            if (a.b != b.b) return a.b < b.b ? -1 : 1;
            if (a.c != b.c) return a.c < b.c ? -1 : 1;
            return 0;
        }
        int operator()(const PadicValue& a) const {
            const auto& b = y.padic();
            if (a.value != b) return a.value < b ? -1 : 1;
            return 0;
        }
        int operator()(const ElementTuple& a) const {
            const auto& b = y.tuple();
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (int c = compare(a[i], b[i]); c != 0) return c;
            return 0;
        }
    };
    return std::visit(Visitor{y}, x.value);
}

bool element_less(const GroupElement& x, const GroupElement& y) { return compare(x, y) < 0; }

void validate_element(const GroupDescriptor& g, const GroupElement& x) {
    switch (g.kind) {
        case GroupKind::IntLattice:
            if (!std::holds_alternative<std::vector<long long>>(x.value) ||
                x.ints().size() != static_cast<std::size_t>(g.dim))
                throw std::invalid_argument("element does not belong to " + g.str());
            return;
        case GroupKind::RealVector:
            if (!std::holds_alternative<std::vector<Rational>>(x.value) ||
                x.rats().size() != static_cast<std::size_t>(g.dim))
                throw std::invalid_argument("element does not belong to " + g.str());
            return;
        case GroupKind::HeisenbergInt:
            if (!std::holds_alternative<HeisTriple>(x.value))
                throw std::invalid_argument("element does not belong to " + g.str());
            return;
        case GroupKind::PadicTruncated:
            if (!std::holds_alternative<PadicValue>(x.value))
                throw std::invalid_argument("element does not belong to " + g.str());
            make_padic_element(g, x.padic());  // re-checks precision
            return;
        case GroupKind::Product: {
            if (!std::holds_alternative<ElementTuple>(x.value) ||
                x.tuple().size() != g.factors.size())
                throw std::invalid_argument("element does not belong to " + g.str());
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                validate_element(g.factors[i], x.tuple()[i]);
            return;
        }
    }
}

std::string element_str(const GroupElement& x) {
    struct Visitor {
        std::string operator()(const std::vector<long long>& a) const {
            std::string s = "(";
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(a[i]);
            }
            return s + ")";
        }
        std::string operator()(const std::vector<Rational>& a) const {
            std::string s = "(";
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) s += ",";
                s += rat_str(a[i]);
            }
            return s + ")";
        }
        std::string operator()(const HeisTriple& a) const {
            return "(" + std::to_string(a.a) + "," + std::to_string(a.b) + "," +
                   std::to_string(a.c) + ")";
        }
        std::string operator()(const PadicValue& a) const { return rat_str(a.value); }
        std::string operator()(const ElementTuple& a) const {
            std::string s = "(";
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) s += "; ";
                s += element_str(a[i]);
            }
            return s + ")";
        }
    };
    return std::visit(Visitor{}, x.value);
}

FiniteSet FiniteSet::make(GroupDescriptor g, std::vector<GroupElement> elems) {
    for (const auto& e : elems) validate_element(g, e);
    std::sort(elems.begin(), elems.end(), element_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    FiniteSet s;
    s.group = std::move(g);
    s.elements = std::move(elems);
    return s;
}

bool FiniteSet::contains(const GroupElement& x) const {
    return std::binary_search(elements.begin(), elements.end(), x, element_less);
}

bool FiniteSet::subset_of(const FiniteSet& other) const {
    for (const auto& e : elements)
        if (!other.contains(e)) return false;
    return true;
}

FiniteSet minkowski(const FiniteSet& A, const FiniteSet& B) {
    if (!(A.group == B.group))
        throw std::invalid_argument("minkowski: group mismatch between " + A.group.str() +
                                    " and " + B.group.str());
    std::vector<GroupElement> out;
    out.reserve(A.size() * B.size());
    for (const auto& a : A.elements)
        for (const auto& b : B.elements) out.push_back(op(A.group, a, b));
    return FiniteSet::make(A.group, std::move(out));
}

FiniteSet minkowski_inverse(const FiniteSet& A) {
    std::vector<GroupElement> out;
    out.reserve(A.size());
    for (const auto& a : A.elements) out.push_back(inverse(A.group, a));
    return FiniteSet::make(A.group, std::move(out));
}

FiniteSet interval_set(long long lo, long long hi) {
    std::vector<GroupElement> v;
    for (long long x = lo; x <= hi; ++x) v.push_back(make_int_element({x}));
    return FiniteSet::make(GroupDescriptor::int_lattice(1), std::move(v));
}

FiniteSet grid_set(int d, long long lo, long long hi) {
    std::vector<GroupElement> v;
    std::vector<long long> cur(d, lo);
    while (true) {
        v.push_back(make_int_element(cur));
        int i = d - 1;
        while (i >= 0 && cur[i] == hi) cur[i--] = lo;
        if (i < 0) break;
        ++cur[i];
    }
    return FiniteSet::make(GroupDescriptor::int_lattice(d), std::move(v));
}

FiniteSet singleton(const GroupDescriptor& g, GroupElement x) {
    return FiniteSet::make(g, {std::move(x)});
}

}  // namespace owlet::groups
