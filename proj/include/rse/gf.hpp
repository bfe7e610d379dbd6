#pragma once

// GF(2^m) arithmetic, 2 <= m <= 32, polynomial basis packed into one word
// (bit i = coefficient of x^i). Multiplication is offered on two independent
// routes: a bit-serial reference (shift-and-reduce against P(x)) and the
// production matrix-form multiplier, which realizes C = Z(A)·B through the
// precomputed Q-matrix (row i = x^(m+i) mod P(x)). The two routes share no
// reduction machinery, so each acts as an oracle for the other.

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rse {

// Field element value. Only the low m bits are meaningful.
using Elem = std::uint32_t;

// Instrumentation sink, explicitly passed (never global/thread-shared).
struct OpCounts {
    std::uint64_t mul = 0;
    std::uint64_t inv = 0;

    OpCounts& operator+=(const OpCounts& o) {
        mul += o.mul;
        inv += o.inv;
        return *this;
    }
};

// Rows of the reduction matrix: row i holds x^(m+i) mod P(x) as an m-bit
// vector, i = 0..m-2.
struct QMatrix {
    std::array<std::uint32_t, 31> rows{};
    int count = 0;

    std::uint32_t row(int i) const { return rows[static_cast<std::size_t>(i)]; }
};

// Dense m x m bit matrix for a fixed left operand A: entry(i, j) = f_ij(A),
// stored column-wise (column j packed into one word, bit i = f_ij).
struct ZMatrix {
    std::array<std::uint32_t, 32> cols{};
    int m = 0;

    int entry(int i, int j) const { return (cols[static_cast<std::size_t>(j)] >> i) & 1; }

    // mod-2 matrix-vector product: C = Z·B
    Elem apply(Elem b) const {
        std::uint32_t c = 0;
        for (int j = 0; j < m; ++j)
            c ^= cols[static_cast<std::size_t>(j)] & static_cast<std::uint32_t>(-static_cast<std::int32_t>((b >> j) & 1));
        return c;
    }
};

// Combinational-cost proxy for one matrix-form multiplier: number of
// two-input XORs in the flattened sum-of-products per output bit, plus the
// depth of a balanced XOR tree over the widest output bit.
struct MulCostReport {
    std::uint64_t xor_term_count = 0;
    int depth_estimate = 0;

    bool operator==(const MulCostReport&) const = default;
};

enum class Primitivity { kPrimitive, kNotPrimitive, kUnchecked };

/// A GF(2^m) instance: degree, defining polynomial, precomputed Q-matrix.
/// Immutable after construction and freely shareable across threads.
class Field {
public:
    // poly_mask: (m+1)-bit coefficient mask of P(x), bit i = coeff of x^i.
    // Requires 2 <= m <= 32 and the x^m and constant terms present.
    Field(int degree, std::uint64_t poly_mask)
        : m_(degree), poly_(poly_mask) {
        if (m_ < 2 || m_ > 32)
            throw std::invalid_argument("field degree out of range (need 2 <= m <= 32)");
        const std::uint64_t top = std::uint64_t{1} << m_;
        if ((poly_ & 1) == 0 || (poly_ & top) == 0)
            throw std::invalid_argument("polynomial mask must set the constant and x^m terms");
        if (poly_ >> (m_ + 1) != 0)
            throw std::invalid_argument("polynomial mask has terms above x^m");
        mask_ = static_cast<std::uint32_t>(top - 1);

        // Eq.-style Q construction: row 0 = x^m mod P = P minus its leading
        // term; each next row is one multiply-by-x step with reduction.
        std::uint64_t r = poly_ & mask_;
        q_.count = m_ - 1;
        for (int i = 0; i < m_ - 1; ++i) {
            q_.rows[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(r);
            r <<= 1;
            if (r & top) r ^= poly_;
        }
    }

    // Accepts exponent notation, e.g. {32,31,3,1,0}; degree = max exponent.
    static Field from_exponents(std::span<const int> exponents) {
        if (exponents.empty())
            throw std::invalid_argument("empty exponent list");
        std::uint64_t mask = 0;
        int deg = 0;
        for (int e : exponents) {
            if (e < 0 || e > 32)
                throw std::invalid_argument("polynomial exponent out of range");
            mask |= std::uint64_t{1} << e;
            deg = e > deg ? e : deg;
        }
        return Field(deg, mask);
    }

    int degree() const { return m_; }
    std::uint64_t poly_mask() const { return poly_; }
    std::uint32_t elem_mask() const { return mask_; }
    // multiplicative group order, 2^m - 1
    std::uint64_t order() const { return (std::uint64_t{1} << m_) - 1; }
    const QMatrix& q_matrix() const { return q_; }

    bool contains(Elem a) const { return (a & ~mask_) == 0; }

    static Elem add(Elem a, Elem b) { return a ^ b; }

    /// Reference multiplier: interleaved shift-and-reduce against P(x).
    /// Never consults the Q-matrix; serves as the independent oracle.
    Elem mul_ref(Elem a, Elem b) const {
        std::uint64_t acc = 0;
        const std::uint64_t top = std::uint64_t{1} << m_;
        for (int j = m_ - 1; j >= 0; --j) {
            acc <<= 1;
            if (acc & top) acc ^= poly_;
            if ((b >> j) & 1) acc ^= a;
        }
        return static_cast<Elem>(acc);
    }

    /// Production multiplier: the Z(A)·B product in collapsed form: the
    /// carry-less wide product of A and B followed by one Q-row reduction
    /// per surviving high bit. Column j of Z is A<<j plus Q-row corrections,
    /// so XOR-ing b_j-selected columns regroups into exactly this.
    Elem mul(Elem a, Elem b, OpCounts* ops = nullptr) const {
        if (ops) ++ops->mul;
        std::uint64_t prod = 0;
        std::uint64_t aw = a;
        for (int j = 0; j < m_; ++j) {
            prod ^= aw & static_cast<std::uint64_t>(-static_cast<std::int64_t>((b >> j) & 1));
            aw <<= 1;
        }
        std::uint32_t c = static_cast<std::uint32_t>(prod) & mask_;
        std::uint64_t high = prod >> m_;
        while (high) {
            const int r = std::countr_zero(high);
            c ^= q_.rows[static_cast<std::size_t>(r)];
            high &= high - 1;
        }
        return c;
    }

    /// beta^(2^m - 2) via the square-and-multiply chain (...(b^2 b)^2 b...)^2,
    /// exactly 2m-3 multiplications, all routed through the production core.
    Elem inverse(Elem a, OpCounts* ops = nullptr) const {
        if (a == 0)
            throw std::domain_error("zero has no inverse");
        Elem r = a;
        for (int i = 0; i < m_ - 2; ++i)
            r = mul(mul(r, r, ops), a, ops);
        r = mul(r, r, ops);
        if (ops) ++ops->inv;
        return r;
    }

    Elem pow(Elem a, std::uint64_t exponent, OpCounts* ops = nullptr) const {
        Elem result = 1;
        Elem base = a;
        while (exponent) {
            if (exponent & 1) result = mul(result, base, ops);
            exponent >>= 1;
            if (exponent) base = mul(base, base, ops);
        }
        return result;
    }

    // alpha = x, the generator used for code locators and syndrome roots
    Elem alpha() const { return 2; }
    Elem alpha_pow(std::uint64_t i, OpCounts* ops = nullptr) const { return pow(alpha(), i, ops); }

private:
    int m_;
    std::uint64_t poly_;
    std::uint32_t mask_ = 0;
    QMatrix q_;
};

/// Literal entry-by-entry Z-matrix construction:
///   f_ij = a_i                                        for j = 0
///   f_ij = u[i-j]·a_(i-j) + sum_t q_(j-1-t),i · a_(m-1-t)   for j >= 1
/// with u the unit step including zero. Column-packed: the u-term is A<<j
/// truncated to m bits, each q-sum term toggles a whole Q-row.
inline ZMatrix build_z_matrix(Elem a, const Field& field) {
    const int m = field.degree();
    const QMatrix& q = field.q_matrix();
    ZMatrix z;
    z.m = m;
    z.cols[0] = a;
    for (int j = 1; j < m; ++j) {
        std::uint32_t col = static_cast<std::uint32_t>((std::uint64_t{a} << j)) & field.elem_mask();
        for (int t = 0; t < j; ++t)
            if ((a >> (m - 1 - t)) & 1)
                col ^= q.row(j - 1 - t);
        z.cols[static_cast<std::size_t>(j)] = col;
    }
    return z;
}

/// Exhaustive order-of-x test for m <= 24 (one shift-and-reduce step per
/// power); larger fields are reported unchecked; the shipped GF(2^32)
/// fixture polynomial is a trusted primitive pentanomial.
inline Primitivity check_primitive(const Field& field) {
    if (field.degree() > 24)
        return Primitivity::kUnchecked;
    const std::uint64_t top = std::uint64_t{1} << field.degree();
    const std::uint64_t group = field.order();
    std::uint64_t r = 2;  // x
    std::uint64_t steps = 1;
    while (r != 1) {
        r <<= 1;
        if (r & top) r ^= field.poly_mask();
        if (++steps > group) return Primitivity::kNotPrimitive;
    }
    return steps == group ? Primitivity::kPrimitive : Primitivity::kNotPrimitive;
}

/// Symbolic expansion of C = Z(A)·B over indeterminate a_i, b_j. Each output
/// bit collects product terms a_k·b_j (mod-2 cancellation applied via XOR on
/// index masks); the report counts the XORs needed to sum them and the
/// balanced-tree depth of the widest bit. Deterministic for a given field.
inline MulCostReport xor_cost_estimate(const Field& field) {
    const int m = field.degree();
    const QMatrix& q = field.q_matrix();
    MulCostReport report;
    std::uint64_t max_terms = 0;
    for (int i = 0; i < m; ++i) {
        std::uint64_t terms = 0;
        for (int j = 0; j < m; ++j) {
            // mask over a-indices appearing in f_ij
            std::uint32_t amask = 0;
            if (j == 0) {
                amask = std::uint32_t{1} << i;
            } else {
                if (i >= j) amask = std::uint32_t{1} << (i - j);
                for (int t = 0; t < j; ++t)
                    if ((q.row(j - 1 - t) >> i) & 1)
                        amask ^= std::uint32_t{1} << (m - 1 - t);
            }
            terms += static_cast<std::uint64_t>(std::popcount(amask));
        }
        if (terms > 0) report.xor_term_count += terms - 1;
        max_terms = terms > max_terms ? terms : max_terms;
    }
    report.depth_estimate = max_terms > 1
        ? std::bit_width(max_terms - 1)
        : 0;
    return report;
}

/// Polynomial mask parser. Two notations:
///   hex mask       "0x18000000B"  (bit i = coeff of x^i)
///   exponent list  "[32,31,3,1,0]"
inline std::uint64_t parse_poly_mask(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos)
        throw std::invalid_argument("empty polynomial");
    const std::string body = text.substr(begin, end - begin + 1);

    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        std::size_t used = 0;
        std::uint64_t mask = std::stoull(body.substr(2), &used, 16);
        if (used != body.size() - 2)
            throw std::invalid_argument("malformed hex polynomial mask: " + text);
        return mask;
    }
    if (body.front() == '[' && body.back() == ']') {
        std::uint64_t mask = 0;
        std::size_t pos = 1;
        bool any = false;
        while (pos < body.size() - 1) {
            std::size_t used = 0;
            const int e = std::stoi(body.substr(pos), &used, 10);
            if (e < 0 || e > 63)
                throw std::invalid_argument("polynomial exponent out of range: " + text);
            mask |= std::uint64_t{1} << e;
            any = true;
            pos += used;
            if (pos < body.size() - 1) {
                if (body[pos] != ',')
                    throw std::invalid_argument("malformed exponent list: " + text);
                ++pos;
            }
        }
        if (!any)
            throw std::invalid_argument("empty exponent list: " + text);
        return mask;
    }
    throw std::invalid_argument("polynomial must be a 0x mask or [e1,e2,...] list: " + text);
}

// degree implied by a mask = index of its highest set bit
inline int poly_mask_degree(std::uint64_t mask) {
    if (mask == 0)
        throw std::invalid_argument("zero polynomial mask");
    return std::bit_width(mask) - 1;
}

}  // namespace rse
