#pragma once

// RS(n, k) code construction over a Field: generator polynomial,
// systematic encoding, codeword validation. Layout convention: parity
// occupies positions 0..n-k-1 (low degrees), data occupies n-k..n-1, so a
// codeword C(z) = D(z)·z^(n-k) + P(z) is a multiple of G(z).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rse/gf.hpp"

namespace rse {

using DataBlock = std::vector<Elem>;
using Codeword = std::vector<Elem>;

// monic, ascending-degree coefficients, degree n-k
struct GeneratorPoly {
    std::vector<Elem> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Horner evaluation, low degree first
inline Elem poly_eval(std::span<const Elem> coeffs, Elem x, const Field& field,
                      OpCounts* ops = nullptr) {
    Elem acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = Field::add(field.mul(acc, x, ops), coeffs[i]);
    return acc;
}

/// An (n, k) Reed-Solomon code bound to a field, first consecutive root
/// exponent fixed at 0 (G(z) = prod_{i=0}^{n-k-1} (z - alpha^i)).
/// Shortened codes (n well below 2^m - 1) are plain sub-ranges: position j
/// keeps locator alpha^j.
class Code {
public:
    Code(const Field& field, std::uint32_t n, std::uint32_t k)
        : field_(field), n_(n), k_(k) {
        if (k == 0 || k >= n || n > field.order())
            throw std::invalid_argument("code parameters must satisfy 0 < k < n <= 2^m - 1");
        // expand G(z) one linear factor (z + alpha^i) at a time
        gen_.coeffs.assign(1, 1);
        Elem root = 1;  // alpha^0
        for (std::uint32_t i = 0; i < n - k; ++i) {
            gen_.coeffs.insert(gen_.coeffs.begin(), 0);
            for (std::size_t t = 0; t + 1 < gen_.coeffs.size(); ++t)
                gen_.coeffs[t] = Field::add(gen_.coeffs[t],
                                            field_.mul(root, gen_.coeffs[t + 1]));
            root = field_.mul(root, field_.alpha());
        }
    }

    const Field& field() const { return field_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t parity() const { return n_ - k_; }
    const GeneratorPoly& generator() const { return gen_; }

    /// Systematic encode: parity = (D(z)·z^(n-k)) mod G(z) by synthetic
    /// division; the quotient is never materialized.
    Codeword encode(const DataBlock& data) const {
        if (data.size() != k_)
            throw std::invalid_argument("data block must hold exactly k symbols");
        Codeword word(n_, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            word[parity() + i] = data[i];
        for (std::uint32_t j = n_; j-- > parity();) {
            const Elem f = word[j];
            if (f == 0) continue;
            // g is monic, so position j itself cancels
            for (std::uint32_t t = 0; t < parity(); ++t)
                word[j - parity() + t] =
                    Field::add(word[j - parity() + t], field_.mul(f, gen_.coeffs[t]));
        }
        // the in-place division leaves residue over the data span; restore it
        for (std::uint32_t i = 0; i < k_; ++i)
            word[parity() + i] = data[i];
        return word;
    }

    /// true iff every syndrome R(alpha^i), i = 0..n-k-1, vanishes
    bool is_codeword(const Codeword& word) const {
        if (word.size() != n_)
            throw std::invalid_argument("codeword must hold exactly n symbols");
        Elem root = 1;
        for (std::uint32_t i = 0; i < parity(); ++i) {
            if (poly_eval(word, root, field_) != 0)
                return false;
            root = field_.mul(root, field_.alpha());
        }
        return true;
    }

    // data view of a systematic codeword
    DataBlock data_of(const Codeword& word) const {
        if (word.size() != n_)
            throw std::invalid_argument("codeword must hold exactly n symbols");
        return DataBlock(word.begin() + parity(), word.end());
    }

private:
    Field field_;
    std::uint32_t n_;
    std::uint32_t k_;
    GeneratorPoly gen_;
};

}  // namespace rse
