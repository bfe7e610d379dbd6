#pragma once

// Erasure-only decode pipeline:
//   syndromes -> erasure locators X_j -> locator polynomial Lambda(z)
//   -> key equation Omega(z) = Lambda(z)·S(z) mod z^(n-k)
//   -> inversion-free Forney evaluation -> corrected codeword.
//
// The Forney step avoids evaluating at X_j^-1: numerator and denominator are
// the degree-(n-k) coefficient reversals of Omega(z) and z·Lambda'(z), so a
// single evaluation at X_j plus one field inversion of the denominator yields
// Y_j. z·Lambda'(z) itself is just the odd-degree part of Lambda (formal
// derivative in characteristic 2).

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rse/gf.hpp"
#include "rse/rs.hpp"

namespace rse {

/// Sorted, duplicate-free erased positions.
class ErasurePattern {
public:
    ErasurePattern() = default;

    explicit ErasurePattern(std::vector<std::uint32_t> positions)
        : positions_(std::move(positions)) {
        std::sort(positions_.begin(), positions_.end());
        if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
            throw std::invalid_argument("duplicate erasure position");
    }

    const std::vector<std::uint32_t>& positions() const { return positions_; }
    std::size_t size() const { return positions_.size(); }
    bool empty() const { return positions_.empty(); }

private:
    std::vector<std::uint32_t> positions_;
};

struct SyndromePoly {
    std::vector<Elem> coeffs;  // s_0 .. s_(n-k-1)

    bool all_zero() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](Elem c) { return c == 0; });
    }
};

struct ErasureLocatorPoly {
    std::vector<Elem> coeffs;  // lambda_0 = 1 .. lambda_e

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct ErrorEvaluatorPoly {
    std::vector<Elem> coeffs;
};

struct DecodeOpCounts {
    OpCounts syndrome;
    OpCounts locator;  // locator-power setup; no hardware-cycle analogue
    OpCounts lambda;
    OpCounts omega;
    OpCounts forney;
    OpCounts inverse;

    OpCounts total() const {
        OpCounts t;
        t += syndrome;
        t += locator;
        t += lambda;
        t += omega;
        t += forney;
        t += inverse;
        return t;
    }
};

enum class DecodeStatus {
    kOk,
    kUncorrectable,   // more erasures than parity symbols
    kVerifyFailed,    // corrected word still fails the syndrome check
};

struct DecodeReport {
    DecodeStatus status = DecodeStatus::kOk;
    Codeword corrected;
    std::vector<std::pair<std::uint32_t, Elem>> values;  // (position, Y_j)
    DecodeOpCounts op_counts;

    bool ok() const { return status == DecodeStatus::kOk; }
};

/// s_i = R(alpha^i), i = 0..n-k-1. Erased positions must already be
/// zero-filled so the syndromes see exactly the erasure polynomial E(z).
inline SyndromePoly syndromes(const Code& code, const Codeword& received,
                              OpCounts* ops = nullptr) {
    if (received.size() != code.n())
        throw std::invalid_argument("received word must hold exactly n symbols");
    const Field& f = code.field();
    SyndromePoly s;
    s.coeffs.resize(code.parity());
    Elem root = 1;
    for (std::uint32_t i = 0; i < code.parity(); ++i) {
        s.coeffs[i] = poly_eval(received, root, f, ops);
        if (i + 1 < code.parity()) root = f.mul(root, f.alpha(), ops);
    }
    return s;
}

/// X_j = alpha^(i_j) for each erased position
inline std::vector<Elem> erasure_locators(const Code& code, const ErasurePattern& pattern,
                                          OpCounts* ops = nullptr) {
    std::vector<Elem> locators;
    locators.reserve(pattern.size());
    for (std::uint32_t pos : pattern.positions()) {
        if (pos >= code.n())
            throw std::invalid_argument("erasure position out of range");
        locators.push_back(code.field().alpha_pow(pos, ops));
    }
    return locators;
}

/// Lambda(z) = prod_j (1 - X_j z), built by sequential linear-factor
/// multiplications (stage j costs j multiplications).
inline ErasureLocatorPoly lambda_poly(std::span<const Elem> locators, const Field& field,
                                      OpCounts* ops = nullptr) {
    for (std::size_t i = 0; i < locators.size(); ++i)
        for (std::size_t j = i + 1; j < locators.size(); ++j)
            if (locators[i] == locators[j])
                throw std::invalid_argument("duplicate erasure locator");
    ErasureLocatorPoly lambda;
    lambda.coeffs.assign(1, 1);
    for (std::size_t j = 0; j < locators.size(); ++j) {
        const Elem x = locators[j];
        if (x == 0)
            throw std::invalid_argument("zero erasure locator");
        lambda.coeffs.push_back(0);
        for (std::size_t t = lambda.coeffs.size() - 1; t > 0; --t)
            lambda.coeffs[t] =
                Field::add(lambda.coeffs[t], field.mul(x, lambda.coeffs[t - 1], ops));
    }
    return lambda;
}

/// Omega(z) = Lambda(z)·S(z) mod z^nk (the full n-k window, not the tighter
/// mod z^e, keeping instrumented counts aligned with the cycle model).
inline ErrorEvaluatorPoly key_equation(const SyndromePoly& s, const ErasureLocatorPoly& lambda,
                                       std::uint32_t nk, const Field& field,
                                       OpCounts* ops = nullptr) {
    if (lambda.degree() > static_cast<int>(nk))
        throw std::invalid_argument("locator degree exceeds n-k");
    ErrorEvaluatorPoly omega;
    omega.coeffs.assign(nk, 0);
    for (std::uint32_t i = 0; i < nk; ++i) {
        Elem acc = 0;
        const std::size_t tmax = std::min<std::size_t>(i, lambda.coeffs.size() - 1);
        for (std::size_t t = 0; t <= tmax; ++t) {
            if (i - t >= s.coeffs.size()) continue;
            acc = Field::add(acc, field.mul(lambda.coeffs[t], s.coeffs[i - t], ops));
        }
        omega.coeffs[i] = acc;
    }
    return omega;
}

/// z·Lambda'(z): odd-degree coefficients kept in place, even ones zeroed
inline std::vector<Elem> odd_part(const ErasureLocatorPoly& lambda) {
    std::vector<Elem> d(lambda.coeffs.size(), 0);
    for (std::size_t i = 1; i < lambda.coeffs.size(); i += 2)
        d[i] = lambda.coeffs[i];
    return d;
}

namespace detail {
// degree-nk reversal: pad the coefficient array to nk+1 entries, reverse
inline std::vector<Elem> reverse_padded(std::span<const Elem> coeffs, std::uint32_t nk) {
    std::vector<Elem> r(nk + 1, 0);
    for (std::size_t i = 0; i < coeffs.size() && i <= nk; ++i)
        r[nk - i] = coeffs[i];
    return r;
}
}  // namespace detail

/// Y_j = N(X_j) · D(X_j)^-1 with N, D the degree-(n-k) reversals of Omega(z)
/// and z·Lambda'(z); evaluation uses X_j directly (no locator inversion), one
/// field inversion per erasure.
inline std::vector<Elem> forney_values(const ErrorEvaluatorPoly& omega,
                                       const ErasureLocatorPoly& lambda,
                                       std::span<const Elem> locators, std::uint32_t nk,
                                       const Field& field, OpCounts* forney_ops = nullptr,
                                       OpCounts* inverse_ops = nullptr) {
    if (lambda.degree() != static_cast<int>(locators.size()))
        throw std::invalid_argument("locator polynomial degree must equal erasure count");
    const std::vector<Elem> numer = detail::reverse_padded(omega.coeffs, nk);
    const std::vector<Elem> denom = detail::reverse_padded(odd_part(lambda), nk);
    std::vector<Elem> values;
    values.reserve(locators.size());
    for (const Elem x : locators) {
        const Elem n_at = poly_eval(numer, x, field, forney_ops);
        const Elem d_at = poly_eval(denom, x, field, forney_ops);
        if (d_at == 0)
            throw std::invalid_argument("zero Forney denominator: duplicate or invalid locator");
        values.push_back(field.mul(n_at, field.inverse(d_at, inverse_ops), forney_ops));
    }
    return values;
}

/// Full pipeline. Symbols at erased positions are ignored (zero-filled
/// internally); non-erased positions are never modified. The corrected word
/// is re-checked against all syndromes before it is returned (that check is
/// excluded from the instrumentation counters).
inline DecodeReport decode(const Code& code, const Codeword& received,
                           const ErasurePattern& pattern) {
    if (received.size() != code.n())
        throw std::invalid_argument("received word must hold exactly n symbols");
    DecodeReport report;
    if (pattern.size() > code.parity()) {
        report.status = DecodeStatus::kUncorrectable;
        return report;
    }

    report.corrected = received;
    for (std::uint32_t pos : pattern.positions()) {
        if (pos >= code.n())
            throw std::invalid_argument("erasure position out of range");
        report.corrected[pos] = 0;
    }

    const SyndromePoly s = syndromes(code, report.corrected, &report.op_counts.syndrome);
    if (pattern.empty()) {
        if (!s.all_zero()) report.status = DecodeStatus::kVerifyFailed;
        return report;
    }

    const Field& f = code.field();
    const std::vector<Elem> locators =
        erasure_locators(code, pattern, &report.op_counts.locator);
    const ErasureLocatorPoly lambda = lambda_poly(locators, f, &report.op_counts.lambda);
    const ErrorEvaluatorPoly omega =
        key_equation(s, lambda, code.parity(), f, &report.op_counts.omega);
    const std::vector<Elem> values =
        forney_values(omega, lambda, locators, code.parity(), f, &report.op_counts.forney,
                      &report.op_counts.inverse);

    report.values.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        report.corrected[pattern.positions()[j]] = values[j];
        report.values.emplace_back(pattern.positions()[j], values[j]);
    }

    if (!syndromes(code, report.corrected).all_zero())
        report.status = DecodeStatus::kVerifyFailed;
    return report;
}

}  // namespace rse
