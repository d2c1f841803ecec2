#pragma once

#include "hpart/estimation.hpp"
#include "hpart/model.hpp"

#include <cstdint>
#include <vector>

namespace hpart {

/// Per-observation regime label, 1 marking the upper regime.
using IdSequence = std::vector<std::uint8_t>;

/// Upper-regime indicators 1 - regime_t along the filtered path of a two-regime spec.
[[nodiscard]] IdSequence id_card_sequence(const CountSeries& series, const ModelSpec& spec);
[[nodiscard]] IdSequence id_card_sequence(const CountSeries& series, const FitResult& fit);

/// Joint counts of two binary sequences; rows index @c a, columns index @c b.
struct ContingencyTable2x2 {
    std::size_t n11 = 0;
    std::size_t n10 = 0;
    std::size_t n01 = 0;
    std::size_t n00 = 0;

    [[nodiscard]] std::size_t total() const noexcept { return n11 + n10 + n01 + n00; }
    [[nodiscard]] std::size_t row1() const noexcept { return n11 + n10; }
    [[nodiscard]] std::size_t row0() const noexcept { return n01 + n00; }
    [[nodiscard]] std::size_t col1() const noexcept { return n11 + n01; }
    [[nodiscard]] std::size_t col0() const noexcept { return n10 + n00; }
    friend bool operator==(const ContingencyTable2x2&, const ContingencyTable2x2&) = default;
};

[[nodiscard]] ContingencyTable2x2 contingency(const IdSequence& a, const IdSequence& b);

inline constexpr int kMaxMarkovOrder = 3;

/// Maximized conditional log-likelihood of a binary chain of the given order.
[[nodiscard]] double markov_loglik(const IdSequence& seq, int order);

/// BIC -2 l + 2^m log(n - m) for order m.
[[nodiscard]] double markov_bic(const IdSequence& seq, int order);

/**
 * @brief Order in 0..max_order with the smallest BIC.
 *
 * Likelihoods condition on the first m symbols. Requires max_order <= 3 and
 * a sequence longer than 4 * 2^max_order.
 */
[[nodiscard]] int markov_order_bic(const IdSequence& seq, int max_order = kMaxMarkovOrder);

struct LrTestResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};

/// Likelihood ratio test that two sequences share one transition law; df = 2^order.
[[nodiscard]] LrTestResult lr_same_chain(const IdSequence& a, const IdSequence& b, int order);

/// Two-sided exact binomial p-value for n10 of n10 + n01 discordant pairs at 1/2.
[[nodiscard]] double exact_binomial_discordant(const ContingencyTable2x2& table);

}  // namespace hpart
