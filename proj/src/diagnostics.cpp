#include "hpart/diagnostics.hpp"

#include "hpart/errors.hpp"
#include "hpart/filter.hpp"
#include "hpart/stats.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace hpart {

namespace {

struct TransitionCounts {
    // counts[context][next]
    std::vector<std::array<double, 2>> counts;
};

void check_order(int order) {
    if (order < 0 || order > kMaxMarkovOrder) {
        throw InvalidArgument("Markov order must lie in 0.." + std::to_string(kMaxMarkovOrder));
    }
}

TransitionCounts count_transitions(const IdSequence& seq, int order) {
    check_order(order);
    const auto m = static_cast<std::size_t>(order);
    if (seq.size() <= m) throw InsufficientData("sequence too short for Markov order " + std::to_string(order));
    TransitionCounts tc;
    tc.counts.assign(std::size_t{1} << m, {0.0, 0.0});
    for (std::size_t t = m; t < seq.size(); ++t) {
        std::size_t ctx = 0;
        for (std::size_t j = t - m; j < t; ++j) ctx = (ctx << 1) | (seq[j] ? 1u : 0u);
        tc.counts[ctx][seq[t] ? 1 : 0] += 1.0;
    }
    return tc;
}

double loglik_of(const TransitionCounts& tc) {
    double ll = 0.0;
    for (const auto& row : tc.counts) {
        const double total = row[0] + row[1];
        for (const double c : row) {
            if (c > 0.0) ll += c * std::log(c / total);
        }
    }
    return ll;
}

void check_binary(const IdSequence& seq) {
    if (std::any_of(seq.begin(), seq.end(), [](std::uint8_t v) { return v > 1; })) {
        throw InvalidArgument("ID sequences must be binary");
    }
}

}  // namespace

IdSequence id_card_sequence(const CountSeries& series, const ModelSpec& spec) {
    if (spec.kind != ModelKind::Bpart && spec.kind != ModelKind::Hpart) {
        throw InvalidArgument("id_card_sequence: spec must be BPART or HPART");
    }
    const IntensityPath path = intensity_filter(series, spec);
    IdSequence out(path.regimes.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<std::uint8_t>(1 - path.regimes[k]);
    return out;
}

IdSequence id_card_sequence(const CountSeries& series, const FitResult& fit) {
    return id_card_sequence(series, fit.spec_hat);
}

ContingencyTable2x2 contingency(const IdSequence& a, const IdSequence& b) {
    if (a.size() != b.size()) throw InvalidArgument("contingency: sequences differ in length");
    check_binary(a);
    check_binary(b);
    ContingencyTable2x2 t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]) {
            b[i] ? ++t.n11 : ++t.n10;
        } else {
            b[i] ? ++t.n01 : ++t.n00;
        }
    }
    return t;
}

double markov_loglik(const IdSequence& seq, int order) {
    check_binary(seq);
    return loglik_of(count_transitions(seq, order));
}

double markov_bic(const IdSequence& seq, int order) {
    const double ll = markov_loglik(seq, order);
    const double params = std::ldexp(1.0, order);
    const auto effective = static_cast<double>(seq.size() - static_cast<std::size_t>(order));
    return -2.0 * ll + params * std::log(effective);
}

int markov_order_bic(const IdSequence& seq, int max_order) {
    check_order(max_order);
    const std::size_t needed = 4 * (std::size_t{1} << static_cast<std::size_t>(max_order));
    if (seq.size() <= needed) {
        throw InsufficientData("markov_order_bic: need more than " + std::to_string(needed) + " symbols");
    }
    int best = 0;
    double best_bic = markov_bic(seq, 0);
    for (int m = 1; m <= max_order; ++m) {
        const double bic = markov_bic(seq, m);
        if (bic < best_bic) {
            best_bic = bic;
            best = m;
        }
    }
    return best;
}

LrTestResult lr_same_chain(const IdSequence& a, const IdSequence& b, int order) {
    check_binary(a);
    check_binary(b);
    const TransitionCounts ta = count_transitions(a, order);
    const TransitionCounts tb = count_transitions(b, order);
    TransitionCounts pooled = ta;
    for (std::size_t i = 0; i < pooled.counts.size(); ++i) {
        pooled.counts[i][0] += tb.counts[i][0];
        pooled.counts[i][1] += tb.counts[i][1];
    }
    // Per-cell log ratios against the pooled estimate, so equal laws give exactly 0.
    double stat = 0.0;
    for (std::size_t i = 0; i < pooled.counts.size(); ++i) {
        const double tp = pooled.counts[i][0] + pooled.counts[i][1];
        for (const auto* own : {&ta.counts[i], &tb.counts[i]}) {
            const double t = (*own)[0] + (*own)[1];
            for (std::size_t x = 0; x < 2; ++x) {
                const double c = (*own)[x];
                if (c > 0.0) stat += c * std::log((c / t) / (pooled.counts[i][x] / tp));
            }
        }
    }
    LrTestResult out;
    out.df = 1 << order;
    out.statistic = std::max(0.0, 2.0 * stat);
    out.p_value = out.statistic > 0.0 ? chi_square_sf(out.statistic, out.df) : 1.0;
    return out;
}

double exact_binomial_discordant(const ContingencyTable2x2& table) {
    const std::size_t m = table.n10 + table.n01;
    if (m == 0) throw InvalidArgument("exact_binomial_discordant: no discordant pairs");
    const std::size_t k = std::min(table.n10, table.n01);
    double tail = 0.0;
    if (m <= 1000) {
        // pmf(0) = 2^-m is exact; later terms follow the ratio (m - i) / (i + 1).
        double pmf = std::ldexp(1.0, -static_cast<int>(m));
        for (std::size_t i = 0; i <= k; ++i) {
            tail += pmf;
            pmf *= static_cast<double>(m - i) / static_cast<double>(i + 1);
        }
    } else {
        const boost::math::binomial_distribution<double> dist(static_cast<double>(m), 0.5);
        tail = boost::math::cdf(dist, static_cast<double>(k));
    }
    return std::min(1.0, 2.0 * tail);
}

}  // namespace hpart
