#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wittflow/lambda_series.hpp"

namespace wittflow::lie {

// Bracket table for a graded basis closed under [W_n, W_m] = alpha(n,m) W_{n+m}.
struct StructureTable {
    std::function<double(int, int)> alpha;
    double operator()(int n, int m) const { return alpha(n, m); }
};

// Ladder table alpha(n,m) = n - m (the structure behind the SABR basis).
inline StructureTable witt_structure() {
    return {[](int n, int m) { return static_cast<double>(n - m); }};
}

// Interleaved table for the Heston basis: even indices 2n carry the
// volatility fields L_n, odd indices 2n+1 the asset fields M_n, with
//   [M,M] = 0, [M_a, L_b] = (a-2) M_{a+b}, [L_a, L_b] = (a-b) L_{a+b}.
inline StructureTable heston_structure() {
    return {[](int n, int m) -> double {
        const bool nOdd = n % 2 != 0;
        const bool mOdd = m % 2 != 0;
        if (nOdd && mOdd) return 0.0;
        if (nOdd) return (n - 5) / 2.0;
        if (mOdd) return -(m - 5) / 2.0;
        return (n - m) / 2.0;
    }};
}

// Finite sum of lambda-series coefficients over basis elements W_n. All
// member series share one truncation degree; identically-zero terms are
// pruned so emptiness doubles as a termination test.
class LieSeries {
public:
    explicit LieSeries(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("LieSeries: degree must be >= 0");
    }

    int degree() const { return degree_; }
    bool empty() const { return terms_.empty(); }
    const std::map<int, LambdaSeries>& terms() const { return terms_; }

    LambdaSeries project(int index) const {
        auto it = terms_.find(index);
        return it == terms_.end() ? LambdaSeries(degree_) : it->second;
    }

    void add_term(int index, const LambdaSeries& s) {
        if (index < 0) throw std::invalid_argument("LieSeries: negative basis index");
        if (s.degree() != degree_) throw std::invalid_argument("LieSeries: mixed degrees");
        auto [it, inserted] = terms_.try_emplace(index, s);
        if (!inserted) it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }

    void erase(int index) { terms_.erase(index); }

private:
    int degree_;
    std::map<int, LambdaSeries> terms_;
};

// F_0(lambda, a) = sum_{i>=1} a_i exp(-alpha(0,i) lambda a_0) W_i: the
// conjugation of the index->=1 part of the generator by the W_0 flow.
inline LieSeries initial_f0(const std::vector<double>& a, const StructureTable& table, int degree) {
    if (a.empty()) throw std::invalid_argument("initial_f0: empty coefficient vector");
    LieSeries f(degree);
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        const double rate = -table(0, static_cast<int>(i)) * a[0];
        f.add_term(static_cast<int>(i), LambdaSeries::exp_linear(degree, rate).scaled(a[i]));
    }
    return f;
}

// exp(ad_{-p W_k}) applied to g. Brackets only raise indices, so anything
// pushed past maxIndex can never feed a retained coefficient and is dropped.
// p has no constant term, so each ad application raises the minimum lambda
// degree and the sum terminates within the truncation.
inline LieSeries exp_ad_neg(const LambdaSeries& p, int k, const LieSeries& g,
                            const StructureTable& table, int maxIndex) {
    LieSeries result = g;
    LieSeries term = g;
    for (int j = 1; j <= g.degree() && !term.empty(); ++j) {
        LieSeries next(g.degree());
        for (const auto& [idx, series] : term.terms()) {
            const int target = k + idx;
            if (target > maxIndex) continue;
            const double alpha = table(k, idx);
            if (alpha == 0.0) continue;
            next.add_term(target, p.mul(series).scaled(-alpha / j));
        }
        term = std::move(next);
        for (const auto& [idx, series] : term.terms()) result.add_term(idx, series);
    }
    return result;
}

// Splits exp(lambda sum_i a_i W_i) into the ordered product
// exp(P_0 W_0) exp(P_1 W_1) ... exp(P_maxIndex W_maxIndex), returning the
// P_n as lambda-series truncated at degree m. P_0 is lambda*a_0; each later
// P_n integrates the W_n component of the running remainder and the
// remainder is conjugated past exp(P_n W_n) before the next peel.
inline std::vector<LambdaSeries> zassenhaus_decompose(const std::vector<double>& a,
                                                      const StructureTable& table,
                                                      int m, int maxIndex) {
    if (m < 1) throw std::invalid_argument("zassenhaus_decompose: m must be >= 1");
    if (maxIndex < 0) throw std::invalid_argument("zassenhaus_decompose: maxIndex must be >= 0");
    if (a.empty()) throw std::invalid_argument("zassenhaus_decompose: empty coefficient vector");
    if (maxIndex < static_cast<int>(a.size()) - 1)
        throw std::invalid_argument("zassenhaus_decompose: maxIndex below the generator span");

    std::vector<LambdaSeries> p;
    p.reserve(static_cast<std::size_t>(maxIndex) + 1);

    LambdaSeries p0(m);
    p0.coeff(1) = a[0];
    p.push_back(p0);

    LieSeries f = initial_f0(a, table, m);
    for (int n = 1; n <= maxIndex; ++n) {
        const LambdaSeries pnPrime = f.project(n);
        p.push_back(pnPrime.antiderivative());
        if (f.empty()) continue;
        f.erase(n);  // remainder minus the peeled P'_n W_n term
        if (!p.back().is_zero() && !f.empty())
            f = exp_ad_neg(p.back(), n, f, table, maxIndex);
    }
    return p;
}

}  // namespace wittflow::lie
