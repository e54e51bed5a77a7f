#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wittflow::lie {

// Polynomial in the formal expansion parameter lambda, truncated at a fixed
// degree D. Always stores exactly D+1 coefficients (constant term first);
// every operation stays inside that truncation.
class LambdaSeries {
public:
    explicit LambdaSeries(int degree) {
        if (degree < 0) throw std::invalid_argument("LambdaSeries: degree must be >= 0");
        coeff_.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    }

    static LambdaSeries constant(int degree, double value) {
        LambdaSeries s(degree);
        s.coeff_[0] = value;
        return s;
    }

    // exp(k * lambda) truncated at the series degree
    static LambdaSeries exp_linear(int degree, double k) {
        LambdaSeries s(degree);
        double term = 1.0;
        s.coeff_[0] = term;
        for (int j = 1; j <= degree; ++j) {
            term *= k / j;
            s.coeff_[static_cast<std::size_t>(j)] = term;
        }
        return s;
    }

    int degree() const { return static_cast<int>(coeff_.size()) - 1; }

    double coeff(int k) const { return coeff_.at(static_cast<std::size_t>(k)); }
    double& coeff(int k) { return coeff_.at(static_cast<std::size_t>(k)); }

    bool is_zero() const {
        for (double c : coeff_)
            if (c != 0.0) return false;
        return true;
    }

    double eval(double lambda) const {
        double acc = 0.0;
        for (std::size_t k = coeff_.size(); k-- > 0;) acc = acc * lambda + coeff_[k];
        return acc;
    }

    LambdaSeries& operator+=(const LambdaSeries& o) {
        check_same_degree(o);
        for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] += o.coeff_[k];
        return *this;
    }

    LambdaSeries& operator-=(const LambdaSeries& o) {
        check_same_degree(o);
        for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] -= o.coeff_[k];
        return *this;
    }

    friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) { return a += b; }
    friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) { return a -= b; }

    LambdaSeries scaled(double s) const {
        LambdaSeries out = *this;
        for (double& c : out.coeff_) c *= s;
        return out;
    }

    // product truncated at the common degree
    LambdaSeries mul(const LambdaSeries& o) const {
        check_same_degree(o);
        LambdaSeries out(degree());
        for (std::size_t i = 0; i < coeff_.size(); ++i) {
            if (coeff_[i] == 0.0) continue;
            for (std::size_t j = 0; i + j < coeff_.size(); ++j)
                out.coeff_[i + j] += coeff_[i] * o.coeff_[j];
        }
        return out;
    }

    LambdaSeries derivative() const {
        LambdaSeries out(degree());
        for (int k = 1; k <= degree(); ++k)
            out.coeff_[static_cast<std::size_t>(k) - 1] = k * coeff_[static_cast<std::size_t>(k)];
        return out;
    }

    // antiderivative with zero constant term; the shifted-out top coefficient
    // is dropped, which keeps the result inside the truncation degree
    LambdaSeries antiderivative() const {
        LambdaSeries out(degree());
        for (int k = 0; k < degree(); ++k)
            out.coeff_[static_cast<std::size_t>(k) + 1] = coeff_[static_cast<std::size_t>(k)] / (k + 1);
        return out;
    }

    // drop the first n coefficients (used when dividing by a known zero of
    // order n); the tail is padded with zeros, degree unchanged
    LambdaSeries shifted_down(int n) const {
        if (n < 0 || n > degree() + 1) throw std::invalid_argument("LambdaSeries: bad shift");
        LambdaSeries out(degree());
        for (std::size_t k = static_cast<std::size_t>(n); k < coeff_.size(); ++k)
            out.coeff_[k - static_cast<std::size_t>(n)] = coeff_[k];
        return out;
    }

    // smallest k with a nonzero coefficient; degree()+1 for the zero series
    int min_degree() const {
        for (std::size_t k = 0; k < coeff_.size(); ++k)
            if (coeff_[k] != 0.0) return static_cast<int>(k);
        return degree() + 1;
    }

private:
    void check_same_degree(const LambdaSeries& o) const {
        if (coeff_.size() != o.coeff_.size())
            throw std::invalid_argument("LambdaSeries: mixed truncation degrees");
    }

    std::vector<double> coeff_;
};

}  // namespace wittflow::lie
